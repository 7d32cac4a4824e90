"""Graded restricted isomorphism of the p-power family by diagonal search.

A graded isomorphism is diagonal on the one-dimensional graded pieces and
is pinned by two nonzero scalars mu1, mu2; the remaining factors follow
from bracket preservation as mu_k = mu2 * mu1^(k-2).  Two power vectors
are isomorphic exactly when lam_k * mu_p = mu_k^p * lam'_k for all k and
some choice of (mu1, mu2), which a (p-1)^2 search decides outright.

The literature states an alternative closed condition set whose k = 1, 2
clauses look reparameterized; proposition_formula_check compares its
verdicts against the brute-force search and reports, never decides.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf


@dataclass(frozen=True)
class IsoWitness:
    """A verified diagonal isomorphism, named by its two free scalars."""

    prime: int
    mu1: int
    mu2: int

    @property
    def scale_factors(self) -> tuple[int, ...]:
        """mu_k for k = 1..p: (mu1, mu2, mu2*mu1, mu2*mu1^2, ...)."""
        return scale_factors(self.prime, self.mu1, self.mu2)

    def __str__(self):
        return f"mu1={self.mu1}, mu2={self.mu2}"


def scale_factors(p: int, mu1: int, mu2: int) -> tuple[int, ...]:
    out = [mu1 % p, mu2 % p]
    for k in range(3, p + 1):
        out.append((mu2 * pow(mu1, k - 2, p)) % p)
    return tuple(out[:p])


def _check_args(p, lam, lam2):
    if not gf.is_prime(p):
        raise ValueError(f"{p} is not prime")
    lam = tuple(int(x) % p for x in lam)
    lam2 = tuple(int(x) % p for x in lam2)
    if len(lam) != p or len(lam2) != p:
        raise ValueError("power vectors must have one entry per basis vector")
    return lam, lam2


def diag_iso_check(p: int, lam, lam2, mu1: int, mu2: int) -> bool:
    """Whether the diagonal map with scalars (mu1, mu2) carries the second
    power vector onto the first: lam_k * mu_p = mu_k^p * lam'_k for all k."""
    lam, lam2 = _check_args(p, lam, lam2)
    mu1 %= p
    mu2 %= p
    if mu1 == 0 or mu2 == 0:
        raise ValueError("scale factors must be nonzero")
    mus = scale_factors(p, mu1, mu2)
    mu_p = mus[p - 1]
    return all(
        (lam[k] * mu_p) % p == (pow(mus[k], p, p) * lam2[k]) % p for k in range(p)
    )


def iso_bruteforce(p: int, lam, lam2) -> IsoWitness | None:
    """First diagonal witness in lexicographic (mu1, mu2) order, or None
    after exhausting all (p-1)^2 candidates."""
    if p > 31:
        raise ValueError("diagonal search is limited to p <= 31")
    lam, lam2 = _check_args(p, lam, lam2)
    for mu1 in range(1, p):
        for mu2 in range(1, p):
            if diag_iso_check(p, lam, lam2, mu1, mu2):
                return IsoWitness(p, mu1, mu2)
    return None


def proof_transform(p: int, lam2, mu1: int, mu2: int) -> tuple[int, ...]:
    """The power vector isomorphic to lam' under the (mu1, mu2) map:
    lam_k = mu_k^p * mu_p^{-1} * lam'_k."""
    lam2 = tuple(int(x) % p for x in lam2)
    mus = scale_factors(p, mu1, mu2)
    inv_mu_p = gf.inv_mod(mus[p - 1], p)
    return tuple((pow(mus[k], p, p) * inv_mu_p * lam2[k]) % p for k in range(p))


def partition_classes(p: int, lam_list) -> list[list[tuple[int, ...]]]:
    """Group power vectors into isomorphism classes by representative search."""
    classes: list[list[tuple[int, ...]]] = []
    for lam in lam_list:
        lam = tuple(int(x) % p for x in lam)
        for cls in classes:
            if iso_bruteforce(p, lam, cls[0]) is not None:
                cls.append(lam)
                break
        else:
            classes.append([lam])
    return classes


def _statement_conditions(p, lam, lam2, mu1, mu2) -> bool:
    """The closed condition set as printed: k = 1, 2 use mu1, mu2 directly,
    k >= 3 uses mu2^(p-1) * mu1^(p(k-3)+2)."""
    if (lam[0] - mu1 * lam2[0]) % p:
        return False
    if (lam[1] - mu2 * lam2[1]) % p:
        return False
    for k in range(3, p + 1):
        factor = (pow(mu2, p - 1, p) * pow(mu1, p * (k - 3) + 2, p)) % p
        if (lam[k - 1] - factor * lam2[k - 1]) % p:
            return False
    return True


def proposition_formula_check(p: int, lam, lam2) -> dict:
    """Compare the printed condition set against the brute-force verdict.

    Informational: the report records both verdicts, their witnesses, and
    whether they agree; it never overrides the search.
    """
    lam, lam2 = _check_args(p, lam, lam2)
    statement_witness = None
    for mu1 in range(1, p):
        for mu2 in range(1, p):
            if _statement_conditions(p, lam, lam2, mu1, mu2):
                statement_witness = (mu1, mu2)
                break
        if statement_witness:
            break
    brute = iso_bruteforce(p, lam, lam2)
    return {
        "prime": p,
        "lambda": list(lam),
        "lambda_prime": list(lam2),
        "statement_isomorphic": statement_witness is not None,
        "statement_witness": statement_witness,
        "bruteforce_isomorphic": brute is not None,
        "bruteforce_witness": (brute.mu1, brute.mu2) if brute else None,
        "agree": (statement_witness is not None) == (brute is not None),
    }
