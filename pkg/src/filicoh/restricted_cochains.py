"""Restricted cochains in degrees 2 and 3 and the maps induced by p-powers.

A restricted 2-cochain is a pair (phi, omega): an alternating 2-form plus
a companion function omega determined by its values on the basis.  Off the
basis, omega is p-homogeneous and obeys a sum rule that corrects plain
additivity by bracket terms weighted with phi:

    omega(g + h) = omega(g) + omega(h)
                 + sum over sequences (g_1, ..., g_p) in {g, h}^p with
                   g_1 = g, g_2 = h of
                   (1 / #g) phi([g_1, ..., g_{p-1}] ^ g_p)

where #g counts the slots assigned g and [..] is the left-normed bracket.
A restricted 3-cochain is a pair (alpha, beta): an alternating 3-form plus
a bilinear-in-the-first-argument companion beta determined by its values
on basis pairs, with the analogous correction rule in its second argument
(subtracted, and weighted by alpha(g ^ [..] ^ last)).

The correction sum has 2^(p-2) terms; a dynamic program over (prefix
length, number of slots assigned the first argument) evaluates it in
O(p^2) bracket operations and is the production route.  The literal
enumeration is kept as an oracle for p <= 13.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import cochains, gf, liealg, restricted


@dataclass(frozen=True)
class RestrictedTwoCochain:
    """(phi, omega) with omega stored by its basis values."""

    phi: cochains.Cochain
    omega_basis: tuple[int, ...]

    def __post_init__(self):
        if self.phi.degree != 2:
            raise ValueError("phi must have degree 2")
        object.__setattr__(
            self,
            "omega_basis",
            tuple(int(x) % self.phi.prime for x in self.omega_basis),
        )
        if len(self.omega_basis) != self.phi.dim:
            raise ValueError("omega_basis length must equal dim")

    @property
    def prime(self):
        return self.phi.prime

    @property
    def dim(self):
        return self.phi.dim

    def to_vector(self):
        """Coordinates: phi over pairs, then the omega basis values."""
        return np.concatenate(
            [self.phi.to_vector(), np.array(self.omega_basis, dtype=np.int64)]
        )

    @classmethod
    def from_vector(cls, prime, dim, vec):
        vec = gf.normalize(vec, prime)
        npairs = dim * (dim - 1) // 2
        if len(vec) != npairs + dim:
            raise ValueError("coordinate vector has wrong length")
        phi = cochains.Cochain.from_vector(prime, dim, 2, vec[:npairs])
        return cls(phi, tuple(int(x) for x in vec[npairs:]))

    def to_json(self) -> dict:
        return {
            "phi": self.phi.to_json(),
            "omega": [int(x) for x in self.omega_basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RestrictedTwoCochain":
        phi = cochains.Cochain.from_json(data["phi"])
        return cls(phi, tuple(int(x) for x in data["omega"]))

    def __str__(self):
        omega = omega_basis_str(self)
        return f"({self.phi}, {omega})"


def omega_basis_str(c: RestrictedTwoCochain) -> str:
    """Render omega by its basis expansion over the Frobenius duals ebar^k."""
    parts = []
    p = c.prime
    half = p // 2
    for k, value in enumerate(c.omega_basis, start=1):
        if not value:
            continue
        signed = value if value <= half else value - p
        label = f"ebar^{k}"
        term = label if abs(signed) == 1 else f"{abs(signed)} {label}"
        if not parts:
            parts.append(term if signed > 0 else f"- {term}")
        else:
            parts.append(("+ " if signed > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class RestrictedThreeCochain:
    """(alpha, beta) with beta stored by its values on basis pairs."""

    alpha: cochains.Cochain
    beta_pairs: np.ndarray = field(compare=False)

    def __post_init__(self):
        if self.alpha.degree != 3:
            raise ValueError("alpha must have degree 3")
        arr = gf.normalize(self.beta_pairs, self.alpha.prime)
        if arr.shape != (self.alpha.dim, self.alpha.dim):
            raise ValueError("beta_pairs must be dim x dim")
        object.__setattr__(self, "beta_pairs", arr)

    @property
    def prime(self):
        return self.alpha.prime

    @property
    def dim(self):
        return self.alpha.dim

    def is_zero(self):
        return self.alpha.is_zero() and not self.beta_pairs.any()

    def __eq__(self, other):
        if not isinstance(other, RestrictedThreeCochain):
            return NotImplemented
        return self.alpha == other.alpha and (self.beta_pairs == other.beta_pairs).all()


def _correction_sum_naive(algebra, form_eval, h1, h2):
    """Literal 2^(p-2)-term correction sum; oracle route for p <= 13.

    form_eval(bracket_vector, last_vector) supplies the phi or alpha part.
    Slot counts are counts of assigned labels, so the divisor stays in
    1..p-1 even when h1 == h2 as vectors.
    """
    p = algebra.prime
    total = 0
    for bits in itertools.product((0, 1), repeat=p - 2):
        labels = (0, 1) + bits
        vecs = [h1 if b == 0 else h2 for b in labels]
        bracket = vecs[0]
        for x in vecs[1 : p - 1]:
            bracket = algebra.bracket(bracket, x)
        value = form_eval(bracket, vecs[p - 1])
        if value:
            count = labels.count(0)
            total = (total + gf.inv_mod(count, p) * value) % p
    return total


def _correction_sum_dp(algebra, form_eval, h1, h2):
    """The same sum grouped by how many slots carry h1.

    Left-normed brackets are linear in every slot, so prefixes with equal
    h1-multiplicity can be summed before bracketing continues.  state[m]
    is the sum of [g_1, ..., g_j] over all prefixes of length j with m
    slots assigned h1.
    """
    p = algebra.prime
    if p == 2:
        return form_eval(h1, h2)
    base = algebra.bracket(h1, h2)
    if not base.any():
        return 0
    state = {1: base}
    for _ in range(p - 3):
        nxt: dict[int, np.ndarray] = {}
        for m, vec in state.items():
            for dm, x in ((1, h1), (0, h2)):
                b = algebra.bracket(vec, x)
                if b.any():
                    prev = nxt.get(m + dm)
                    nxt[m + dm] = b if prev is None else (prev + b) % p
        state = nxt
    total = 0
    for m, vec in state.items():
        total = (total + gf.inv_mod(m + 1, p) * form_eval(vec, h1)) % p
        total = (total + gf.inv_mod(m, p) * form_eval(vec, h2)) % p
    return total


def star_correction(algebra, phi: cochains.Cochain, h1, h2, naive=False):
    """The omega correction sum attached to phi at the split g = h1 + h2."""
    form = lambda bracket, last: phi.evaluate(bracket, last)
    route = _correction_sum_naive if naive else _correction_sum_dp
    return route(algebra, form, h1, h2)


def doublestar_correction(algebra, alpha: cochains.Cochain, g, h1, h2, naive=False):
    """The beta correction sum attached to alpha at the split h = h1 + h2."""
    form = lambda bracket, last: alpha.evaluate(g, bracket, last)
    route = _correction_sum_naive if naive else _correction_sum_dp
    return route(algebra, form, h1, h2)


def star_eval(algebra, c: RestrictedTwoCochain, g, naive=False):
    """Evaluate omega at g.

    Scaled basis vectors use omega(a e_k) = a^p omega_k; a general g is
    split into basis terms lowest index first, adding the correction sum
    at each split.  The result does not depend on the split order.
    """
    p = algebra.prime
    g = gf.normalize(g, p)
    support = [k for k in range(len(g)) if g[k]]
    if not support:
        return 0
    if len(support) == 1:
        k = support[0]
        return (pow(int(g[k]), p, p) * c.omega_basis[k]) % p
    head = gf.zeros(len(g))
    head[support[0]] = g[support[0]]
    tail = g.copy()
    tail[support[0]] = 0
    return (
        star_eval(algebra, c, head, naive=naive)
        + star_eval(algebra, c, tail, naive=naive)
        + star_correction(algebra, c.phi, head, tail, naive=naive)
    ) % p


def doublestar_eval(algebra, rc3: RestrictedThreeCochain, g, h, naive=False):
    """Evaluate beta at (g, h): linear in g, split recursion in h."""
    p = algebra.prime
    g = gf.normalize(g, p)
    h = gf.normalize(h, p)
    support = [k for k in range(len(h)) if h[k]]
    if not support:
        return 0
    if len(support) == 1:
        k = support[0]
        scale = pow(int(h[k]), p, p)
        pairing = int((g @ rc3.beta_pairs[:, k]) % p)
        return (scale * pairing) % p
    head = gf.zeros(len(h))
    head[support[0]] = h[support[0]]
    tail = h.copy()
    tail[support[0]] = 0
    return (
        doublestar_eval(algebra, rc3, g, head, naive=naive)
        + doublestar_eval(algebra, rc3, g, tail, naive=naive)
        - doublestar_correction(algebra, rc3.alpha, g, head, tail, naive=naive)
    ) % p


def star_property_holds(algebra, c: RestrictedTwoCochain, g, h) -> bool:
    """Check the omega sum rule at one pair (g, h)."""
    p = algebra.prime
    lhs = star_eval(algebra, c, (gf.normalize(g, p) + gf.normalize(h, p)) % p)
    rhs = (
        star_eval(algebra, c, g)
        + star_eval(algebra, c, h)
        + star_correction(algebra, c.phi, gf.normalize(g, p), gf.normalize(h, p))
    ) % p
    return lhs == rhs


def doublestar_property_holds(algebra, rc3: RestrictedThreeCochain, g, h1, h2) -> bool:
    """Check the beta sum rule at one triple (g, h1, h2)."""
    p = algebra.prime
    h1 = gf.normalize(h1, p)
    h2 = gf.normalize(h2, p)
    lhs = doublestar_eval(algebra, rc3, g, (h1 + h2) % p)
    rhs = (
        doublestar_eval(algebra, rc3, g, h1)
        + doublestar_eval(algebra, rc3, g, h2)
        - doublestar_correction(algebra, rc3.alpha, g, h1, h2)
    ) % p
    return lhs == rhs


def ind1_values(R: restricted.RestrictedAlgebra, psi: cochains.Cochain) -> tuple[int, ...]:
    """omega basis values induced by a 1-cochain: omega_k = psi(e_k^[p])."""
    if psi.degree != 1:
        raise ValueError("ind1 needs a degree-1 cochain")
    return tuple(psi.evaluate(v) for v in R.basis_p_powers)


def ind1_at(R: restricted.RestrictedAlgebra, psi: cochains.Cochain, g) -> int:
    """The induced omega as a function: psi(g^[p])."""
    return psi.evaluate(restricted.p_power(R, g))


def ind2_matrix(R: restricted.RestrictedAlgebra, phi: cochains.Cochain):
    """beta values on basis pairs induced by a 2-cochain: phi(e_i ^ e_j^[p]).

    Entry (i, j) is linear in the stored coefficients, so the matrix is
    assembled per coefficient instead of evaluating n^2 pairings.
    """
    if phi.degree != 2:
        raise ValueError("ind2 needs a degree-2 cochain")
    n = R.dim
    p = R.prime
    powers = np.stack(R.basis_p_powers)  # row j-1 holds e_j^[p]
    out = gf.zeros((n, n))
    for (a, b), c in phi.coeffs.items():
        out[a - 1, :] = (out[a - 1, :] + c * powers[:, b - 1]) % p
        out[b - 1, :] = (out[b - 1, :] - c * powers[:, a - 1]) % p
    return out


def ind2_at(R: restricted.RestrictedAlgebra, phi: cochains.Cochain, g, h) -> int:
    """The induced beta as a function: phi(g ^ h^[p])."""
    return phi.evaluate(gf.normalize(g, R.prime), restricted.p_power(R, h))


def ind2_family_closed(R: restricted.RestrictedAlgebra, phi: cochains.Cochain, g, h) -> int:
    """Oracle on the maximal-class family:

    phi(g ^ h^[p]) = (sum_i h_i^p lam_i) * (sum_{j<p} g_j sigma_{j,p}).
    """
    if not R.is_m0_family:
        raise ValueError("closed induced-beta formula requires a family member")
    p = R.prime
    g = gf.normalize(g, p)
    h = gf.normalize(h, p)
    power_part = 0
    for i in range(p):
        power_part = (power_part + pow(int(h[i]), p, p) * R.lam[i]) % p
    pairing_part = 0
    for j in range(1, p):
        pairing_part = (pairing_part + int(g[j - 1]) * phi.coefficient((j, p))) % p
    return (power_part * pairing_part) % p


def d1_star(R: restricted.RestrictedAlgebra, psi: cochains.Cochain) -> RestrictedTwoCochain:
    """Restricted degree-1 differential: (d1 psi, omega induced by p-powers)."""
    return RestrictedTwoCochain(cochains.d1(R.algebra, psi), ind1_values(R, psi))


def d2_star(R: restricted.RestrictedAlgebra, c: RestrictedTwoCochain) -> RestrictedThreeCochain:
    """Restricted degree-2 differential: (d2 phi, beta induced by p-powers).

    The beta part depends only on phi, not on the omega companion.
    """
    return RestrictedThreeCochain(cochains.d2(R.algebra, c.phi), ind2_matrix(R, c.phi))


def basis_pair_cochain(prime, dim, i, j) -> RestrictedTwoCochain:
    """(e^{i,j}, tilde-e^{i,j}): the dual pair with vanishing omega basis values."""
    return RestrictedTwoCochain(cochains.dual_cochain(prime, dim, (i, j)), (0,) * dim)


def frobenius_dual_cochain(prime, dim, k) -> RestrictedTwoCochain:
    """(0, ebar^k): zero 2-form with omega the k-th Frobenius coordinate."""
    omega = [0] * dim
    omega[k - 1] = 1
    return RestrictedTwoCochain(cochains.Cochain(prime, dim, 2), tuple(omega))
