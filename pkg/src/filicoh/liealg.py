"""Graded Lie algebras over GF(p) given by sparse structure constants.

The central construction is the filiform algebra of maximal class on basis
e_1, ..., e_p with the only nonzero brackets [e_1, e_i] = e_{i+1} for
1 < i < p, graded by weight(e_k) = k.  Elements are coefficient vectors
(numpy int64, length dim, entries mod p) over the ordered basis.
"""

from __future__ import annotations

import random

import numpy as np

from . import gf


class LieAlgebra:
    """A Lie algebra over GF(p) with structure constants stored on pairs i < j.

    brackets maps a 1-based pair (i, j), i < j, to the coefficient vector of
    [e_i, e_j].  Antisymmetry is applied on access, never stored.  Instances
    are treated as immutable once built.
    """

    def __init__(self, prime, dim, brackets, weights, labels=None):
        if not gf.is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        self.prime = int(prime)
        self.dim = int(dim)
        self.brackets = {}
        for (i, j), coeffs in brackets.items():
            if not (1 <= i < j <= dim):
                raise ValueError(f"bad bracket pair ({i}, {j}) for dim {dim}")
            vec = gf.normalize(coeffs, prime)
            if vec.shape != (dim,):
                raise ValueError(f"bracket ({i}, {j}) has wrong length")
            if vec.any():
                self.brackets[(i, j)] = vec
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != dim:
            raise ValueError("weights length must equal dim")
        self.labels = tuple(labels) if labels else tuple(f"e_{k}" for k in range(1, dim + 1))
        if len(self.labels) != dim:
            raise ValueError("labels length must equal dim")

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        if (self.prime, self.dim, self.weights, self.labels) != (
            other.prime,
            other.dim,
            other.weights,
            other.labels,
        ):
            return False
        if set(self.brackets) != set(other.brackets):
            return False
        return all((self.brackets[k] == other.brackets[k]).all() for k in self.brackets)

    def __repr__(self):
        return f"LieAlgebra(prime={self.prime}, dim={self.dim}, pairs={len(self.brackets)})"

    def zero(self):
        return gf.zeros(self.dim)

    def basis_vector(self, k):
        """Coefficient vector of e_k (1-based k)."""
        v = gf.zeros(self.dim)
        v[k - 1] = 1
        return v

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a coefficient vector, for any order of i, j."""
        if i == j:
            return self.zero()
        if i < j:
            got = self.brackets.get((i, j))
            return got.copy() if got is not None else self.zero()
        got = self.brackets.get((j, i))
        return (-got) % self.prime if got is not None else self.zero()

    def bracket(self, g, h):
        """[g, h] by bilinear expansion over the stored structure constants."""
        p = self.prime
        g = gf.normalize(g, p)
        h = gf.normalize(h, p)
        out = self.zero()
        for (i, j), coeffs in self.brackets.items():
            c = (int(g[i - 1]) * int(h[j - 1]) - int(g[j - 1]) * int(h[i - 1])) % p
            if c:
                out = (out + c * coeffs) % p
        return out


def make_m0(p: int) -> LieAlgebra:
    """The maximal-class filiform algebra on p basis vectors over GF(p).

    [e_1, e_i] = e_{i+1} for 1 < i < p and all other basis brackets vanish;
    for p = 2 there are no such pairs and the algebra is abelian.
    """
    if not gf.is_prime(p):
        raise ValueError(f"{p} is not prime")
    brackets = {}
    for i in range(2, p):
        v = gf.zeros(p)
        v[i] = 1  # e_{i+1}
        brackets[(1, i)] = v
    return LieAlgebra(p, p, brackets, weights=range(1, p + 1))


def bracket_closed_m0(p, g, h):
    """Closed-form product on the maximal-class algebra, used as a test oracle.

    [g, h] = sum over j in 3..p of (g_1 h_{j-1} - g_{j-1} h_1) e_j.
    """
    g = gf.normalize(g, p)
    h = gf.normalize(h, p)
    out = gf.zeros(p)
    for j in range(3, p + 1):
        out[j - 1] = (int(g[0]) * int(h[j - 2]) - int(g[j - 2]) * int(h[0])) % p
    return out


def left_normed_bracket(algebra, elements):
    """[x_1, x_2, ..., x_m] folded left: [[...[[x_1, x_2], x_3]...], x_m]."""
    if len(elements) < 2:
        raise ValueError("left-normed bracket needs at least two factors")
    acc = algebra.bracket(elements[0], elements[1])
    for x in elements[2:]:
        acc = algebra.bracket(acc, x)
    return acc


def ad_matrix(algebra, g):
    """Matrix of ad(g) = [g, -] acting on column coefficient vectors."""
    cols = [algebra.bracket(g, algebra.basis_vector(j)) for j in range(1, algebra.dim + 1)]
    return np.stack(cols, axis=1) % algebra.prime


def jacobi_check(algebra):
    """Check the Jacobi identity on all basis triples.

    Returns:
        (True, None) on success, else (False, (i, j, k)) with the first
        failing 1-based triple in lexicographic order.
    """
    n = algebra.dim
    basis = [algebra.basis_vector(k) for k in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                s = (
                    algebra.bracket(algebra.bracket(basis[i - 1], basis[j - 1]), basis[k - 1])
                    + algebra.bracket(algebra.bracket(basis[j - 1], basis[k - 1]), basis[i - 1])
                    + algebra.bracket(algebra.bracket(basis[k - 1], basis[i - 1]), basis[j - 1])
                ) % algebra.prime
                if s.any():
                    return False, (i, j, k)
    return True, None


def center(algebra):
    """Basis (rows) of the center {g : [g, x] = 0 for all x}."""
    # [g, e_j] is linear in g; column i of block j is [e_i, e_j].
    stacked = np.vstack(
        [
            np.stack([algebra.bracket_basis(i, j) for i in range(1, algebra.dim + 1)], axis=1)
            for j in range(1, algebra.dim + 1)
        ]
    ) % algebra.prime
    return gf.kernel_basis(stacked, algebra.prime)


def is_graded(algebra):
    """Whether every nonzero structure constant respects the weights.

    Returns (True, None) or (False, (i, j, k)) for the first violation:
    coefficient of e_k in [e_i, e_j] nonzero but w_k != w_i + w_j.
    """
    w = algebra.weights
    for (i, j), coeffs in sorted(algebra.brackets.items()):
        for k in range(1, algebra.dim + 1):
            if coeffs[k - 1] != 0 and w[k - 1] != w[i - 1] + w[j - 1]:
                return False, (i, j, k)
    return True, None


def random_element(algebra, rng: random.Random):
    """Uniformly random coefficient vector drawn from a seeded generator."""
    return np.array([rng.randrange(algebra.prime) for _ in range(algebra.dim)], dtype=np.int64)


def to_json(algebra) -> dict:
    """Plain-dict form: {prime, dim, weights, labels, brackets:[{i, j, coeffs}]}."""
    return {
        "prime": algebra.prime,
        "dim": algebra.dim,
        "weights": list(algebra.weights),
        "labels": list(algebra.labels),
        "brackets": [
            {"i": i, "j": j, "coeffs": [int(c) for c in coeffs]}
            for (i, j), coeffs in sorted(algebra.brackets.items())
        ],
    }


def from_json(data: dict) -> LieAlgebra:
    brackets = {(b["i"], b["j"]): b["coeffs"] for b in data["brackets"]}
    return LieAlgebra(
        data["prime"],
        data["dim"],
        brackets,
        weights=data["weights"],
        labels=data.get("labels"),
    )
