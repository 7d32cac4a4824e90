"""One-dimensional central extensions built from degree-2 cocycles.

An extension appends a central generator c: the bracket gains the cocycle
value [x, y] -> [x, y] + phi(x ^ y) c, and in the restricted case the
p-power map gains omega, x^[p] -> x^[p] + omega(x) c with c^[p] = 0.  The
construction rejects non-cocycles with a witness and re-verifies every
axiom on the result instead of trusting the cocycle condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cochains, gf, liealg, restricted
from . import restricted_cochains as rcoch

CENTER_LABEL = "c"


@dataclass
class ExtensionResult:
    """A built extension: the algebra, its p-power structure when present,
    and the printed form of the cocycle it came from."""

    algebra: liealg.LieAlgebra
    pmap: restricted.RestrictedAlgebra | None
    source_cocycle: str

    @property
    def restricted(self) -> bool:
        return self.pmap is not None


def _extended_vector(vec, extra, p):
    out = gf.zeros(len(vec) + 1)
    out[:-1] = vec
    out[-1] = extra % p
    return out


def extend_ordinary(A: liealg.LieAlgebra, phi: cochains.Cochain) -> ExtensionResult:
    """Append a central c with bracket twisted by the 2-cocycle phi."""
    if phi.degree != 2 or (phi.prime, phi.dim) != (A.prime, A.dim):
        raise ValueError("cocycle must be a degree-2 cochain over the algebra")
    p = A.prime
    obstruction = cochains.d2(A, phi)
    if not obstruction.is_zero():
        witness = min(obstruction.coeffs)
        raise ValueError(f"not a cocycle: d2 is nonzero on {witness}")
    n = A.dim
    brackets = {}
    for i, j in cochains.index_tuples(n, 2):
        vec = _extended_vector(A.bracket_basis(i, j), phi.coefficient((i, j)), p)
        if vec.any():
            brackets[(i, j)] = vec
    # pairs (i, n+1) are absent: c is central
    E = liealg.LieAlgebra(
        p,
        n + 1,
        brackets,
        weights=A.weights + (max(A.weights) + 1,),
        labels=A.labels + (CENTER_LABEL,),
    )
    ok, triple = liealg.jacobi_check(E)
    if not ok:
        raise RuntimeError(f"extension failed Jacobi at {triple}")
    return ExtensionResult(algebra=E, pmap=None, source_cocycle=str(phi))


def extend_restricted(
    R: restricted.RestrictedAlgebra, c2: rcoch.RestrictedTwoCochain
) -> ExtensionResult:
    """Append a central c twisted by a restricted 2-cocycle (phi, omega)."""
    p = R.prime
    obstruction = rcoch.d2_star(R, c2)
    if not obstruction.is_zero():
        if not obstruction.alpha.is_zero():
            witness = f"d2 is nonzero on {min(obstruction.alpha.coeffs)}"
        else:
            i, j = np.argwhere(obstruction.beta_pairs).tolist()[0]
            witness = f"induced beta is nonzero on basis pair ({i + 1}, {j + 1})"
        raise ValueError(f"not a restricted cocycle: {witness}")
    base = extend_ordinary(R.algebra, c2.phi)
    E = base.algebra
    powers = []
    for k in range(1, R.dim + 1):
        omega_value = rcoch.star_eval(R.algebra, c2, R.algebra.basis_vector(k))
        powers.append(_extended_vector(R.basis_p_powers[k - 1], omega_value, p))
    powers.append(E.zero())  # c^[p] = 0
    RE = restricted.RestrictedAlgebra(E, powers)
    ok, k = restricted.verify_restricted_map(RE)
    if not ok:
        raise RuntimeError(f"extension failed the restricted axiom at basis index {k}")
    return ExtensionResult(algebra=E, pmap=RE, source_cocycle=str(c2))


def is_trivial_ordinary_extension(A: liealg.LieAlgebra, phi: cochains.Cochain) -> bool:
    """Whether the extension by phi splits: phi lies in the image of d1."""
    if not cochains.d2(A, phi).is_zero():
        raise ValueError("triviality is decided for cocycles only")
    image_rows = cochains.d1_matrix(A).T
    return gf.in_span(image_rows, phi.to_vector(), A.prime)


def coboundary_shift_is_isomorphism(
    A: liealg.LieAlgebra, phi: cochains.Cochain, psi: cochains.Cochain
) -> bool:
    """Verify x -> x + psi(x) c carries the phi-extension onto the
    (phi + d1 psi)-extension bracket-for-bracket."""
    p = A.prime
    E1 = extend_ordinary(A, phi).algebra
    E2 = extend_ordinary(A, phi + cochains.d1(A, psi)).algebra
    n = A.dim

    def image(vec):
        out = gf.normalize(vec, p).copy()
        out[-1] = (out[-1] + psi.evaluate(vec[:-1])) % p
        return out

    for i, j in cochains.index_tuples(n + 1, 2):
        lhs = E2.bracket(image(E1.basis_vector(i)), image(E1.basis_vector(j)))
        rhs = image(E1.bracket_basis(i, j))
        if not ((lhs - rhs) % p == 0).all():
            return False
    return True


def extension_to_json(result: ExtensionResult) -> dict:
    """Algebra JSON plus a provenance block naming the source cocycle."""
    if result.pmap is not None:
        data = restricted.to_json(result.pmap)
    else:
        data = liealg.to_json(result.algebra)
    data["extension_of"] = {
        "base_dim": result.algebra.dim - 1,
        "cocycle": result.source_cocycle,
        "restricted": result.restricted,
    }
    return data
