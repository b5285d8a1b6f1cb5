"""Right ideals of matrix algebras as projective points, matrix-unit conjugators,
and explicit splitting of an Azumaya algebra from one of its right ideals."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .algebras import AlgebraMap, StructureAlgebra, azumaya_check, hom_check, matrix_algebra
from .errors import (BadRelations, DimensionMismatch, NotAutomorphism, NotAzumaya, NotFaithful,
                     NotFreeOverLocalRing, NotInDeltaImage, NotInvertible, NotRightIdeal,
                     WrongIdealRank)
from .linalg import Matrix, idempotent_image_basis, invert_matrix
from .projective import (ProjPoint, RightIdealRep, Subspace, enumerate_points, make_point,
                         right_ideal_check, subspace_from_span)
from .rings import integer_vectors_by_height


def _ideal_space(I) -> Subspace:
    return I.space if isinstance(I, RightIdealRep) else I


def delta(ring, X: ProjPoint) -> RightIdealRep:
    """The right ideal {M : x_i M_j = x_j M_i} of M_{n+1}, M_j the j-th row.

    Spanned by the matrices X u_j^T (column j equal to X, zero elsewhere).
    """
    size = X.n + 1
    z = ring.zero()
    gens = []
    for j in range(size):
        gens.append(tuple(X.coords[r] if c == j else z for r in range(size) for c in range(size)))
    S = subspace_from_span(ring, gens)
    rep = right_ideal_check(matrix_algebra(ring, size), S)
    assert rep.verified and rep.dim == size
    return rep


def delta_inv(ring, I) -> ProjPoint:
    S = _ideal_space(I)
    size = math.isqrt(S.ambient)
    if size * size != S.ambient or S.dim != size:
        raise NotInDeltaImage(f"a subspace of dimension {S.dim} in R^{S.ambient} is not some delta(X)")
    M = Matrix.unflatten(ring, S.vectors()[0], size)
    for col in M.columns():
        if any(ring.is_unit(x) for x in col):
            X = make_point(ring, col)
            break
    else:
        raise NotInDeltaImage("first basis matrix has no column containing a unit")
    if delta(ring, X).space != S:
        raise NotInDeltaImage(f"subspace is not delta{X}")
    return X


def conjugate_ideal(ring, P: Matrix, I) -> RightIdealRep:
    """Canonical form of P I P^-1."""
    S = _ideal_space(I)
    size = P.rows
    Pinv = invert_matrix(ring, P)
    gens = [(P @ Matrix.unflatten(ring, v, size) @ Pinv).flatten() for v in S.vectors()]
    rep = right_ideal_check(matrix_algebra(ring, size), subspace_from_span(ring, gens, ambient=S.ambient))
    assert rep.verified
    return rep


def standard_units(ring, size):
    return [[Matrix.unit(ring, size, i, j) for j in range(size)] for i in range(size)]


def check_matrix_units(ring, e):
    """Raise BadRelations unless e[i][j] e[k][l] = delta_jk e[i][l] and sum e[i][i] = 1."""
    size = len(e)
    zero = Matrix.zeros(ring, size, size)
    for i, j, k, l in itertools.product(range(size), repeat=4):
        expected = e[i][l] if j == k else zero
        if e[i][j] @ e[k][l] != expected:
            raise BadRelations(f"e[{i}][{j}] e[{k}][{l}] has the wrong value", indices=(i, j, k, l))
    total = zero
    for i in range(size):
        total = total + e[i][i]
    if total != Matrix.identity(ring, size):
        raise BadRelations("diagonal units do not sum to the identity")


def matrix_units_conjugator(ring, e) -> Matrix:
    """P in GL_{n+1} with e[i][j] = P E_{i,j} P^-1.

    v_0 generates the image of e[0][0], v_i = e[i][0] v_0, P = (v_0 ... v_n).
    """
    size = len(e)
    if any(len(row) != size for row in e) or any(m.shape != (size, size) for row in e for m in row):
        raise BadRelations(f"expected a {size}x{size} family of {size}x{size} matrices")
    check_matrix_units(ring, e)
    image = idempotent_image_basis(ring, e[0][0])
    if len(image) != 1:
        raise BadRelations(f"e[0][0] has rank {len(image)}, expected 1")
    v0 = image[0]
    P = Matrix.from_columns(ring, [e[i][0].apply(v0) for i in range(size)])
    Pinv = invert_matrix(ring, P)
    E = standard_units(ring, size)
    for i in range(size):
        for j in range(size):
            assert P @ E[i][j] @ Pinv == e[i][j]
    return P


def normalize_pgl(ring, P: Matrix) -> Matrix:
    """Scale so the first unit entry in row-major order is 1."""
    for x in P.flatten():
        inv = ring.inv(x)
        if inv is not None:
            return P.scale(inv)
    raise NotInvertible("matrix has no unit entry")


def scalar_ratio(ring, P: Matrix, Q: Matrix):
    """The unit lambda with Q = lambda P, or None."""
    prod = invert_matrix(ring, P) @ Q
    lam = prod[0, 0]
    if not ring.is_unit(lam) or prod != Matrix.identity(ring, P.rows).scale(lam):
        return None
    return lam


def inner_automorphism(ring, n: int, P: Matrix) -> AlgebraMap:
    """M -> P M P^-1 on M_{n+1}."""
    size = n + 1
    if P.shape != (size, size):
        raise DimensionMismatch(f"{P.shape} matrix for M_{size}")
    Pinv = invert_matrix(ring, P)
    A = matrix_algebra(ring, size)
    cols = [(P @ Matrix.unit(ring, size, i, j) @ Pinv).flatten()
            for i in range(size) for j in range(size)]
    f = AlgebraMap(A, A, Matrix.from_columns(ring, cols))
    hom_check(f)
    return f


def automorphism_to_pgl(ring, n: int, sigma: AlgebraMap) -> Matrix:
    """Normalized P with sigma(M) = P M P^-1 for every M."""
    size = n + 1
    if sigma.source.rank != size * size or sigma.target.rank != size * size:
        raise NotAutomorphism(f"map is not an endomorphism of M_{size}")
    if not hom_check(sigma):
        raise NotAutomorphism("map is not multiplicative or not unital")
    if not sigma.is_bijective():
        raise NotAutomorphism("map is not bijective")
    e = [[Matrix.unflatten(ring, sigma.image_of_basis(i * size + j), size) for j in range(size)]
         for i in range(size)]
    P = normalize_pgl(ring, matrix_units_conjugator(ring, e))
    assert inner_automorphism(ring, n, P).matrix == sigma.matrix
    return P


def split_by_ideal(A: StructureAlgebra, I) -> AlgebraMap:
    """Phi: A -> M_{n+1}, a -> transpose of (c -> c a) restricted to I.

    Right multiplications compose contravariantly, the transpose turns the
    resulting anti-homomorphism into a homomorphism.
    """
    report = azumaya_check(A)
    if not report.is_azumaya:
        raise NotAzumaya(report.reason)
    size = report.n + 1
    S = _ideal_space(I)
    if S.ambient != A.rank:
        raise DimensionMismatch(f"ideal lives in R^{S.ambient}, algebra has rank {A.rank}")
    rep = right_ideal_check(A, S)
    if not rep.verified:
        raise NotRightIdeal("subspace is not closed under right multiplication", violation=rep.violation)
    if S.dim != size:
        raise WrongIdealRank(f"ideal has rank {S.dim}, expected {size}")
    R = A.ring
    basis = S.vectors()
    images = []
    for t in range(A.rank):
        b = A.basis(t)
        right = Matrix.from_columns(R, [S.coordinates(A.mul(iota, b)) for iota in basis])
        images.append(right.T.flatten())
    phi = AlgebraMap(A, matrix_algebra(R, size), Matrix.from_columns(R, images))
    if not hom_check(phi) or not phi.is_bijective():
        raise NotFaithful("induced map to M_{n+1} is not an isomorphism")
    return phi


def transport_ideal(phi: AlgebraMap, J) -> Subspace:
    S = _ideal_space(J)
    return subspace_from_span(phi.target.ring, [phi(v) for v in S.vectors()],
                              ambient=phi.target.rank)


def chatelet_point_map(A: StructureAlgebra, phi: AlgebraMap, J) -> ProjPoint:
    """The point of P^n corresponding to the right ideal J of A under phi."""
    S = _ideal_space(J)
    if not right_ideal_check(A, S).verified:
        raise NotRightIdeal("J is not a right ideal of A")
    return delta_inv(A.ring, transport_ideal(phi, S))


def _ideal_generated(A, a):
    """a A as a subspace, or None when it is not a free summand."""
    try:
        return subspace_from_span(A.ring, [A.mul(a, A.basis(t)) for t in range(A.rank)],
                                  ambient=A.rank)
    except NotFreeOverLocalRing:
        return None


_MOD_P = 2147483647


def _full_rank_mod_p(mats, p=_MOD_P):
    """Batched test: which square int64 matrices (entries in [0, p)) are invertible mod p."""
    M = mats.copy()
    count, m, _ = M.shape
    ok = np.ones(count, dtype=bool)
    idx = np.arange(count)
    for c in range(m):
        nz = M[:, c:, c] != 0
        ok &= nz.any(axis=1)
        piv = c + nz.argmax(axis=1)
        top = M[idx, c].copy()
        M[idx, c] = M[idx, piv]
        M[idx, piv] = top
        inv = _pow_mod(M[:, c, c], p - 2, p)
        factors = (M[:, c + 1:, c] * inv[:, None]) % p
        for r in range(factors.shape[1]):
            M[:, c + 1 + r] = (M[:, c + 1 + r] - (factors[:, r, None] * M[:, c]) % p) % p
    return ok


def _pow_mod(x, e, p):
    result = np.ones_like(x)
    base = x % p
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def _rational_search(A, size, bound, chunk=4096):
    R = A.ring
    m = A.rank
    denom = 1
    for row in A.sc:
        for v in row:
            for c in v:
                denom = denom * c.denominator // math.gcd(denom, c.denominator)
    # left multiplication tensor: L(a)[l, t] = sum_i a_i sc[i][t][l]
    tens = np.array([[[int(A.sc[i][t][l] * denom) % _MOD_P for t in range(m)] for l in range(m)]
                     for i in range(m)], dtype=np.int64)
    batch = []

    def flush(batch):
        vecs = np.array(batch, dtype=np.int64) % _MOD_P
        mats = np.zeros((len(batch), m, m), dtype=np.int64)
        for i in range(m):
            mats = (mats + (vecs[:, i, None, None] * tens[i]) % _MOD_P) % _MOD_P
        full = _full_rank_mod_p(mats)
        for vec, is_full in zip(batch, full):
            if is_full:
                continue  # a is a unit of A, so aA = A
            S = _ideal_generated(A, tuple(R(t) for t in vec))
            if S is not None and S.dim == size:
                rep = right_ideal_check(A, S)
                if rep.verified:
                    return rep
        return None

    for vec in integer_vectors_by_height(m, bound):
        batch.append(vec)
        if len(batch) == chunk:
            found = flush(batch)
            if found is not None:
                return found
            batch = []
    if batch:
        return flush(batch)
    return None


def find_right_ideal(A: StructureAlgebra, bound: int = 10):
    """First right ideal a*A of rank n+1 in canonical order of a, or None.

    None only means the search budget ran out.  Over QQ, ``bound`` caps the
    height of the integer coordinate vectors tried.
    """
    report = azumaya_check(A)
    if not report.is_azumaya:
        raise NotAzumaya(report.reason)
    size = report.n + 1
    R = A.ring
    if not R.is_finite:
        return _rational_search(A, size, bound)
    for X in enumerate_points(R, A.rank - 1):
        S = _ideal_generated(A, X.coords)
        if S is not None and S.dim == size:
            rep = right_ideal_check(A, S)
            if rep.verified:
                return rep
    return None
