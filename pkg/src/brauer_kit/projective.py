"""Projective points, subspaces in canonical column-echelon form, right ideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DimensionMismatch, NoUnitCoordinate, NotFreeOverLocalRing, NotInvertible, TooLarge
from .linalg import Matrix, _column_echelon, _empty, is_invertible
from .rings import Ring

MAX_ENUMERATION = 10 ** 6


@dataclass(frozen=True)
class ProjPoint:
    """(x_0 : ... : x_n) scaled so the first unit coordinate is 1."""

    ring: Ring
    coords: tuple

    @property
    def n(self):
        return len(self.coords) - 1

    def __str__(self):
        return "(" + ":".join(self.ring.format(x) for x in self.coords) + ")"

    def sort_key(self):
        # colexicographic: last coordinate varies slowest
        return tuple(self.ring.order_key(x) for x in reversed(self.coords))

    def to_json(self):
        return [self.ring.format(x) for x in self.coords]


def make_point(ring: Ring, coords) -> ProjPoint:
    coords = tuple(ring(x) for x in coords)
    if not coords:
        raise DimensionMismatch("a projective point needs at least one coordinate")
    for x in coords:
        inv = ring.inv(x)
        if inv is not None:
            return ProjPoint(ring, tuple(ring.mul(inv, c) for c in coords))
    raise NoUnitCoordinate(f"no unit among coordinates {[ring.format(c) for c in coords]}")


def _nonunits(ring):
    return [x for x in ring.elements() if not ring.is_unit(x)]


def enumerate_points(ring: Ring, n: int):
    """Every point of P^n(R) once, in canonical (colexicographic) order."""
    elements = ring.elements()
    nonunits = _nonunits(ring)
    one = ring.one()
    points = []
    for lead in range(n + 1):
        for before in itertools.product(nonunits, repeat=lead):
            for after in itertools.product(elements, repeat=n - lead):
                points.append(ProjPoint(ring, before + (one,) + after))
    points.sort(key=ProjPoint.sort_key)
    return points


def pgl_apply(P: Matrix, X: ProjPoint) -> ProjPoint:
    if P.shape != (X.n + 1, X.n + 1):
        raise DimensionMismatch(f"{P.shape} matrix acting on P^{X.n}")
    if not is_invertible(P.ring, P):
        raise NotInvertible("homography matrix is not invertible")
    return make_point(X.ring, P.apply(X.coords))


@dataclass(frozen=True)
class Subspace:
    """Free direct summand of R^ambient; ``basis`` is its reduced column echelon form."""

    ring: Ring
    ambient: int
    basis: Matrix
    pivots: tuple

    @property
    def dim(self):
        return len(self.pivots)

    def vectors(self):
        return self.basis.columns()

    def contains(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient}")
        R = self.ring
        acc = [R.zero()] * self.ambient
        for c, p in zip(self.basis.columns(), self.pivots):
            coef = v[p]
            if not R.is_zero(coef):
                acc = [R.add(a, R.mul(coef, b)) for a, b in zip(acc, c)]
        return tuple(acc) == v

    def coordinates(self, v):
        """Coefficients of v in the canonical basis (v must lie in the span)."""
        return tuple(v[p] for p in self.pivots)

    def to_json(self):
        return self.basis.to_json()


def subspace_from_span(ring: Ring, vectors, ambient=None) -> Subspace:
    vectors = [tuple(ring(x) for x in v) for v in vectors]
    if ambient is None:
        if not vectors:
            raise DimensionMismatch("ambient dimension needed for an empty span")
        ambient = len(vectors[0])
    if any(len(v) != ambient for v in vectors):
        raise DimensionMismatch("spanning vectors of unequal length")
    if not vectors:
        return Subspace(ring, ambient, _empty(ring, ambient, 0), ())
    M = Matrix.from_columns(ring, vectors)
    cols, _, pivots, units = _column_echelon(ring, M, track=False)
    if not all(units):
        raise NotFreeOverLocalRing("span has a non-unit pivot, so it is not a free direct summand")
    k = len(pivots)
    basis = Matrix.from_columns(ring, cols[:k]) if k else _empty(ring, ambient, 0)
    return Subspace(ring, ambient, basis, tuple(pivots))


def subspace_from_matrix(ring: Ring, M: Matrix) -> Subspace:
    return subspace_from_span(ring, M.columns(), ambient=M.rows)


def chart_of(S: Subspace):
    """Pivot rows: the lexicographically first rows with a unit minor."""
    return tuple(sorted(S.pivots))


def gaussian_binomial(q: int, N: int, k: int) -> int:
    if k < 0 or k > N:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(ring: Ring, N: int, k: int):
    """Every free rank-k direct summand of R^N once, chart by chart.

    Canonical forms: column c has 1 in its pivot row, 0 in the other pivot rows,
    a non-unit in rows above its pivot and anything below.
    """
    elements = ring.elements()
    if ring.is_field and gaussian_binomial(len(elements), N, k) > MAX_ENUMERATION:
        raise TooLarge(f"Gr_{k}(R^{N}) over {ring} has too many points")
    nonunits = _nonunits(ring)
    zero, one = ring.zero(), ring.one()
    out = []
    for pivots in itertools.combinations(range(N), k):
        pivset = set(pivots)
        slots = [(r, c) for c, p in enumerate(pivots) for r in range(N) if r not in pivset]
        choices = [nonunits if r < pivots[c] else elements for r, c in slots]
        total = 1
        for ch in choices:
            total *= len(ch)
        if len(out) + total > MAX_ENUMERATION:
            raise TooLarge(f"Gr_{k}(R^{N}) over {ring} has too many points")
        for fill in itertools.product(*choices):
            cols = [[zero] * N for _ in range(k)]
            for c, p in enumerate(pivots):
                cols[c][p] = one
            for (r, c), x in zip(slots, fill):
                cols[c][r] = x
            basis = Matrix.from_columns(ring, cols) if k else _empty(ring, N, 0)
            out.append(Subspace(ring, N, basis, pivots))
    return out


@dataclass
class RightIdealRep:
    """A subspace of an algebra tested for closure under right multiplication.

    On failure ``violation`` holds ``(s, t)``: basis column s of the space times
    algebra basis element b_t leaves the space.
    """

    algebra: object
    space: Subspace
    verified: bool
    violation: tuple | None = field(default=None)

    @property
    def dim(self):
        return self.space.dim

    def __bool__(self):
        return self.verified

    def to_json(self):
        return self.space.to_json()


def right_ideal_check(A, S: Subspace) -> RightIdealRep:
    if S.ambient != A.rank:
        raise DimensionMismatch(f"subspace of R^{S.ambient} in an algebra of rank {A.rank}")
    for s, iota in enumerate(S.vectors()):
        for t in range(A.rank):
            if not S.contains(A.mul(iota, A.basis(t))):
                return RightIdealRep(A, S, False, (s, t))
    return RightIdealRep(A, S, True)


def enumerate_right_ideals(A, k: int):
    """Brute force: all rank-k free summands of A closed under right multiplication."""
    reps = (right_ideal_check(A, S) for S in enumerate_subspaces(A.ring, A.rank, k))
    return [rep for rep in reps if rep.verified]
