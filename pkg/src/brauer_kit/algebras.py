"""Finite-rank unital associative algebras given by structure constants.

Basis conventions (all coordinates refer to these):

* ``matrix_algebra(R, n)``: E_{i,j} in row-major order, index ``i*n + j``
* ``quaternion_algebra(R, a, b)``: (1, i, j, ij)
* ``tensor(A, B)``: b_i (x) c_j at index ``i*rank(B) + j``
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field

from .errors import DimensionMismatch, NotAssociative, NotUnit, NotUnital, RingMismatch
from .linalg import Matrix, invert_matrix, is_invertible, rank
from .rings import Ring, parse_ring_spec


class StructureAlgebra:
    """``sc[i][j]`` holds the coordinates of b_i * b_j; ``unit`` those of 1."""

    def __init__(self, ring: Ring, sc, unit, validate=True, name=None):
        self.ring = ring
        self.sc = tuple(tuple(tuple(v) for v in row) for row in sc)
        self.unit = tuple(unit)
        self.rank = len(self.sc)
        self.name = name
        m = self.rank
        if len(self.unit) != m or any(len(row) != m or any(len(v) != m for v in row) for row in self.sc):
            raise DimensionMismatch(f"structure constants are not {m}x{m}x{m}")
        z = ring.zero()
        self._sparse = [[[(l, c) for l, c in enumerate(v) if c != z] for v in row] for row in self.sc]
        if validate:
            self.validate()

    def __repr__(self):
        return f"StructureAlgebra({self.name or 'rank ' + str(self.rank)} over {self.ring})"

    def __eq__(self, other):
        return (isinstance(other, StructureAlgebra) and self.ring == other.ring
                and self.sc == other.sc and self.unit == other.unit)

    def __hash__(self):
        return hash((self.ring, self.sc, self.unit))

    def zero_vec(self):
        return (self.ring.zero(),) * self.rank

    def basis(self, i):
        z, o = self.ring.zero(), self.ring.one()
        return tuple(o if k == i else z for k in range(self.rank))

    def add(self, x, y):
        return tuple(self.ring.add(a, b) for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(self.ring.mul(c, a) for a in x)

    def mul(self, x, y):
        R = self.ring
        z = R.zero()
        acc = [z] * self.rank
        ys = [(j, b) for j, b in enumerate(y) if b != z]
        for i, a in enumerate(x):
            if a == z:
                continue
            row = self._sparse[i]
            for j, b in ys:
                ab = R.mul(a, b)
                for l, c in row[j]:
                    acc[l] = R.add(acc[l], R.mul(ab, c))
        return tuple(acc)

    def validate(self):
        """Associativity on basis triples and the two unit laws."""
        m = self.rank
        for i in range(m):
            for j in range(m):
                bij = self.sc[i][j]
                for k in range(m):
                    left = self.mul(bij, self.basis(k))
                    right = self.mul(self.basis(i), self.sc[j][k])
                    if left != right:
                        raise NotAssociative(
                            f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})", triple=(i, j, k))
        for i in range(m):
            b = self.basis(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise NotUnital(f"unit is not neutral on b{i}", index=i)
        return True

    def left_matrix(self, x):
        """Matrix of y -> x*y."""
        return Matrix.from_columns(self.ring, [self.mul(x, self.basis(j)) for j in range(self.rank)])

    def right_matrix(self, x):
        """Matrix of y -> y*x."""
        return Matrix.from_columns(self.ring, [self.mul(self.basis(j), x) for j in range(self.rank)])

    def to_json(self):
        fmt = self.ring.format
        return {
            "ring": str(self.ring),
            "rank": self.rank,
            "sc": [[[fmt(c) for c in v] for v in row] for row in self.sc],
            "unit": [fmt(c) for c in self.unit],
        }

    @classmethod
    def from_json(cls, obj, ring=None, validate=True):
        ring = ring or parse_ring_spec(obj["ring"])
        sc = [[[ring(c) for c in v] for v in row] for row in obj["sc"]]
        if "rank" in obj and obj["rank"] != len(sc):
            raise DimensionMismatch(f"declared rank {obj['rank']} but {len(sc)} rows of constants")
        return cls(ring, sc, [ring(c) for c in obj["unit"]], validate=validate)


@lru_cache(maxsize=64)
def matrix_algebra(ring: Ring, n: int) -> StructureAlgebra:
    """M_n(R) on the matrix units E_{i,j}, row-major."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    m = n * n
    z, o = ring.zero(), ring.one()
    sc = [[[z] * m for _ in range(m)] for _ in range(m)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                # E_{i,j} E_{j,l} = E_{i,l}
                sc[i * n + j][j * n + l][i * n + l] = o
    unit = [o if idx // n == idx % n else z for idx in range(m)]
    return StructureAlgebra(ring, sc, unit, name=f"M{n}")


def _require_unit(ring, x, what):
    if not ring.is_unit(x):
        raise NotUnit(f"{what} = {ring.format(x)} is not a unit in {ring}")


@lru_cache(maxsize=256)
def quaternion_algebra(ring: Ring, a, b) -> StructureAlgebra:
    """Q(a,b) = R<i,j>/(i^2 = a, j^2 = b, ij = -ji) on the basis (1, i, j, ij)."""
    _require_unit(ring, ring.from_int(2), "2")
    _require_unit(ring, a, "a")
    _require_unit(ring, b, "b")
    z, o = ring.zero(), ring.one()
    neg = ring.neg
    ab = ring.mul(a, b)

    def v(c1=z, ci=z, cj=z, ck=z):
        return [c1, ci, cj, ck]

    table = [
        [v(c1=o), v(ci=o), v(cj=o), v(ck=o)],
        [v(ci=o), v(c1=a), v(ck=o), v(cj=a)],
        [v(cj=o), v(ck=neg(o)), v(c1=b), v(ci=neg(b))],
        [v(ck=o), v(cj=neg(a)), v(ci=b), v(c1=neg(ab))],
    ]
    return StructureAlgebra(ring, table, v(c1=o),
                            name=f"Q({ring.format(a)},{ring.format(b)})")


def diagonal_algebra(ring: Ring, m: int) -> StructureAlgebra:
    """R^m with componentwise multiplication (commutative, never Azumaya for m > 1)."""
    z, o = ring.zero(), ring.one()
    sc = [[[o if (i == j == l) else z for l in range(m)] for j in range(m)] for i in range(m)]
    return StructureAlgebra(ring, sc, [o] * m, name=f"diag{m}")


def opposite(A: StructureAlgebra) -> StructureAlgebra:
    m = A.rank
    sc = [[A.sc[j][i] for j in range(m)] for i in range(m)]
    return StructureAlgebra(A.ring, sc, A.unit, name=f"{A.name}^op" if A.name else None)


def tensor(A: StructureAlgebra, B: StructureAlgebra) -> StructureAlgebra:
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    R = A.ring
    ma, mb = A.rank, B.rank
    sc = []
    for i in range(ma):
        for j in range(mb):
            row = []
            for k in range(ma):
                for l in range(mb):
                    u, w = A.sc[i][k], B.sc[j][l]
                    row.append([R.mul(x, y) for x in u for y in w])
            sc.append(row)
    unit = [R.mul(x, y) for x in A.unit for y in B.unit]
    name = f"{A.name}(x){B.name}" if A.name and B.name else None
    return StructureAlgebra(R, sc, unit, name=name)


def mult_matrices(A: StructureAlgebra, x):
    """(L, Rm): the matrices of y -> x*y and y -> y*x."""
    return A.left_matrix(x), A.right_matrix(x)


def enveloping_matrix(A: StructureAlgebra) -> Matrix:
    """Matrix of A (x) A^op -> End_R(A), a (x) b -> (c -> a c b).

    Column ``i*m + j`` is the row-major flattening of L(b_i) @ Rm(b_j).
    """
    m = A.rank
    Ls = [A.left_matrix(A.basis(i)) for i in range(m)]
    Rs = [A.right_matrix(A.basis(j)) for j in range(m)]
    columns = [(Ls[i] @ Rs[j]).flatten() for i in range(m) for j in range(m)]
    return Matrix.from_columns(A.ring, columns)


@dataclass
class AzumayaReport:
    is_azumaya: bool
    n: int | None
    reason: str
    enveloping_rank: int | None = None

    def to_json(self):
        return {"is_azumaya": self.is_azumaya, "n": self.n, "reason": self.reason,
                "enveloping_rank": self.enveloping_rank}


def azumaya_check(A: StructureAlgebra) -> AzumayaReport:
    """Free of rank (n+1)^2 with invertible enveloping map."""
    m = A.rank
    root = math.isqrt(m)
    if root * root != m or m == 0:
        return AzumayaReport(False, None, f"rank {m} is not a perfect square")
    E = enveloping_matrix(A)
    if not is_invertible(A.ring, E):
        return AzumayaReport(False, None, "enveloping map not invertible",
                             enveloping_rank=rank(A.ring, E))
    return AzumayaReport(True, root - 1, "ok", enveloping_rank=m * m)


@dataclass
class AlgebraMap:
    """Linear map given by its matrix (target rank x source rank)."""

    source: StructureAlgebra
    target: StructureAlgebra
    matrix: Matrix
    hom_verified: bool = field(default=False)

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise DimensionMismatch(
                f"map matrix {self.matrix.shape} for ranks {self.source.rank} -> {self.target.rank}")

    def __call__(self, x):
        return self.matrix.apply(x)

    def image_of_basis(self, i):
        return self.matrix.col(i)

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        return AlgebraMap(other.source, self.target, self.matrix @ other.matrix)

    def is_bijective(self):
        return self.matrix.is_square() and is_invertible(self.matrix.ring, self.matrix)


def hom_check(f: AlgebraMap) -> bool:
    """Unital and multiplicative on all basis pairs; records the outcome."""
    S, T = f.source, f.target
    ok = f(S.unit) == T.unit
    if ok:
        images = [f.image_of_basis(i) for i in range(S.rank)]
        ok = all(f(S.sc[i][j]) == T.mul(images[i], images[j])
                 for i in range(S.rank) for j in range(S.rank))
    f.hom_verified = ok
    return ok


def hom_failure(f: AlgebraMap):
    """First basis pair (i, j) where f fails to be multiplicative, or 'unit'."""
    S, T = f.source, f.target
    if f(S.unit) != T.unit:
        return "unit"
    for i in range(S.rank):
        for j in range(S.rank):
            if f(S.sc[i][j]) != T.mul(f.image_of_basis(i), f.image_of_basis(j)):
                return (i, j)
    return None


def quaternion_split_iso(ring: Ring, b) -> AlgebraMap:
    """Q(1,b) -> M_2(R): i -> diag(1,-1), j -> [[0,b],[1,0]], ij -> [[0,b],[-1,0]]."""
    o, z = ring.one(), ring.zero()
    Q = quaternion_algebra(ring, o, b)
    M2 = matrix_algebra(ring, 2)
    m1 = ring.neg(o)
    images = [
        (o, z, z, o),
        (o, z, z, m1),
        (z, b, o, z),
        (z, b, m1, z),
    ]
    f = AlgebraMap(Q, M2, Matrix.from_columns(ring, images))
    hom_check(f)
    return f


def quaternion_rescale_iso(ring: Ring, a, b, u, v) -> AlgebraMap:
    """Q(u^2 a, v^2 b) -> Q(a, b) sending i -> u i, j -> v j."""
    for name, x in (("u", u), ("v", v)):
        _require_unit(ring, x, name)
    target = quaternion_algebra(ring, a, b)
    source = quaternion_algebra(ring, ring.mul(ring.mul(u, u), a), ring.mul(ring.mul(v, v), b))
    z, o = ring.zero(), ring.one()
    images = [(o, z, z, z), (z, u, z, z), (z, z, v, z), (z, z, z, ring.mul(u, v))]
    f = AlgebraMap(source, target, Matrix.from_columns(ring, images))
    hom_check(f)
    return f


def quaternion_swap_iso(ring: Ring, a, b) -> AlgebraMap:
    """Q(a, b) -> Q(b, a) exchanging i and j, so ij -> ji = -ij."""
    source = quaternion_algebra(ring, a, b)
    target = quaternion_algebra(ring, b, a)
    z, o = ring.zero(), ring.one()
    images = [(o, z, z, z), (z, z, o, z), (z, o, z, z), (z, z, z, ring.neg(o))]
    f = AlgebraMap(source, target, Matrix.from_columns(ring, images))
    hom_check(f)
    return f


def change_basis(A: StructureAlgebra, P: Matrix) -> StructureAlgebra:
    """Re-express A in the basis whose j-th vector has old coordinates P[:, j].

    ``AlgebraMap(result, A, P)`` is then an isomorphism.
    """
    if P.shape != (A.rank, A.rank):
        raise DimensionMismatch(f"basis change of shape {P.shape} for rank {A.rank}")
    Pinv = invert_matrix(A.ring, P)
    cols = P.columns()
    sc = [[Pinv.apply(A.mul(cols[i], cols[j])) for j in range(A.rank)] for i in range(A.rank)]
    return StructureAlgebra(A.ring, sc, Pinv.apply(A.unit))
