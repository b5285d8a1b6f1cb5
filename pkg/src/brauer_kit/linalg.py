"""Exact dense linear algebra over the rings in :mod:`brauer_kit.rings`.

Vectors are tuples of ring elements; subspaces are column spans.  Over Z/p^k
elimination pivots on an entry of minimal p-valuation, so the unit pivots are
exactly the ones that survive reduction mod p.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotFreeOverLocalRing, NotIdempotent, NotInvertible, RingMismatch
from .rings import Ring


class Matrix:
    """Immutable rows x cols matrix. Entries are canonical ring elements."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, data):
        data = tuple(tuple(row) for row in data)
        self.ring = ring
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise DimensionMismatch("ragged matrix rows")
        self.data = data

    @classmethod
    def of(cls, ring, rows):
        """Build from loosely typed entries (ints, strings, fractions)."""
        return cls(ring, [[ring(x) for x in row] for row in rows])

    @classmethod
    def zeros(cls, ring, rows, cols):
        z = ring.zero()
        return cls(ring, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ring, columns, nrows=None):
        columns = [tuple(c) for c in columns]
        if not columns:
            return _empty(ring, nrows or 0, 0)
        return cls(ring, list(zip(*columns)))

    @classmethod
    def unit(cls, ring, n, i, j):
        """The matrix unit E_{i,j}."""
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if (r, c) == (i, j) else z for c in range(n)] for r in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def flatten(self):
        """Row-major entries; the coordinates of a matrix in the E_{i,j} basis."""
        return tuple(x for row in self.data for x in row)

    @classmethod
    def unflatten(cls, ring, vec, n):
        return cls(ring, [vec[i * n:(i + 1) * n] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ring == other.ring and self.data == other.data

    def __hash__(self):
        return hash((self.ring, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(x) for x in row) for row in self.data)
        return f"Matrix({self.ring}, [{body}])"

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.ring.sub
        return Matrix(self.ring, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return self.scale(self.ring.neg(self.ring.one()))

    def __matmul__(self, other):
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        z = R.zero()
        cols = other.columns()
        out = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a != z]
            out_row = []
            for col in cols:
                acc = z
                for k, a in nz:
                    b = col[k]
                    if b != z:
                        acc = R.add(acc, R.mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        if not self.data:
            return _empty(R, 0, other.cols)
        return Matrix(R, out)

    def apply(self, vec):
        """Matrix times column vector (a tuple)."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        R = self.ring
        z = R.zero()
        nz = [(k, v) for k, v in enumerate(vec) if v != z]
        out = []
        for row in self.data:
            acc = z
            for k, v in nz:
                a = row[k]
                if a != z:
                    acc = R.add(acc, R.mul(a, v))
            out.append(acc)
        return tuple(out)

    def scale(self, c):
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, a) for a in row] for row in self.data])

    @property
    def T(self):
        if not self.rows or not self.cols:
            return _empty(self.ring, self.cols, self.rows)
        return Matrix(self.ring, list(zip(*self.data)))

    def transpose(self):
        return self.T

    def kron(self, other):
        self._check_ring(other)
        mul = self.ring.mul
        return Matrix(self.ring, [
            [mul(a, b) for a in arow for b in brow]
            for arow in self.data for brow in other.data
        ])

    def is_square(self):
        return self.rows == self.cols

    def to_json(self):
        fmt = self.ring.format
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[fmt(x) for x in row] for row in self.data]}

    @classmethod
    def from_json(cls, ring, obj):
        entries = obj["entries"]
        m = cls.of(ring, entries) if entries else _empty(ring, obj.get("rows", 0), obj.get("cols", 0))
        if (m.rows, m.cols) != (obj.get("rows", m.rows), obj.get("cols", m.cols)):
            raise DimensionMismatch("declared shape does not match entries")
        return m


def _empty(ring, rows, cols=0):
    m = Matrix.__new__(Matrix)
    m.ring = ring
    m.rows = rows
    m.cols = cols
    m.data = tuple(() for _ in range(rows)) if cols == 0 else tuple((ring.zero(),) * cols for _ in range(rows))
    return m


def mat_ops(ring, op, *args):
    if op == "mul":
        a, b = args
        return a @ b
    if op == "add":
        a, b = args
        return a + b
    if op == "transpose":
        return args[0].T
    if op == "kron":
        a, b = args
        return a.kron(b)
    if op == "identity":
        return Matrix.identity(ring, args[0])
    if op == "scalar_mul":
        c, a = args
        return a.scale(c)
    raise ValueError(f"unknown matrix operation {op!r}")


def _column_echelon(ring, M: Matrix, track=True):
    """Column-reduce M. Returns (columns of E, columns of T, pivot rows, unit flags).

    Rows are scanned top to bottom; at each step the pivot is the first entry
    (row-major over the remaining columns) of minimal valuation.  Unit pivots
    are scaled to 1 and their row is cleared in every other column.
    """
    R = ring
    nrows, ncols = M.rows, M.cols
    cols = [list(c) for c in M.columns()]
    tcols = [list(c) for c in Matrix.identity(R, ncols).columns()] if track else None
    zero = R.zero()
    pivots, unit_flags = [], []
    done = 0
    while done < ncols:
        best = None
        for i in range(nrows):
            for j in range(done, ncols):
                x = cols[j][i]
                if x != zero:
                    v = R.valuation(x)
                    if best is None or v < best[0]:
                        best = (v, i, j)
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        # every remaining entry has valuation >= v, so the first row containing
        # a valuation-v entry is the pivot row
        if v > 0:
            i = next(r for r in range(nrows) for c in range(done, ncols)
                     if cols[c][r] != zero and R.valuation(cols[c][r]) == v)
            j = next(c for c in range(done, ncols) if cols[c][i] != zero and R.valuation(cols[c][i]) == v)
        cols[done], cols[j] = cols[j], cols[done]
        if track:
            tcols[done], tcols[j] = tcols[j], tcols[done]
        piv = cols[done][i]
        inv = R.inv(piv)
        if inv is not None:
            cols[done] = [R.mul(inv, x) for x in cols[done]]
            if track:
                tcols[done] = [R.mul(inv, x) for x in tcols[done]]
            others = [c for c in range(ncols) if c != done]
        else:
            others = list(range(done + 1, ncols))
        for c in others:
            x = cols[c][i]
            if x == zero:
                continue
            f = R.exact_div(x, cols[done][i])
            cols[c] = [R.sub(a, R.mul(f, b)) for a, b in zip(cols[c], cols[done])]
            if track:
                tcols[c] = [R.sub(a, R.mul(f, b)) for a, b in zip(tcols[c], tcols[done])]
        pivots.append(i)
        unit_flags.append(inv is not None)
        done += 1
    return cols, tcols, pivots, unit_flags


def reduced_echelon(ring, M: Matrix):
    """Reduced column echelon form: returns (E, T, pivots) with E = M @ T.

    ``pivots`` lists the pivot row of each leading column, unit pivots only.
    """
    cols, tcols, pivots, units = _column_echelon(ring, M)
    E = Matrix.from_columns(ring, cols) if cols else _empty(ring, M.rows, 0)
    T = Matrix.from_columns(ring, tcols) if tcols else _empty(ring, 0, 0)
    return E, T, [p for p, u in zip(pivots, units) if u]


def rank(ring, M: Matrix) -> int:
    """Number of unit pivots (the usual rank over a field)."""
    _, _, _, units = _column_echelon(ring, M, track=False)
    return sum(units)


def invert_matrix(ring, M: Matrix) -> Matrix:
    """Gauss-Jordan with unit pivots; over a local ring a matrix is invertible
    exactly when every column offers one."""
    if not M.is_square():
        raise DimensionMismatch(f"cannot invert a {M.shape} matrix")
    R = ring
    n = M.rows
    A = [list(r) for r in M.data]
    B = [list(r) for r in Matrix.identity(R, n).data]
    for c in range(n):
        piv = next((r for r in range(c, n) if R.is_unit(A[r][c])), None)
        if piv is None:
            raise NotInvertible("matrix is not invertible")
        A[c], A[piv] = A[piv], A[c]
        B[c], B[piv] = B[piv], B[c]
        inv = R.inv(A[c][c])
        A[c] = [R.mul(inv, x) for x in A[c]]
        B[c] = [R.mul(inv, x) for x in B[c]]
        for r in range(n):
            f = A[r][c]
            if r != c and not R.is_zero(f):
                A[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(A[r], A[c])]
                B[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(B[r], B[c])]
    return Matrix(R, B) if n else _empty(R, 0, 0)


def is_invertible(ring, M: Matrix) -> bool:
    try:
        invert_matrix(ring, M)
    except NotInvertible:
        return False
    return True


def determinant(ring, M: Matrix):
    if not M.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    R = ring
    n = M.rows
    if not R.is_field:
        return _cofactor_det(R, [list(r) for r in M.data])
    A = [list(r) for r in M.data]
    det = R.one()
    for c in range(n):
        piv = next((r for r in range(c, n) if not R.is_zero(A[r][c])), None)
        if piv is None:
            return R.zero()
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = R.neg(det)
        det = R.mul(det, A[c][c])
        inv = R.inv(A[c][c])
        for r in range(c + 1, n):
            f = R.mul(A[r][c], inv)
            if not R.is_zero(f):
                A[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(A[r], A[c])]
    return det


def _cofactor_det(R, A):
    n = len(A)
    if n == 0:
        return R.one()
    if n == 1:
        return A[0][0]
    total = R.zero()
    for j, a in enumerate(A[0]):
        if R.is_zero(a):
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = R.mul(a, _cofactor_det(R, minor))
        total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
    return total


def solve_linear(ring, M: Matrix, b):
    """A solution x of M x = b, or None. Free variables are set to 0.

    Works over Z/p^k as well: rows and columns are diagonalized with
    valuation-minimal pivots, after which each equation is a divisibility test.
    """
    R = ring
    if len(b) != M.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {M.shape} system")
    A = [list(r) for r in M.data]
    rhs = list(b)
    nrows, ncols = M.rows, M.cols
    # column operations on unknowns: x = T y; track T restricted to what we need
    T = [list(r) for r in Matrix.identity(R, ncols).data] if ncols else []
    zero = R.zero()
    r = 0
    while r < min(nrows, ncols):
        best = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                x = A[i][j]
                if x != zero:
                    v = R.valuation(x)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        A[r], A[i] = A[i], A[r]
        rhs[r], rhs[i] = rhs[i], rhs[r]
        if j != r:
            for row in A:
                row[r], row[j] = row[j], row[r]
            for row in T:
                row[r], row[j] = row[j], row[r]
        piv = A[r][r]
        for i2 in range(r + 1, nrows):
            f = A[i2][r]
            if f != zero:
                q = R.exact_div(f, piv)
                A[i2] = [R.sub(x, R.mul(q, y)) for x, y in zip(A[i2], A[r])]
                rhs[i2] = R.sub(rhs[i2], R.mul(q, rhs[r]))
        for j2 in range(r + 1, ncols):
            f = A[r][j2]
            if f != zero:
                q = R.exact_div(f, piv)
                for row in A:
                    row[j2] = R.sub(row[j2], R.mul(q, row[r]))
                for row in T:
                    row[j2] = R.sub(row[j2], R.mul(q, row[r]))
        r += 1
    y = [zero] * ncols
    for i in range(nrows):
        if i < r:
            q = R.exact_div(rhs[i], A[i][i])
            if q is None:
                return None
            y[i] = q
        elif rhs[i] != zero:
            return None
    x = [R.sum(R.mul(T[v][c], y[c]) for c in range(r)) for v in range(ncols)]
    return tuple(x)


def idempotent_image_basis(ring, e: Matrix):
    """Basis of im(e) for an idempotent e: the nonzero columns of its reduced
    column echelon form. Each has a unit pivot (image of an idempotent over a
    local ring is free)."""
    if not e.is_square():
        raise DimensionMismatch("idempotent must be square")
    if e @ e != e:
        raise NotIdempotent("e @ e != e")
    cols, _, pivots, units = _column_echelon(ring, e, track=False)
    if not all(units):
        raise NotFreeOverLocalRing("image has a non-unit pivot")
    return [tuple(c) for c in cols[:len(pivots)]]
