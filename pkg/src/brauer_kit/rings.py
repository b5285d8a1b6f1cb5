"""Concrete local base rings: QQ, GF(p), GF(p^e) = F_p[x]/(f) and Z/p^k.

Elements are plain immutable Python values kept in canonical form, so ``==``
is ring equality and elements can be hashed:

* ``Rationals``: ``fractions.Fraction``
* ``PrimeField`` / ``LocalIntegers``: ``int`` residue in ``[0, modulus)``
* ``ExtField``: ``tuple`` of ``e`` residues, coefficients low to high
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import InfiniteRing, NotIrreducible, NotPrime, ParseError

MAX_EXT_DEGREE = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_power(n: int):
    """Return (p, k) with n = p**k, or None."""
    if n < 2:
        return None
    p = next(d for d in itertools.count(2) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


class Ring:
    """Common interface; subclasses are frozen dataclasses (hashable specs)."""

    is_field = True
    is_finite = True

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def is_unit(self, x) -> bool:
        return self.inv(x) is not None

    def valuation(self, x) -> float:
        """0 for units; for fields, infinity on zero."""
        return 0 if not self.is_zero(x) else float("inf")

    def exact_div(self, y, x):
        """Some z with x*z = y, or None. Fields only; overridden for Z/p^k."""
        xi = self.inv(x)
        if xi is not None:
            return self.mul(y, xi)
        return self.zero() if self.is_zero(y) else None

    def pow(self, x, e: int):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def sum(self, xs):
        total = self.zero()
        for x in xs:
            total = self.add(total, x)
        return total

    def elements(self):
        raise InfiniteRing(f"{self} has infinitely many elements")

    def size(self) -> int:
        return len(self.elements())

    def order_key(self, x):
        return x

    def __call__(self, value):
        return self.coerce(value)

    def format(self, x) -> str:
        return str(x)


@dataclass(frozen=True)
class Rationals(Ring):
    is_finite = False

    def __str__(self):
        return "QQ"

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return Fraction(value)
        raise ParseError(f"cannot interpret {value!r} as an element of QQ")

    def parse(self, text: str):
        text = text.strip()
        if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", text):
            raise ParseError(f"bad rational {text!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}") from None

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        return None if x == 0 else 1 / x

    def is_zero(self, x):
        return x == 0

    def order_key(self, x):
        return (x.denominator, x.numerator)

    def format(self, x):
        return str(x)


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __str__(self):
        return f"GF({self.p})"

    def from_int(self, n):
        return n % self.p

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.p
        if isinstance(value, Fraction):
            return self.mul(value.numerator % self.p, self._inv_or_raise(value.denominator))
        raise ParseError(f"cannot interpret {value!r} in {self}")

    def _inv_or_raise(self, d):
        inv = self.inv(self.from_int(d))
        if inv is None:
            raise ParseError(f"denominator {d} is not invertible in {self}")
        return inv

    def parse(self, text: str):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/([+-]?\d+))?", text)
        if not m:
            raise ParseError(f"bad element {text!r} for {self}")
        num = int(m.group(1)) % self.p
        if m.group(2) is None:
            return num
        return self.mul(num, self._inv_or_raise(int(m.group(2))))

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return -x % self.p

    def inv(self, x):
        return None if x == 0 else pow(x, -1, self.p)

    def is_zero(self, x):
        return x == 0

    def elements(self):
        return list(range(self.p))

    def size(self):
        return self.p


@dataclass(frozen=True)
class LocalIntegers(Ring):
    """Z/p^k. A field only when k == 1."""

    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.k < 1:
            raise ParseError(f"exponent must be >= 1, got {self.k}")

    @property
    def modulus(self):
        return self.p ** self.k

    @property
    def is_field(self):
        return self.k == 1

    def __str__(self):
        return f"Z/{self.p}^{self.k}"

    def from_int(self, n):
        return n % self.modulus

    _inv_or_raise = PrimeField._inv_or_raise

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.modulus
        if isinstance(value, Fraction):
            return self.mul(value.numerator % self.modulus, self._inv_or_raise(value.denominator))
        raise ParseError(f"cannot interpret {value!r} in {self}")

    def parse(self, text):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/([+-]?\d+))?", text)
        if not m:
            raise ParseError(f"bad element {text!r} for {self}")
        num = int(m.group(1)) % self.modulus
        if m.group(2) is None:
            return num
        return self.mul(num, self._inv_or_raise(int(m.group(2))))

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def mul(self, x, y):
        return (x * y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def inv(self, x):
        if x % self.p == 0:
            return None
        return pow(x, -1, self.modulus)

    def is_zero(self, x):
        return x == 0

    def valuation(self, x):
        if x == 0:
            return self.k
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def exact_div(self, y, x):
        vx, vy = self.valuation(x), self.valuation(y)
        if vy < vx:
            return None
        if vx == self.k:
            return 0  # x == 0 == y
        unit = (x // self.p ** vx) % self.modulus
        quotient = (y // self.p ** vx) % self.modulus
        return self.mul(quotient, pow(unit, -1, self.modulus))

    def elements(self):
        return list(range(self.modulus))

    def size(self):
        return self.modulus


def _poly_divides(p, f, g):
    """Does monic g divide f over F_p? Coefficient lists low-to-high."""
    r = list(f)
    dg = len(g) - 1
    for shift in range(len(r) - 1 - dg, -1, -1):
        c = r[shift + dg]
        if c:
            for i, gi in enumerate(g):
                r[shift + i] = (r[shift + i] - c * gi) % p
    return not any(r)


def is_irreducible(p: int, modulus) -> bool:
    d = len(modulus) - 1
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(p, modulus, list(low) + [1]):
                return False
    return True


@dataclass(frozen=True)
class ExtField(Ring):
    """F_p[x]/(modulus); modulus monic, low-to-high, irreducible, degree 2..4."""

    p: int
    modulus: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in self.modulus))
        d = len(self.modulus) - 1
        if self.modulus[-1] != 1:
            raise ParseError("modulus must be monic")
        if not 2 <= d <= MAX_EXT_DEGREE:
            raise ParseError(f"extension degree must be between 2 and {MAX_EXT_DEGREE}")
        if not is_irreducible(self.p, self.modulus):
            raise NotIrreducible(f"modulus {list(self.modulus)} is reducible over GF({self.p})")

    @property
    def degree(self):
        return len(self.modulus) - 1

    def __str__(self):
        return f"GF({self.p}^{self.degree};{','.join(map(str, self.modulus))})"

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int) and not isinstance(value, bool):
            return self.from_int(value)
        if isinstance(value, (tuple, list)) and len(value) == self.degree:
            return tuple(int(c) % self.p for c in value)
        if isinstance(value, Fraction):
            den = self.inv(self.from_int(value.denominator))
            if den is None:
                raise ParseError(f"denominator of {value} vanishes in {self}")
            return self.mul(self.from_int(value.numerator), den)
        raise ParseError(f"cannot interpret {value!r} in {self}")

    def parse(self, text):
        text = text.strip()
        m = re.fullmatch(r"\[\s*([+-]?\d+(?:\s*,\s*[+-]?\d+)*)\s*\]", text)
        if m:
            coeffs = [int(c) for c in m.group(1).split(",")]
            if len(coeffs) != self.degree:
                raise ParseError(f"expected {self.degree} coefficients, got {text!r}")
            return tuple(c % self.p for c in coeffs)
        if re.fullmatch(r"[+-]?\d+", text):
            return self.from_int(int(text))
        raise ParseError(f"bad element {text!r} for {self}")

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.p for a in x)

    def mul(self, x, y):
        d, p = self.degree, self.p
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        for top in range(2 * d - 2, d - 1, -1):
            c = prod[top] % p
            if c:
                for i in range(d):
                    prod[top - d + i] -= c * self.modulus[i]
        return tuple(c % p for c in prod[:d])

    def inv(self, x):
        if not any(x):
            return None
        return self.pow(x, self.p ** self.degree - 2)

    def elements(self):
        return [tuple(c) for c in itertools.product(range(self.p), repeat=self.degree)]

    def size(self):
        return self.p ** self.degree

    def format(self, x):
        return "[" + ",".join(map(str, x)) + "]"


def parse_ring_spec(text: str) -> Ring:
    """Parse ``QQ``, ``GF(p)``, ``GF(p^e;c0,...,1)``, ``Z/p^k`` or ``Z/N``."""
    s = text.strip().replace(" ", "")
    if s in ("QQ", "Q"):
        return Rationals()
    m = re.fullmatch(r"GF\((\d+)\)", s)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"GF\((\d+)\^(\d+);([+-]?\d+(?:,[+-]?\d+)*)\)", s)
    if m:
        p, e = int(m.group(1)), int(m.group(2))
        coeffs = tuple(int(c) for c in m.group(3).split(","))
        if len(coeffs) != e + 1:
            raise ParseError(f"GF({p}^{e}) needs {e + 1} modulus coefficients")
        return ExtField(p, coeffs)
    m = re.fullmatch(r"Z/(\d+)\^(\d+)", s)
    if m:
        return LocalIntegers(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"Z/(\d+)", s)
    if m:
        n = int(m.group(1))
        pk = _prime_power(n)
        if pk is None:
            raise NotPrime(f"{n} is not a prime power")
        return LocalIntegers(*pk)
    raise ParseError(f"unrecognized ring spec {text!r}")


def ring_arith(ring: Ring, op: str, x, y=None):
    if op == "add":
        return ring.add(x, y)
    if op == "sub":
        return ring.sub(x, y)
    if op == "mul":
        return ring.mul(x, y)
    if op == "neg":
        return ring.neg(x)
    raise ValueError(f"unknown ring operation {op!r}")


def unit_inverse(ring: Ring, x):
    return ring.inv(x)


def enumerate_elements(ring: Ring):
    return ring.elements()


def integer_search_order(bound: int):
    """0, 1, -1, 2, -2, ... up to +-bound."""
    yield 0
    for t in range(1, bound + 1):
        yield t
        yield -t


def primitive(vec):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    return tuple(v // g for v in vec) if g > 1 else tuple(vec)


def integer_vectors_by_height(m: int, bound: int):
    """Primitive integer vectors of height 1..bound, first nonzero entry positive.

    Ordered by height, then colexicographically in the order 0, 1, -1, 2, ...
    Each line through the origin appears once.
    """
    order = list(integer_search_order(bound))
    for h in range(1, bound + 1):
        level = np.array([t for t in order if abs(t) <= h], dtype=np.int64)
        grids = np.meshgrid(*([level] * m), indexing="ij")
        vecs = np.stack([g.ravel() for g in grids], axis=1)[:, ::-1]
        keep = np.abs(vecs).max(axis=1) == h
        first = vecs[np.arange(len(vecs)), (vecs != 0).argmax(axis=1)]
        keep &= first > 0
        keep &= np.gcd.reduce(vecs, axis=1) == 1
        for row in vecs[keep].tolist():
            yield tuple(row)
