"""The conic x^2 = a y^2 + b z^2 and its rational parametrization from a point."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DegenerateOutput, DichotomyFailure, NotOnConic, NotUnit
from .projective import ProjPoint, enumerate_points, make_point
from .rings import Ring, integer_vectors_by_height

# coordinate permutations used to move a unit coordinate into first position;
# each is an involution
TRANSFORMS = {
    "identity": (0, 1, 2),
    "swap_xy": (1, 0, 2),
    "swap_xz": (2, 1, 0),
}


def _permute(name, coords):
    perm = TRANSFORMS[name]
    return tuple(coords[i] for i in perm)


def _require_units(ring, **values):
    for name, x in values.items():
        if not ring.is_unit(x):
            raise NotUnit(f"{name} = {ring.format(x)} is not a unit in {ring}")


def conic_value(ring, a, b, coords):
    """x^2 - a y^2 - b z^2."""
    x, y, z = coords
    R = ring
    return R.sub(R.sub(R.mul(x, x), R.mul(a, R.mul(y, y))), R.mul(b, R.mul(z, z)))


def on_conic(ring: Ring, a, b, X: ProjPoint) -> bool:
    return ring.is_zero(conic_value(ring, a, b, X.coords))


def conic_points(ring: Ring, a, b):
    return [X for X in enumerate_points(ring, 2) if on_conic(ring, a, b, X)]


def find_point(ring: Ring, a, b, bound: int = 20):
    """First point in canonical order; over QQ only integer triples of height <= bound."""
    _require_units(ring, a=a, b=b)
    if ring.is_finite:
        return next((X for X in enumerate_points(ring, 2) if on_conic(ring, a, b, X)), None)
    for vec in integer_vectors_by_height(3, bound):
        X = make_point(ring, vec)
        if on_conic(ring, a, b, X):
            return X
    return None


@dataclass(frozen=True)
class PointedConic:
    """C(a, b) with a point (1 : y0 : z0), so a y0^2 + b z0^2 = 1.

    ``a``, ``b`` describe the conic after ``transform``; ``orig_a``, ``orig_b``
    and ``base_point`` are what the caller supplied.
    """

    ring: Ring
    a: object
    b: object
    y0: object
    z0: object
    orig_a: object
    orig_b: object
    base_point: ProjPoint
    transform: str = "identity"

    def __post_init__(self):
        R = self.ring
        lhs = R.add(R.mul(self.a, R.mul(self.y0, self.y0)), R.mul(self.b, R.mul(self.z0, self.z0)))
        assert lhs == R.one(), "pointed conic invariant a y0^2 + b z0^2 = 1 violated"
        assert R.is_unit(R.from_int(2))

    def to_json(self):
        f = self.ring.format
        return {"a": f(self.a), "b": f(self.b), "y0": f(self.y0), "z0": f(self.z0),
                "orig_a": f(self.orig_a), "orig_b": f(self.orig_b),
                "base_point": self.base_point.to_json(), "transform": self.transform}


def normalize_base_point(ring: Ring, a, b, X: ProjPoint):
    """Move a unit coordinate of X to the front and scale it to 1.

    x unit: keep C(a, b).  y unit: swap x and y, giving C(1/a, -b/a).
    z unit: swap x and z, giving C(-a/b, 1/b).
    """
    _require_units(ring, a=a, b=b, two=ring.from_int(2))
    if not on_conic(ring, a, b, X):
        raise NotOnConic(f"{X} is not on C({ring.format(a)},{ring.format(b)})")
    R = ring
    x, y, z = X.coords
    if R.is_unit(x):
        name, na, nb = "identity", a, b
    elif R.is_unit(y):
        ainv = R.inv(a)
        name, na, nb = "swap_xy", ainv, R.neg(R.mul(b, ainv))
    elif R.is_unit(z):
        binv = R.inv(b)
        name, na, nb = "swap_xz", R.neg(R.mul(a, binv)), binv
    else:
        raise DegenerateOutput(f"{X} has no unit coordinate")
    p = _permute(name, X.coords)
    inv = R.inv(p[0])
    pc = PointedConic(R, na, nb, R.mul(inv, p[1]), R.mul(inv, p[2]), a, b, X, name)
    return pc, name


def psi(pc: PointedConic, UV: ProjPoint) -> ProjPoint:
    """P^1 -> C(a, b) through the base point (on the normalized conic)."""
    R = pc.ring
    a, b, y0, z0 = pc.a, pc.b, pc.y0, pc.z0
    u, v = UV.coords
    au2 = R.mul(a, R.mul(u, u))
    bv2 = R.mul(b, R.mul(v, v))
    uv2 = R.mul(R.from_int(2), R.mul(u, v))
    diff = R.sub(au2, bv2)
    coords = (
        R.add(au2, bv2),
        R.add(R.mul(y0, diff), R.mul(uv2, R.mul(b, z0))),
        R.sub(R.mul(z0, diff), R.mul(uv2, R.mul(a, y0))),
    )
    if not any(R.is_unit(c) for c in coords):
        raise DegenerateOutput(f"psi{UV} has no unit coordinate")
    X = make_point(R, coords)
    assert on_conic(R, a, b, X)
    return X


def phi(pc: PointedConic, X: ProjPoint) -> ProjPoint:
    """Inverse of psi, using whichever of x +- (a y0 y + b z0 z) is a unit."""
    R = pc.ring
    a, b, y0, z0 = pc.a, pc.b, pc.y0, pc.z0
    if not on_conic(R, a, b, X):
        raise NotOnConic(f"{X} is not on the pointed conic")
    x, y, z = X.coords
    lin = R.add(R.mul(a, R.mul(y0, y)), R.mul(b, R.mul(z0, z)))
    cross = R.sub(R.mul(z0, y), R.mul(y0, z))
    inv1 = R.inv(R.add(x, lin))
    inv2 = R.inv(R.sub(x, lin))
    if inv1 is None and inv2 is None:
        raise DichotomyFailure(f"neither chart denominator is a unit at {X}")
    if inv1 is not None and inv2 is not None:
        # (x^2 - lin^2) = ab cross^2 makes the two charts agree
        first = R.mul(R.mul(a, cross), inv1)
        second = R.mul(R.mul(b, cross), inv2)
        assert R.mul(first, second) == R.one()
    if inv1 is not None:
        return make_point(R, (R.one(), R.mul(R.mul(a, cross), inv1)))
    return make_point(R, (R.mul(R.mul(b, cross), inv2), R.one()))


@dataclass
class Parametrization:
    """Mutually inverse maps P^1 <-> C(a, b) for the conic the caller supplied."""

    pointed: PointedConic
    verification: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.pointed.ring

    def to_conic(self, UV: ProjPoint) -> ProjPoint:
        Y = psi(self.pointed, UV)
        return make_point(self.ring, _permute(self.pointed.transform, Y.coords))

    def to_line(self, X: ProjPoint) -> ProjPoint:
        pc = self.pointed
        if not on_conic(self.ring, pc.orig_a, pc.orig_b, X):
            raise NotOnConic(f"{X} is not on the conic")
        return phi(pc, make_point(self.ring, _permute(pc.transform, X.coords)))

    def verify(self, samples=25, seed=0, height=20):
        """Exhaustive roundtrips over a finite field, sampled ones over QQ."""
        R = self.ring
        pc = self.pointed
        if R.is_finite:
            line = enumerate_points(R, 1)
            conic = conic_points(R, pc.orig_a, pc.orig_b)
            images = [self.to_conic(UV) for UV in line]
            self.verification = {
                "line_points": len(line),
                "conic_points": len(conic),
                "phi_psi_identity": all(self.to_line(X) == UV for UV, X in zip(line, images)),
                "psi_phi_identity": all(self.to_conic(self.to_line(X)) == X for X in conic),
                "bijective": sorted(images, key=ProjPoint.sort_key) == conic,
            }
        else:
            rng = random.Random(seed)
            ok_lp = ok_pl = True
            for _ in range(samples):
                UV = make_point(R, (rng.randint(-height, height) or 1, rng.randint(-height, height)))
                X = self.to_conic(UV)
                ok_lp &= self.to_line(X) == UV
                ok_pl &= self.to_conic(self.to_line(X)) == X
            self.verification = {"samples": samples, "seed": seed,
                                 "phi_psi_identity": ok_lp, "psi_phi_identity": ok_pl}
        return all(v for k, v in self.verification.items() if isinstance(v, bool))


def parametrize(ring: Ring, a, b, X: ProjPoint, verify=True, samples=25, seed=0) -> Parametrization:
    pc, _ = normalize_base_point(ring, a, b, X)
    par = Parametrization(pc)
    if verify:
        par.verify(samples=samples, seed=seed)
    return par


def conic_rescale(ring: Ring, a, b, u, v, X: ProjPoint) -> ProjPoint:
    """C(u^2 a, v^2 b) -> C(a, b), (x : y : z) -> (x : u y : v z)."""
    _require_units(ring, u=u, v=v)
    R = ring
    src_a, src_b = R.mul(R.mul(u, u), a), R.mul(R.mul(v, v), b)
    if not on_conic(R, src_a, src_b, X):
        raise NotOnConic(f"{X} is not on C({R.format(src_a)},{R.format(src_b)})")
    x, y, z = X.coords
    return make_point(R, (x, R.mul(u, y), R.mul(v, z)))


def conic_rescale_inverse(ring: Ring, a, b, u, v, X: ProjPoint) -> ProjPoint:
    """C(a, b) -> C(u^2 a, v^2 b), the inverse of :func:`conic_rescale`."""
    _require_units(ring, u=u, v=v)
    R = ring
    if not on_conic(R, a, b, X):
        raise NotOnConic(f"{X} is not on C({R.format(a)},{R.format(b)})")
    x, y, z = X.coords
    return make_point(R, (x, R.mul(R.inv(u), y), R.mul(R.inv(v), z)))
