"""Brute-force oracle suites, shared by ``brauer-kit selftest`` and the test suite.

Each suite returns a :class:`CheckResult`; a suite passes when every check holds
and it finishes inside its wall-clock budget.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebras as alg
from .conics import conic_points, parametrize
from .errors import BrauerKitError, NotAutomorphism, NotInDeltaImage, NotInvertible
from .linalg import Matrix, idempotent_image_basis, invert_matrix, is_invertible, reduced_echelon
from .projective import (enumerate_points, enumerate_right_ideals, enumerate_subspaces,
                         gaussian_binomial, make_point, pgl_apply, subspace_from_span)
from .rings import LocalIntegers, PrimeField, Rationals, parse_ring_spec
from .severi_brauer import (automorphism_to_pgl, chatelet_point_map, conjugate_ideal, delta,
                            delta_inv, find_right_ideal, inner_automorphism,
                            matrix_units_conjugator, normalize_pgl, scalar_ratio, split_by_ideal,
                            standard_units)


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    budget: float
    counts: dict = field(default_factory=dict)
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        counts = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.name} ({self.seconds:.2f}s / {self.budget:g}s) {counts}{extra}"

    def to_json(self, timing=True):
        doc = {"name": self.name, "passed": self.passed, "budget": self.budget,
               "counts": self.counts, "detail": self.detail}
        if timing:
            doc["seconds"] = round(self.seconds, 3)
        return doc


def random_invertible(ring, size, rng):
    elements = ring.elements()
    while True:
        P = Matrix(ring, [[rng.choice(elements) for _ in range(size)] for _ in range(size)])
        if is_invertible(ring, P):
            return P


def _timed(name, budget, fn):
    start = time.perf_counter()
    counts = {}
    try:
        ok, detail = fn(counts)
    except (BrauerKitError, AssertionError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if ok and elapsed > budget:
        ok, detail = False, f"over budget ({elapsed:.2f}s)"
    return CheckResult(name, ok, elapsed, budget, counts, detail)


def delta_bijection(fields=(2, 3)):
    def run(counts):
        for q in fields:
            F = PrimeField(q)
            M2 = alg.matrix_algebra(F, 2)
            subspaces = enumerate_subspaces(F, 4, 2)
            if len(subspaces) != gaussian_binomial(q, 4, 2):
                return False, f"GF({q}): {len(subspaces)} subspaces"
            ideals = {rep.space for rep in enumerate_right_ideals(M2, 2)}
            points = enumerate_points(F, 1)
            images = {delta(F, X).space for X in points}
            if ideals != images or len(images) != len(points):
                return False, f"GF({q}): right ideals differ from the image of delta"
            if any(delta_inv(F, delta(F, X)) != X for X in points):
                return False, f"GF({q}): delta_inv does not invert delta"
            counts[f"GF({q})_subspaces"] = len(subspaces)
            counts[f"GF({q})_ideals"] = len(ideals)
        return True, ""
    return _timed("delta bijection", 1.0, run)


def delta_roundtrips(cases=((2, 1), (3, 1), (5, 1), (2, 2), (3, 2))):
    def run(counts):
        total = 0
        for q, n in cases:
            F = PrimeField(q)
            for X in enumerate_points(F, n):
                if delta_inv(F, delta(F, X)) != X:
                    return False, f"roundtrip fails at {X} over GF({q})"
                total += 1
        counts["points"] = total
        return True, ""
    return _timed("delta roundtrips", 5.0, run)


def equivariance(seed=0, per_case=10):
    def run(counts):
        rng = random.Random(seed)
        checked = 0
        for q, n in ((3, 1), (5, 1), (3, 2)):
            F = PrimeField(q)
            points = enumerate_points(F, n)
            ideals = {X: delta(F, X) for X in points}
            for _ in range(per_case):
                P = random_invertible(F, n + 1, rng)
                for X in points:
                    if delta(F, pgl_apply(P, X)).space != conjugate_ideal(F, P, ideals[X]).space:
                        return False, f"GF({q}) n={n}: equivariance fails at {X}"
                    checked += 1
        counts["checks"] = checked
        return True, ""
    return _timed("equivariance", 2.0, run)


def conjugator_recovery(seed=0, count=50):
    def run(counts):
        rng = random.Random(seed)
        F = PrimeField(5)
        for n in (1, 2):
            size = n + 1
            E = standard_units(F, size)
            for _ in range(count):
                P = random_invertible(F, size, rng)
                Pinv = invert_matrix(F, P)
                e = [[P @ E[i][j] @ Pinv for j in range(size)] for i in range(size)]
                P2 = matrix_units_conjugator(F, e)
                P2inv = invert_matrix(F, P2)
                if any(P2 @ E[i][j] @ P2inv != e[i][j] for i in range(size) for j in range(size)):
                    return False, "conjugation identity fails"
                if scalar_ratio(F, P, P2) is None:
                    return False, "recovered matrix is not a scalar multiple"
            counts[f"n={n}"] = count
        return True, ""
    return _timed("conjugator recovery", 2.0, run)


def transpose_map(ring, size):
    A = alg.matrix_algebra(ring, size)
    cols = [Matrix.unit(ring, size, j, i).flatten() for i in range(size) for j in range(size)]
    return alg.AlgebraMap(A, A, Matrix.from_columns(ring, cols))


def skolem_noether(seed=0, count=20):
    def run(counts):
        rng = random.Random(seed)
        for q in (5, 7):
            F = PrimeField(q)
            for n in (0, 1, 2):
                for _ in range(count):
                    P = random_invertible(F, n + 1, rng)
                    if automorphism_to_pgl(F, n, inner_automorphism(F, n, P)) != normalize_pgl(F, P):
                        return False, f"GF({q}) n={n}: roundtrip differs"
            try:
                automorphism_to_pgl(F, 1, transpose_map(F, 2))
                return False, f"GF({q}): transpose accepted"
            except NotAutomorphism:
                pass
            counts[f"GF({q})"] = 3 * count
        return True, ""
    return _timed("Skolem-Noether roundtrip", 2.0, run)


def envelope_matches_units(ring):
    """E_ij (x) E_kl must act as C_ijkl: E_jk -> E_il, other units -> 0."""
    A = alg.matrix_algebra(ring, 2)
    env = alg.enveloping_matrix(A)
    for i, j, k, l in ((a, b, c, d) for a in range(2) for b in range(2) for c in range(2) for d in range(2)):
        endo = Matrix.unflatten(ring, env.col((2 * i + j) * 4 + (2 * k + l)), 4)
        for s in range(2):
            for t in range(2):
                expected = A.basis(2 * i + l) if (s, t) == (j, k) else A.zero_vec()
                if endo.apply(A.basis(2 * s + t)) != expected:
                    return False
    return True


def azumaya_suite():
    def run(counts):
        F = PrimeField(5)
        Q = Rationals()
        for n in (0, 1, 2):
            rep = alg.azumaya_check(alg.matrix_algebra(F, n + 1))
            if not rep.is_azumaya or rep.n != n:
                return False, f"M_{n + 1}(GF(5)) rejected"
        for a in range(1, 5):
            for b in range(1, 5):
                if not alg.azumaya_check(alg.quaternion_algebra(F, a, b)).is_azumaya:
                    return False, f"Q({a},{b}) rejected"
        if not alg.azumaya_check(alg.quaternion_algebra(Q, Q(-1), Q(-1))).is_azumaya:
            return False, "Q(-1,-1)/QQ rejected"
        diag = alg.azumaya_check(alg.diagonal_algebra(F, 4))
        if diag.is_azumaya or "enveloping" not in diag.reason:
            return False, "diagonal rank-4 algebra accepted"
        rank3 = alg.azumaya_check(alg.diagonal_algebra(F, 3))
        if rank3.is_azumaya or "perfect square" not in rank3.reason:
            return False, "rank-3 algebra accepted"
        if not envelope_matches_units(F):
            return False, "enveloping matrix of M_2 does not send E_ij(x)E_kl to C_ijkl"
        counts["algebras"] = 3 + 16 + 1 + 2
        return True, ""
    return _timed("Azumaya suite", 3.0, run)


def _chatelet_case(A, F, points):
    I = find_right_ideal(A)
    if I is None:
        return "no right ideal found"
    phi = split_by_ideal(A, I)
    if not phi.hom_verified or not phi.is_bijective():
        return "splitting map is not an isomorphism"
    ideals = enumerate_right_ideals(A, 2)
    images = [chatelet_point_map(A, phi, J) for J in ideals]
    if len(ideals) != len(points) or set(images) != set(points) or len(set(images)) != len(images):
        return f"{len(ideals)} ideals do not map bijectively onto P^1"
    return None


def chatelet_pipeline(seed=0, count=10):
    def run(counts):
        rng = random.Random(seed)
        F = PrimeField(5)
        points = enumerate_points(F, 1)
        M2 = alg.matrix_algebra(F, 2)
        cases = [("M2 basis change", alg.change_basis(M2, random_invertible(F, 4, rng)))
                 for _ in range(count)]
        cases += [("Q(1,1)", alg.quaternion_algebra(F, 1, 1)), ("Q(2,3)", alg.quaternion_algebra(F, 2, 3))]
        for label, A in cases:
            problem = _chatelet_case(A, F, points)
            if problem:
                return False, f"{label}: {problem}"
        counts["algebras"] = len(cases)
        return True, ""
    return _timed("Chatelet pipeline", 10.0, run)


def conic_suite(samples=100):
    def run(counts):
        checked = 0
        for q in (3, 5, 7):
            F = PrimeField(q)
            for a in range(1, q):
                for b in range(1, q):
                    pts = conic_points(F, a, b)
                    if len(pts) != q + 1:
                        return False, f"|C({a},{b})(GF({q}))| = {len(pts)}"
                    for X in pts:
                        if not parametrize(F, a, b, X).verification["bijective"]:
                            return False, f"GF({q}) C({a},{b}) base {X}: not a bijection"
                        checked += 1
        Q = Rationals()
        par = parametrize(Q, Q(1), Q(1), make_point(Q, (1, 1, 0)), samples=samples)
        if not par.verification["psi_phi_identity"] or not par.verification["phi_psi_identity"]:
            return False, "rational roundtrip fails"
        counts["pointed_conics"] = checked
        counts["rational_samples"] = samples
        return True, ""
    return _timed("conic parametrization", 10.0, run)


def quaternion_suite():
    def run(counts):
        maps = 0
        Q = Rationals()
        ranges = [(PrimeField(5), [1, 2, 3, 4]), (PrimeField(7), [1, 2, 3, 4, 5, 6]),
                  (Q, [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-3)])]
        for R, values in ranges:
            values = [R(v) for v in values]
            for b in values:
                f = alg.quaternion_split_iso(R, b)
                if not (f.hom_verified and f.is_bijective()):
                    return False, f"split iso fails for b={R.format(b)} over {R}"
                maps += 1
                for u in values:
                    for v in values:
                        if not alg.quaternion_rescale_iso(R, R.one(), b, u, v).hom_verified:
                            return False, f"rescale fails over {R}"
                        maps += 1
                for a in values:
                    if not alg.quaternion_swap_iso(R, a, b).hom_verified:
                        return False, f"swap fails over {R}"
                    maps += 1
        counts["maps"] = maps
        return True, ""
    return _timed("quaternion split", 1.0, run)


def local_ring_law(ring):
    one = ring.one()
    return all(ring.is_unit(a) or ring.is_unit(ring.sub(one, a)) for a in ring.elements())


def negative_controls():
    def run(counts):
        Q = Rationals()
        if find_right_ideal(alg.quaternion_algebra(Q, Q(-1), Q(-1)), 10) is not None:
            return False, "found a right ideal in Q(-1,-1)/QQ"
        F = PrimeField(5)
        for bad in ([(1, 0, 0, 0), (0, 0, 0, 1)], [(1, 0, 0, 0), (0, 0, 1, 0)]):
            try:
                delta_inv(F, subspace_from_span(F, bad))
                return False, "malformed subspace accepted by delta_inv"
            except NotInDeltaImage:
                pass
        Z9 = LocalIntegers(3, 2)
        _, _, piv = reduced_echelon(Z9, Matrix.of(Z9, [[3], [1]]))
        if piv != [1]:
            return False, "Z/9 pivot not taken at the unit entry"
        try:
            invert_matrix(Z9, Matrix.of(Z9, [[3, 0], [0, 3]]))
            return False, "3I inverted over Z/9"
        except NotInvertible:
            pass
        local = [parse_ring_spec(s) for s in ("GF(2)", "GF(3)", "GF(5)", "GF(7)", "GF(2^2;1,1,1)",
                                             "GF(3^2;1,0,1)", "GF(5^2;2,0,1)", "GF(2^4;1,1,0,0,1)",
                                             "Z/4", "Z/8", "Z/9", "Z/25", "Z/27")]
        if not all(local_ring_law(R) for R in local):
            return False, "local-ring law fails"
        pts = enumerate_points(Z9, 1)
        if len(pts) != 12 or any(delta_inv(Z9, delta(Z9, X)) != X for X in pts):
            return False, "delta roundtrip over Z/9 fails"
        rng = random.Random(0)
        E = standard_units(Z9, 2)
        for _ in range(5):
            P = random_invertible(Z9, 2, rng)
            Pinv = invert_matrix(Z9, P)
            e = [[P @ E[i][j] @ Pinv for j in range(2)] for i in range(2)]
            if scalar_ratio(Z9, P, matrix_units_conjugator(Z9, e)) is None:
                return False, "conjugator over Z/9 is not a scalar multiple"
        if idempotent_image_basis(Z9, Matrix.identity(Z9, 3)) != Matrix.identity(Z9, 3).columns():
            return False, "image of the identity over Z/9"
        counts["local_rings"] = len(local)
        counts["Z9_points"] = len(pts)
        return True, ""
    return _timed("negative controls", 2.0, run)


def structure_check(A, label="algebra"):
    """Re-validate a structure-constant table; failure reports the bad triple."""
    def run(counts):
        A.validate()
        counts["rank"] = A.rank
        return True, ""
    return _timed(f"structure constants: {label}", 5.0, run)


ACCEPTANCE = [
    delta_bijection,
    equivariance,
    conjugator_recovery,
    skolem_noether,
    azumaya_suite,
    chatelet_pipeline,
    conic_suite,
    quaternion_suite,
    negative_controls,
]

QUICK = [delta_bijection, delta_roundtrips, skolem_noether, azumaya_suite, quaternion_suite,
         negative_controls]


def run_selftest(level="quick", extra_algebras=()):
    suites = QUICK if level == "quick" else ACCEPTANCE + [delta_roundtrips]
    results = [suite() for suite in suites]
    for label, A in extra_algebras:
        results.append(structure_check(A, label))
    return results
