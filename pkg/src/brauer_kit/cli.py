"""``brauer-kit``: batch JSON front end.

Exit codes: 0 success, 1 selftest failure, 2 domain error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field

import jsonschema

from . import algebras as alg
from .conics import conic_points, find_point, parametrize
from .errors import BrauerKitError
from .linalg import Matrix
from .projective import (enumerate_points, enumerate_right_ideals, make_point, right_ideal_check,
                         subspace_from_matrix)
from .rings import parse_ring_spec
from .selftest import run_selftest
from .severi_brauer import (automorphism_to_pgl, chatelet_point_map, delta, delta_inv,
                            find_right_ideal, matrix_units_conjugator, split_by_ideal)

EXIT_OK, EXIT_SELFTEST, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 64

_ELEMENT = {"type": ["string", "integer"]}
MATRIX_SCHEMA = {
    "type": "object",
    "required": ["entries"],
    "properties": {
        "rows": {"type": "integer", "minimum": 0},
        "cols": {"type": "integer", "minimum": 0},
        "entries": {"type": "array", "items": {"type": "array", "items": _ELEMENT}},
    },
}
ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["sc", "unit"],
    "properties": {
        "ring": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "sc": {"type": "array", "items": {"type": "array", "items": {"type": "array", "items": _ELEMENT}}},
        "unit": {"type": "array", "items": _ELEMENT},
    },
}
MATRIX_LIST_SCHEMA = {"type": "array", "items": MATRIX_SCHEMA}


class UsageError(Exception):
    pass


@dataclass
class CommandRequest:
    subcommand: str
    ring: str | None
    payload: dict = field(default_factory=dict)
    seed: int = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(text, schema, flag):
    if text is None:
        return None
    if not text.lstrip().startswith(("{", "[")) and os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc.msg})") from None
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"{flag}: {exc.message}") from None
    return obj


def _csv(text):
    # extension-field elements are bracketed coefficient lists, keep them whole
    return re.findall(r"\[[^\]]*\]|[^,\s]+", text) if text else []


def _point(ring, text):
    return make_point(ring, [ring(t) for t in _csv(text)])


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


def _algebra(ring, args):
    if args.quaternion:
        a, b = _csv(args.quaternion)
        return alg.quaternion_algebra(ring, ring(a), ring(b))
    _need(args, "algebra")
    spec = args.algebra.strip()
    m = re.fullmatch(r"builtin:M(\d+)", spec)
    if m:
        return alg.matrix_algebra(ring, int(m.group(1)))
    m = re.fullmatch(r"builtin:Q\(([^,]+),([^)]+)\)", spec)
    if m:
        return alg.quaternion_algebra(ring, ring(m.group(1)), ring(m.group(2)))
    m = re.fullmatch(r"builtin:D(\d+)", spec)
    if m:
        return alg.diagonal_algebra(ring, int(m.group(1)))
    obj = _load_json(spec, ALGEBRA_SCHEMA, "--algebra")
    return alg.StructureAlgebra.from_json(obj, ring=ring)


def _ideal_subspace(ring, args):
    obj = _load_json(args.ideal, MATRIX_SCHEMA, "--ideal")
    return subspace_from_matrix(ring, Matrix.from_json(ring, obj))


def _matrices_of(ring, vecs, size):
    return [Matrix.unflatten(ring, v, size).to_json() for v in vecs]


def cmd_azumaya_check(ring, args):
    A = _algebra(ring, args)
    report = alg.azumaya_check(A)
    result = {"is_azumaya": report.is_azumaya, "n": report.n, "reason": report.reason}
    return result, {"rank": A.rank, "enveloping_rank": report.enveloping_rank}


def cmd_quat_split(ring, args):
    _need(args, "b")
    f = alg.quaternion_split_iso(ring, ring(args.b))
    names = ["1", "i", "j", "ij"]
    result = {"source": f"Q(1,{ring.format(ring(args.b))})", "target": "M2",
              "images": {nm: Matrix.unflatten(ring, f.image_of_basis(k), 2).to_json()
                         for k, nm in enumerate(names)},
              "matrix": f.matrix.to_json()}
    verification = {}
    if args.verify:
        verification = {"hom_check": f.hom_verified, "bijective": f.is_bijective()}
    return result, verification


def cmd_param_conic(ring, args):
    _need(args, "a", "b")
    a, b = ring(args.a), ring(args.b)
    if args.point:
        X = _point(ring, args.point)
    else:
        X = find_point(ring, a, b, args.bound)
        if X is None:
            raise _Unknown(f"no point of height <= {args.bound} found")
    par = parametrize(ring, a, b, X, verify=args.verify, samples=args.samples, seed=args.seed)
    if ring.is_finite:
        line = enumerate_points(ring, 1)
    else:
        line = [make_point(ring, uv) for uv in ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1))]
    table = [{"line": UV.to_json(), "conic": par.to_conic(UV).to_json()} for UV in line]
    result = {"pointed_conic": par.pointed.to_json(), "transform": par.pointed.transform,
              "table": table}
    return result, par.verification


def cmd_conic_points(ring, args):
    _need(args, "a", "b")
    a, b = ring(args.a), ring(args.b)
    if ring.is_finite:
        pts = conic_points(ring, a, b)
        return {"count": len(pts), "points": [X.to_json() for X in pts]}, {"expected_count": ring.size() + 1} if ring.is_field else {}
    X = find_point(ring, a, b, args.bound)
    return {"count": None, "first_point": X.to_json() if X else None,
            "status": "found" if X else "unknown"}, {"bound": args.bound}


def cmd_delta(ring, args):
    _need(args, "point")
    X = _point(ring, args.point)
    if args.n is not None and X.n != args.n:
        raise UsageError(f"point has {X.n + 1} coordinates, expected {args.n + 1}")
    rep = delta(ring, X)
    size = X.n + 1
    result = {"point": X.to_json(), "ideal": rep.space.to_json(),
              "basis_matrices": _matrices_of(ring, rep.space.vectors(), size)}
    verification = {}
    if args.verify:
        verification = {"right_ideal": rep.verified, "dim": rep.dim,
                        "roundtrip": delta_inv(ring, rep) == X}
    return result, verification


def cmd_delta_inv(ring, args):
    _need(args, "ideal")
    S = _ideal_subspace(ring, args)
    X = delta_inv(ring, S)
    return {"point": X.to_json()}, ({"delta_matches": True} if args.verify else {})


def cmd_conjugator(ring, args):
    _need(args, "matrix")
    obj = _load_json(args.matrix, MATRIX_LIST_SCHEMA, "--matrix")
    mats = [Matrix.from_json(ring, m) for m in obj]
    size = math.isqrt(len(mats))
    if size * size != len(mats) or size == 0:
        raise UsageError("--matrix must list (n+1)^2 matrices e_ij in row-major (i, j) order")
    e = [mats[i * size:(i + 1) * size] for i in range(size)]
    P = matrix_units_conjugator(ring, e)
    return {"P": P.to_json()}, ({"conjugation_identities": size * size} if args.verify else {})


def cmd_aut_to_pgl(ring, args):
    _need(args, "matrix", "n")
    size = args.n + 1
    M = Matrix.from_json(ring, _load_json(args.matrix, MATRIX_SCHEMA, "--matrix"))
    A = alg.matrix_algebra(ring, size)
    sigma = alg.AlgebraMap(A, A, M)
    P = automorphism_to_pgl(ring, args.n, sigma)
    return {"P": P.to_json()}, ({"hom_check": sigma.hom_verified, "inner": True} if args.verify else {})


def _splitting_ideal(A, ring, args):
    if args.ideal:
        return right_ideal_check(A, _ideal_subspace(ring, args))
    I = find_right_ideal(A, args.bound)
    if I is None:
        raise _Unknown(f"no right ideal found within bound {args.bound}")
    return I


def cmd_split(ring, args):
    A = _algebra(ring, args)
    I = _splitting_ideal(A, ring, args)
    phi = split_by_ideal(A, I)
    size = math.isqrt(A.rank)
    result = {"ideal": I.space.to_json(), "matrix": phi.matrix.to_json(),
              "images": _matrices_of(ring, phi.matrix.columns(), size)}
    verification = {}
    if args.verify:
        verification = {"hom_check": phi.hom_verified, "bijective": phi.is_bijective()}
    return result, verification


def cmd_chatelet(ring, args):
    A = _algebra(ring, args)
    I = _splitting_ideal(A, ring, args)
    phi = split_by_ideal(A, I)
    size = math.isqrt(A.rank)
    result = {"splitting_ideal": I.space.to_json(),
              "splitting_point": chatelet_point_map(A, phi, I).to_json()}
    verification = {"hom_check": phi.hom_verified}
    if ring.is_finite and ring.is_field:
        ideals = enumerate_right_ideals(A, size)
        pts = [chatelet_point_map(A, phi, J) for J in ideals]
        result["correspondence"] = [{"ideal": J.space.to_json(), "point": X.to_json()}
                                    for J, X in zip(ideals, pts)]
        if args.verify:
            proj = enumerate_points(ring, size - 1)
            verification.update({"ideals": len(ideals), "points": len(proj),
                                 "bijective": len(set(pts)) == len(pts) and set(pts) == set(proj)})
    return result, verification


def cmd_find_ideal(ring, args):
    A = _algebra(ring, args)
    I = find_right_ideal(A, args.bound)
    if I is None:
        return {"found": False, "status": "unknown", "bound": args.bound}, {}
    return {"found": True, "ideal": I.space.to_json()}, {"right_ideal": I.verified, "dim": I.dim}


class _Unknown(BrauerKitError):
    """Search budget exhausted; reported as a domain outcome."""

    @property
    def code(self):
        return "Unknown"


COMMANDS = {
    "azumaya-check": cmd_azumaya_check,
    "quat-split": cmd_quat_split,
    "param-conic": cmd_param_conic,
    "conic-points": cmd_conic_points,
    "delta": cmd_delta,
    "delta-inv": cmd_delta_inv,
    "conjugator": cmd_conjugator,
    "aut-to-pgl": cmd_aut_to_pgl,
    "split": cmd_split,
    "chatelet": cmd_chatelet,
    "find-ideal": cmd_find_ideal,
}


def build_parser():
    parser = _Parser(prog="brauer-kit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--ring", required=True)
        p.add_argument("--n", type=int)
        p.add_argument("--a")
        p.add_argument("--b")
        p.add_argument("--point")
        p.add_argument("--matrix")
        p.add_argument("--algebra")
        p.add_argument("--quaternion", help="shorthand for --algebra builtin:Q(a,b)")
        p.add_argument("--ideal")
        p.add_argument("--bound", type=int, default=10)
        p.add_argument("--samples", type=int, default=25)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-verify", dest="verify", action="store_false")
    p = sub.add_parser("selftest")
    p.add_argument("level", nargs="?", choices=["quick", "full"], default="quick")
    p.add_argument("--algebra", action="append", default=[],
                   help="extra structure-constant table (JSON) to validate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (not deterministic)")
    return parser


def run(argv, out=None):
    """Execute one command; returns (exit code, JSON document)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.command == "selftest":
            extras = []
            for k, text in enumerate(args.algebra):
                obj = _load_json(text, ALGEBRA_SCHEMA, "--algebra")
                extras.append((f"extra[{k}]", alg.StructureAlgebra.from_json(obj, validate=False)))
            results = run_selftest(args.level, extras)
            ok = all(r.passed for r in results)
            doc = {"ok": ok, "result": {"level": args.level,
                                        "suites": [r.to_json(args.timing) for r in results]}}
            return (EXIT_OK if ok else EXIT_SELFTEST), doc
        ring = parse_ring_spec(args.ring)
        result, verification = COMMANDS[args.command](ring, args)
        return EXIT_OK, {"ok": True, "result": result, "verification": verification}
    except UsageError as exc:
        return EXIT_USAGE, {"ok": False, "error": "UsageError", "detail": str(exc)}
    except BrauerKitError as exc:
        doc = {"ok": False, "error": exc.code, "detail": str(exc)}
        if exc.context:
            doc["context"] = {k: list(v) if isinstance(v, tuple) else v for k, v in exc.context.items()}
        return EXIT_DOMAIN, doc


def main(argv=None):
    code, doc = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
