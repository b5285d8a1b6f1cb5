"""Acceptance criteria 1-9, each a brute-force oracle suite with a wall-clock budget.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line per criterion.
"""

import time

import pytest

from brauer_kit import selftest
from brauer_kit.algebras import StructureAlgebra, matrix_algebra
from brauer_kit.rings import PrimeField

CRITERIA = [
    ("1 delta bijection", selftest.delta_bijection),
    ("2 equivariance", selftest.equivariance),
    ("3 conjugator recovery", selftest.conjugator_recovery),
    ("4 Skolem-Noether roundtrip", selftest.skolem_noether),
    ("5 Azumaya suite", selftest.azumaya_suite),
    ("6 Chatelet pipeline", selftest.chatelet_pipeline),
    ("7 conic parametrization", selftest.conic_suite),
    ("8 quaternion split", selftest.quaternion_suite),
    ("9 negative controls", selftest.negative_controls),
]


@pytest.mark.parametrize("label,suite", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, suite):
    result = suite()
    print(f"criterion {label}: {result.line()}")
    assert result.passed, result.line()


def test_corrupted_table_reports_triple():
    obj = matrix_algebra(PrimeField(3), 2).to_json()
    obj["sc"][1][2][0] = "2"
    result = selftest.structure_check(StructureAlgebra.from_json(obj, validate=False), "corrupted")
    print(f"negative control: {result.line()}")
    assert not result.passed
    assert "(b1*b2)*b1 != b1*(b2*b1)" in result.detail


def test_full_selftest_budget():
    start = time.perf_counter()
    results = selftest.run_selftest("full")
    elapsed = time.perf_counter() - start
    print(f"full selftest: {sum(r.passed for r in results)}/{len(results)} suites in {elapsed:.1f}s")
    assert all(r.passed for r in results)
    assert elapsed <= 60


if __name__ == "__main__":
    for label, suite in CRITERIA:
        print(f"criterion {label}: {suite().line()}")
