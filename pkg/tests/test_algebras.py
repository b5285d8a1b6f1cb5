import itertools
import random
from fractions import Fraction

import pytest

from brauer_kit import algebras as alg
from brauer_kit.errors import NotAssociative, NotUnit
from brauer_kit.linalg import Matrix
from brauer_kit.rings import PrimeField, Rationals
from brauer_kit.selftest import random_invertible


def E(R, n, i, j):
    return alg.matrix_algebra(R, n).basis(i * n + j)


def test_matrix_units(F5):
    M2 = alg.matrix_algebra(F5, 2)
    assert M2.mul(E(F5, 2, 0, 0), E(F5, 2, 0, 1)) == E(F5, 2, 0, 1)
    assert M2.mul(E(F5, 2, 0, 1), E(F5, 2, 0, 1)) == M2.zero_vec()


def test_matrix_algebra_matches_matmul(F5):
    rng = random.Random(0)
    A = alg.matrix_algebra(F5, 3)
    for _ in range(20):
        x = Matrix(F5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
        y = Matrix(F5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
        assert A.mul(x.flatten(), y.flatten()) == (x @ y).flatten()


def test_quaternion_relations(F5, F7):
    Q = alg.quaternion_algebra(F5, 1, 1)
    i, j, k = Q.basis(1), Q.basis(2), Q.basis(3)
    assert Q.mul(i, j) == k
    assert Q.mul(j, i) == Q.scale(4, k)
    Q7 = alg.quaternion_algebra(F7, 2, 3)
    k7 = Q7.basis(3)
    assert Q7.mul(k7, k7) == Q7.scale(1, Q7.basis(0))  # -ab = -6 = 1
    with pytest.raises(NotUnit):
        alg.quaternion_algebra(PrimeField(2), 1, 1)


def test_opposite_and_tensor(F5):
    D = alg.diagonal_algebra(F5, 2)
    assert alg.opposite(D) == D
    M2 = alg.matrix_algebra(F5, 2)
    T = alg.tensor(M2, alg.opposite(M2))
    assert T.rank == 16
    e = alg.tensor(M2, M2).basis(0)
    assert alg.tensor(M2, M2).mul(e, e) == e


def test_validate_reports_triple(F5):
    A = alg.matrix_algebra(F5, 2).to_json()
    A["sc"][1][2][0] = "2"
    bad = alg.StructureAlgebra.from_json(A, validate=False)
    with pytest.raises(NotAssociative) as info:
        bad.validate()
    assert len(info.value.context["triple"]) == 3


def test_enveloping_matrix_basis_correspondence(F5):
    # E_ij (x) E_kl acts as c -> E_ij c E_kl, i.e. E_jk -> E_il
    n = 2
    A = alg.matrix_algebra(F5, n)
    env = alg.enveloping_matrix(A)
    m = n * n
    for i, j, k, l in itertools.product(range(n), repeat=4):
        col = env.col((i * n + j) * m + k * n + l)
        op = Matrix.unflatten(F5, col, m)
        expected = Matrix.zeros(F5, m, m).to_json()
        expected["entries"][i * n + l][j * n + k] = "1"
        assert op == Matrix.from_json(F5, expected)


def test_azumaya_examples(F5):
    r = alg.azumaya_check(alg.matrix_algebra(F5, 3))
    assert r.is_azumaya and r.n == 2
    r = alg.azumaya_check(alg.quaternion_algebra(F5, 2, 3))
    assert r.is_azumaya and r.n == 1 and r.enveloping_rank == 16
    r = alg.azumaya_check(alg.diagonal_algebra(F5, 4))
    assert not r.is_azumaya and r.reason == "enveloping map not invertible"
    r = alg.azumaya_check(alg.diagonal_algebra(F5, 3))
    assert not r.is_azumaya and "perfect square" in r.reason


def test_azumaya_over_Q_and_local(QQ, Z9):
    assert alg.azumaya_check(alg.quaternion_algebra(QQ, -1, -1)).is_azumaya
    assert alg.azumaya_check(alg.matrix_algebra(Z9, 2)).is_azumaya
    assert alg.azumaya_check(alg.quaternion_algebra(Z9, 1, 2)).is_azumaya


def transpose_map(R, n):
    A = alg.matrix_algebra(R, n)
    cols = [Matrix.unit(R, n, j, i).flatten() for i in range(n) for j in range(n)]
    return alg.AlgebraMap(A, A, Matrix.from_columns(R, cols))


def test_hom_check_examples(F5, F7):
    A = alg.matrix_algebra(F5, 2)
    assert alg.hom_check(alg.AlgebraMap(A, A, Matrix.identity(F5, 4)))
    t = transpose_map(F5, 2)
    assert not alg.hom_check(t)
    assert t.is_bijective()
    for b in range(1, 7):
        f = alg.quaternion_split_iso(F7, b)
        assert f.hom_verified and f.is_bijective()


def test_split_images(F5):
    f = alg.quaternion_split_iso(F5, 3)
    img = [Matrix.unflatten(F5, f.image_of_basis(k), 2) for k in range(4)]
    assert img[0] == Matrix.identity(F5, 2)
    assert img[1] == Matrix.of(F5, [[1, 0], [0, -1]])
    assert img[2] == Matrix.of(F5, [[0, 3], [1, 0]])
    assert img[3] == Matrix.of(F5, [[0, 3], [-1, 0]])


def test_split_over_Q(QQ):
    for b in (1, 2, Fraction(1, 2), -3):
        f = alg.quaternion_split_iso(QQ, QQ(b))
        assert f.hom_verified and f.is_bijective()


def test_rescale_and_swap(F7, QQ):
    f = alg.quaternion_rescale_iso(F7, 2, 3, 1, 1)
    assert f.matrix == Matrix.identity(F7, 4)
    for a, b, u, v in [(2, 3, 3, 5), (1, 6, 2, 2)]:
        f = alg.quaternion_rescale_iso(F7, a, b, u, v)
        assert f.hom_verified and f.is_bijective()
    g = alg.quaternion_swap_iso(QQ, QQ(2), QQ(-5))
    assert g.hom_verified and g.is_bijective()


def test_change_basis(F5):
    M2 = alg.matrix_algebra(F5, 2)
    assert alg.change_basis(M2, Matrix.identity(F5, 4)) == M2
    P = random_invertible(F5, 4, random.Random(3))
    B = alg.change_basis(M2, P)
    B.validate()
    assert alg.azumaya_check(B).is_azumaya
    assert alg.hom_check(alg.AlgebraMap(B, M2, P))


def test_algebra_json_roundtrip(F4):
    Q = alg.quaternion_algebra(F4, 1, 1) if F4.is_unit(F4.from_int(2)) else alg.matrix_algebra(F4, 2)
    assert alg.StructureAlgebra.from_json(Q.to_json()) == Q
    R = Rationals()
    Q = alg.quaternion_algebra(R, R(Fraction(1, 2)), R(-3))
    assert alg.StructureAlgebra.from_json(Q.to_json()) == Q
