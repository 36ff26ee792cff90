"""Tests for weighted matrices over twisted series and determinant invariants."""

import random

import pytest

from gradedsk.errors import PrecisionExhaustedError, SplittingBaseError, ZeroElementError
from gradedsk.matdiv import (
    IN_J,
    IN_ONE_PLUS_J,
    IN_R,
    OUTSIDE,
    TwistedSeriesRing,
    WeightedMatrixRing,
    congruence_witness,
    ddet_diagonal_consistency,
    ddet_invariants,
    element_invariants,
    multiplication_matrix,
    verify_splitting_base,
)


@pytest.fixture(scope="module")
def gf9x():
    return TwistedSeriesRing(3, 2, 1, precision=24)


def test_twisted_relation(gf9x):
    c = gf9x.C.generator
    lhs = gf9x.x_power(1).mul(gf9x.scalar(c))
    rhs = gf9x.scalar(gf9x.sigma(c)).mul(gf9x.x_power(1))
    assert lhs.known_equal(rhs)


def test_inverse_and_valuation(gf9x):
    rng = random.Random(0)
    for _ in range(15):
        a = gf9x.random_element(rng, val_range=(-3, 3))
        assert a.mul(a.inverse()).sub(gf9x.one()).is_zero
        assert a.inverse().mul(a).sub(gf9x.one()).is_zero
        b = gf9x.random_element(rng)
        assert a.mul(b).w() == a.w() + b.w()


def test_membership_identity_zero_boundary(gf9x):
    w = WeightedMatrixRing(gf9x, [0, 1])
    assert w.membership(w.identity()) == IN_ONE_PLUS_J
    assert w.membership(w.zero_matrix()) == IN_J
    m = w.identity()
    m[0][1] = gf9x.x_power(-1)  # w = gamma_0 - gamma_1 exactly: in R, not J
    assert w.membership(m) == IN_R
    m2 = w.identity()
    m2[0][1] = gf9x.x_power(-2)
    assert w.membership(m2) == OUTSIDE


def test_membership_certification_limits(gf9x):
    w = WeightedMatrixRing(gf9x, [0, 1])
    m = w.zero_matrix()
    m[1][0] = gf9x.zero(end=0)  # zero only below the needed bound 1
    with pytest.raises(PrecisionExhaustedError):
        w.membership(m)


def rand_one_plus_J(wring, rng, length=12):
    ring = wring.ring
    n = wring.size
    out = wring.zero_matrix()
    for i in range(n):
        for j in range(n):
            bound = wring.weights[i] - wring.weights[j]
            v = bound + rng.randint(1, 2)
            coeffs = [rng.randrange(1, ring.C.order)] + [
                rng.randrange(ring.C.order) for _ in range(length - 1)
            ]
            out[i][j] = ring.from_coeffs(v, coeffs, end=ring.precision)
    for i in range(n):
        out[i][i] = out[i][i].add(ring.one())
    return out


@pytest.mark.parametrize("seed", range(6))
def test_reduction_stays_in_one_plus_J(gf9x, seed):
    rng = random.Random(100 + seed)
    wring = WeightedMatrixRing(gf9x, [rng.randint(0, 2) for _ in range(3)])
    m = rand_one_plus_J(wring, rng)
    assert wring.membership(m) == IN_ONE_PLUS_J
    tri, transcript = wring.reduce_one_plus_J(m)
    for y in transcript:
        assert wring.membership(y) == IN_ONE_PLUS_J
    assert wring.membership(tri) == IN_ONE_PLUS_J
    for i in range(wring.size):
        assert tri[i][i].is_one_unit()
        for j in range(i):
            entry = tri[i][j]
            assert entry.is_zero


@pytest.mark.parametrize("seed", range(4))
def test_reduction_transcript_replays(gf9x, seed):
    rng = random.Random(200 + seed)
    wring = WeightedMatrixRing(gf9x, [0, 1, 2])
    m = rand_one_plus_J(wring, rng)
    tri, transcript = wring.reduce_one_plus_J(m)
    acc = m
    for y in transcript:
        acc = wring.mat_mul(y, acc)
    for i in range(3):
        for j in range(3):
            assert acc[i][j].sub(tri[i][j]).is_zero


def test_trivial_sizes(gf9x):
    wring = WeightedMatrixRing(gf9x, [0])
    m = [[gf9x.one().add(gf9x.x_power(1))]]
    tri, transcript = wring.reduce_one_plus_J(m)
    assert transcript == []
    assert tri[0][0].known_equal(m[0][0])


def test_J_closed_under_multiplication(gf9x):
    rng = random.Random(7)
    wring = WeightedMatrixRing(gf9x, [0, 1, 2])
    for _ in range(10):
        a = rand_one_plus_J(wring, rng)
        b = rand_one_plus_J(wring, rng)
        assert wring.membership(wring.mat_mul(a, b)) == IN_ONE_PLUS_J
        ja = wring.mat_sub_identity(a)
        jb = wring.mat_sub_identity(b)
        assert wring.membership(wring.mat_mul(ja, jb)) in (IN_J,)


def rand_in_R(wring, rng, length=10):
    ring = wring.ring
    n = wring.size
    out = wring.zero_matrix()
    for i in range(n):
        for j in range(n):
            bound = wring.weights[i] - wring.weights[j]
            v = bound + rng.randint(0, 2)
            coeffs = [rng.randrange(1, ring.C.order)] + [
                rng.randrange(ring.C.order) for _ in range(length - 1)
            ]
            out[i][j] = ring.from_coeffs(v, coeffs, end=ring.precision)
    return out


def test_R_closed_and_J_two_sided_ideal(gf9x):
    rng = random.Random(21)
    wring = WeightedMatrixRing(gf9x, [0, 1, 2])
    for _ in range(10):
        a = rand_in_R(wring, rng)
        b = rand_in_R(wring, rng)
        j = wring.mat_sub_identity(rand_one_plus_J(wring, rng))
        assert wring.membership(a) in (IN_R, IN_J, IN_ONE_PLUS_J)
        assert wring.membership(wring.mat_mul(a, b)) in (IN_R, IN_J, IN_ONE_PLUS_J)
        assert wring.membership(wring.mat_mul(a, j)) in (IN_J,)
        assert wring.membership(wring.mat_mul(j, a)) in (IN_J,)


def test_ddet_diag_identity(gf9x):
    res = ddet_diagonal_consistency(gf9x, gf9x.one(), 2)
    assert res["match"] and res["valuation"] == 0


def test_ddet_diag_x(gf9x):
    res = ddet_diagonal_consistency(gf9x, gf9x.x_power(1), 2)
    assert res["match"] and res["valuation"] == 2


@pytest.mark.parametrize("seed", range(6))
def test_ddet_diag_random(seed):
    rng = random.Random(300 + seed)
    ring = TwistedSeriesRing(2, 3, 1, precision=24)
    a = ring.random_element(rng, val_range=(0, 2))
    res = ddet_diagonal_consistency(ring, a, 3)
    assert res["match"], res


def test_ddet_row_ops_do_not_change_invariants(gf9x):
    rng = random.Random(9)
    n = 2
    mat = [[gf9x.random_element(rng) for _ in range(n)] for _ in range(n)]
    base = ddet_invariants(gf9x, mat)
    # add a left multiple of row 0 to row 1: invariants unchanged
    f = gf9x.random_element(rng)
    mat2 = [mat[0][:], [mat[1][j].add(f.mul(mat[0][j])) for j in range(n)]]
    assert ddet_invariants(gf9x, mat2) == base


def test_element_invariants_multiplicative(gf9x):
    rng = random.Random(11)
    for _ in range(10):
        a = gf9x.random_element(rng)
        b = gf9x.random_element(rng)
        ia = element_invariants(gf9x, a)
        ib = element_invariants(gf9x, b)
        iab = element_invariants(gf9x, a.mul(b))
        assert iab.valuation == ia.valuation + ib.valuation
        assert iab.leading_norm == ia.leading_norm * ib.leading_norm


def test_congruence_witness_identity(gf9x):
    res = congruence_witness(gf9x, gf9x.one())
    assert res["diagonal_product_is_one_unit"]


def test_congruence_witness_one_plus_x(gf9x):
    res = congruence_witness(gf9x, gf9x.one().add(gf9x.x_power(1)))
    assert res["s_in_J"] and res["matrix_in_one_plus_J"]
    assert res["diagonal_product_is_one_unit"]


@pytest.mark.parametrize("seed", range(5))
def test_congruence_witness_random(seed):
    rng = random.Random(400 + seed)
    ring = TwistedSeriesRing(2, 3, 1, precision=24)
    a = ring.one().add(ring.random_element(rng, val_range=(1, 3)))
    res = congruence_witness(ring, a)
    assert res["diagonal_product_is_one_unit"]


def test_congruence_multiplication_matrix_j_characterization(gf9x):
    # matrix of right multiplication by m lands in J iff w(b_i m) > w(b_i)
    rng = random.Random(13)
    for _ in range(5):
        m_elt = gf9x.random_element(rng, val_range=(1, 3))
        mat, cring = multiplication_matrix(gf9x, m_elt)
        wring = WeightedMatrixRing(cring, [0, 1])
        expected_in_j = all(
            gf9x.x_power(i).mul(m_elt).w() > i for i in range(2)
        )
        assert (wring.membership(mat) == IN_J) == expected_in_j


def test_splitting_base_canonical_ok(gf9x):
    vals = verify_splitting_base(gf9x, [gf9x.one(), gf9x.x_power(1)])
    assert vals == [0, 1]


def test_splitting_base_violation(gf9x):
    with pytest.raises(SplittingBaseError):
        verify_splitting_base(gf9x, [gf9x.one(), gf9x.one().add(gf9x.x_power(2))])
    with pytest.raises(SplittingBaseError):
        verify_splitting_base(gf9x, [gf9x.one(), gf9x.zero()])


def test_congruence_witness_rejects_non_unit(gf9x):
    with pytest.raises(ValueError):
        congruence_witness(gf9x, gf9x.x_power(1))
