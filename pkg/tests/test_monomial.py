"""Tests for monomial graded division rings, minimal polynomials, reduced norms."""

import random
from itertools import product

import pytest

from gradedsk.errors import ZeroElementError
from gradedsk.intlinalg import FiniteAbelianGroup, lattice_equal
from gradedsk.monomial import (
    OTHER,
    SEMIRAMIFIED,
    TOTALLY_RAMIFIED,
    UNRAMIFIED,
    FiniteFieldResidue,
    GradedDivAlgDesc,
    MonomialGradedRing,
    classify,
    leading_term,
    minimal_polynomial,
    reduced_norm,
    reduced_norm_residue,
)


def frobenius_laurent_ring(q=3, m=2):
    """GF(q^m)[z^+-1; Frob] with z^m = x central: the basic semiramified ring."""
    return MonomialGradedRing(q, m, 1, sigma=[1], r=[m], b=[1], u=[[1]])


def quaternion_symbol_ring(q=5):
    """Totally ramified: GF(q), z1^2 and z2^2 central, z1 z2 = -z2 z1."""
    return MonomialGradedRing(q, 1, 2, sigma=[0, 0], r=[2, 2], b=[1, 1], u=[[1, q - 1], [q - 1, 1]])


def test_gf9_ring_constructs():
    ring = frobenius_laurent_ring()
    assert ring.M.order == 9
    assert ring.t0_order() == 3
    assert ring.residue_extension_degree() == 2


def test_multiply_identity():
    ring = frobenius_laurent_ring()
    a = ring.monomial(ring.M.generator, (3,))
    assert a * ring.one() == a
    assert ring.one() * a == a


def test_z_times_scalar_applies_frobenius():
    # in GF(9)[z; Frob], z*c = c^3 * z
    ring = frobenius_laurent_ring()
    c = ring.M.generator
    z = ring.gen(0)
    prod_elt = z * ring.scalar(c)
    assert prod_elt == ring.monomial(ring.M.pow(c, 3), (1,))


def test_commutation_relation_normal_form():
    # z1*z2 = u12 * z2*z1 stored in index order
    ring = quaternion_symbol_ring()
    z1, z2 = ring.gen(0), ring.gen(1)
    lhs = z1 * z2
    assert lhs == ring.monomial(1, (1, 1))
    rhs = z2 * z1
    assert rhs == ring.monomial(ring.u[1][0], (1, 1))
    assert z1 * z2 == (z2 * z1).scale(ring.u[0][1])


def test_inverse_two_sided():
    ring = quaternion_symbol_ring()
    rng = random.Random(7)
    for _ in range(20):
        c = rng.randrange(1, ring.M.order)
        alpha = (rng.randint(-2, 2), rng.randint(-2, 2))
        a = ring.monomial(c, alpha)
        assert a * a.inverse() == ring.one()
        assert a.inverse() * a == ring.one()


def test_associativity_random_monomials():
    ring = quaternion_symbol_ring()
    rng = random.Random(11)
    for _ in range(50):
        elts = []
        for _ in range(3):
            c = rng.randrange(1, ring.M.order)
            alpha = (rng.randint(-2, 2), rng.randint(-2, 2))
            elts.append(ring.monomial(c, alpha))
        a, b, c = elts
        assert (a * b) * c == a * (b * c)


def test_inconsistent_commutation_data_rejected():
    # u12 of order 4 with r = (2, 2) over GF(5): z2 z1^2 z2^-1 = u21^2 z1^2 != z1^2
    with pytest.raises(ValueError):
        MonomialGradedRing(5, 1, 2, sigma=[0, 0], r=[2, 2], b=[1, 1], u=[[1, 2], [3, 1]])


def test_homogeneous_commutators_have_degree_zero():
    ring = frobenius_laurent_ring()
    rng = random.Random(3)
    for _ in range(20):
        a = ring.monomial(rng.randrange(1, 9), (rng.randint(-2, 2),))
        b = ring.monomial(rng.randrange(1, 9), (rng.randint(-2, 2),))
        com = a.commutator(b)
        assert com.is_homogeneous and com.degree() == (0,)


def test_gamma_T_gf9_frobenius():
    ring = frobenius_laurent_ring()
    assert lattice_equal(ring.gamma_T_basis(), [[2]])
    assert ring.gamma_index() == 2
    assert ring.index() == 2


def test_gamma_T_quaternion():
    ring = quaternion_symbol_ring()
    assert lattice_equal(ring.gamma_T_basis(), [[2, 0], [0, 2]])
    assert ring.index() == 2
    assert ring.t0_order() == 5


def test_central_coefficient_consistency():
    ring = quaternion_symbol_ring()
    # odd powers of z1 cannot be central: they fail to commute with z2
    assert ring.central_coefficient((1, 0)) is None
    assert ring.central_coefficient((2, 0)) is not None


def test_classification_examples():
    # unramified: trivial grading with an index-4 central division residue
    unram = GradedDivAlgDesc(
        gamma_rank=1,
        gamma_T=[[1]],
        residue=FiniteFieldResidue(q=5, ext_degree=16, center_degree=1),
        index=4,
    )
    assert classify(unram) == UNRAMIFIED
    assert unram.residue.residue_index == 4
    tot = quaternion_symbol_ring().descriptor()
    assert classify(tot) == TOTALLY_RAMIFIED
    semi = frobenius_laurent_ring().descriptor()
    assert classify(semi) == SEMIRAMIFIED


def test_classification_gf81_frobenius_square_is_semiramified():
    # GF(81) with a Frobenius^2 twist: [E0:T0] = 2 = index over T0 = GF(9)
    ring = MonomialGradedRing(3, 4, 1, sigma=[2], r=[2], b=[1], u=[[1]])
    assert ring.t0_order() == 9
    assert classify(ring.descriptor()) == SEMIRAMIFIED


def test_classification_other():
    # residue degree 2 but grade index 8: mixed, none of the three names fit
    u = [[1, 1, 1], [1, 1, 4], [1, 4, 1]]
    ring = MonomialGradedRing(5, 2, 3, sigma=[1, 0, 0], r=[2, 2, 2], b=[1, 1, 1], u=u)
    desc = ring.descriptor()
    assert desc.index == 4
    assert classify(desc) == OTHER


def test_descriptor_fundamental_equality_enforced():
    with pytest.raises(ValueError):
        GradedDivAlgDesc(
            gamma_rank=1,
            gamma_T=[[2]],
            residue=FiniteFieldResidue(q=3, ext_degree=3, center_degree=3),
            index=2,
        )


def test_minimal_polynomial_central_element():
    ring = frobenius_laurent_ring()
    x = ring.central_marker(0)  # z^2, central
    h = minimal_polynomial(x, ring)
    assert h.degree == 1
    assert h.evaluate(x).is_zero


def test_minimal_polynomial_of_z_is_x2_minus_z2():
    ring = frobenius_laurent_ring()
    z = ring.gen(0)
    h = minimal_polynomial(z, ring)
    assert h.degree == 2
    assert h.coeffs[1].is_zero
    assert h.coeffs[0] == -ring.monomial(1, (2,))


def test_minimal_polynomial_of_residue_generator():
    # c in GF(9) \ GF(3): its ring-minimal polynomial is the GF(3) field one
    ring = frobenius_laurent_ring()
    c = ring.M.generator
    h = minimal_polynomial(ring.scalar(c), ring)
    assert h.degree == 2
    field_mp = ring.M.minimal_polynomial(c, 1)
    got_const = h.coeffs[0]
    assert got_const.degree() == (0,)
    # match constant and linear coefficients against the field minimal polynomial
    from gradedsk.finitefield import GF, embed

    base = GF(3, 1)
    assert got_const.coefficient() == embed(base, ring.M, field_mp.coeffs[0])


def test_reduced_norm_central_scalar():
    ring = frobenius_laurent_ring()
    t = ring.central_marker(0)
    n = ring.index()
    assert reduced_norm(t, ring) == t.pow(n)


def test_reduced_norm_of_z():
    # Nrd(z) = -z^2 in GF(9)[z; Frob]; and Nrd(z)^2 = Nrd(z^2) = (z^2)^2
    ring = frobenius_laurent_ring()
    z = ring.gen(0)
    got = reduced_norm(z, ring)
    assert got == -ring.monomial(1, (2,))
    sq = reduced_norm(z * z, ring)
    assert got * got == sq


def test_reduced_norm_residue_matches_field_norm():
    # semiramified with delta = 1: Nrd on E_0 is the field norm; over GF(9) it is a^4
    ring = frobenius_laurent_ring()
    for a in range(1, 9):
        assert reduced_norm_residue(ring, a) == ring.M.pow(a, 4)
        got = reduced_norm(ring.scalar(a), ring)
        assert got == ring.scalar(reduced_norm_residue(ring, a))


def test_reduced_norm_degree_law():
    ring = frobenius_laurent_ring()
    rng = random.Random(5)
    n = ring.index()
    for _ in range(30):
        c = rng.randrange(1, 9)
        d = rng.randint(-3, 3)
        a = ring.monomial(c, (d,))
        nrd = reduced_norm(a, ring)
        assert nrd.degree() == (n * d,)


def test_reduced_norm_multiplicative():
    ring = quaternion_symbol_ring()
    rng = random.Random(13)
    for _ in range(15):
        a = ring.monomial(rng.randrange(1, 5), (rng.randint(-1, 2), rng.randint(-1, 2)))
        b = ring.monomial(rng.randrange(1, 5), (rng.randint(-1, 2), rng.randint(-1, 2)))
        assert reduced_norm(a * b, ring) == reduced_norm(a, ring) * reduced_norm(b, ring)


def test_leading_term_rules():
    ring = frobenius_laurent_ring()
    a = ring.monomial(2, (1,))
    assert leading_term(a) == a  # homogeneous fixed point
    s = ring.one() + a  # 1 + 2z: lex-minimal degree is 0
    assert leading_term(s) == ring.one()
    with pytest.raises(ZeroElementError):
        leading_term(ring.zero())


def test_leading_term_multiplicative():
    ring = quaternion_symbol_ring()
    rng = random.Random(17)
    for _ in range(100):
        def rand_elt():
            out = ring.zero()
            for _ in range(rng.randint(1, 3)):
                out = out + ring.monomial(
                    rng.randrange(1, 5), (rng.randint(-2, 2), rng.randint(-2, 2))
                )
            return out

        a, b = rand_elt(), rand_elt()
        if a.is_zero or b.is_zero:
            continue
        assert leading_term(a * b) == leading_term(a) * leading_term(b)


def test_fundamental_equality_for_derived_descriptors():
    for ring in (frobenius_laurent_ring(), quaternion_symbol_ring()):
        desc = ring.descriptor()
        assert desc.index**2 == ring.residue_extension_degree() * ring.gamma_index()


def test_json_roundtrip():
    ring = quaternion_symbol_ring()
    data = ring.to_json_dict()
    again = MonomialGradedRing.from_json_dict(data)
    assert again.to_json_dict() == data
    data["field"]["generator_minpoly"] = [9, 9]
    with pytest.raises(ValueError):
        MonomialGradedRing.from_json_dict(data)
