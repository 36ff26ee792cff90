"""Tests for the exact integer linear algebra substrate."""

import random
from math import gcd

import pytest

from gradedsk.errors import ContainmentError
from gradedsk.intlinalg import (
    FiniteAbelianGroup,
    cokernel,
    determinant,
    diagonal,
    identity,
    kernel_basis,
    lattice_basis,
    lattice_contains,
    lattice_index,
    mat_mul,
    smith_normal_form,
    solve_in_lattice,
    subquotient,
)


def enumerate_cosets(ambient_rank, lattice_rows, cap=10**4):
    """Brute-force coset enumeration of Z^n / lattice, used as an oracle.

    Returns the list of canonical representatives (BFS over unit moves).
    """
    seen = []
    frontier = [tuple([0] * ambient_rank)]
    reps = set(frontier)

    def canonical(v):
        for r in seen:
            if lattice_contains(lattice_rows, [a - b for a, b in zip(v, r)]):
                return r
        return None

    seen.append(frontier[0])
    while frontier:
        v = frontier.pop()
        for i in range(ambient_rank):
            for step in (1, -1):
                w = list(v)
                w[i] += step
                w = tuple(w)
                rep = canonical(w)
                if rep is None:
                    seen.append(w)
                    frontier.append(w)
                    if len(seen) > cap:
                        raise AssertionError("coset cap exceeded")
    return seen


def test_snf_identity():
    u, s, v = smith_normal_form(identity(2))
    assert s == identity(2)
    assert mat_mul(mat_mul(u, identity(2)), v) == s


def test_snf_zero():
    m = [[0, 0], [0, 0]]
    u, s, v = smith_normal_form(m)
    assert s == [[0, 0], [0, 0]]
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1


def test_snf_diag_2_3():
    # d1 = gcd of entries = 1, d1*d2 = |det| = 6, so SNF must be diag(1, 6)
    m = [[2, 0], [0, 3]]
    assert gcd(2, 3) == 1
    assert abs(determinant(m)) == 6
    u, s, v = smith_normal_form(m)
    assert diagonal(s) == [1, 6]
    assert mat_mul(mat_mul(u, m), v) == s


@pytest.mark.parametrize("seed", range(8))
def test_snf_random_properties(seed):
    rng = random.Random(seed)
    rows = rng.randint(1, 4)
    cols = rng.randint(1, 4)
    m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
    u, s, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == s
    assert abs(determinant(u)) == 1
    assert abs(determinant(v)) == 1
    d = diagonal(s)
    for a, b in zip(d, d[1:]):
        assert b == 0 or (a != 0 and b % a == 0) or (a == 0 and b == 0)
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert s[i][j] == 0


def test_group_normalization():
    g = FiniteAbelianGroup([2, 6, 1])
    assert g.invariant_factors == (2, 6)
    assert FiniteAbelianGroup.from_orders([6, 2]) == g
    assert g.order() == 12
    assert g.exponent() == 6
    assert str(g) == "C2 x C6"
    assert FiniteAbelianGroup([]).is_trivial
    assert FiniteAbelianGroup.from_orders([2, 3]) == FiniteAbelianGroup([6])
    assert FiniteAbelianGroup.from_orders([2, 4]) == FiniteAbelianGroup([2, 4])
    with pytest.raises(ValueError):
        FiniteAbelianGroup([4, 2])


def test_subquotient_index_two():
    assert subquotient(1, [[1]], [[2]]) == FiniteAbelianGroup([2])


def test_subquotient_equal_lattices():
    assert subquotient(2, [[1, 0], [0, 1]], [[1, 0], [0, 1]]).is_trivial


def test_subquotient_index_six_vs_coset_enumeration():
    den = [[2, 0], [0, 3]]
    got = subquotient(2, [[1, 0], [0, 1]], den)
    cosets = enumerate_cosets(2, den)
    assert len(cosets) == 6
    # order 6 and a coset of additive order 6 force the cyclic group C6
    vec = [1, 1]
    k = 1
    while not lattice_contains(den, [k * x for x in vec]):
        k += 1
    assert k == 6
    assert got == FiniteAbelianGroup([6])


def test_subquotient_containment_error():
    with pytest.raises(ContainmentError):
        subquotient(1, [[2]], [[1]])


@pytest.mark.parametrize("seed", range(6))
def test_subquotient_order_equals_lattice_index(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 3)
    while True:
        den = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        idx = lattice_index(n, den)
        if idx is not None and idx <= 10**4:
            break
    group = subquotient(n, identity(n), den)
    assert group.order() == idx
    assert len(enumerate_cosets(n, den)) == idx


def test_kernel_and_solve():
    m = [[2, 4], [1, 2]]
    ker = kernel_basis(m)
    assert len(ker) == 1
    for row in ker:
        assert all(x == 0 for x in [row[0] * 2 + row[1] * 1, row[0] * 4 + row[1] * 2])
    assert solve_in_lattice([[2, 0], [0, 3]], [4, 3]) == [2, 1]
    assert solve_in_lattice([[2, 0], [0, 3]], [1, 0]) is None
    basis = lattice_basis([[2, 0], [4, 0], [0, 5]])
    assert len(basis) == 2


def test_cokernel_free_part():
    g = cokernel([[2, 0, 0]], 3)
    assert g == FiniteAbelianGroup([2, 0, 0])
    assert g.order() is None
