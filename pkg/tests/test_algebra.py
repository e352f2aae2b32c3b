from itertools import combinations, product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from algebra.galois_ring import GaloisRing, teichmuller
from algebra.int_matrix import IntMatrix, lattice_basis, quotient_invariants, smith_normal_form
from algebra.ring_matrix import (RingMatrix, free_image_rank, homogeneous_solutions, intertwining_system,
                                 linear_solve_mod, nullspace, rank, span_dimension)
from errors import InputError

small_ints = st.integers(min_value=-9, max_value=9)


@st.composite
def int_matrices(draw, max_rows=3, max_cols=3):
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    entries = draw(st.lists(small_ints, min_size=rows * cols, max_size=rows * cols))
    return IntMatrix(rows, cols, tuple(entries))


def minors_gcd(m: IntMatrix, size: int) -> int:
    """gcd of all size x size minors (the determinantal divisor)."""
    g = 0
    for rows in combinations(range(m.rows), size):
        for cols in combinations(range(m.cols), size):
            sub = IntMatrix.from_rows([[m[i, j] for j in cols] for i in rows], size)
            g = gcd(g, sub.determinant())
    return g


##--- Integer matrices ---##

@given(int_matrices())
def test_smith_normal_form_reproduces_diagonal(m):
    snf = smith_normal_form(m)
    assert snf.u @ m @ snf.v == snf.diagonal_matrix
    assert abs(snf.u.determinant()) == 1
    assert abs(snf.v.determinant()) == 1


@given(int_matrices())
def test_smith_invariants_form_a_divisibility_chain(m):
    d = smith_normal_form(m).d
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@given(int_matrices())
def test_smith_invariants_match_determinantal_divisors(m):
    d = smith_normal_form(m).d
    previous = 1
    for size in range(1, min(m.rows, m.cols) + 1):
        current = minors_gcd(m, size)
        expected = current // previous if previous else 0
        assert d[size - 1] == expected
        previous = current if current else 0
        if not current:
            break


def test_quotient_invariants():
    q = quotient_invariants(2, IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert q.torsion == (6,)
    assert q.free_rank == 0
    assert q.torsion_primes == frozenset({2, 3})

    free = quotient_invariants(3, IntMatrix.from_rows([[1, -1, 0]]))
    assert free.torsion == () and free.free_rank == 2

    assert quotient_invariants(2, IntMatrix.zeros(0, 2)).free_rank == 2


def test_lattice_basis_spans_the_same_lattice():
    gens = IntMatrix.from_rows([[2, 4], [3, 6], [0, 5]])
    basis = lattice_basis(gens)
    assert basis.rows == 2
    assert quotient_invariants(2, basis) == quotient_invariants(2, gens)


def test_bareiss_determinant():
    assert IntMatrix.from_rows([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).determinant() == 4
    assert IntMatrix.from_rows([[0, 1], [1, 0]]).determinant() == -1
    assert IntMatrix.from_rows([[1, 2], [2, 4]]).determinant() == 0


##--- Galois rings ---##

def test_galois_ring_rejects_bad_parameters():
    with pytest.raises(InputError):
        GaloisRing.build(6, 2)
    with pytest.raises(InputError):
        GaloisRing(5, 1, 2, (1, 0, 1))   # x^2 + 1 splits mod 5


def test_teichmuller_modulus_is_integral_and_reduces_to_residue_modulus():
    ring = GaloisRing.build(5, 3, 2)
    field = ring.residue_field()
    assert ring.modulus[-1] == 1
    assert tuple(c % 5 for c in ring.modulus) == field.modulus
    x = ring.generator
    assert ring.pow(x, 5 ** 2 - 1) == ring.one


@given(st.integers(min_value=1, max_value=24))
def test_teichmuller_lift_over_gr_125_2(residue_index):
    ring = GaloisRing.build(5, 3, 2)
    residue = [residue_index % 5, residue_index // 5]
    t = teichmuller(ring, residue)
    assert ring.pow(t, 24) == ring.one
    assert ring.reduce(t) == ring.residue_field().element(residue)


@given(st.integers(min_value=1, max_value=124).filter(lambda x: x % 5))
def test_inverse_over_z_125(x):
    ring = GaloisRing.build(5, 3)
    a = ring.element(x)
    assert ring.mul(a, ring.inverse(a)) == ring.one


def test_valuation_and_division():
    ring = GaloisRing.build(5, 3)
    assert ring.valuation(ring.element(50)) == 2
    assert ring.valuation(ring.zero) == 3
    assert ring.divide_by_p_power(ring.element(50), 2) == (2,)
    with pytest.raises(ValueError):
        ring.divide_by_p_power(ring.element(7), 1)


##--- Ring matrices ---##

def test_inverse_and_power_over_z_125():
    ring = GaloisRing.build(5, 3)
    m = RingMatrix.from_rows(ring, [[1, 1], [0, 1]])
    assert m @ m.inverse() == RingMatrix.identity(ring, 2)
    assert m.power(4) == RingMatrix.from_rows(ring, [[1, 4], [0, 1]])
    assert m.power(-1) == RingMatrix.from_rows(ring, [[1, 124], [0, 1]])
    assert not RingMatrix.from_rows(ring, [[5, 0], [0, 1]]).is_invertible()


def test_determinant_without_unit_pivot():
    ring = GaloisRing.build(5, 3)
    m = RingMatrix.from_rows(ring, [[5, 10], [15, 5]])
    assert m.determinant() == ring.element(25 - 150)


@st.composite
def small_systems(draw):
    entries = draw(st.lists(st.integers(min_value=0, max_value=24), min_size=6, max_size=6))
    return entries[:4], entries[4:]


@given(small_systems())
def test_linear_solve_matches_exhaustive_search_over_z_25(system):
    ring = GaloisRing.build(5, 2)
    coeffs, rhs = system
    a = RingMatrix.from_rows(ring, [coeffs[:2], coeffs[2:]])
    b = RingMatrix.from_rows(ring, [[rhs[0]], [rhs[1]]])
    solutions = [(x, y) for x, y in product(range(25), repeat=2)
                 if (coeffs[0] * x + coeffs[1] * y - rhs[0]) % 25 == 0
                 and (coeffs[2] * x + coeffs[3] * y - rhs[1]) % 25 == 0]
    result = linear_solve_mod(ring, a, b)
    assert result.solvable == bool(solutions)
    if result.solvable:
        x, y = (v[0] for v in result.particular)
        assert (x, y) in solutions
        homogeneous = 1
        for g in result.kernel:
            homogeneous *= 5 ** g.exponent
        assert homogeneous == len(solutions)


def test_kernel_of_non_free_system():
    ring = GaloisRing.build(5, 3)
    a = RingMatrix.from_rows(ring, [[5, 0], [0, 0]])
    result = homogeneous_solutions(a)
    assert result.kernel_invariants == (1, 3)
    assert result.free_rank == 1
    assert not result.kernel_is_free
    assert len(nullspace(a)) == 1


def test_free_image_rank():
    ring = GaloisRing.build(5, 3)
    assert free_image_rank(RingMatrix.from_rows(ring, [[1, 0], [0, 0]])) == (1, True)
    assert free_image_rank(RingMatrix.from_rows(ring, [[1, 0], [0, 5]])) == (1, False)
    assert rank(RingMatrix.from_rows(ring, [[1, 0], [0, 5]])) == 1


def test_commutant_of_a_regular_diagonal_matrix():
    field = GaloisRing.build(5, 1)
    d = RingMatrix.from_rows(field, [[1, 0], [0, 2]])
    basis = nullspace(intertwining_system(field, 2, [(d, d)]))
    assert len(basis) == 2
    matrices = [RingMatrix(field, 2, 2, tuple(v)) for v in basis]
    assert all(m[0, 1] == field.zero and m[1, 0] == field.zero for m in matrices)
    assert span_dimension(matrices) == 2


def test_products_over_extension_ring():
    ring = GaloisRing.build(5, 2, 2)
    x = ring.generator
    m = RingMatrix.from_rows(ring, [[x, ring.one], [ring.zero, x]])
    assert m @ m.inverse() == RingMatrix.identity(ring, 2)
    assert m.reduce().ring == ring.residue_field()
