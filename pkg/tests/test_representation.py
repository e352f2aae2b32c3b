from itertools import permutations

import numpy as np
import pytest

from algebra.galois_ring import GaloisRing
from algebra.ring_matrix import RingMatrix, intertwining_system, matrix_from_vector, nullspace, span_dimension
from errors import InputError
from representation.decomposition import (bicommutant, commutant, decomposition_type, good_for_type_check,
                                          group_algebra_dimension, isotypic_structure)
from representation.group_rep import GroupRep, permutation_order
from conftest import load_rep


def permutation_matrix(field: GaloisRing, perm) -> RingMatrix:
    n = len(perm)
    return RingMatrix.from_rows(field, [[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)])


def random_invertible(field: GaloisRing, n: int, rng: np.random.Generator) -> RingMatrix:
    while True:
        m = RingMatrix.from_rows(field, rng.integers(0, field.p, size=(n, n)).tolist())
        if m.is_invertible():
            return m


def make_rep(field: GaloisRing, generators, q: int = 2) -> GroupRep:
    n = generators[0].rows
    identity = RingMatrix.identity(field, n)
    rep = GroupRep(p=field.p, e=1, n=n, generators=tuple(generators), sigma=identity, phi=identity, q=q)
    rep.validate()
    return rep


def seeded_case(index: int) -> GroupRep:
    """Cyclic or symmetric permutation groups of order <= 24, conjugated by a random matrix."""
    rng = np.random.default_rng(index)
    p = [5, 7, 11][index % 3]
    field = GaloisRing.build(p, 1)
    kind = index % 5
    if kind == 0:
        gens = [(1, 0, 2), (1, 2, 0)]                                # S3
    elif kind == 1:
        gens = [(1, 0, 2, 3), (1, 2, 3, 0)]                          # S4
    elif kind == 2:
        n = [m for m in (3, 4, 6) if m % p][index % 2]
        gens = [tuple((i + 1) % n for i in range(n))]                # C_n
    elif kind == 3:
        gens = [(1, 0, 2, 3, 4), (0, 1, 3, 4, 2)]                    # C2 x C3 on five points
    else:
        gens = [(1, 2, 0, 3), (0, 1, 2, 3)]                          # C3 fixing a point
    g = random_invertible(field, len(gens[0]), rng)
    g_inv = g.inverse()
    return make_rep(field, [g @ permutation_matrix(field, perm) @ g_inv for perm in gens])


def sp_slice_dimension(field: GaloisRing, basis) -> int:
    """Dimension of {X in span(basis) : X^t Omega + Omega X = 0}, Omega the standard form on F^4."""
    omega = RingMatrix.from_rows(field, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    columns = [(x.transpose() @ omega + omega @ x).vectorize() for x in basis]
    return len(nullspace(RingMatrix.from_columns(field, columns, 16)))


##--- GroupRep ---##

def test_permutation_order():
    assert permutation_order((1, 2, 0, 4, 3)) == 6
    assert permutation_order(()) == 1


def test_group_enumeration_is_breadth_first_from_the_identity():
    rep = load_rep("q8_f3")
    assert rep.order == 8
    assert rep.elements[0].is_identity()
    assert rep.elements[1] == rep.generators[0]
    assert rep.multiplication_table[0] == tuple(range(8))


def test_sigma_and_phi_actions():
    rep = load_rep("companion_inversion_f5")
    generator = rep.generator_indices[0]
    assert rep.elements[rep.phi_action[generator]] == rep.generators[0].power(2)
    assert rep.sigma_action == tuple(range(rep.order))


def test_q1_is_synthetic():
    field = GaloisRing.build(5, 1)
    rep = make_rep(field, [RingMatrix.from_rows(field, [[1, 0], [0, 4]])], q=1)
    assert rep.is_synthetic


@pytest.mark.parametrize("payload, message", [
    ({"p": 5, "n": 2, "q": 1, "generators": [[[1, 1], [0, 1]]], "sigma": [[1, 0], [0, 1]], "phi": [[1, 0], [0, 1]]},
     "group order divisible by p"),
    ({"p": 5, "n": 2, "q": 2, "generators": [], "sigma": [[1, 1], [0, 1]], "phi": [[1, 0], [0, 1]]},
     r"phi\*sigma\*phi\^-1 != sigma\^q"),
    ({"p": 5, "n": 2, "q": 5, "generators": [], "sigma": [[1, 0], [0, 1]], "phi": [[1, 0], [0, 1]]},
     r"gcd\(q, p\)"),
    ({"p": 5, "n": 2, "q": 2, "generators": [[[1, 0], [0, 4]]], "sigma": [[1, 1], [0, 1]], "phi": [[1, 0], [0, 1]]},
     "sigma does not normalize"),
    ({"p": 5, "n": 2, "q": 2, "generators": [], "sigma": [[1, 0], [0, 0]], "phi": [[1, 0], [0, 1]]},
     "sigma is not invertible"),
    ({"p": 5, "n": 2, "q": 2, "generators": [], "sigma": [[1, 0]], "phi": [[1, 0], [0, 1]]},
     "2x2 matrix"),
    ({"p": 5, "n": 2, "generators": [], "sigma": [[1, 0], [0, 1]], "phi": [[1, 0], [0, 1]]},
     "missing field"),
])
def test_group_rep_invariants_are_named(payload, message):
    with pytest.raises(InputError, match=message):
        GroupRep.from_dict(payload)


def test_round_trip_through_dict():
    rep = load_rep("q8_f3")
    assert GroupRep.from_dict(rep.to_dict()) == rep


##--- Decomposition types ---##

@pytest.mark.parametrize("name, signatures, dim_c, dim_delta", [
    ("q4_unipotent", [(1, 2, 1)], 4, 1),
    ("diag_sign", [(1, 1, 1), (1, 1, 1)], 2, 2),
    ("companion_f5", [(1, 1, 2)], 2, 2),
    ("q8_f3", [(2, 1, 1)], 1, 4),
    ("cyclic3_gl4_f7", [(1, 2, 1), (1, 2, 1)], 8, 2),
])
def test_decomposition_of_fixtures(name, signatures, dim_c, dim_delta):
    dt = decomposition_type(load_rep(name))
    assert dt.isotypic.signatures == signatures
    assert len(dt.c_basis) == dim_c
    assert len(dt.delta_basis) == dim_delta
    assert dt.isotypic.change_of_basis.is_invertible()


def test_isotypic_splitting_does_not_depend_on_the_seed():
    rep = load_rep("cyclic3_gl4_f7")
    first = isotypic_structure(rep, seed=0)
    second = isotypic_structure(rep, seed=7)
    assert [b.idempotent for b in first.blocks] == [b.idempotent for b in second.blocks]


def test_idempotents_are_orthogonal_and_central():
    rep = load_rep("cyclic3_gl4_f7")
    blocks = isotypic_structure(rep).blocks
    total = RingMatrix.zeros(rep.ring, rep.n, rep.n)
    for b in blocks:
        assert b.idempotent @ b.idempotent == b.idempotent
        assert all(b.idempotent @ g == g @ b.idempotent for g in rep.generators)
        total = total + b.idempotent
    assert total.is_identity()
    assert (blocks[0].idempotent @ blocks[1].idempotent).is_zero()


@pytest.mark.parametrize("index", range(25))
def test_double_centralizer(index):
    rep = seeded_case(index)
    c = commutant(rep)
    delta = bicommutant(rep, c)
    span = group_algebra_dimension(rep)
    assert len(delta) == span
    assert span_dimension(delta + list(rep.elements)) == span
    dt = decomposition_type(rep, seed=index)
    assert sum(b.m ** 2 * b.e for b in dt.isotypic.blocks) == len(c)
    assert sum(b.d ** 2 * b.e for b in dt.isotypic.blocks) == len(delta)
    assert sum(b.size for b in dt.isotypic.blocks) == rep.n


def test_good_for_type():
    assert good_for_type_check(decomposition_type(load_rep("cyclic3_gl4_f7")), 7) == (True, 2)
    field = GaloisRing.build(5, 1)
    four_characters = make_rep(field, [RingMatrix.from_rows(field, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 4, 0],
                                                                    [0, 0, 0, 3]])])
    assert good_for_type_check(decomposition_type(four_characters), 5) == (False, 24)
    assert good_for_type_check(decomposition_type(load_rep("q8_f3")), 3) == (True, 1)


##--- Dual pairs inside Sp_4 ---##

def test_non_self_dual_pair():
    rep = load_rep("sympl_dual_pair_f5")
    dt = decomposition_type(rep)
    assert (len(dt.c_basis), len(dt.delta_basis)) == (2, 8)
    assert dt.isotypic.signatures == [(2, 1, 1), (2, 1, 1)]
    assert sp_slice_dimension(rep.ring, dt.c_basis) == 1
    assert sp_slice_dimension(rep.ring, dt.delta_basis) == 4


def test_self_dual_pair():
    rep = load_rep("sympl_self_dual_f5")
    dt = decomposition_type(rep)
    assert (len(dt.c_basis), len(dt.delta_basis)) == (4, 4)
    assert dt.isotypic.signatures == [(2, 2, 1)]
    assert sp_slice_dimension(rep.ring, dt.c_basis) == 1
    assert sp_slice_dimension(rep.ring, dt.delta_basis) == 3


def test_symplectic_fixtures_preserve_the_form():
    for name in ("sympl_dual_pair_f5", "sympl_self_dual_f5"):
        rep = load_rep(name)
        omega = RingMatrix.from_rows(rep.ring, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
        assert all(g @ omega @ g.transpose() == omega for g in rep.generators)


def test_intertwining_system_solves_x_p_equals_q_x():
    field = GaloisRing.build(5, 1)
    p_mat = RingMatrix.from_rows(field, [[1, 0], [0, 4]])
    q_mat = RingMatrix.from_rows(field, [[4, 0], [0, 1]])
    solutions = [matrix_from_vector(field, 2, v) for v in nullspace(intertwining_system(field, 2, [(p_mat, q_mat)]))]
    assert len(solutions) == 2
    assert all(x @ p_mat == q_mat @ x for x in solutions)
