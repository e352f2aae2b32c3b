from dataclasses import replace

import pytest

from errors import InputError, InvariantViolation
from roots.balacarter import bala_carter_data, grading_dims, is_distinguished, levi_classes
from roots.cartan_type import CartanType
from roots.root_datum import IsogenyClass, build_root_datum, center_and_pi1
from roots.root_system import build_root_system, weyl_order
from roots.subsystems import (brute_force_closed_subsystems, enumerate_closed_subsystems, is_closed,
                              subsystem_signature)

SMALL_IRREDUCIBLE = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "G2"]


def partitions(n: int, largest: int | None = None) -> int:
    """Number of partitions of n into parts <= largest."""
    largest = n if largest is None else largest
    if n == 0:
        return 1
    return sum(partitions(n - part, part) for part in range(1, min(n, largest) + 1))


def system(type_string: str):
    return build_root_system(CartanType.parse(type_string))


##--- Type strings ---##

@pytest.mark.parametrize("text, factors, torus, rank", [
    ("G2", (("G", 2),), 0, 2),
    ("A1xB2+T1", (("A", 1), ("B", 2)), 1, 4),
    ("T3", (), 3, 3),
    (" E8 ", (("E", 8),), 0, 8),
])
def test_parse_type_strings(text, factors, torus, rank):
    t = CartanType.parse(text)
    assert t.factors == factors
    assert t.torus_rank == torus
    assert t.rank == rank


def test_gl_preset():
    t = CartanType.parse("GLn(3)")
    assert t.gl_preset == 3
    assert t.factors == (("A", 2),)
    assert t.rank == 3 and t.central_rank == 1
    assert str(t) == "GLn(3)"
    assert CartanType.parse("GL1").semisimple_rank == 0


@pytest.mark.parametrize("text, position", [("A1xZ2", 3), ("B1", 0), ("A1+", 3), ("", 0), ("G2)", 2)])
def test_parse_errors_report_positions(text, position):
    with pytest.raises(InputError, match=f"position {position}"):
        CartanType.parse(text)


##--- Root systems and Weyl groups ---##

@pytest.mark.parametrize("type_string, roots, order", [
    ("A1", 2, 2), ("A3", 12, 24), ("B2", 8, 8), ("B3", 18, 48), ("C3", 18, 48), ("D4", 24, 192),
    ("G2", 12, 12), ("F4", 48, 1152), ("E6", 72, 51840), ("E8", 240, 696729600), ("A1xA2", 8, 12),
])
def test_root_counts_and_weyl_orders(type_string, roots, order):
    rs = system(type_string)
    assert len(rs.all_roots) == roots
    assert weyl_order(rs) == order


def test_coroots_of_b2_exchange_lengths():
    rs = system("B2")
    long_root, short_root = (1, 0), (0, 1)   # Bourbaki: alpha_2 is short in B2
    assert rs.norm(long_root) == 2 * rs.norm(short_root)
    assert rs.pair(long_root, rs.coroot(long_root)) == 2
    assert rs.dual().type_name == "C2"


##--- Root data ---##

def test_center_and_fundamental_group_of_a1():
    sc = center_and_pi1(build_root_datum(CartanType.parse("A1"), IsogenyClass.simply_connected()))
    ad = center_and_pi1(build_root_datum(CartanType.parse("A1"), IsogenyClass.adjoint()))
    assert sc.center_torsion == (2,) and sc.pi1_torsion == ()
    assert ad.center_torsion == () and ad.pi1_torsion == (2,)


def test_gl_preset_has_torsion_free_quotients():
    d = build_root_datum(CartanType.parse("GLn(3)"), IsogenyClass.preset())
    invariants = center_and_pi1(d)
    assert d.x_rank == 3 and d.central_rank == 1
    assert invariants.center_torsion == () and invariants.pi1_torsion == ()
    assert invariants.x_free_rank == 1


def test_preset_requires_gl():
    with pytest.raises(InputError):
        build_root_datum(CartanType.parse("A2"), IsogenyClass.preset())
    with pytest.raises(InputError):
        IsogenyClass.from_flag("weird")


def test_dual_datum_swaps_center_and_fundamental_group():
    d = build_root_datum(CartanType.parse("B2"), IsogenyClass.simply_connected())
    dual = d.dual()
    dual.check()
    assert dual.cartan_type.factors == (("C", 2),)
    assert center_and_pi1(dual).pi1_torsion == center_and_pi1(d).center_torsion


def test_torus_datum():
    d = build_root_datum(CartanType.parse("T3"), IsogenyClass.simply_connected())
    assert d.semisimple_rank == 0
    assert center_and_pi1(d).x_free_rank == 3


##--- Closed subsystems ---##

@pytest.mark.parametrize("type_string", SMALL_IRREDUCIBLE)
def test_enumeration_agrees_with_brute_force(type_string):
    rs = system(type_string)
    fast = enumerate_closed_subsystems(rs)
    slow = brute_force_closed_subsystems(rs)
    assert sorted(subsystem_signature(rs, s.base) for s in fast) == sorted(subsystem_signature(rs, s.base) for s in slow)
    assert sorted(s.type_name for s in fast) == sorted(s.type_name for s in slow)
    assert all(is_closed(rs, s.roots) for s in fast)


@pytest.mark.parametrize("type_string, classes", [("A2", 3), ("B2", 5), ("G2", 6)])
def test_closed_subsystem_class_counts(type_string, classes):
    assert len(enumerate_closed_subsystems(system(type_string))) == classes


def test_enumeration_rejects_large_rank():
    with pytest.raises(InputError):
        enumerate_closed_subsystems(system("A9"))


def test_g2_contains_the_long_a2():
    names = {s.type_name for s in enumerate_closed_subsystems(system("G2"))}
    assert {"G2", "A2", "A1xA1~", "A1", "A1~", "0"} == names


##--- Bala-Carter ---##

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_type_a_labels_are_counted_by_partitions(n):
    assert len(bala_carter_data(system(f"A{n}"))) == partitions(n + 1)


@pytest.mark.parametrize("type_string, count", [("B2", 4), ("G2", 5), ("C3", 8)])
def test_label_counts(type_string, count):
    assert len(bala_carter_data(system(type_string))) == count


def test_zero_orbit_comes_first_and_regular_orbit_is_present():
    labels = bala_carter_data(system("G2"))
    assert labels[0].levi.type_name == "0"
    assert labels[0].i_subset == ()
    names = [label.name for label in labels]
    assert "G2[I=∅]" in names
    assert "G2[I={1}]" in names or "G2[I={2}]" in names


def test_grading_criterion():
    rs = system("A2")
    full = next(levi for levi in levi_classes(rs) if len(levi.simple_indices) == 2)
    assert is_distinguished(full, ())
    l0, l2, zl = grading_dims(full, (0,))
    assert l0 != l2 + zl
    assert not is_distinguished(full, (0,))


def test_central_torus_enters_the_levi_center():
    labels = bala_carter_data(system("A1"), torus_rank=1)
    assert [label.levi.dim_center for label in labels] == [2, 1]
    assert labels[1].marking == "2"



def test_corrupted_label_raises_invariant_violation():
    label = bala_carter_data(system("A2"))[-1]
    label.check()
    with pytest.raises(InvariantViolation, match="recomputed"):
        replace(label, dims=(label.dims[0] + 1, label.dims[1])).check()
