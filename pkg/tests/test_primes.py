from itertools import combinations

import pytest
from sympy import primerange

from algebra.int_matrix import quotient_torsion_primes
from primes.component_bounds import cG_bound, cG_bound_exact, improved_constant, lambda_bound, nonconnected_bound
from primes.prime_report import (build_prime_report, center_smooth, effective_p_bound, good_bad_primes,
                                 pretty_good_bad_primes)
from roots.cartan_type import CartanType
from roots.root_datum import IsogenyClass, build_root_datum, center_and_pi1

RANK_AT_MOST_THREE = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "G2", "A1xA1", "A1xA2", "A1xB2", "A1xA1xA1"]


def datum(type_string: str, flag: str = "sc"):
    return build_root_datum(CartanType.parse(type_string), IsogenyClass.from_flag(flag))


def raw_subset_bad_primes(d) -> frozenset[int]:
    """X/ZPhi' and Y/ZPhi'^vee torsion over every subset of positive roots."""
    rs = d.root_system
    bad = set()
    for size in range(1, len(rs.positive_roots) + 1):
        for subset in combinations(rs.positive_roots, size):
            bad |= quotient_torsion_primes(d.x_rank, d.roots_to_x(subset))
            bad |= quotient_torsion_primes(d.x_rank, d.coroots_to_y(rs.coroot(a) for a in subset))
    return frozenset(bad)


def test_g2_report():
    report = build_prime_report(datum("G2"))
    assert report.weyl_order == 12
    assert report.bad_primes_good == frozenset({2, 3})
    assert report.improved_constant == 72
    assert report.constant_used == "improved"
    assert report.cG == 867
    assert report.effective_min_p == 73
    assert all(report.bullets.values())


def test_a1_simply_connected():
    report = build_prime_report(datum("A1"))
    assert report.bad_primes_pretty_good == frozenset({2})
    assert report.bad_primes_good == frozenset()
    assert report.center_nonsmooth_primes == frozenset({2})
    assert report.cG == 64


def test_pure_torus_has_no_bad_primes():
    report = build_prime_report(datum("T3"))
    assert report.bad_primes_good == report.bad_primes_pretty_good == frozenset()
    assert report.center_nonsmooth_primes == report.pi1_primes == frozenset()
    assert report.cG == 1
    assert report.effective_min_p == 2


def test_gl_uses_the_improved_constant():
    d = datum("GLn(3)", "preset")
    assert improved_constant(d) == 1
    report = build_prime_report(d)
    assert report.bad_primes_pretty_good == frozenset()
    # p = 5 is the first prime above rank + 1 = 3 coprime to |W| = 6
    assert report.effective_min_p == 5


def test_cg_is_exact_before_flooring():
    d = datum("G2")
    assert cG_bound_exact(d) == 12 * (8.5 ** 2)
    assert cG_bound(d) == 867


@pytest.mark.parametrize("type_string", RANK_AT_MOST_THREE)
@pytest.mark.parametrize("flag", ["sc", "ad"])
def test_pretty_good_means_good_with_smooth_center_and_pi1(type_string, flag):
    d = datum(type_string, flag)
    good_bad, pretty_bad = good_bad_primes(d), pretty_good_bad_primes(d)
    pi1 = center_and_pi1(d).pi1_torsion
    for p in primerange(2, 51):
        pretty_good = p not in pretty_bad
        assert pretty_good == (p not in good_bad and all(t % p for t in pi1) and center_smooth(d, p))


@pytest.mark.parametrize("type_string", ["A1", "A2", "B2", "G2", "A1xA1"])
@pytest.mark.parametrize("flag", ["sc", "ad"])
def test_pretty_good_primes_match_raw_subset_enumeration(type_string, flag):
    d = datum(type_string, flag)
    assert pretty_good_bad_primes(d) == raw_subset_bad_primes(d)


@pytest.mark.parametrize("first, second", [("A1", "G2"), ("B2", "A2"), ("C3", "A1")])
def test_bad_primes_of_a_product_are_the_union(first, second):
    product = good_bad_primes(datum(f"{first}x{second}"))
    assert product == good_bad_primes(datum(first)) | good_bad_primes(datum(second))


@pytest.mark.parametrize("full, levis", [("B3", ["B2", "A2", "A1xA1", "A1"]),
                                         ("C3", ["C2", "A2", "A1xA1"]),
                                         ("G2", ["A1"])])
def test_bad_primes_of_a_levi_are_bad_for_the_group(full, levis):
    bad = good_bad_primes(datum(full))
    for levi in levis:
        assert good_bad_primes(datum(levi)) <= bad


def test_effective_bound_bullets_hold_at_the_returned_prime():
    p, bullets = effective_p_bound(datum("B2"))
    assert set(bullets) == {"pretty_good", "above_rank_plus_one", "coprime_to_weyl_order", "above_constant"}
    assert all(bullets.values())
    assert p > cG_bound(datum("B2"))


def test_known_lower_bound_notes():
    pgl = build_prime_report(datum("A2", "ad"))
    assert any("order 9" in note for note in pgl.notes)
    sp = build_prime_report(datum("C2", "sc"))
    assert any("p > 4" in note for note in sp.notes)


def test_component_group_bounds():
    assert nonconnected_bound(1, 0, 2) == 4
    assert nonconnected_bound(5, 1, 1) == 5
    assert lambda_bound(1, 1, 3) == 12
    with pytest.raises(ValueError):
        nonconnected_bound(1, 0, 0)
