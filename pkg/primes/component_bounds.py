"""
Explicit bounds on component groups of centralizers.

Design NOTE on the constants:
- c = 16 when every simple factor is classical, 17/2 for G_2 and 197 otherwise. For a Levi class L the
  constant is the largest value over the simple factors of L, raised to the semisimple rank of L.
- c_G = |W_G| * max over Levi classes L of c_L^(ss rank L) * |torsion of X/ZPhi_L| is evaluated exactly with
  Fractions; cG_bound returns its integer part, which yields the same condition "p > c_G" on integers.
- Per-type improvements replace c_G when known: 72 for G_2 and 1 for GL_n (centralizers of completely
  reducible subgroups of GL_n are products of general linear groups, hence connected).
- nonconnected_bound is one valid instantiation of a constant that is only shown to exist; the formula is
  published with every report.
"""

from fractions import Fraction
from math import floor

from algebra.int_matrix import quotient_invariants
from roots.balacarter import levi_classes
from roots.root_datum import RootDatum
from roots.root_system import identify_components, weyl_order
from roots.subsystems import subsystem_cartan

CLASSICAL_CONSTANT = Fraction(16)
G2_CONSTANT = Fraction(17, 2)
EXCEPTIONAL_CONSTANT = Fraction(197)

G2_IMPROVED_CONSTANT = 72
GL_IMPROVED_CONSTANT = 1

NONCONNECTED_FORMULA = "pi0^2 * cG0 * (4^rank0 * pi0^rank0)^ceil(log2 pi0)"


def factor_constant(family: str) -> Fraction:
    if family in "ABCD":
        return CLASSICAL_CONSTANT
    if family == "G":
        return G2_CONSTANT
    return EXCEPTIONAL_CONSTANT


def levi_constant(families: list[str]) -> Fraction:
    """Constant for a group whose simple factors have the given families (1 for a torus)."""
    return max((factor_constant(f) for f in families), default=Fraction(1))


def cG_bound_exact(d: RootDatum) -> Fraction:
    """c_G as an exact rational."""
    rs = d.root_system
    best = Fraction(0)
    for levi in levi_classes(rs, d.central_rank):
        base = levi.subsystem.base
        families = [family for family, _, _ in identify_components(subsystem_cartan(rs, base))] if base else []
        center = quotient_invariants(d.x_rank, d.roots_to_x(base))
        best = max(best, levi_constant(families) ** len(base) * center.torsion_order)
    return weyl_order(rs) * best


def cG_bound(d: RootDatum) -> int:
    """
    Integer part of c_G = |W_G| * max_L c^(rank L_ad) * |pi0 Z(L)|.

    Examples: torus -> 1, A1 simply connected -> 64, G2 -> 867.
    """
    return floor(cG_bound_exact(d))


def improved_constant(d: RootDatum) -> int | None:
    """Known sharper replacement for c_G, or None."""
    t = d.cartan_type
    if t.gl_preset is not None:
        return GL_IMPROVED_CONSTANT
    if t.factors == (("G", 2),) and t.torus_rank == 0:
        return G2_IMPROVED_CONSTANT
    return None


def known_lower_bound_notes(d: RootDatum) -> list[str]:
    """Published lower bounds any valid constant has to respect, for the types where one is known."""
    t = d.cartan_type
    notes = []
    if len(t.factors) == 1 and t.torus_rank == 0 and t.gl_preset is None:
        family, rank = t.factors[0]
        if family == "A" and d.isogeny.kind == "adjoint":
            n = rank + 1
            notes.append(f"PGL_{n} has a subgroup with finite centralizer of order {n * n}; the constant is at least {n * n}")
        if family == "C" and d.isogeny.kind == "simply_connected":
            notes.append(f"Sp_{2 * rank} has a subgroup with finite centralizer of order {2 ** rank}; this method needs p > {2 ** rank}")
    return notes


def lambda_bound(rank_derived: int, dim_center: int, n: int) -> int:
    """4^rank_derived * n^dim_center: bounds the component group of the centralizer of an order n automorphism."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 4 ** rank_derived * n ** dim_center


def nonconnected_bound(cG0: int, rank0: int, pi0_order: int) -> int:
    """
    Component-group bound for a non-connected group from the constant of its identity component.

    Args:
        cG0: constant of the identity component
        rank0: rank of the identity component
        pi0_order: order of the component group
    Returns:
        pi0^2 * cG0 * (4^rank0 * pi0^rank0)^ceil(log2 pi0)
    """
    if pi0_order < 1:
        raise ValueError(f"pi0_order must be >= 1, got {pi0_order}")
    ceil_log2 = (pi0_order - 1).bit_length()
    return pi0_order ** 2 * cG0 * (4 ** rank0 * pi0_order ** rank0) ** ceil_log2
