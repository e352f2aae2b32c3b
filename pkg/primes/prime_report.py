"""
Good, pretty good and effective primes for a root datum.

Design NOTE on prime conditions:
- p is good when ZPhi/ZSigma has no p-torsion for every closed subsystem Sigma. Classes of closed subsystems
  suffice since the quotient only changes by an automorphism of ZPhi inside a Weyl orbit.
- p is pretty good when X/ZPhi' and Y/ZPhi'^vee have no p-torsion for all subsets Phi' of Phi. For any subset,
  ZPhi' = ZSigma with Sigma = ZPhi' cap Phi closed in Phi, and likewise on the coroot side inside Phi^vee, so
  the X side ranges over closed subsystems of Phi and the Y side over closed subsystems of the dual system.
- effective_p_bound walks the primes upwards until all four conditions hold: p pretty good, p > semisimple
  rank + 1, p coprime to |W| and p above the constant (the improved constant when one is known).
"""

from dataclasses import dataclass, field

from sympy import nextprime, primefactors

from algebra.int_matrix import quotient_torsion_primes
from errors import InvariantViolation
from log_setup import get_logger
from primes.component_bounds import (NONCONNECTED_FORMULA, cG_bound, improved_constant, known_lower_bound_notes)
from roots.root_datum import RootDatum, center_and_pi1
from roots.root_system import weyl_order
from roots.subsystems import enumerate_closed_subsystems

logger = get_logger(__name__)


def good_bad_primes(d: RootDatum) -> frozenset[int]:
    """Primes dividing the torsion of ZPhi/ZSigma for some closed subsystem Sigma."""
    rs = d.root_system
    bad = set()
    for sub in enumerate_closed_subsystems(rs):
        if sub.base:
            bad |= quotient_torsion_primes(rs.rank, sub.base_matrix)
    return frozenset(bad)


def pretty_good_bad_primes(d: RootDatum) -> frozenset[int]:
    """Primes dividing the torsion of X/ZSigma or Y/ZSigma^vee for some closed Sigma (resp. Sigma^vee)."""
    bad = set()
    for sub in enumerate_closed_subsystems(d.root_system):
        bad |= quotient_torsion_primes(d.x_rank, d.roots_to_x(sub.base))
    for sub in enumerate_closed_subsystems(d.root_system.dual()):
        bad |= quotient_torsion_primes(d.x_rank, d.coroots_to_y(sub.base))
    return frozenset(bad)


def center_smooth(d: RootDatum, p: int) -> bool:
    """True iff p divides no torsion invariant factor of X/ZPhi."""
    return all(t % p for t in center_and_pi1(d).center_torsion)


def effective_p_bound(d: RootDatum, pretty_bad: frozenset[int] | None = None) -> tuple[int, dict[str, bool]]:
    """
    Smallest prime satisfying every condition of the effective bound.

    Args:
        d: root datum of rank <= 8
        pretty_bad: precomputed pretty_good_bad_primes(d), computed when omitted
    Returns:
        tuple:
         - p: the smallest admissible prime
         - bullets: each condition evaluated at p (all True)
    """
    pretty_bad = pretty_good_bad_primes(d) if pretty_bad is None else pretty_bad
    w = weyl_order(d.root_system)
    improved = improved_constant(d)
    constant = cG_bound(d) if improved is None else improved
    p = 2
    while True:
        bullets = {
            "pretty_good": p not in pretty_bad,
            "above_rank_plus_one": p > d.semisimple_rank + 1,
            "coprime_to_weyl_order": w % p != 0,
            "above_constant": p > constant,
        }
        if all(bullets.values()):
            logger.debug(f"{d.describe()}: effective prime {p} (constant {constant})")
            return p, bullets
        p = int(nextprime(p))


@dataclass
class PrimeReport:
    """
    Prime data of a root datum.

    Args:
        bad_primes_good: primes that are not good
        bad_primes_pretty_good: primes that are not pretty good
        center_nonsmooth_primes: primes dividing the torsion of X/ZPhi
        pi1_primes: primes dividing the torsion of Y/ZPhi^vee
        weyl_order: |W|
        cG: integer part of the component-group constant
        improved_constant: sharper constant for the type, when one is known
        constant_used: "improved" or "cG"
        effective_min_p: smallest prime passing every condition
        bullets: the conditions evaluated at effective_min_p
        notes: formulas and known lower bounds published with the report
    """
    bad_primes_good: frozenset[int]
    bad_primes_pretty_good: frozenset[int]
    center_nonsmooth_primes: frozenset[int]
    pi1_primes: frozenset[int]
    weyl_order: int
    cG: int
    improved_constant: int | None
    constant_used: str
    effective_min_p: int
    bullets: dict[str, bool]
    notes: list[str] = field(default_factory=list)

    def check(self):
        """Raises InvariantViolation unless the pretty good primes are exactly the good ones with smooth center and pi_1."""
        expected = self.bad_primes_good | self.center_nonsmooth_primes | self.pi1_primes
        if self.bad_primes_pretty_good != expected:
            raise InvariantViolation(f"Pretty good bad primes {sorted(self.bad_primes_pretty_good)} differ from "
                                     f"bad good primes, center and pi_1 primes {sorted(expected)}")
        if not all(self.bullets.values()):
            raise InvariantViolation(f"Effective prime {self.effective_min_p} fails {self.bullets}")

    def to_json(self) -> dict:
        return {
            "bad_primes_good": sorted(self.bad_primes_good),
            "bad_primes_pretty_good": sorted(self.bad_primes_pretty_good),
            "center_nonsmooth_primes": sorted(self.center_nonsmooth_primes),
            "pi1_primes": sorted(self.pi1_primes),
            "weyl_order": self.weyl_order,
            "cG": self.cG,
            "improved_constant": self.improved_constant,
            "constant_used": self.constant_used,
            "effective_min_p": self.effective_min_p,
            "bullets": dict(self.bullets),
            "notes": list(self.notes),
        }


def build_prime_report(d: RootDatum) -> PrimeReport:
    """Evaluates every prime condition for d and checks their mutual consistency."""
    invariants = center_and_pi1(d)
    center_primes = frozenset(p for t in invariants.center_torsion for p in primefactors(t))
    pi1_primes = frozenset(p for t in invariants.pi1_torsion for p in primefactors(t))
    pretty_bad = pretty_good_bad_primes(d)
    improved = improved_constant(d)
    p, bullets = effective_p_bound(d, pretty_bad)
    report = PrimeReport(
        bad_primes_good=good_bad_primes(d),
        bad_primes_pretty_good=pretty_bad,
        center_nonsmooth_primes=center_primes,
        pi1_primes=pi1_primes,
        weyl_order=weyl_order(d.root_system),
        cG=cG_bound(d),
        improved_constant=improved,
        constant_used="cG" if improved is None else "improved",
        effective_min_p=p,
        bullets=bullets,
        notes=[f"non-connected groups: constant {NONCONNECTED_FORMULA} (one valid choice, not sharp)",
               *known_lower_bound_notes(d)],
    )
    report.check()
    return report
