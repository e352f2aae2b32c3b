"""
Independent verification of a lift and conjugacy of lifts.

Design NOTE on verification:
- Every relation is re-derived from the stored matrices by exact equality over the lift ring, never from
  intermediate data of the pipeline.
- Jordan purity: for each j the residual rank of (u - 1)^j equals the rank of the image of (u - 1)^j over the
  lift ring, and that image is free.
- Centralizer rank: the solution module of X M = M X over M in tau(generators) and the inertia generator
  A z u is free of rank equal to the residual solution dimension (free iff every elementary divisor of the
  system has valuation 0 or k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from algebra.ring_matrix import (RingMatrix, free_image_rank, homogeneous_solutions, intertwining_system,
                                 linear_solve_mod, nullspace, rank)
from lifting.residual import ResidualGaloisData
from lifting.tau import is_homomorphism
from log_setup import get_logger

if TYPE_CHECKING:
    from lifting.pipeline import MRLift

logger = get_logger(__name__)


@dataclass
class VerifyReport:
    """
    Outcome of every check on a lift.

    Args:
        residual_h0: dimension of the residual centralizer of the group, sigma and phi
        centralizer_rank_residual, centralizer_rank_lift: residual dimension and free rank over the lift ring
            of the centralizer of tau and the inertia generator
        jordan_ranks: residual ranks of (u - 1)^j, j = 1..n
        diagnostics: one line per failed check
    """
    homomorphism: bool
    sigma_conjugation: bool
    nu_tame: bool
    frobenius_tau: bool
    frobenius_a: bool
    frobenius_u: bool
    frobenius_z: bool
    u_commutes: bool
    jordan_purity: bool
    centralizer_rank: bool
    reductions: bool
    residual_h0: int
    centralizer_rank_residual: int
    centralizer_rank_lift: int
    jordan_ranks: list[int] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    CHECKS = ("homomorphism", "sigma_conjugation", "nu_tame", "frobenius_tau", "frobenius_a", "frobenius_u",
              "frobenius_z", "u_commutes", "jordan_purity", "centralizer_rank", "reductions")

    @property
    def all_passed(self) -> bool:
        return all(getattr(self, name) for name in self.CHECKS)

    def to_json(self) -> dict:
        out = {name: getattr(self, name) for name in self.CHECKS}
        out.update(all_passed=self.all_passed, residual_h0=self.residual_h0,
                   centralizer_rank_residual=self.centralizer_rank_residual,
                   centralizer_rank_lift=self.centralizer_rank_lift,
                   jordan_ranks=list(self.jordan_ranks), diagnostics=list(self.diagnostics))
        return out


def inertia_generator(lift: MRLift) -> RingMatrix:
    return lift.a @ lift.z @ lift.u


def jordan_purity(u: RingMatrix) -> tuple[bool, list[int]]:
    """Residual ranks of (u - 1)^j and whether each matches the free image rank over the lift ring."""
    nil = u - RingMatrix.identity(u.ring, u.rows)
    power = nil
    ok, ranks = True, []
    for _ in range(u.rows):
        residual = rank(power.reduce())
        lifted, free = free_image_rank(power)
        ranks.append(residual)
        ok = ok and free and lifted == residual
        power = power @ nil
    return ok, ranks


def centralizer_ranks(tau_matrices: list[RingMatrix], theta: RingMatrix) -> tuple[int, int, bool]:
    """(residual dimension, free rank over the lift ring, freeness) of the common centralizer."""
    ring, n = theta.ring, theta.rows
    mats = tau_matrices + [theta]
    lifted = homogeneous_solutions(intertwining_system(ring, n, [(m, m) for m in mats]))
    field_ = ring.residue_field()
    residual = len(nullspace(intertwining_system(field_, n, [(m.reduce(), m.reduce()) for m in mats])))
    return residual, lifted.free_rank, lifted.kernel_is_free


def residual_h0(data: ResidualGaloisData) -> int:
    """Dimension of the matrices commuting with the residual group, sigma and phi."""
    rep = data.rep
    mats = list(rep.generators) + [rep.sigma, rep.phi]
    return len(nullspace(intertwining_system(rep.ring, rep.n, [(m, m) for m in mats])))


def _in_group_span(tau, a: RingMatrix) -> bool:
    n = a.rows
    columns = RingMatrix.from_columns(tau.ring, [m.vectorize() for m in tau.images], n * n)
    target = RingMatrix.from_columns(tau.ring, [a.vectorize()], n * n)
    return linear_solve_mod(tau.ring, columns, target).solvable


def verify_lift(lift: MRLift, data: ResidualGaloisData, k: int) -> VerifyReport:
    """
    Re-derives every relation of the lift; never raises for failed checks.
    """
    rep = data.rep
    tau, a, u, n, z = lift.tau, lift.a, lift.u, lift.n, lift.z
    ring = tau.ring
    diagnostics = []

    def record(name: str, ok: bool) -> bool:
        if not ok:
            diagnostics.append(f"{name} failed over {ring.describe()}")
        return ok

    if ring.k != k:
        diagnostics.append(f"lift is at precision {ring.k}, verification requested at {k}")
    everything = range(tau.order)
    gens = [tau[i] for i in rep.generator_indices]
    n_inv, a_inv = n.inverse(), a.inverse()
    homomorphism = record("homomorphism", is_homomorphism(tau.images, tau.table) and tau.residual == rep.elements
                          and all(tau[i].reduce() == tau.residual[i] for i in everything))
    sigma_conjugation = record("sigma_conjugation",
                               all(a @ tau[i] @ a_inv == tau[data.sigma_conj_action[i]] for i in everything))
    nu_tame = record("nu_tame", a.power(rep.p ** lift.b).is_identity() and _in_group_span(tau, a))
    frobenius_tau = record("frobenius_tau",
                           all(n @ tau[i] @ n_inv == tau[data.phi_conj_action[i]] for i in everything))
    frobenius_a = record("frobenius_a", n @ a @ n_inv == a.power(rep.q))
    frobenius_u = record("frobenius_u", n @ u @ n_inv == u.power(rep.q))
    frobenius_z = record("frobenius_z", n @ z @ n_inv == z.power(rep.q))
    u_commutes = record("u_commutes", all(u @ g == g @ u and z @ g == g @ z for g in gens) and z @ u == u @ z)
    purity, jordan_ranks = jordan_purity(u)
    purity = record("jordan_purity", purity)
    residual_rank, lifted_rank, free = centralizer_ranks(gens, inertia_generator(lift))
    centralizer_ok = record("centralizer_rank", free and residual_rank == lifted_rank)
    reductions = record("reductions", inertia_generator(lift).reduce() == rep.sigma and n.reduce() == rep.phi
                        and z.reduce().is_identity())
    report = VerifyReport(
        homomorphism=homomorphism, sigma_conjugation=sigma_conjugation, nu_tame=nu_tame,
        frobenius_tau=frobenius_tau, frobenius_a=frobenius_a, frobenius_u=frobenius_u, frobenius_z=frobenius_z,
        u_commutes=u_commutes, jordan_purity=purity, centralizer_rank=centralizer_ok, reductions=reductions,
        residual_h0=residual_h0(data), centralizer_rank_residual=residual_rank, centralizer_rank_lift=lifted_rank,
        jordan_ranks=jordan_ranks, diagnostics=diagnostics)
    logger.debug(f"verification over {ring.describe()}: {'pass' if report.all_passed else diagnostics}")
    return report


def transporter_conjugate(lift_a: MRLift, lift_b: MRLift, generator_indices) -> RingMatrix | None:
    """
    c = 1 mod p with c theta_a c^-1 = theta_b on tau(generators) and on the inertia generator, or None.
    """
    ring = lift_a.tau.ring
    n = lift_a.u.rows
    pairs = [(lift_a.tau[i], lift_b.tau[i]) for i in generator_indices]
    pairs.append((inertia_generator(lift_a), inertia_generator(lift_b)))
    generators = nullspace(intertwining_system(ring, n, pairs))
    if not generators:
        return None
    field_ = ring.residue_field()
    residues = RingMatrix.from_columns(field_, [[field_.from_element(x) for x in v] for v in generators], n * n)
    identity = RingMatrix.identity(field_, n)
    solution = linear_solve_mod(field_, residues, RingMatrix.from_columns(field_, [identity.vectorize()], n * n))
    if not solution.solvable:
        return None
    entries = [ring.zero] * (n * n)
    for coeff, v in zip(solution.particular, generators):
        lifted = ring.from_element(coeff)
        entries = [ring.add(x, ring.mul(lifted, y)) for x, y in zip(entries, v)]
    c = RingMatrix(ring, n, n, tuple(entries))
    c_inv = c.inverse()
    if any(c @ p_mat @ c_inv != q_mat for p_mat, q_mat in pairs):
        return None
    return c
