"""
The minimally ramified lifting pipeline: tau, the nu-tame extension A, the pure unipotent u, Frobenius n.

Design NOTE on the pipeline:
- Stages run in order and each consumes the previous ones: lift tau, extend by A, split
  omega = A^-1 sigma mod p, lift omega purely to u, lift Frobenius to n, verify.
- omega has to be unipotent; otherwise sigma does not respect the decomposition type and the pipeline stops
  with HypothesisError("good-decomposition-type").
- Optional z: one integer per isotypic block, z = sum z_i E_i with E_i the central idempotents lifted into
  the center of the lift ring. The inertia generator becomes A z u. z = 1 is the minimally ramified lift.
- A lift is only returned when every verification check passes.
"""

import logging
from dataclasses import dataclass, replace
from typing import Sequence

from algebra.ring_matrix import (RingMatrix, intertwining_system, linear_solve_mod, matrix_from_vector, nullspace)
from errors import HypothesisError, InputError, InvariantViolation
from lifting.extension import nu_tame_extend, sigma_p_exponent
from lifting.frobenius import centralizer_lift_basis, frobenius_lift
from lifting.residual import ResidualGaloisData
from lifting.tau import TauLift, lift_prime_to_p_rep
from lifting.unipotent import pure_unipotent_lift
from lifting.verify import VerifyReport, verify_lift
from log_setup import get_logger


@dataclass(frozen=True)
class MRLift:
    """
    A lift of the residual data to GL_n(GR(p^k, e)).

    Args:
        tau: lift of the prime-to-p group
        a: tau(sigma), the nu-tame extension
        u: pure unipotent part of the inertia generator
        n: Frobenius
        z: central inertial-type twist (identity for the minimally ramified lift)
        b: p-adic valuation of the order of the sigma action
        jordan_type: Jordan block sizes of u
        seed: seed of the randomized stages
        verification: report of verify_lift, set once the lift is verified
    """
    tau: TauLift
    a: RingMatrix
    u: RingMatrix
    n: RingMatrix
    z: RingMatrix
    b: int
    jordan_type: tuple[int, ...]
    seed: int
    verification: VerifyReport | None = None

    @property
    def k(self) -> int:
        return self.tau.ring.k

    def to_json(self) -> dict:
        return {
            "precision": self.k,
            "seed": self.seed,
            "b": self.b,
            "jordan_type": list(self.jordan_type),
            "A": self.a.to_json(),
            "u": self.u.to_json(),
            "n": self.n.to_json(),
            "z": self.z.to_json(),
            "verification": self.verification.to_json() if self.verification else None,
        }


def lift_central_idempotents(data: ResidualGaloisData, tau: TauLift) -> list[RingMatrix]:
    """The isotypic idempotents lifted into the center of the centralizer of tau, in block order."""
    rep = data.rep
    ring = tau.ring
    n = rep.n
    gens = [tau[i] for i in rep.generator_indices]
    commutant = centralizer_lift_basis(ring, n, tau, rep.generator_indices)
    center = [matrix_from_vector(ring, n, v)
              for v in nullspace(intertwining_system(ring, n, [(m, m) for m in gens + commutant]))]
    field = ring.residue_field()
    residues = RingMatrix.from_columns(field, [c.reduce().vectorize() for c in center], n * n)
    lifted = []
    for block in data.decomposition.isotypic.blocks:
        target = RingMatrix.from_columns(field, [block.idempotent.vectorize()], n * n)
        solution = linear_solve_mod(field, residues, target)
        if not solution.solvable:
            raise InvariantViolation("A central idempotent is not the residue of a central element")
        e = RingMatrix.zeros(ring, n, n)
        for coeff, c in zip(solution.particular, center):
            e = e + c.scale(ring.from_element(coeff))
        for _ in range(ring.k + 1):
            square = e @ e
            if square == e:
                break
            e = square.scale_int(3) - (square @ e).scale_int(2)
        else:
            raise InvariantViolation("Idempotent lifting did not converge")
        lifted.append(e)
    return lifted


def build_z(data: ResidualGaloisData, tau: TauLift, n_matrix: RingMatrix, values: Sequence[int]) -> RingMatrix:
    """
    z = sum z_i E_i for one integer per isotypic block.

    Raises:
        InputError when the count is wrong, some z_i is not 1 mod p, or n z n^-1 != z^q
    """
    rep = data.rep
    ring = tau.ring
    idempotents = lift_central_idempotents(data, tau)
    if len(values) != len(idempotents):
        raise InputError(f"z needs one value per isotypic block ({len(idempotents)}), got {len(values)}")
    for i, v in enumerate(values):
        if v % rep.p != 1:
            raise InputError(f"z must reduce to the identity: z_{i} = {v} is not 1 mod {rep.p}")
    n_inv = n_matrix.inverse()
    for i, e in enumerate(idempotents):
        image = n_matrix @ e @ n_inv
        j = next((j for j, f in enumerate(idempotents) if f == image), None)
        if j is None:
            raise InvariantViolation(f"Frobenius does not permute the lifted idempotents (block {i})")
        if (values[i] - pow(values[j], rep.q, ring.modulo)) % ring.modulo:
            raise InputError(f"n z n^-1 != z^q: Frobenius maps block {i} to block {j} but "
                             f"z_{i} != z_{j}^{rep.q} mod {rep.p}^{ring.k}")
    z = RingMatrix.zeros(ring, rep.n, rep.n)
    for v, e in zip(values, idempotents):
        z = z + e.scale_int(v)
    return z


class LiftPipeline:
    """
    Runs every stage for one residual datum and logs the stage boundaries.

    Args:
        data: residual Galois data
        k: precision
        seed: seed of the intertwiner choice
        z: optional inertial-type twist, one integer per isotypic block
    """

    def __init__(self, data: ResidualGaloisData, k: int, seed: int = 0, z: Sequence[int] | None = None):
        if k < 1:
            raise InputError(f"precision must be >= 1, got {k}")
        self.data = data
        self.k = k
        self.seed = seed
        self.z_values = list(z) if z is not None else None
        self.logger = self._setup_logger()

    def _setup_logger(self) -> logging.Logger:
        """The pipeline logger; its records go to the shared log file."""
        return get_logger("lift_pipeline")

    def _omega(self, a: RingMatrix) -> RingMatrix:
        rep = self.data.rep
        omega = a.reduce().inverse() @ rep.sigma
        nil = omega - RingMatrix.identity(rep.ring, rep.n)
        if not nil.power(rep.n).is_zero():
            raise HypothesisError("good-decomposition-type",
                                  "sigma violates the good-decomposition-type condition: A^-1 sigma is not unipotent mod p")
        if any(omega @ g != g @ omega for g in rep.generators):
            raise InvariantViolation("A^-1 sigma does not commute with the residual group")
        return omega

    def run(self) -> MRLift:
        rep = self.data.rep
        self.logger.info(f"Lifting n = {rep.n}, p = {rep.p}, e = {rep.e}, q = {rep.q} to precision {self.k} (seed {self.seed})")
        tau = lift_prime_to_p_rep(rep, self.k)
        self.logger.info(f"tau lifted on {tau.order} group elements")
        b = sigma_p_exponent(self.data)
        a = nu_tame_extend(self.data, tau, self.k, self.seed)
        self.logger.info(f"nu-tame extension found (b = {b})")
        unipotent = pure_unipotent_lift(self._omega(a), tau)
        self.logger.info(f"pure unipotent of Jordan type {unipotent.jordan_type}")
        n = frobenius_lift(self.data, tau, a, unipotent.u, self.k)
        self.logger.info("Frobenius lifted")
        if self.z_values is None:
            z = RingMatrix.identity(tau.ring, rep.n)
        else:
            z = build_z(self.data, tau, n, self.z_values)
        lift = MRLift(tau=tau, a=a, u=unipotent.u, n=n, z=z, b=b, jordan_type=unipotent.jordan_type, seed=self.seed)
        report = verify_lift(lift, self.data, self.k)
        if not report.all_passed:
            self.logger.error(f"Verification failed: {report.diagnostics}")
            raise InvariantViolation(f"Lift failed verification: {report.diagnostics}")
        self.logger.info("All checks passed")
        return replace(lift, verification=report)


def assemble_mr_lift(data: ResidualGaloisData, k: int, seed: int = 0, z: Sequence[int] | None = None) -> MRLift:
    """Runs the full pipeline; returns only a lift whose every check passed."""
    return LiftPipeline(data, k, seed, z).run()
