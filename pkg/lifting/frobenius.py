"""
Lifting Frobenius compatibly with tau, the nu-tame extension and the pure unipotent.

Design NOTE on the Frobenius lift:
- n1 = c n0 with n0 the naive lift of phi and c the averaged transporter from n0 tau n0^-1 to tau composed with
  phi-conjugation; then n1 tau(g) n1^-1 = tau(phi g phi^-1). Uniqueness of the nu-tame extension forces
  n1 A n1^-1 = A^q, which is checked, not imposed.
- The unipotent relation is reached digit by digit with c = 1 mod p in the centralizer of tau: at digit j the
  defect D = c v c^-1 - u^q (v = n1 u n1^-1) is divisible by p^j and is killed by c <- (1 + p^j X) c for X in
  the centralizer solving [X, u^q] = -D / p^j mod p. The centralizer of tau commutes with Delta, so the first
  two relations are untouched.
"""

from algebra.galois_ring import GaloisRing
from algebra.ring_matrix import RingMatrix, intertwining_system, linear_solve_mod, matrix_from_vector, nullspace
from errors import HypothesisError, InvariantViolation
from lifting.residual import ResidualGaloisData
from lifting.tau import TauLift
from log_setup import get_logger

logger = get_logger(__name__)


def centralizer_lift_basis(ring: GaloisRing, n: int, tau: TauLift, generator_indices) -> list[RingMatrix]:
    """Basis of the free module C(R) of matrices commuting with tau (its residues are a basis of c)."""
    system = intertwining_system(ring, n, [(tau[i], tau[i]) for i in generator_indices])
    return [matrix_from_vector(ring, n, v) for v in nullspace(system)]


def frobenius_lift(data: ResidualGaloisData, tau: TauLift, a: RingMatrix, u: RingMatrix, k: int) -> RingMatrix:
    """
    n reducing to phi with n tau(g) n^-1 = tau(phi g phi^-1), n A n^-1 = A^q and n u n^-1 = u^q.

    Raises:
        HypothesisError("unipotent-centralizer-smooth") when a linearized step has no solution
        InvariantViolation when n A n^-1 != A^q or a final relation fails
    """
    rep = data.rep
    ring = tau.ring
    n_dim, q = rep.n, rep.q
    action = data.phi_conj_action

    n0 = rep.phi.lift(ring)
    n0_inv = n0.inverse()
    c = tau.average([tau[action[i]] @ (n0 @ tau[i] @ n0_inv).inverse() for i in range(tau.order)])
    n1 = c @ n0
    n1_inv = n1.inverse()
    if n1 @ a @ n1_inv != a.power(q):
        raise InvariantViolation("n A n^-1 != A^q after the tau-compatible Frobenius lift")

    target = u.power(q)
    moving = n1 @ u @ n1_inv
    basis = centralizer_lift_basis(ring, n_dim, tau, rep.generator_indices)
    field = ring.residue_field()
    target_bar = target.reduce()
    columns = [(b.reduce() @ target_bar - target_bar @ b.reduce()).vectorize() for b in basis]
    linearized = RingMatrix.from_columns(field, columns, n_dim * n_dim)

    identity = RingMatrix.identity(ring, n_dim)
    correction = identity
    for j in range(1, k):
        defect = correction @ moving @ correction.inverse() - target
        if defect.is_zero():
            break
        if defect.min_valuation() < j:
            raise InvariantViolation(f"Frobenius defect only divisible by p^{defect.min_valuation()} at digit {j}")
        rhs = (-defect).divide_by_p_power(j)
        solution = linear_solve_mod(field, linearized, RingMatrix.from_columns(field, [rhs.vectorize()], n_dim * n_dim))
        if not solution.solvable:
            raise HypothesisError("unipotent-centralizer-smooth",
                                  f"[X, u^q] = -D/p^{j} has no solution X in the centralizer of tau")
        x = RingMatrix.zeros(ring, n_dim, n_dim)
        for coeff, b in zip(solution.particular, basis):
            x = x + b.scale(ring.from_element(coeff))
        correction = (identity + x.scale_int(rep.p ** j)) @ correction
    n = correction @ n1

    n_inv = n.inverse()
    if n @ u @ n_inv != target:
        raise InvariantViolation("n u n^-1 != u^q after the digit-wise correction")
    if n @ a @ n_inv != a.power(q):
        raise InvariantViolation("The unipotent correction broke n A n^-1 = A^q")
    logger.debug(f"Frobenius lift over {ring.describe()} with q = {q}")
    return n
