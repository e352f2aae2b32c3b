"""
The nu-tame extension of tau from the prime-to-p group to the tame inertia generator sigma.

Design NOTE on the extension:
- sigma acts on the group through a permutation of p-power order p^b. Any A in Delta(R) with
  A tau(h) A^-1 = tau(sigma h sigma^-1) has A^(p^b) in Z(R) = C_Delta(tau), and the extension is pinned down by
  A^(p^b) = 1; over Z_p that A is unique since 1 + pZ(R) is torsion free for odd p.
- Construction: solve the intertwiner equations over the basis tau(g_l) of Delta(R), pick a random invertible
  solution A0 (seeded), multiply by the Teichmuller lift of the residual p^b-th root of A0^(-p^b) so that
  A1^(p^b) = 1 mod p, then multiply by the p^b-th root in 1 + pZ(R) of A1^(-p^b), found by Newton steps.
- The Newton steps divide by p^b, so everything runs at precision k + b and the result is reduced to k.
"""

import os
from math import lcm

import numpy as np
from dotenv import load_dotenv
from sympy import multiplicity

from algebra.galois_ring import GaloisRing
from algebra.ring_matrix import RingMatrix, column_basis, nullspace
from config import LIFTING_PARAMS_PATH
from errors import HypothesisError, InvariantViolation
from lifting.residual import ResidualGaloisData
from lifting.tau import TauLift, lift_prime_to_p_rep
from log_setup import get_logger

logger = get_logger(__name__)

load_dotenv(dotenv_path=LIFTING_PARAMS_PATH)
INTERTWINER_ATTEMPTS = int(os.getenv("LIFT_INTERTWINER_ATTEMPTS", "64"))


def sigma_p_exponent(data: ResidualGaloisData) -> int:
    """
    b with p^b the order of the sigma action on the group.

    Raises:
        HypothesisError("sigma-pro-p") when that order is not a power of p
    """
    p = data.rep.p
    order = data.sigma_action_order
    b = multiplicity(p, order)
    if p ** b != order:
        raise HypothesisError("sigma-pro-p", f"sigma acts on the group with order {order}, not a power of p = {p}")
    return b


def check_extension_hypotheses(data: ResidualGaloisData):
    """
    p divides no irreducible dimension d_i, and the centralizer of the group inside Delta is the center.

    Raises:
        HypothesisError("good-decomposition-type") naming the failing condition
    """
    rep = data.rep
    dt = data.decomposition
    for block in dt.isotypic.blocks:
        if block.d % rep.p == 0:
            raise HypothesisError("good-decomposition-type",
                                  f"p not good for decomposition type: p = {rep.p} divides d = {block.d}")
    n = rep.n
    columns = []
    for x in dt.delta_basis:
        col = []
        for g in rep.generators:
            col.extend((x @ g - g @ x).vectorize())
        columns.append(col)
    system = RingMatrix.from_columns(rep.ring, columns, n * n * len(rep.generators))
    dim = len(nullspace(system))
    if dim != len(dt.center_basis):
        raise HypothesisError("good-decomposition-type",
                              f"p not good for decomposition type: centralizer of the group in Delta has dimension "
                              f"{dim}, center has {len(dt.center_basis)}")


def delta_lift_basis(data: ResidualGaloisData, tau: TauLift) -> list[RingMatrix]:
    """tau(g_l) for group elements whose residues form a basis of Delta."""
    rep = data.rep
    residual = RingMatrix.from_columns(rep.ring, [g.vectorize() for g in rep.elements], rep.n * rep.n)
    return [tau[i] for i in column_basis(residual)]


def intertwiner_solutions(data: ResidualGaloisData, tau: TauLift, basis: list[RingMatrix]) -> list[tuple]:
    """Free generators, in coordinates on basis, of {X in Delta(R) : X tau(h) = tau(sigma h sigma^-1) X}."""
    rep = data.rep
    action = data.sigma_conj_action
    columns = []
    for x in basis:
        col = []
        for h in rep.generator_indices:
            col.extend((x @ tau[h] - tau[action[h]] @ x).vectorize())
        columns.append(col)
    system = RingMatrix.from_columns(tau.ring, columns, rep.n * rep.n * len(rep.generator_indices))
    return nullspace(system)


def central_p_power_root(v: RingMatrix, p: int, b: int) -> RingMatrix:
    """
    z = 1 mod p with z^(p^b) = v, for v central in a commutative algebra and v = 1 mod p^(b+1).

    Only z mod p^(k-b) is meaningful, k the precision of v.
    """
    ring = v.ring
    identity = RingMatrix.identity(ring, v.rows)
    exponent = p ** b
    z = identity
    for _ in range(ring.k + 1):
        error = v @ z.power(exponent).inverse() - identity
        if error.is_zero():
            return z
        if error.min_valuation() <= b:
            raise InvariantViolation(f"p^{b}-th root requested of an element only 1 mod p^{error.min_valuation()}")
        z = z @ (identity + error.divide_by_p_power(b, ring))
    raise InvariantViolation(f"Newton iteration for a p^{b}-th root did not converge over {ring.describe()}")


def _random_invertible(ring: GaloisRing, solutions: list[tuple], basis: list[RingMatrix],
                       rng: np.random.Generator) -> RingMatrix | None:
    for _ in range(INTERTWINER_ATTEMPTS):
        weights = [ring.random_element(rng) for _ in solutions]
        x = RingMatrix.zeros(ring, basis[0].rows, basis[0].cols)
        for l, b_l in enumerate(basis):
            coeff = ring.zero
            for w, sol in zip(weights, solutions):
                coeff = ring.add(coeff, ring.mul(w, sol[l]))
            x = x + b_l.scale(coeff)
        if x.is_invertible():
            return x
    return None


def nu_tame_extend(data: ResidualGaloisData, tau: TauLift, k: int, seed: int = 0) -> RingMatrix:
    """
    The value A = tau(sigma) of the unique nu-tame extension.

    Args:
        data: residual data
        tau: lift of the group at precision k
        k: precision
        seed: seed of the intertwiner choice (the result does not depend on it)
    Returns:
        A over GR(p^k, e): in Delta(R), intertwining tau with its sigma-conjugate, A^(p^b) = 1
    Raises:
        HypothesisError for p = 2, a sigma action of non p-power order, a decomposition type p is not good for,
        or when no invertible intertwiner exists
    """
    rep = data.rep
    p = rep.p
    if p == 2:
        raise HypothesisError("odd-residue-characteristic", "the extension needs an odd residue characteristic")
    b = sigma_p_exponent(data)
    check_extension_hypotheses(data)

    big = k + b
    tau_big = tau if b == 0 else lift_prime_to_p_rep(rep, big)
    if tau_big.reduce(k).images != tau.images:
        raise InvariantViolation(f"Lift at precision {big} does not reduce to the lift at precision {k}")
    ring = tau_big.ring
    basis = delta_lift_basis(data, tau_big)
    solutions = intertwiner_solutions(data, tau_big, basis)
    a0 = _random_invertible(ring, solutions, basis, np.random.default_rng(seed)) if solutions else None
    if a0 is None:
        raise HypothesisError("intertwiner-exists",
                              f"no invertible X in Delta with X tau X^-1 = tau composed with sigma-conjugation "
                              f"({len(solutions)} solution generators, {INTERTWINER_ATTEMPTS} attempts)")

    field_degree = rep.e * lcm(*(block.e for block in data.decomposition.isotypic.blocks))
    x = a0.power(p ** b)
    y = x.power(-(p ** ((-b) % field_degree)))
    y_teichmuller = y.power(p ** (field_degree * (big - 1)))
    a1 = a0 @ y_teichmuller
    w = a1.power(p ** b)
    if not w.reduce().is_identity():
        raise InvariantViolation("Teichmuller correction left A^(p^b) nontrivial mod p")
    a = (a1 @ central_p_power_root(w.inverse(), p, b)).reduce(tau.ring)

    if not a.power(p ** b).is_identity():
        raise InvariantViolation(f"A^(p^{b}) != 1 over {tau.ring.describe()}")
    action = data.sigma_conj_action
    a_inv = a.inverse()
    if any(a @ tau[h] @ a_inv != tau[action[h]] for h in rep.generator_indices):
        raise InvariantViolation("A does not intertwine tau with its sigma-conjugate")
    logger.debug(f"nu-tame extension with b = {b} computed at precision {big}")
    return a
