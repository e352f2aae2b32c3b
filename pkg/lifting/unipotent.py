"""
Pure lifts of residual unipotent elements commuting with a lifted prime-to-p group.

Design NOTE on pure lifts:
- For N = omega - 1 nilpotent and commuting with the group, write K_l = ker N^l. A group-stable complement
  U_l of K_(l-1) + N K_(l+1) inside K_l is obtained from any projection onto that subspace, averaged over
  the group. The vectors N^t x, x running over a basis of U_l and t < l, form a Jordan basis in which N
  is the 0/1 shift J and the group acts by l copies of its action on U_l.
- Lifting the action on each U_l gives a homomorphism tau'' commuting with J. It is conjugate to tau
  (read in the lifted Jordan basis) by the averaged transporter c = 1 mod p, so u = g (1 + J) g^-1 with
  g = B c^-1 commutes with tau, reduces to omega and is conjugate to a 0/1 Jordan matrix over the lift ring:
  its Jordan type is the same at every precision.
"""

from dataclasses import dataclass

from algebra.ring_matrix import RingMatrix, column_basis, column_span, hstack, kernel_basis, linear_solve_mod, rank
from errors import InputError, InvariantViolation
from lifting.tau import TauLift, hensel_lift_homomorphism
from log_setup import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class UnipotentLift:
    """
    Args:
        u: the lifted unipotent element
        jordan_basis: g with u = g (1 + J) g^-1
        jordan_type: Jordan block sizes, decreasing
    """
    u: RingMatrix
    jordan_basis: RingMatrix
    jordan_type: tuple[int, ...]


def rank_sequence(u: RingMatrix) -> tuple[int, ...]:
    """Residual ranks of (u - 1)^j for j = 1..n."""
    n = u.rows
    nil = (u - RingMatrix.identity(u.ring, n)).reduce()
    ranks, power = [], nil
    for _ in range(n):
        ranks.append(rank(power))
        power = power @ nil
    return tuple(ranks)


def jordan_type(omega: RingMatrix) -> tuple[int, ...]:
    """Jordan block sizes of a residual unipotent matrix, from the ranks of (omega - 1)^j."""
    n = omega.rows
    ranks = (n,) + rank_sequence(omega) + (0,)
    # number of blocks of size >= j is rank_(j-1) - rank_j
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, n + 2)]
    sizes = []
    for j in range(n, 0, -1):
        sizes.extend([j] * (at_least[j - 1] - at_least[j]))
    return tuple(sizes)


def _in_span(ring, columns: RingMatrix, target: RingMatrix) -> RingMatrix:
    """Coordinates of the columns of target on the (independent) columns of the given matrix."""
    coords = []
    for j in range(target.cols):
        solution = linear_solve_mod(ring, columns, RingMatrix.from_columns(ring, [target.column(j)], target.rows))
        if not solution.solvable:
            raise InvariantViolation("Vector outside an invariant subspace")
        coords.append(solution.particular)
    return RingMatrix.from_columns(ring, coords, columns.cols)


def _stable_complement(sub: RingMatrix, whole: RingMatrix, group: tuple[RingMatrix, ...]) -> RingMatrix:
    """Basis of a group-stable complement of the stable subspace sub inside the stable subspace whole."""
    field = whole.ring
    n = whole.rows
    identity = RingMatrix.identity(field, n)
    extension = hstack(field, [sub, identity], n)
    q = column_span(extension)
    s = sub.cols
    keep = RingMatrix.from_rows(field, [[1 if i == j and i < s else 0 for j in range(n)] for i in range(n)], n)
    projection = q @ keep @ q.inverse()
    total = RingMatrix.zeros(field, n, n)
    for g in group:
        total = total + g @ projection @ g.inverse()
    averaged = total.scale(field.inverse(field.element(len(group))))
    return column_span((identity - averaged) @ whole)


def pure_unipotent_lift(omega: RingMatrix, tau: TauLift) -> UnipotentLift:
    """
    Lifts a residual unipotent omega commuting with the residual group to a pure unipotent u commuting with tau.

    Args:
        omega: unipotent matrix over the residue field
        tau: lift of the group (TauLift.trivial for no group)
    Raises:
        InputError if omega is not unipotent
    """
    field = omega.ring
    n = omega.rows
    identity = RingMatrix.identity(field, n)
    nil = omega - identity
    if not nil.power(n).is_zero():
        raise InputError("omega is not unipotent: (omega - 1)^n != 0")
    group = tau.residual
    if any(nil @ g != g @ nil for g in group):
        raise InvariantViolation("omega does not commute with the residual group")

    kernels = [RingMatrix.zeros(field, n, 0)]
    power = identity
    while kernels[-1].cols < n:
        power = power @ nil
        kernels.append(column_span(kernel_basis(power)))
    depth = len(kernels) - 1

    chains = []    # (l, basis of U_l)
    for l in range(depth, 0, -1):
        above = kernels[min(l + 1, depth)]
        sub = column_span(hstack(field, [kernels[l - 1], nil @ above], n))
        complement = _stable_complement(sub, kernels[l], group) if sub.cols < kernels[l].cols else None
        if complement is not None and complement.cols:
            chains.append((l, complement))

    columns, sizes, shifts = [], [], []
    for l, x in chains:
        for t in range(l):
            block = nil.power(t) @ x
            columns.extend(block.column(j) for j in range(block.cols))
        sizes.extend([l] * x.cols)
    basis = RingMatrix.from_columns(field, columns, n)
    if not basis.is_invertible():
        raise InvariantViolation("Jordan chains do not form a basis")

    ring = tau.ring
    shift = [[0] * n for _ in range(n)]
    offset = 0
    lifted_actions = []
    for l, x in chains:
        r = x.cols
        for t in range(l - 1):
            for s in range(r):
                shift[offset + (t + 1) * r + s][offset + t * r + s] = 1
        offset += l * r
        local = [_in_span(field, x, g @ x) for g in group]
        lifted = hensel_lift_homomorphism(ring, local, tau.table)
        lifted_actions.append((l, lifted))
    jordan = RingMatrix.from_rows(ring, shift, n)

    block_tau = [RingMatrix.block_diagonal(ring, [m[i] for l, m in lifted_actions for _ in range(l)])
                 for i in range(tau.order)]
    b_hat = basis.lift(ring)
    b_inv = b_hat.inverse()
    transporter = tau.average([block_tau[i] @ (b_inv @ tau[i] @ b_hat).inverse() for i in range(tau.order)])
    g = b_hat @ transporter.inverse()
    u = g @ (RingMatrix.identity(ring, n) + jordan) @ g.inverse()
    if u.reduce() != omega:
        raise InvariantViolation("Pure lift does not reduce to omega")
    if any(u @ t != t @ u for t in tau.images):
        raise InvariantViolation("Pure lift does not commute with tau")
    logger.debug(f"pure unipotent lift of Jordan type {tuple(sorted(sizes, reverse=True))} over {ring.describe()}")
    return UnipotentLift(u=u, jordan_basis=g, jordan_type=tuple(sorted(sizes, reverse=True)))
