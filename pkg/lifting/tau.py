"""
Lifting prime-to-p matrix groups from the residue field to Galois rings.

Design NOTE on the averaging lift:
- Start from the naive lift T(g) of every residual element (representatives in [0, p) coefficient-wise) and
  replace T by T'(g) = N^-1 sum_x T(g x) T(x)^-1, N the group order (a unit since p does not divide N).
  Each step at least doubles the precision to which T is multiplicative, so the loop ends after about
  log2(k) + 1 rounds; k + 1 rounds without an exact homomorphism is an InvariantViolation.
- A homomorphism is a fixed point of the averaging, so a lift computed at precision k reduces to the lift
  computed at any smaller precision.
"""

from dataclasses import dataclass
from typing import Sequence

from algebra.galois_ring import GaloisRing
from algebra.ring_matrix import RingMatrix
from errors import HypothesisError, InvariantViolation
from log_setup import get_logger
from representation.group_rep import GroupRep

logger = get_logger(__name__)


@dataclass(frozen=True)
class TauLift:
    """
    A homomorphism from an enumerated finite group into GL_n of a Galois ring.

    Args:
        ring: the lift ring
        residual: residual matrices, indexed like the enumerated group
        images: lifted matrices, same indexing
        table: multiplication table of the group (table[i][j] = index of g_i g_j)
    """
    ring: GaloisRing
    residual: tuple[RingMatrix, ...]
    images: tuple[RingMatrix, ...]
    table: tuple[tuple[int, ...], ...]

    @classmethod
    def trivial(cls, ring: GaloisRing, n: int) -> "TauLift":
        return cls(ring=ring, residual=(RingMatrix.identity(ring.residue_field(), n),),
                   images=(RingMatrix.identity(ring, n),), table=((0,),))

    @property
    def order(self) -> int:
        return len(self.images)

    @property
    def n(self) -> int:
        return self.images[0].rows

    def __getitem__(self, index: int) -> RingMatrix:
        return self.images[index]

    def average(self, terms: Sequence[RingMatrix]) -> RingMatrix:
        """|G|^-1 * sum of terms."""
        total = RingMatrix.zeros(self.ring, self.n, self.n)
        for t in terms:
            total = total + t
        return total.scale(self.ring.inverse(self.ring.element(self.order)))

    def reduce(self, k: int) -> "TauLift":
        ring = self.ring.at_precision(k)
        return TauLift(ring, self.residual, tuple(m.reduce(ring) for m in self.images), self.table)


def is_homomorphism(images: Sequence[RingMatrix], table: Sequence[Sequence[int]]) -> bool:
    return all(images[i] @ images[j] == images[table[i][j]]
               for i in range(len(images)) for j in range(len(images)))


def hensel_lift_homomorphism(ring: GaloisRing, residual: Sequence[RingMatrix],
                             table: Sequence[Sequence[int]]) -> tuple[RingMatrix, ...]:
    """
    Lifts a residual homomorphism of a group of order prime to p.

    Args:
        ring: target ring (its residue field is the ring of the residual matrices)
        residual: residual matrices indexed like the group elements
        table: multiplication table of the group
    Returns:
        lifted matrices, an exact homomorphism over ring reducing to residual
    """
    order = len(residual)
    n_inv = ring.inverse(ring.element(order))
    images = [m.lift(ring) for m in residual]
    for rounds in range(ring.k + 1):
        if is_homomorphism(images, table):
            logger.debug(f"homomorphism over {ring.describe()} after {rounds} averaging rounds")
            return tuple(images)
        inverses = [m.inverse() for m in images]
        averaged = []
        for g in range(order):
            total = RingMatrix.zeros(ring, images[0].rows, images[0].cols)
            for x in range(order):
                total = total + images[table[g][x]] @ inverses[x]
            averaged.append(total.scale(n_inv))
        images = averaged
    raise InvariantViolation(f"Averaging did not produce a homomorphism over {ring.describe()} in {ring.k + 1} rounds")


def lift_prime_to_p_rep(rep: GroupRep, k: int) -> TauLift:
    """
    Lifts the residual group to GL_n(GR(p^k, e)).

    Raises:
        HypothesisError("prime-to-p-image") if p divides the group order
    """
    if rep.order % rep.p == 0:
        raise HypothesisError("prime-to-p-image", f"group order {rep.order} is divisible by p = {rep.p}")
    ring = GaloisRing.build(rep.p, k, rep.e)
    residual = rep.elements
    images = hensel_lift_homomorphism(ring, residual, rep.multiplication_table)
    return TauLift(ring=ring, residual=residual, images=images, table=rep.multiplication_table)
