"""
Residual Galois data: the prime-to-p inertia image with its tame inertia and Frobenius actions.
"""

from dataclasses import dataclass
from typing import Any

from errors import InvariantViolation
from log_setup import get_logger
from representation.decomposition import DecompositionType, decomposition_type
from representation.group_rep import GroupRep, permutation_order

logger = get_logger(__name__)


def _is_automorphism(action: tuple[int, ...], table: tuple[tuple[int, ...], ...]) -> bool:
    size = len(action)
    return sorted(action) == list(range(size)) and all(
        action[table[i][j]] == table[action[i]][action[j]] for i in range(size) for j in range(size))


@dataclass(frozen=True)
class ResidualGaloisData:
    """
    Args:
        rep: the residual group with sigma, phi and q
        sigma_conj_action: index permutation g -> sigma g sigma^-1
        phi_conj_action: index permutation g -> phi g phi^-1
        decomposition: decomposition type of the group, computed with seed
        seed: seed of every randomized step
    """
    rep: GroupRep
    sigma_conj_action: tuple[int, ...]
    phi_conj_action: tuple[int, ...]
    decomposition: DecompositionType
    seed: int

    @classmethod
    def from_rep(cls, rep: GroupRep, seed: int = 0) -> "ResidualGaloisData":
        """Validates rep and computes the conjugation actions and the decomposition type."""
        rep.validate()
        data = cls(rep=rep, sigma_conj_action=rep.sigma_action, phi_conj_action=rep.phi_action,
                   decomposition=decomposition_type(rep, seed), seed=seed)
        data.check()
        return data

    @classmethod
    def from_dict(cls, payload: dict[str, Any], seed: int = 0) -> "ResidualGaloisData":
        return cls.from_rep(GroupRep.from_dict(payload), seed)

    @property
    def sigma_action_order(self) -> int:
        return permutation_order(self.sigma_conj_action)

    def check(self):
        """Raises InvariantViolation unless both actions are automorphisms and phi sigma phi^-1 = sigma^q."""
        table = self.rep.multiplication_table
        for name, action in [("sigma", self.sigma_conj_action), ("phi", self.phi_conj_action)]:
            if not _is_automorphism(action, table):
                raise InvariantViolation(f"Conjugation by {name} is not an automorphism of the group")
        rep = self.rep
        if rep.phi @ rep.sigma @ rep.phi.inverse() != rep.sigma.power(rep.q):
            raise InvariantViolation("phi*sigma*phi^-1 != sigma^q")
        logger.debug(f"residual data: |group| = {rep.order}, sigma action of order {self.sigma_action_order}, "
                     f"blocks {self.decomposition.isotypic.signatures}")
