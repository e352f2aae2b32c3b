"""
Finite matrix groups over F_{p^e} together with the residual inertia and Frobenius data.

Design NOTE on residual representations:
- A GroupRep is the image of the prime-to-p part of inertia: the group generated by the given matrices,
  enumerated breadth first (identity first, then words in the generators). Element order is deterministic
  and every element is addressed by its index.
- sigma and phi must normalize the group; their conjugation actions are stored as permutations of element
  indices. The relation phi * sigma * phi^-1 = sigma^q is checked exactly.
- Every violated invariant raises InputError whose message names the invariant.
- q = 1 is accepted and flagged as synthetic (no local field has residue field of order 1).
"""

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Any, Sequence

from dotenv import load_dotenv

from algebra.galois_ring import GaloisRing
from algebra.ring_matrix import RingMatrix
from config import LIFTING_PARAMS_PATH
from errors import InputError
from log_setup import get_logger

logger = get_logger(__name__)

load_dotenv(dotenv_path=LIFTING_PARAMS_PATH)
MAX_GROUP_ORDER = int(os.getenv("LIFT_MAX_GROUP_ORDER", "5000"))   # refuse to enumerate larger residual groups


def permutation_order(perm: Sequence[int]) -> int:
    """Order of a permutation given in one-line notation (lcm of the cycle lengths)."""
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        order = order * length // gcd(order, length)
    return order


@dataclass(frozen=True)
class GroupRep:
    """
    A finite subgroup of GL_n(F_{p^e}) with residual inertia generator sigma and Frobenius phi.

    Args:
        p: residue characteristic
        e: degree of the residue field over F_p
        n: matrix size
        generators: generators of the group (may be empty for the trivial group)
        sigma: image of the tame inertia generator
        phi: image of Frobenius
        q: the integer with phi * sigma * phi^-1 = sigma^q
    """
    p: int
    e: int
    n: int
    generators: tuple[RingMatrix, ...]
    sigma: RingMatrix
    phi: RingMatrix
    q: int

    @property
    def ring(self) -> GaloisRing:
        return self.sigma.ring

    @property
    def is_synthetic(self) -> bool:
        return self.q == 1

    @cached_property
    def elements(self) -> tuple[RingMatrix, ...]:
        identity = RingMatrix.identity(self.ring, self.n)
        seen = {identity: 0}
        order = [identity]
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = g @ s
                if h not in seen:
                    if len(order) >= MAX_GROUP_ORDER:
                        raise InputError(f"group has more than {MAX_GROUP_ORDER} elements")
                    seen[h] = len(order)
                    order.append(h)
                    queue.append(h)
        return tuple(order)

    @cached_property
    def element_index(self) -> dict[RingMatrix, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def multiplication_table(self) -> tuple[tuple[int, ...], ...]:
        index = self.element_index
        return tuple(tuple(index[g @ h] for h in self.elements) for g in self.elements)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.element_index[g] for g in self.generators)

    def conjugation_permutation(self, x: RingMatrix) -> tuple[int, ...] | None:
        """Index permutation g -> x g x^-1, or None when x does not normalize the group."""
        x_inv = x.inverse()
        index = self.element_index
        images = []
        for g in self.elements:
            j = index.get(x @ g @ x_inv)
            if j is None:
                return None
            images.append(j)
        return tuple(images)

    @cached_property
    def sigma_action(self) -> tuple[int, ...]:
        perm = self.conjugation_permutation(self.sigma)
        if perm is None:
            raise InputError("sigma does not normalize the group")
        return perm

    @cached_property
    def phi_action(self) -> tuple[int, ...]:
        perm = self.conjugation_permutation(self.phi)
        if perm is None:
            raise InputError("phi does not normalize the group")
        return perm

    def validate(self):
        """
        Checks every invariant of the residual data. Repeated calls on a valid instance are free.

        Raises:
            InputError naming the violated invariant
        """
        _ = self._validated

    @cached_property
    def _validated(self) -> bool:
        if self.q < 1:
            raise InputError(f"q must be >= 1, got {self.q}")
        if gcd(self.q, self.p) != 1:
            raise InputError(f"gcd(q, p) != 1 for q = {self.q}, p = {self.p}")
        for name, m in [("sigma", self.sigma), ("phi", self.phi)] + [(f"generator {i}", g) for i, g in enumerate(self.generators)]:
            if not m.is_invertible():
                raise InputError(f"{name} is not invertible")
        if self.order % self.p == 0:
            raise InputError(f"group order divisible by p (order {self.order}, p = {self.p})")
        _ = self.sigma_action, self.phi_action
        lhs = self.phi @ self.sigma @ self.phi.inverse()
        if lhs != self.sigma.power(self.q):
            raise InputError(f"phi*sigma*phi^-1 != sigma^q for q = {self.q}")
        if self.is_synthetic:
            logger.warning("q = 1: synthetic presentation, not attached to a local field")
        logger.debug(f"GroupRep over F_{self.p}^{self.e}: n = {self.n}, |group| = {self.order}, q = {self.q}")
        return True

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GroupRep":
        """
        Builds and validates a GroupRep from the JSON input format.

        Args:
            data: mapping with p, e (default 1), n, q, generators, sigma, phi; matrices are row-major lists
                  of integers (e = 1) or coefficient lists (e > 1)
        Raises:
            InputError for malformed shapes and every violated invariant
        """
        try:
            p, n, q = int(data["p"]), int(data["n"]), int(data["q"])
            e = int(data.get("e", 1))
            sigma_rows, phi_rows = data["sigma"], data["phi"]
            ring = GaloisRing.build(p, 1, e)
        except KeyError as err:
            raise InputError(f"missing field {err}") from err

        def matrix(name: str, rows) -> RingMatrix:
            if len(rows) != n or any(len(r) != n for r in rows):
                raise InputError(f"{name} must be a {n}x{n} matrix")
            try:
                return RingMatrix.from_rows(ring, rows, n)
            except (TypeError, ValueError) as err:
                raise InputError(f"{name}: {err}") from err

        rep = cls(p=p, e=e, n=n,
                  generators=tuple(matrix(f"generator {i}", g) for i, g in enumerate(data.get("generators", []))),
                  sigma=matrix("sigma", sigma_rows), phi=matrix("phi", phi_rows), q=q)
        rep.validate()
        return rep

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.p, "e": self.e, "n": self.n, "q": self.q,
                "generators": [g.to_json() for g in self.generators],
                "sigma": self.sigma.to_json(), "phi": self.phi.to_json()}
