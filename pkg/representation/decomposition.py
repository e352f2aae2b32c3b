"""
Commutant, bicommutant and isotypic structure of a prime-to-p matrix group over F_{p^e}.

Design NOTE on the decomposition type:
- The commutant c is the solution space of X g = g X over the generators; the bicommutant Delta is the
  solution space of X c = c X over a basis of c. Since the group order is prime to p the group algebra is
  semisimple and Delta equals the span of the group.
- Isotypic blocks are the primitive idempotents of the center Z = c cap Delta. They are found by splitting:
  a seeded random element w of Z E has a squarefree minimal polynomial over F_p, each irreducible factor
  gives an idempotent of F_p[w] through the Bezout identity, and a block is final once F_p[w] E fills Z E
  (then Z E is a field). Primitive central idempotents are unique, so the blocks do not depend on the seed.
- Per block: e_i = dim Z E_i, m_i^2 e_i = dim c E_i and d_i^2 e_i = dim Delta E_i, all over F_{p^e}.
- The normalizer quotient N(Delta)/(c Delta) is bounded by the permutations of blocks with equal
  signature (d, m, e); the check built on it is a sufficient condition only.
"""

import os
from collections import Counter
from dataclasses import dataclass
from math import factorial, isqrt, prod

import numpy as np
from dotenv import load_dotenv
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_gcdex, gf_mul, gf_quo

from algebra.galois_ring import GaloisRing
from algebra.ring_matrix import (RingMatrix, column_basis, column_span, hstack, intertwining_system, linear_solve_mod,
                                 matrix_from_vector, nullspace, rank, span_dimension)
from config import LIFTING_PARAMS_PATH
from errors import InvariantViolation
from log_setup import get_logger
from representation.group_rep import GroupRep

logger = get_logger(__name__)

load_dotenv(dotenv_path=LIFTING_PARAMS_PATH)
SPLIT_ATTEMPTS = int(os.getenv("ISOTYPIC_SPLIT_ATTEMPTS", "200"))   # random central elements tried per split


@dataclass(frozen=True)
class IsotypicBlock:
    """
    One isotypic component V_i (x) W_i.

    Args:
        d: dimension of the irreducible V_i over its endomorphism field
        m: multiplicity (dimension of W_i over the endomorphism field)
        e: degree of the endomorphism field over the base field F_{p^e}
        idempotent: the central idempotent projecting onto the component
    """
    d: int
    m: int
    e: int
    idempotent: RingMatrix

    @property
    def signature(self) -> tuple[int, int, int]:
        return self.d, self.m, self.e

    @property
    def size(self) -> int:
        return self.d * self.m * self.e


@dataclass(frozen=True)
class IsotypicData:
    blocks: tuple[IsotypicBlock, ...]
    change_of_basis: RingMatrix

    @property
    def signatures(self) -> list[tuple[int, int, int]]:
        return [b.signature for b in self.blocks]


@dataclass(frozen=True)
class DecompositionType:
    """
    The pair (c, Delta) of mutually centralizing algebras attached to a GroupRep.

    Args:
        isotypic: block structure
        c_basis: basis of the commutant
        delta_basis: basis of the bicommutant
        center_basis: basis of Z(c) = Z(Delta)
    """
    isotypic: IsotypicData
    c_basis: tuple[RingMatrix, ...]
    delta_basis: tuple[RingMatrix, ...]
    center_basis: tuple[RingMatrix, ...]

    def summary(self) -> dict:
        return {
            "blocks": [{"d": b.d, "m": b.m, "e": b.e} for b in self.isotypic.blocks],
            "dim_commutant": len(self.c_basis),
            "dim_bicommutant": len(self.delta_basis),
            "dim_center": len(self.center_basis),
        }


def centralizer_basis(ring: GaloisRing, n: int, matrices) -> list[RingMatrix]:
    """Free generators of {X : X M = M X for all M} (a basis over a field)."""
    system = intertwining_system(ring, n, [(m, m) for m in matrices])
    return [matrix_from_vector(ring, n, v) for v in nullspace(system)]


def commutant(rep: GroupRep) -> list[RingMatrix]:
    """Basis of the algebra of matrices commuting with every generator."""
    return centralizer_basis(rep.ring, rep.n, rep.generators)


def bicommutant(rep: GroupRep, c_basis: list[RingMatrix] | None = None) -> list[RingMatrix]:
    """Basis of the centralizer of the commutant."""
    c_basis = commutant(rep) if c_basis is None else c_basis
    return centralizer_basis(rep.ring, rep.n, c_basis)


def group_algebra_dimension(rep: GroupRep) -> int:
    """Dimension of the span of the group elements."""
    return span_dimension(list(rep.elements))


# --- idempotent splitting ---------------------------------------------------------------------------

def _fp_column(m: RingMatrix) -> list:
    """Coordinates of a matrix over F_{p^e} as a vector over F_p."""
    return [(c,) for x in m.entries for c in x]


def _minimal_polynomial(w: RingMatrix, unit: RingMatrix, fp: GaloisRing) -> list[int]:
    """Minimal polynomial over F_p of w in the algebra with identity unit (highest degree first)."""
    powers = [unit]
    while True:
        nxt = powers[-1] @ w
        columns = [_fp_column(m) for m in powers]
        a = RingMatrix.from_columns(fp, columns, len(columns[0]))
        b = RingMatrix.from_columns(fp, [_fp_column(nxt)], len(columns[0]))
        solution = linear_solve_mod(fp, a, b)
        if solution.solvable:
            # nxt = sum_i c_i w^i
            return [1] + [(-c[0]) % fp.p for c in reversed(solution.particular)]
        powers.append(nxt)


def _evaluate(poly: list[int], w: RingMatrix, unit: RingMatrix) -> RingMatrix:
    acc = RingMatrix.zeros(w.ring, w.rows, w.cols)
    for c in poly:
        acc = acc @ w + unit.scale_int(int(c))
    return acc


def _split(idempotent: RingMatrix, center: list[RingMatrix], rng: np.random.Generator) -> list[RingMatrix]:
    """Either [idempotent] when Z E is a field, or a list of at least two orthogonal idempotents summing to it."""
    ring = idempotent.ring
    fp = GaloisRing.build(ring.p, 1, 1)
    local = [b @ idempotent for b in center]
    fp_dimension = ring.e * span_dimension(local)
    for _ in range(SPLIT_ATTEMPTS):
        w = RingMatrix.zeros(ring, idempotent.rows, idempotent.cols)
        for b in local:
            w = w + b.scale(ring.random_element(rng))
        mu = _minimal_polynomial(w, idempotent, fp)
        _, factors = gf_factor(mu, ring.p, ZZ)
        if any(mult > 1 for _, mult in factors):
            raise InvariantViolation(f"Central element with non-squarefree minimal polynomial {mu}")
        if len(factors) == 1:
            if len(mu) - 1 == fp_dimension:
                return [idempotent]
            continue
        pieces = []
        for f, _ in factors:
            cofactor = gf_quo(mu, f, ring.p, ZZ)
            _, t, _ = gf_gcdex(f, cofactor, ring.p, ZZ)
            pieces.append(_evaluate(gf_mul(t, cofactor, ring.p, ZZ), w, idempotent))
        return pieces
    raise InvariantViolation(f"No splitting central element found in {SPLIT_ATTEMPTS} attempts")


def _dimension_root(total: int, e: int, what: str) -> int:
    root = isqrt(total // e) if e else 0
    if root * root * e != total:
        raise InvariantViolation(f"dim {what} E = {total} is not a square times {e}")
    return root


def isotypic_structure(rep: GroupRep, seed: int = 0, c_basis: list[RingMatrix] | None = None,
                       delta_basis: list[RingMatrix] | None = None,
                       center: list[RingMatrix] | None = None) -> IsotypicData:
    """
    Isotypic blocks of the representation by splitting central idempotents.

    Args:
        rep: a validated GroupRep
        seed: seed of the random central elements
        c_basis, delta_basis, center: precomputed bases (computed when omitted)
    Returns:
        IsotypicData with blocks ordered by their first pivot column and a block-diagonalizing change of basis
    """
    ring = rep.ring
    c_basis = commutant(rep) if c_basis is None else c_basis
    delta_basis = bicommutant(rep, c_basis) if delta_basis is None else delta_basis
    center = centralizer_basis(ring, rep.n, list(rep.generators) + c_basis) if center is None else center
    rng = np.random.default_rng(seed)
    pending = [RingMatrix.identity(ring, rep.n)]
    primitive = []
    while pending:
        pieces = _split(pending.pop(), center, rng)
        if len(pieces) == 1:
            primitive.append(pieces[0])
        else:
            pending.extend(pieces)

    blocks = []
    for idem in primitive:
        e_i = span_dimension([b @ idem for b in center])
        m_i = _dimension_root(span_dimension([c @ idem for c in c_basis]), e_i, "c")
        d_i = _dimension_root(span_dimension([x @ idem for x in delta_basis]), e_i, "Delta")
        if rank(idem) != d_i * m_i * e_i:
            raise InvariantViolation(f"Block of rank {rank(idem)} does not have size d m e = {d_i * m_i * e_i}")
        blocks.append(IsotypicBlock(d=d_i, m=m_i, e=e_i, idempotent=idem))
    blocks.sort(key=lambda b: column_basis(b.idempotent)[0])
    change = hstack(ring, [column_span(b.idempotent) for b in blocks], rep.n)
    if not change.is_invertible():
        raise InvariantViolation("Isotypic components do not span the space")
    logger.debug(f"isotypic signatures {[b.signature for b in blocks]} (seed {seed})")
    return IsotypicData(blocks=tuple(blocks), change_of_basis=change)


def _all_commute(xs, ys) -> bool:
    return all(x @ y == y @ x for x in xs for y in ys)


def decomposition_type(rep: GroupRep, seed: int = 0) -> DecompositionType:
    """
    Commutant, bicommutant and isotypic data, with the mutual-centralizer identities asserted.

    Raises:
        InvariantViolation when c and Delta fail to centralize each other, when Z(c) != Z(Delta) or when a
        dimension identity fails
    """
    ring, n = rep.ring, rep.n
    c_basis = commutant(rep)
    delta_basis = bicommutant(rep, c_basis)
    if not _all_commute(c_basis, rep.generators):
        raise InvariantViolation("A commutant basis element does not commute with the group")
    if not _all_commute(delta_basis, c_basis):
        raise InvariantViolation("Commutant and bicommutant do not centralize each other")
    center_c = centralizer_basis(ring, n, list(rep.generators) + c_basis)
    center_delta = centralizer_basis(ring, n, c_basis + delta_basis)
    joint = span_dimension(center_c + center_delta)
    if not (len(center_c) == len(center_delta) == joint):
        raise InvariantViolation(f"Z(c) has dimension {len(center_c)}, Z(Delta) {len(center_delta)}, their sum {joint}")
    iso = isotypic_structure(rep, seed, c_basis, delta_basis, center_c)
    checks = {
        "sum m^2 e = dim c": (sum(b.m ** 2 * b.e for b in iso.blocks), len(c_basis)),
        "sum d^2 e = dim Delta": (sum(b.d ** 2 * b.e for b in iso.blocks), len(delta_basis)),
        "sum d m e = n": (sum(b.size for b in iso.blocks), n),
    }
    for name, (got, expected) in checks.items():
        if got != expected:
            raise InvariantViolation(f"{name} fails: {got} != {expected}")
    return DecompositionType(isotypic=iso, c_basis=tuple(c_basis), delta_basis=tuple(delta_basis),
                             center_basis=tuple(center_c))


def good_for_type_check(dt: DecompositionType, p: int) -> tuple[bool, int]:
    """
    Sufficient condition for p to be good for the decomposition type of a GL_n datum.

    GL_n has no bad or non-pretty-good primes, so only the block conditions remain.

    Returns:
        tuple:
         - ok: p exceeds and does not divide the bound, and p divides no d_i
         - bound: product of factorials of the multiplicities of equal block signatures
    """
    counts = Counter(b.signature for b in dt.isotypic.blocks)
    bound = prod(factorial(c) for c in counts.values())
    ok = p > bound and bound % p != 0 and all(b.d % p for b in dt.isotypic.blocks)
    return ok, bound
