"""
Closed subsystems of a root system, up to Weyl conjugacy.

Design NOTE on subsystem enumeration:
- Starting from the full system, two moves are iterated to a fixed point: deleting a simple root of the current
  base (Levi step) and, for an irreducible component, adjoining minus its highest root and deleting one node of
  the extended diagram (Borel-de Siebenthal step). A Borel-de Siebenthal candidate is kept only if closed.
- Classes are keyed by a canonical form. In rank <= 4 the key is the smallest root-index bitmask over the Weyl
  orbit (exact conjugacy). Above rank 4 the key is the isomorphism type (short components marked with '~')
  together with the Smith invariants of ZPhi/ZSigma and ZPhi^vee/ZSigma^vee, so distinct classes with equal
  data are merged. Prime computations only consume that data.
- brute_force_closed_subsystems is an independent exhaustive oracle over subsets of positive roots.
"""

from dataclasses import dataclass
from functools import cached_property

from algebra.int_matrix import IntMatrix, quotient_invariants
from errors import InputError
from log_setup import get_logger
from roots.root_system import Root, RootSystem, identify_components

logger = get_logger(__name__)

MAX_ENUMERATION_RANK = 8
MAX_BRUTE_FORCE_POSITIVE_ROOTS = 12

PROVENANCE_LEVI = "levi"
PROVENANCE_BOREL_DE_SIEBENTHAL = "borel_de_siebenthal"
PROVENANCE_ITERATE = "iterate"
PROVENANCE_BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class ClosedSubsystem:
    """
    A closed subsystem Sigma of an ambient root system.

    Args:
        roots: the roots of Sigma (ambient simple-root coordinates)
        base: simple system of Sigma (positive with respect to the ambient order)
        provenance: levi | borel_de_siebenthal | iterate | brute_force
        type_name: isomorphism type, e.g. "A2xA1~" ('~' marks components of short roots)
    """
    roots: frozenset[Root]
    base: tuple[Root, ...]
    provenance: str
    type_name: str

    @property
    def rank(self) -> int:
        return len(self.base)

    @cached_property
    def base_matrix(self) -> IntMatrix:
        width = len(next(iter(self.roots))) if self.roots else 0
        return IntMatrix.from_rows([list(b) for b in self.base], width)


def _neg(r: Root) -> Root:
    return tuple(-x for x in r)


def generated_subsystem(rs: RootSystem, generators: list[Root] | tuple[Root, ...]) -> frozenset[Root]:
    """Closure of +-generators under the reflections in the generators."""
    coroots = [rs.coroot(g) for g in generators]
    found = set(generators) | {_neg(g) for g in generators}
    frontier = list(found)
    while frontier:
        nxt = []
        for v in frontier:
            for g, gv in zip(generators, coroots):
                m = rs.pair(v, gv)
                if m:
                    w = tuple(x - m * a for x, a in zip(v, g))
                    if w not in found:
                        found.add(w)
                        nxt.append(w)
        frontier = nxt
    return frozenset(found)


def is_closed(rs: RootSystem, roots: frozenset[Root]) -> bool:
    """Negation closed, and alpha + beta in roots whenever it is an ambient root."""
    for a in roots:
        if _neg(a) not in roots:
            return False
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s) and s not in roots:
                return False
    return True


def subsystem_base(rs: RootSystem, roots: frozenset[Root]) -> tuple[Root, ...]:
    """Indecomposable elements of Sigma cap Phi^+ (a base of Sigma)."""
    positive = [r for r in roots if sum(r) > 0]
    sums = {tuple(x + y for x, y in zip(a, b)) for i, a in enumerate(positive) for b in positive[i + 1:]}
    return tuple(sorted((r for r in positive if r not in sums), key=lambda r: (sum(r), r)))


def subsystem_cartan(rs: RootSystem, base: tuple[Root, ...]) -> list[list[int]]:
    coroots = [rs.coroot(b) for b in base]
    return [[rs.pair(base[j], coroots[i]) for j in range(len(base))] for i in range(len(base))]


def subsystem_type_name(rs: RootSystem, base: tuple[Root, ...]) -> str:
    """Isomorphism type of the subsystem with the given base; components made of short roots get a '~'."""
    if not base:
        return "0"
    names = []
    for family, rank, nodes in identify_components(subsystem_cartan(rs, base)):
        name = f"{family}{rank}"
        support = {i for b in (base[n] for n in nodes) for i, x in enumerate(b) if x}
        ambient = next(c for c in rs.components if support <= set(c[2]))
        if ambient[0] in "BCFG" and all(rs.norm(base[n]) == 1 for n in nodes):
            name += "~"
        names.append((rank, family, name))
    return "x".join(name for _, _, name in sorted(names, key=lambda t: (-t[0], t[1], t[2])))


def subsystem_signature(rs: RootSystem, base: tuple[Root, ...]) -> tuple[tuple[int, ...], int]:
    """Invariant factors of ZPhi/ZSigma: (torsion factors > 1, free rank)."""
    q = quotient_invariants(rs.rank, IntMatrix.from_rows([list(b) for b in base], rs.rank))
    return q.torsion, q.free_rank


def coroot_signature(rs: RootSystem, base: tuple[Root, ...]) -> tuple[tuple[int, ...], int]:
    """Invariant factors of ZPhi^vee/ZSigma^vee."""
    q = quotient_invariants(rs.rank, IntMatrix.from_rows([list(rs.coroot(b)) for b in base], rs.rank))
    return q.torsion, q.free_rank


class SubsystemClassKey:
    """Canonical class keys with memoization per root set."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.exact = rs.weyl_is_enumerable
        self.cache: dict[frozenset[Root], tuple] = {}

    def __call__(self, roots: frozenset[Root]) -> tuple:
        key = self.cache.get(roots)
        if key is None:
            key = self._orbit_key(roots) if self.exact else self._signature_key(roots)
            self.cache[roots] = key
        return key

    def _orbit_key(self, roots: frozenset[Root]) -> tuple:
        index = self.rs.root_index
        indices = [index[r] for r in roots]
        best = None
        for w in self.rs.weyl_permutations:
            mask = 0
            for i in indices:
                mask |= 1 << w[i]
            if best is None or mask < best:
                best = mask
        return "orbit", best

    def _signature_key(self, roots: frozenset[Root]) -> tuple:
        base = subsystem_base(self.rs, roots)
        return ("signature", subsystem_type_name(self.rs, base), subsystem_signature(self.rs, base),
                coroot_signature(self.rs, base))


def _make(rs: RootSystem, roots: frozenset[Root], provenance: str) -> ClosedSubsystem:
    base = subsystem_base(rs, roots)
    return ClosedSubsystem(roots=roots, base=base, provenance=provenance, type_name=subsystem_type_name(rs, base))


def _sort_key(sub: ClosedSubsystem):
    return -sub.rank, -len(sub.roots), sub.type_name, sorted(sub.roots)


def _highest_root(component_base: list[Root], component_roots: frozenset[Root]) -> Root:
    theta = component_base[0]
    climbing = True
    while climbing:
        climbing = False
        for b in component_base:
            s = tuple(x + y for x, y in zip(theta, b))
            if s in component_roots:
                theta, climbing = s, True
                break
    return theta


def _children(rs: RootSystem, current: ClosedSubsystem, is_full: bool):
    """Candidate generator sets one Levi or Borel-de Siebenthal move away from current."""
    base = list(current.base)
    levi_provenance = PROVENANCE_LEVI if current.provenance == PROVENANCE_LEVI else PROVENANCE_ITERATE
    for i in range(len(base)):
        yield base[:i] + base[i + 1:], levi_provenance, False
    bds_provenance = PROVENANCE_BOREL_DE_SIEBENTHAL if is_full else PROVENANCE_ITERATE
    for _, _, nodes in identify_components(subsystem_cartan(rs, current.base)) if base else ():
        component_base = [base[n] for n in nodes]
        theta = _highest_root(component_base, generated_subsystem(rs, component_base))
        for n in nodes:
            yield [b for j, b in enumerate(base) if j != n] + [_neg(theta)], bds_provenance, True


def enumerate_closed_subsystems(rs: RootSystem) -> list[ClosedSubsystem]:
    """
    Closed subsystems up to conjugacy, generated by iterated Levi and Borel-de Siebenthal moves.

    Args:
        rs: root system of rank <= 8
    Returns:
        one ClosedSubsystem per class (see the module note for the class convention), sorted canonically
    Raises:
        InputError for rank > 8
    """
    if rs.rank > MAX_ENUMERATION_RANK:
        raise InputError(f"Subsystem enumeration supports rank <= {MAX_ENUMERATION_RANK}, got {rs.rank}")
    key_of = SubsystemClassKey(rs)
    full_roots = frozenset(rs.all_roots)
    full = _make(rs, full_roots, PROVENANCE_LEVI)
    classes = {key_of(full_roots): full}
    queue = [full]
    while queue:
        current = queue.pop(0)
        for generators, provenance, needs_closure_check in _children(rs, current, current.roots == full_roots):
            roots = generated_subsystem(rs, generators)
            key = key_of(roots)
            if key in classes:
                continue
            if needs_closure_check and not is_closed(rs, roots):
                continue
            sub = _make(rs, roots, provenance)
            classes[key] = sub
            queue.append(sub)
    logger.debug(f"{rs.type_name}: {len(classes)} closed subsystem classes")
    return sorted(classes.values(), key=_sort_key)


def brute_force_closed_subsystems(rs: RootSystem) -> list[ClosedSubsystem]:
    """
    Exhaustive oracle: every negation- and addition-closed subset, collapsed to classes.

    Raises:
        InputError when there are more than 12 positive roots
    """
    positive = rs.positive_roots
    if len(positive) > MAX_BRUTE_FORCE_POSITIVE_ROOTS:
        raise InputError(f"Brute force needs at most {MAX_BRUTE_FORCE_POSITIVE_ROOTS} positive roots, got {len(positive)}")
    key_of = SubsystemClassKey(rs)
    classes: dict[tuple, ClosedSubsystem] = {}
    for mask in range(1 << len(positive)):
        chosen = [positive[i] for i in range(len(positive)) if mask >> i & 1]
        roots = frozenset(chosen + [_neg(r) for r in chosen])
        if not is_closed(rs, roots):
            continue
        key = key_of(roots)
        if key not in classes:
            classes[key] = _make(rs, roots, PROVENANCE_BRUTE_FORCE)
    return sorted(classes.values(), key=_sort_key)
