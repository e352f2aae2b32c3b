"""
Bala-Carter data: Levi classes paired with distinguished parabolic subsets.

Design NOTE on Bala-Carter enumeration:
- Levi subsystems are Phi_J for subsets J of the simple roots. Classes are keyed like closed subsystems
  (Weyl orbit in rank <= 4, isomorphism type plus lattice signature above), and the representative is the
  first J in (size, lexicographic) order.
- For I inside J the grading f is 0 on I and 2 on J - I, extended additively. The pair (L, I) is distinguished
  when dim l(0) = dim l(2) + dim Z_L, where l(0) also contains the Cartan subalgebra (ambient rank, torus
  included) and dim Z_L = ambient rank - |J|.
- Distinguished subsets of one Levi are identified up to the stabilizer of Delta_J in W (rank <= 4) or up to
  automorphisms of the Levi Dynkin diagram (above); labels produced by the second rule carry fallback = True.
- Nothing here depends on a field or its characteristic.
"""

from dataclasses import dataclass
from itertools import combinations

from errors import InvariantViolation
from log_setup import get_logger
from roots.root_system import Root, RootSystem
from roots.subsystems import ClosedSubsystem, SubsystemClassKey, PROVENANCE_LEVI, subsystem_type_name

logger = get_logger(__name__)


@dataclass(frozen=True)
class LeviClass:
    """
    A conjugacy class of Levi subsystems.

    Args:
        simple_indices: J, the representative subset of ambient simple roots
        subsystem: Phi_J
        ambient_rank: rank of the maximal torus (central torus included)
        type_name: isomorphism type of Phi_J ("0" for the torus)
    """
    simple_indices: tuple[int, ...]
    subsystem: ClosedSubsystem
    ambient_rank: int
    type_name: str

    @property
    def dim_center(self) -> int:
        return self.ambient_rank - len(self.simple_indices)

    @property
    def roots(self) -> frozenset[Root]:
        return self.subsystem.roots


@dataclass(frozen=True)
class BCLabel:
    """
    A Bala-Carter label (L, I).

    Args:
        levi: the Levi class
        i_subset: I, a subset of levi.simple_indices
        dims: (dim l(0), dim l(2))
        fallback: True when I was deduplicated by diagram automorphisms instead of Weyl orbits
    """
    levi: LeviClass
    i_subset: tuple[int, ...]
    dims: tuple[int, int]
    fallback: bool = False

    @property
    def name(self) -> str:
        subset = "{" + ",".join(str(i + 1) for i in self.i_subset) + "}" if self.i_subset else "∅"
        return f"{self.levi.type_name}[I={subset}]"

    @property
    def marking(self) -> str:
        """0/2 marking of the Levi diagram, nodes in the order of levi.simple_indices."""
        return "".join("0" if j in self.i_subset else "2" for j in self.levi.simple_indices)

    def check(self):
        """Recomputes the grading and the stored dimensions; raises InvariantViolation on mismatch."""
        for r in self.levi.roots:
            if grading_value(self.levi, self.i_subset, r) % 2:
                raise InvariantViolation(f"{self.name}: odd grading on root {r}")
        l0, l2, _ = grading_dims(self.levi, self.i_subset)
        if (l0, l2) != self.dims:
            raise InvariantViolation(f"{self.name}: stored {self.dims}, recomputed {(l0, l2)}")


def grading_value(levi: LeviClass, i_subset, root: Root) -> int:
    """f(root) = 2 * (sum of the coefficients of root on J - I)."""
    return 2 * sum(root[j] for j in levi.simple_indices if j not in i_subset)


def grading_dims(levi: LeviClass, i_subset) -> tuple[int, int, int]:
    """
    Dimensions of the graded pieces of the Levi Lie algebra.

    Returns:
        tuple:
         - dim_l0: ambient rank + #{Levi roots with f = 0}
         - dim_l2: #{Levi roots with f = 2}
         - dim_zl: dimension of the center of L
    """
    i_subset = set(i_subset)
    if not i_subset <= set(levi.simple_indices):
        raise ValueError(f"I = {sorted(i_subset)} is not a subset of the Levi simple roots {levi.simple_indices}")
    values = [grading_value(levi, i_subset, r) for r in levi.roots]
    return levi.ambient_rank + values.count(0), values.count(2), levi.dim_center


def is_distinguished(levi: LeviClass, i_subset) -> bool:
    """dim l(0) = dim l(2) + dim Z_L."""
    l0, l2, zl = grading_dims(levi, i_subset)
    return l0 == l2 + zl


def _levi_roots(rs: RootSystem, j: tuple[int, ...]) -> frozenset[Root]:
    support = set(j)
    return frozenset(r for r in rs.all_roots if all(i in support for i, x in enumerate(r) if x))


def levi_classes(rs: RootSystem, torus_rank: int = 0) -> list[LeviClass]:
    """
    One representative subset J per conjugacy class of Levi subsystems.

    Args:
        rs: root system of rank <= 8
        torus_rank: rank of the central torus (enters the ambient rank only)
    """
    key_of = SubsystemClassKey(rs)
    seen = {}
    for size in range(rs.rank + 1):
        for j in combinations(range(rs.rank), size):
            roots = _levi_roots(rs, j)
            key = key_of(roots)
            if key in seen:
                continue
            base = tuple(tuple(1 if i == s else 0 for i in range(rs.rank)) for s in j)
            name = subsystem_type_name(rs, base)
            seen[key] = LeviClass(simple_indices=j,
                                  subsystem=ClosedSubsystem(roots, base, PROVENANCE_LEVI, name),
                                  ambient_rank=rs.rank + torus_rank, type_name=name)
    return list(seen.values())


def _weyl_stabilizer_actions(rs: RootSystem, j: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Permutations of J induced by the elements of W that map Delta_J onto itself."""
    index = rs.root_index
    simple = [index[tuple(1 if i == s else 0 for i in range(rs.rank))] for s in j]
    position = {root_idx: pos for pos, root_idx in enumerate(simple)}
    actions = set()
    for w in rs.weyl_permutations:
        images = [w[x] for x in simple]
        if all(y in position for y in images):
            actions.add(tuple(j[position[y]] for y in images))
    return actions


def _diagram_automorphisms(rs: RootSystem, j: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Automorphisms of the Dynkin diagram of Phi_J (Cartan entries preserved), by backtracking."""
    cartan = rs.cartan_rows
    out = []

    def extend(assigned: list[int]):
        pos = len(assigned)
        if pos == len(j):
            out.append(tuple(assigned))
            return
        for image in j:
            if image in assigned:
                continue
            if all(cartan[j[pos]][j[q]] == cartan[image][assigned[q]] and
                   cartan[j[q]][j[pos]] == cartan[assigned[q]][image] for q in range(pos)):
                extend(assigned + [image])

    extend([])
    return out


def bala_carter_data(rs: RootSystem, torus_rank: int = 0) -> list[BCLabel]:
    """
    All Bala-Carter labels: Levi classes with their distinguished subsets I, up to equivalence.

    Args:
        rs: root system of rank <= 8
        torus_rank: rank of the central torus
    Returns:
        labels sorted by (Levi rank, J, I); the zero orbit (torus Levi, I = empty) is always first
    """
    exact = rs.weyl_is_enumerable
    labels = []
    for levi in levi_classes(rs, torus_rank):
        j = levi.simple_indices
        if exact:
            actions = _weyl_stabilizer_actions(rs, j) if j else {()}
            relabel = [dict(zip(j, act)) for act in actions]
        else:
            relabel = [dict(zip(j, auto)) for auto in _diagram_automorphisms(rs, j)] if j else [{}]
        kept = set()
        for size in range(len(j) + 1):
            for i_subset in combinations(j, size):
                if not is_distinguished(levi, i_subset):
                    continue
                canonical = min(tuple(sorted(m[i] for i in i_subset)) for m in relabel)
                if canonical in kept:
                    continue
                kept.add(canonical)
                l0, l2, _ = grading_dims(levi, canonical)
                label = BCLabel(levi=levi, i_subset=canonical, dims=(l0, l2), fallback=not exact)
                label.check()
                labels.append(label)
    labels.sort(key=lambda b: (len(b.levi.simple_indices), b.levi.simple_indices, b.i_subset))
    logger.debug(f"{rs.type_name}: {len(labels)} Bala-Carter labels")
    return labels

