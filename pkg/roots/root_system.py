"""
Root systems built from Cartan matrices.

Design NOTE on root systems:
- Cartan convention: a_ij = <alpha_j, alpha_i^vee>, so the simple reflection s_i acts on simple-root
  coordinates by v -> v - (C v)_i e_i. Nodes follow the Bourbaki numbering of each irreducible factor and
  factors are laid out block-diagonally in the order of the CartanType.
- Roots are integer vectors in simple-root coordinates, obtained as the closure of the simple roots under
  the simple reflections. The order of all_roots is deterministic: positive roots by (height, coordinates),
  then their negatives in the same order.
- Squared lengths are propagated exactly with Fractions along the Dynkin diagram; they give coroots in
  simple-coroot coordinates (alpha^vee = sum c_i n_i / (alpha, alpha) alpha_i^vee).
- The Weyl group is enumerated (as permutations of root indices) only when it is small enough; the order of W
  otherwise comes from the classical table.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial

from algebra.int_matrix import IntMatrix
from errors import InputError, InvariantViolation
from roots.cartan_type import CartanType

Root = tuple[int, ...]

MAX_ENUMERATED_WEYL_ORDER = 50_000

_EXCEPTIONAL_WEYL_ORDERS = {("E", 6): 51_840, ("E", 7): 2_903_040, ("E", 8): 696_729_600, ("F", 4): 1_152, ("G", 2): 12}
_ROOT_COUNTS = {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}


def irreducible_cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix of an irreducible type in Bourbaki numbering (0-based nodes)."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i, j, a_ij=-1, a_ji=-1):
        a[i][j], a[j][i] = a_ij, a_ji

    if family in "ABC":
        for i in range(rank - 1):
            bond(i, i + 1)
        if family == "B":
            a[rank - 1][rank - 2] = -2
        elif family == "C":
            a[rank - 2][rank - 1] = -2
    elif family == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif family == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, rank - 1):
            bond(i, i + 1)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif family == "G":
        bond(0, 1, -3, -1)
    return a


def classical_root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family in "BC":
        return 2 * rank * rank
    if family == "D":
        return 2 * rank * (rank - 1)
    return _ROOT_COUNTS[(family, rank)]


def classical_weyl_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family in "BC":
        return 2 ** rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return _EXCEPTIONAL_WEYL_ORDERS[(family, rank)]


def identify_components(cartan: list[list[int]]) -> list[tuple[str, int, tuple[int, ...]]]:
    """
    Classifies a Cartan matrix into irreducible components via its Dynkin diagram.

    Args:
        cartan: square integer matrix with 2 on the diagonal
    Returns:
        list of (family, rank, node indices) with node indices sorted, components ordered by smallest node
    Raises:
        InputError if a component is not of finite type
    """
    n = len(cartan)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        nodes, stack = [], [start]
        seen[start] = True
        while stack:
            i = stack.pop()
            nodes.append(i)
            for j in range(n):
                if j != i and cartan[i][j] != 0 and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        nodes.sort()
        out.append((*_classify_connected(cartan, nodes), tuple(nodes)))
    return out


def _classify_connected(cartan: list[list[int]], nodes: list[int]) -> tuple[str, int]:
    r = len(nodes)
    edges = [(i, j) for i in nodes for j in nodes if i < j and cartan[i][j] != 0]
    if len(edges) != r - 1:
        raise InputError("Dynkin diagram contains a cycle (not of finite type)")
    degree = {i: sum(1 for e in edges if i in e) for i in nodes}
    multi = [(i, j) for i, j in edges if cartan[i][j] * cartan[j][i] > 1]
    if not multi:
        branch = [i for i in nodes if degree[i] == 3]
        if not branch:
            return "A", r
        centre = branch[0]
        arms = sorted(_arm_length(edges, centre, j) for j in nodes if (min(centre, j), max(centre, j)) in edges)
        if arms[:2] == [1, 1]:
            return "D", r
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return "E", r
        raise InputError(f"Simply laced diagram with arms {arms} is not of finite type")
    i, j = multi[0]
    product = cartan[i][j] * cartan[j][i]
    if product == 3 and r == 2:
        return "G", 2
    if product != 2 or len(multi) > 1:
        raise InputError("Diagram is not of finite type")
    if r == 2:
        return "B", 2
    if degree[i] == 2 and degree[j] == 2:
        if r == 4:
            return "F", 4
        raise InputError("Double bond in the interior of a long chain")
    end = i if degree[i] == 1 else j
    other = j if end == i else i
    # |a_end,other| = 2 means the end node is the short root
    return ("B" if abs(cartan[end][other]) == 2 else "C"), r


def _arm_length(edges, centre, first) -> int:
    length, previous, current = 1, centre, first
    while True:
        nxt = [b if a == current else a for a, b in edges if current in (a, b) and previous not in (a, b)]
        if not nxt:
            return length
        previous, current = current, nxt[0]
        length += 1


def root_norms(cartan: list[list[int]]) -> list[Fraction]:
    """Squared lengths of the simple roots, scaled so the short roots of each component have norm 1."""
    n = len(cartan)
    norms: list[Fraction | None] = [None] * n
    for start in range(n):
        if norms[start] is not None:
            continue
        norms[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and norms[j] is None:
                    # a_ij n_i = a_ji n_j
                    norms[j] = Fraction(cartan[i][j]) * norms[i] / cartan[j][i]
                    queue.append(j)
        component = [j for j in range(n) if norms[j] is not None and _connected(cartan, start, j)]
        smallest = min(norms[j] for j in component)
        for j in component:
            norms[j] = norms[j] / smallest
    return norms


def _connected(cartan, a, b) -> bool:
    seen, stack = {a}, [a]
    while stack:
        i = stack.pop()
        if i == b:
            return True
        for j in range(len(cartan)):
            if j != i and cartan[i][j] != 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return False


@dataclass(frozen=True)
class RootSystem:
    """
    A (possibly reducible, possibly empty) root system in simple-root coordinates.

    Args:
        rank: number of simple roots
        cartan_matrix: a_ij = <alpha_j, alpha_i^vee>
        components: (family, rank, nodes) of each irreducible factor
        all_roots: every root as an integer vector of simple-root coordinates
    """
    rank: int
    cartan_matrix: IntMatrix
    components: tuple[tuple[str, int, tuple[int, ...]], ...]
    all_roots: tuple[Root, ...]

    @property
    def simple_roots(self) -> IntMatrix:
        return IntMatrix.identity(self.rank)

    @cached_property
    def cartan_rows(self) -> list[list[int]]:
        return self.cartan_matrix.to_rows()

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.all_roots if sum(r) > 0)

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.all_roots)}

    @cached_property
    def norms(self) -> list[Fraction]:
        return root_norms(self.cartan_rows)

    @property
    def type_name(self) -> str:
        if not self.components:
            return "0"
        return "x".join(f"{family}{rank}" for family, rank, _ in self.components)

    def is_root(self, v: Root) -> bool:
        return v in self.root_index

    def height(self, v: Root) -> int:
        return sum(v)

    def inner(self, u: Root, v: Root) -> Fraction:
        """W-invariant inner product with (alpha_i, alpha_j) = a_ij n_i / 2."""
        c = self.cartan_rows
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj and c[i][j]:
                        total += ui * vj * c[i][j] * self.norms[i] / 2
        return total

    def norm(self, v: Root) -> Fraction:
        return self.inner(v, v)

    def coroot(self, alpha: Root) -> Root:
        """alpha^vee in simple-coroot coordinates."""
        length = self.norm(alpha)
        coords = [c * self.norms[i] / length for i, c in enumerate(alpha)]
        if any(x.denominator != 1 for x in coords):
            raise InvariantViolation(f"Coroot of {alpha} is not integral: {coords}")
        return tuple(int(x) for x in coords)

    def pair(self, v: Root, coroot: Root) -> int:
        """<v, beta^vee> for v in root coordinates and beta^vee in coroot coordinates."""
        c = self.cartan_rows
        return sum(coroot[i] * sum(c[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank) if coroot[i])

    def reflect(self, alpha: Root, v: Root) -> Root:
        """s_alpha(v) = v - <v, alpha^vee> alpha."""
        m = self.pair(v, self.coroot(alpha))
        return tuple(x - m * a for x, a in zip(v, alpha))

    def simple_reflection(self, i: int, v: Root) -> Root:
        c = self.cartan_rows[i]
        m = sum(c[j] * v[j] for j in range(self.rank))
        return tuple(x - m if j == i else x for j, x in enumerate(v))

    def highest_root(self, nodes: tuple[int, ...]) -> Root:
        """Highest root of the irreducible component supported on nodes."""
        support = set(nodes)
        inside = [r for r in self.positive_roots if all(i in support for i, x in enumerate(r) if x)]
        return max(inside, key=lambda r: (sum(r), r))

    @cached_property
    def simple_reflection_permutations(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.root_index[self.simple_reflection(i, r)] for r in self.all_roots)
                     for i in range(self.rank))

    @cached_property
    def weyl_permutations(self) -> tuple[tuple[int, ...], ...]:
        """All elements of W as permutations of root indices (breadth-first from the identity)."""
        if weyl_order_from_table(self) > MAX_ENUMERATED_WEYL_ORDER:
            raise ValueError(f"Weyl group of {self.type_name} is too large to enumerate")
        identity = tuple(range(len(self.all_roots)))
        seen = {identity}
        queue = deque([identity])
        while queue:
            w = queue.popleft()
            for s in self.simple_reflection_permutations:
                nxt = tuple(s[x] for x in w)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return tuple(sorted(seen))

    @property
    def weyl_is_enumerable(self) -> bool:
        return self.rank <= 4 and weyl_order_from_table(self) <= MAX_ENUMERATED_WEYL_ORDER

    def dual(self) -> "RootSystem":
        """The dual root system (Cartan matrix transposed, B and C exchanged)."""
        return root_system_from_cartan(self.cartan_matrix.transpose().to_rows())


def root_system_from_cartan(cartan: list[list[int]]) -> RootSystem:
    """Builds the root system of a Cartan matrix by reflection closure of the simple roots."""
    rank = len(cartan)
    components = tuple(identify_components(cartan)) if rank else ()
    simple = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(rank):
            m = sum(cartan[i][j] * v[j] for j in range(rank))
            w = tuple(x - m if j == i else x for j, x in enumerate(v))
            if w not in found:
                found.add(w)
                queue.append(w)
    for r in found:
        if not (all(x >= 0 for x in r) or all(x <= 0 for x in r)):
            raise InvariantViolation(f"Root {r} has mixed-sign coordinates")
    positive = sorted((r for r in found if sum(r) > 0), key=lambda r: (sum(r), r))
    all_roots = tuple(positive) + tuple(tuple(-x for x in r) for r in positive)
    if set(all_roots) != found:
        raise InvariantViolation("Root set is not closed under negation")
    return RootSystem(rank=rank, cartan_matrix=IntMatrix.from_rows(cartan, rank), components=components,
                      all_roots=all_roots)


def build_root_system(t: CartanType) -> RootSystem:
    """
    Root system of the semisimple part of a Cartan type (factors in order, block-diagonal Cartan matrix).

    Raises:
        InputError for invalid factors, InvariantViolation if the root count disagrees with the classical count
    """
    rank = t.semisimple_rank
    cartan = [[0] * rank for _ in range(rank)]
    offset = 0
    for family, r in t.factors:
        block = irreducible_cartan_matrix(family, r)
        for i in range(r):
            for j in range(r):
                cartan[offset + i][offset + j] = block[i][j]
        offset += r
    rs = root_system_from_cartan(cartan)
    expected = sum(classical_root_count(family, r) for family, r in t.factors)
    if len(rs.all_roots) != expected:
        raise InvariantViolation(f"{t} produced {len(rs.all_roots)} roots, expected {expected}")
    return rs


def weyl_order_from_table(rs: RootSystem) -> int:
    order = 1
    for family, r, _ in rs.components:
        order *= classical_weyl_order(family, r)
    return order


def weyl_order(rs: RootSystem) -> int:
    """
    Order of the Weyl group: product of the classical orders of the irreducible factors.
    For rank <= 4 the value is cross-checked against an explicit enumeration of W.
    """
    order = weyl_order_from_table(rs)
    if rs.weyl_is_enumerable:
        enumerated = len(rs.weyl_permutations)
        if enumerated != order:
            raise InvariantViolation(f"Weyl group of {rs.type_name}: table order {order}, enumerated {enumerated}")
    return order
