"""
Root data (X, Phi, Y, Phi^vee) for split reductive groups.

Design NOTE on root data:
- X and Y are Z^x_rank with the standard pairing (the identity matrix); roots live in X and coroots in Y as
  integer row vectors. The semisimple part sits in the first coordinates and torus coordinates are appended.
- An isogeny class is described by a lattice L with root lattice <= L <= weight lattice, given in
  fundamental-weight coordinates. With B a basis of L, simple roots in X are the rows of C^T B^-1 and simple
  coroots in Y are the rows of B^T. simply_connected is B = 1, adjoint is B = C^T.
- GL_n is a preset with X = Y = Z^n and alpha_i = alpha_i^vee = e_i - e_{i+1}.
- Every constructed datum is checked: <alpha, alpha^vee> = 2, the Cartan matrix is recovered from the pairing
  and the pairing is unimodular.
"""

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from sympy import Matrix

from algebra.int_matrix import IntMatrix, QuotientInvariants, lattice_basis, quotient_invariants
from errors import InputError, InvariantViolation
from roots.cartan_type import CartanType
from roots.root_system import Root, RootSystem, build_root_system

ISOGENY_KINDS = ("simply_connected", "adjoint", "custom", "preset")
_ISOGENY_FLAGS = {"sc": "simply_connected", "ad": "adjoint", "preset": "preset"}


@dataclass(frozen=True)
class IsogenyClass:
    """
    Choice of character lattice between the root lattice and the weight lattice.

    Args:
        kind: simply_connected | adjoint | custom | preset
        lattice: generators in fundamental-weight coordinates (custom only)
    """
    kind: str
    lattice: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ISOGENY_KINDS:
            raise InputError(f"Unknown isogeny class '{self.kind}', expected one of {ISOGENY_KINDS}")
        if self.kind == "custom" and not self.lattice:
            raise InputError("A custom isogeny class needs lattice generators")

    @classmethod
    def simply_connected(cls) -> "IsogenyClass":
        return cls("simply_connected")

    @classmethod
    def adjoint(cls) -> "IsogenyClass":
        return cls("adjoint")

    @classmethod
    def preset(cls) -> "IsogenyClass":
        return cls("preset")

    @classmethod
    def custom(cls, generators: Sequence[Sequence[int]]) -> "IsogenyClass":
        return cls("custom", tuple(tuple(int(x) for x in g) for g in generators))

    @classmethod
    def from_flag(cls, flag: str) -> "IsogenyClass":
        if flag not in _ISOGENY_FLAGS:
            raise InputError(f"Unknown isogeny flag '{flag}', expected one of {sorted(_ISOGENY_FLAGS)}")
        return cls(_ISOGENY_FLAGS[flag])

    @property
    def short_name(self) -> str:
        return {"simply_connected": "sc", "adjoint": "ad"}.get(self.kind, self.kind)


@dataclass(frozen=True)
class CenterPi1:
    """Torsion invariant factors of X/ZPhi (center) and Y/ZPhi^vee (fundamental group), with free ranks."""
    center_torsion: tuple[int, ...]
    pi1_torsion: tuple[int, ...]
    x_free_rank: int
    y_free_rank: int


@dataclass(frozen=True)
class RootDatum:
    """
    A root datum with X = Y = Z^x_rank.

    Args:
        cartan_type: the type it was built from
        root_system: Phi in simple-root coordinates
        isogeny: which lattice X is
        x_rank: rank of X (and Y)
        simple_roots_in_x: one row per simple root
        simple_coroots_in_y: one row per simple coroot
        pairing: Gram matrix of the perfect pairing X x Y -> Z
    """
    cartan_type: CartanType
    root_system: RootSystem
    isogeny: IsogenyClass
    x_rank: int
    simple_roots_in_x: IntMatrix
    simple_coroots_in_y: IntMatrix
    pairing: IntMatrix = field(default=None)

    def __post_init__(self):
        if self.pairing is None:
            object.__setattr__(self, "pairing", IntMatrix.identity(self.x_rank))

    @property
    def semisimple_rank(self) -> int:
        return self.root_system.rank

    @property
    def central_rank(self) -> int:
        return self.x_rank - self.semisimple_rank

    def roots_to_x(self, roots: Iterable[Root]) -> IntMatrix:
        """Rows of X-coordinates for roots given in simple-root coordinates."""
        rows = [list(r) for r in roots]
        return IntMatrix.from_rows(rows, self.semisimple_rank) @ self.simple_roots_in_x if rows \
            else IntMatrix.zeros(0, self.x_rank)

    def coroots_to_y(self, coroots: Iterable[Root]) -> IntMatrix:
        """Rows of Y-coordinates for coroots given in simple-coroot coordinates."""
        rows = [list(r) for r in coroots]
        return IntMatrix.from_rows(rows, self.semisimple_rank) @ self.simple_coroots_in_y if rows \
            else IntMatrix.zeros(0, self.x_rank)

    @cached_property
    def roots_in_x(self) -> IntMatrix:
        return self.roots_to_x(self.root_system.all_roots)

    @cached_property
    def coroots_in_y(self) -> IntMatrix:
        """Coroots in the order of root_system.all_roots."""
        return self.coroots_to_y(self.root_system.coroot(a) for a in self.root_system.all_roots)

    def check(self):
        """Raises InvariantViolation unless the datum axioms hold."""
        x_roots, y_coroots = self.roots_in_x, self.coroots_in_y
        paired = x_roots @ self.pairing @ y_coroots.transpose() if x_roots.rows else IntMatrix.zeros(0, 0)
        for i in range(x_roots.rows):
            if paired[i, i] != 2:
                raise InvariantViolation(f"<alpha, alpha^vee> = {paired[i, i]} for root {self.root_system.all_roots[i]}")
        if self.semisimple_rank:
            recovered = self.simple_roots_in_x @ self.pairing @ self.simple_coroots_in_y.transpose()
            if recovered != self.root_system.cartan_matrix.transpose():
                raise InvariantViolation(f"Pairing recovers {recovered.to_rows()}, expected the transposed Cartan matrix")
        if abs(self.pairing.determinant()) != 1:
            raise InvariantViolation("Pairing is not unimodular")

    def dual(self) -> "RootDatum":
        """(Y, Phi^vee, X, Phi)."""
        dual_kind = {"simply_connected": "adjoint", "adjoint": "simply_connected"}.get(self.isogeny.kind, self.isogeny.kind)
        dual_factors = tuple(({"B": "C", "C": "B"}.get(f, f), r) for f, r in self.cartan_type.factors)
        return RootDatum(
            cartan_type=replace(self.cartan_type, factors=dual_factors),
            root_system=self.root_system.dual(),
            isogeny=IsogenyClass(dual_kind, self.isogeny.lattice),
            x_rank=self.x_rank,
            simple_roots_in_x=self.simple_coroots_in_y,
            simple_coroots_in_y=self.simple_roots_in_x,
            pairing=self.pairing.transpose(),
        )

    def describe(self) -> str:
        return f"{self.cartan_type} ({self.isogeny.short_name})"


def _pad(rows: list[list[int]], width: int) -> IntMatrix:
    return IntMatrix.from_rows([r + [0] * (width - len(r)) for r in rows], width)


def _custom_basis(rs: RootSystem, generators: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    r = rs.rank
    if any(len(g) != r for g in generators):
        raise InputError(f"Custom lattice generators must have {r} fundamental-weight coordinates")
    basis = lattice_basis(IntMatrix.from_rows([list(g) for g in generators], r))
    if basis.rows != r:
        raise InputError("Custom lattice does not have full rank")
    inverse = Matrix(basis.to_rows()).inv()
    for root_row in rs.cartan_matrix.transpose().to_rows():
        coords = Matrix([root_row]) * inverse
        if any(c.q != 1 for c in coords):
            raise InputError(f"Custom lattice does not contain the root with weight coordinates {root_row}")
    return basis.to_rows()


def build_root_datum(t: CartanType, iso: IsogenyClass) -> RootDatum:
    """
    Builds the root datum of type t in isogeny class iso.

    Args:
        t: Cartan type (the GL_n preset needs iso.kind == "preset")
        iso: isogeny class
    Returns:
        a checked RootDatum
    Raises:
        InputError for inconsistent inputs or a custom lattice that is not intermediate
    """
    rs = build_root_system(t)
    r = rs.rank
    if t.gl_preset is not None or iso.kind == "preset":
        if t.gl_preset is None or iso.kind != "preset":
            raise InputError("The preset isogeny class is available only for the GL_n preset (and requires it)")
        n = t.gl_preset
        simple = [[1 if j == i else -1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
        datum = RootDatum(t, rs, iso, n, IntMatrix.from_rows(simple, n), IntMatrix.from_rows(simple, n))
        datum.check()
        return datum

    x_rank = r + t.torus_rank
    if iso.kind == "simply_connected":
        basis = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    elif iso.kind == "adjoint":
        basis = rs.cartan_matrix.transpose().to_rows()
    else:
        basis = _custom_basis(rs, iso.lattice)

    if r:
        b = IntMatrix.from_rows(basis, r)
        inverse = Matrix(basis).inv()
        roots = Matrix(rs.cartan_matrix.transpose().to_rows()) * inverse
        if any(c.q != 1 for c in roots):
            raise InvariantViolation("Simple roots are not integral in the chosen lattice")
        root_rows = [[int(roots[i, j]) for j in range(r)] for i in range(r)]
        coroot_rows = b.transpose().to_rows()
    else:
        root_rows, coroot_rows = [], []
    datum = RootDatum(t, rs, iso, x_rank, _pad(root_rows, x_rank) if r else IntMatrix.zeros(0, x_rank),
                      _pad(coroot_rows, x_rank) if r else IntMatrix.zeros(0, x_rank))
    datum.check()
    return datum


def center_and_pi1(d: RootDatum) -> CenterPi1:
    """Torsion of X/ZPhi (character group of the center), torsion of Y/ZPhi^vee (pi_1 of the derived group), free ranks."""
    x_quotient: QuotientInvariants = quotient_invariants(d.x_rank, d.simple_roots_in_x)
    y_quotient: QuotientInvariants = quotient_invariants(d.x_rank, d.simple_coroots_in_y)
    return CenterPi1(center_torsion=x_quotient.torsion, pi1_torsion=y_quotient.torsion,
                     x_free_rank=x_quotient.free_rank, y_free_rank=y_quotient.free_rank)
