"""
Cartan types of split reductive groups and the type-string grammar used by the CLI.

Grammar (whitespace is ignored):

    type    := preset | body
    preset  := "GLn(" INT ")" | "GL" INT
    body    := torus | product [ "+" torus ]
    product := factor ( "x" factor )*
    factor  := FAMILY INT              FAMILY in A B C D E F G
    torus   := "T" INT

Examples: "G2", "A3xA1+T2", "T3", "GLn(5)", "GL4".
"""

import re
from dataclasses import dataclass

from errors import InputError

FAMILIES = "ABCDEFG"
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_ALLOWED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def check_family_rank(family: str, rank: int):
    """Raises InputError unless (family, rank) names an irreducible Cartan type."""
    if family not in FAMILIES:
        raise InputError(f"Unknown Cartan family '{family}'")
    if family in _ALLOWED_RANKS:
        if rank not in _ALLOWED_RANKS[family]:
            raise InputError(f"Type {family}{rank} does not exist (rank must be one of {_ALLOWED_RANKS[family]})")
    elif rank < _MIN_RANK[family]:
        raise InputError(f"Type {family}{rank} needs rank >= {_MIN_RANK[family]}")


@dataclass(frozen=True)
class CartanType:
    """
    A product of irreducible Cartan types plus a central torus.

    Args:
        factors: (family, rank) pairs in the order given
        torus_rank: rank of the central torus
        gl_preset: n for the GL_n preset (A_{n-1} with the glued lattice), None otherwise
    """
    factors: tuple[tuple[str, int], ...] = ()
    torus_rank: int = 0
    gl_preset: int | None = None

    def __post_init__(self):
        for family, rank in self.factors:
            check_family_rank(family, rank)
        if self.torus_rank < 0:
            raise InputError(f"Torus rank must be non-negative, got {self.torus_rank}")
        if self.gl_preset is not None and self.gl_preset < 1:
            raise InputError(f"GL_n preset needs n >= 1, got {self.gl_preset}")

    @classmethod
    def gl(cls, n: int) -> "CartanType":
        """GL_n: semisimple part A_{n-1} (empty for n = 1) and a rank one center."""
        if n < 1:
            raise InputError(f"GL_n preset needs n >= 1, got {n}")
        return cls(factors=(("A", n - 1),) if n >= 2 else (), torus_rank=0, gl_preset=n)

    @property
    def semisimple_rank(self) -> int:
        return sum(rank for _, rank in self.factors)

    @property
    def rank(self) -> int:
        """Rank of the maximal torus (rank of X)."""
        if self.gl_preset is not None:
            return self.gl_preset
        return self.semisimple_rank + self.torus_rank

    @property
    def central_rank(self) -> int:
        return self.rank - self.semisimple_rank

    def __str__(self) -> str:
        if self.gl_preset is not None:
            return f"GLn({self.gl_preset})"
        body = "x".join(f"{family}{rank}" for family, rank in self.factors)
        if self.torus_rank and body:
            return f"{body}+T{self.torus_rank}"
        if self.torus_rank or not body:
            return f"T{self.torus_rank}"
        return body

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        return _TypeParser(text).parse()


class _TypeParser:
    """Recursive descent over the compacted type string; errors report a 0-based character position."""

    _token = re.compile(r"GLn\(|GL|[A-GT]|\d+|[x+()]")

    def __init__(self, text: str):
        self.text = re.sub(r"\s+", "", text)
        self.pos = 0

    def _fail(self, what: str):
        found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
        raise InputError(f"Cannot parse Cartan type '{self.text}': expected {what} at position {self.pos}, found {found}")

    def _peek(self) -> str | None:
        match = self._token.match(self.text, self.pos)
        return match.group(0) if match else None

    def _take(self, expected: str | None = None, what: str = "a token") -> str:
        token = self._peek()
        if token is None or (expected is not None and token != expected):
            self._fail(repr(expected) if expected else what)
        self.pos += len(token)
        return token

    def _integer(self) -> int:
        token = self._peek()
        if token is None or not token.isdigit():
            self._fail("a rank")
        self.pos += len(token)
        return int(token)

    def parse(self) -> CartanType:
        if not self.text:
            self._fail("a Cartan type")
        token = self._peek()
        if token == "GLn(":
            self._take("GLn(")
            n = self._integer()
            self._take(")")
            result = CartanType.gl(n)
        elif token == "GL":
            self._take("GL")
            result = CartanType.gl(self._integer())
        elif token == "T":
            self._take("T")
            result = CartanType(torus_rank=self._integer())
        else:
            factors = [self._factor()]
            while self._peek() == "x":
                self._take("x")
                factors.append(self._factor())
            torus = 0
            if self._peek() == "+":
                self._take("+")
                self._take("T")
                torus = self._integer()
            result = CartanType(factors=tuple(factors), torus_rank=torus)
        if self.pos != len(self.text):
            self._fail("end of input")
        return result

    def _factor(self) -> tuple[str, int]:
        token = self._peek()
        if token is None or token not in FAMILIES:
            self._fail("a Cartan family A-G")
        start = self.pos
        self.pos += 1
        rank = self._integer()
        try:
            check_family_rank(token, rank)
        except InputError as e:
            raise InputError(f"{e} (at position {start})") from e
        return token, rank
