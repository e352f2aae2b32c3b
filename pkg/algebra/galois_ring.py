"""
Galois rings GR(p^k, e) = (Z/p^k)[x] / (f), the truncated coefficient rings of the lifting pipeline.

Design NOTE on Galois rings:
- Elements are tuples of e integers in [0, p^k), lowest degree first. For e = 1 the ring is Z/p^k and every
  operation takes a fast path on the single coefficient.
- The modulus is deterministic: GaloisRing.build picks the lexicographically smallest monic primitive
  irreducible polynomial of degree e over F_p and Hensel-lifts it to the minimal polynomial over Z/p^k of the
  Teichmuller lift of its root. Irreducibility is decided with sympy's finite field toolkit.
- The residue field is the same construction at k = 1, so reduction mod p is coefficient-wise.
- valuation(0) is reported as k (the element is 0 to full precision).
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np
from sympy import isprime, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from errors import InputError, InvariantViolation

RingElement = tuple[int, ...]


@dataclass(frozen=True)
class GaloisRing:
    """
    The Galois ring (Z/p^k)[x]/(modulus).

    Args:
        p: prime
        k: precision exponent (k = 1 gives the residue field F_{p^e})
        e: residue extension degree
        modulus: monic polynomial of degree e, coefficients lowest degree first
    """
    p: int
    k: int
    e: int = 1
    modulus: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if not isprime(self.p):
            raise InputError(f"Galois ring characteristic {self.p} is not a prime")
        if self.k < 1 or self.e < 1:
            raise InputError(f"Invalid Galois ring parameters k={self.k}, e={self.e}")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] % self.modulo != 1:
            raise InputError(f"Modulus {self.modulus} is not monic of degree {self.e}")
        if self.e > 1:
            reduced = [int(c) % self.p for c in reversed(self.modulus)]
            if not gf_irreducible_p(reduced, self.p, ZZ):
                raise InputError(f"Modulus {self.modulus} is not irreducible modulo {self.p}")

    @staticmethod
    @lru_cache(maxsize=None)
    def build(p: int, k: int, e: int = 1) -> "GaloisRing":
        """Deterministic Galois ring GR(p^k, e)."""
        if e == 1:
            return GaloisRing(p, k, 1, (0, 1))
        residue_modulus = _primitive_modulus(p, e)
        naive = GaloisRing(p, k, e, residue_modulus)
        if k == 1:
            return naive
        return GaloisRing(p, k, e, _teichmuller_modulus(naive))

    @property
    def modulo(self) -> int:
        """The integer p^k all coefficients are reduced by."""
        return self.p ** self.k

    @property
    def residue_size(self) -> int:
        return self.p ** self.e

    @property
    def is_field(self) -> bool:
        return self.k == 1

    def residue_field(self) -> "GaloisRing":
        return self.at_precision(1)

    def at_precision(self, k: int) -> "GaloisRing":
        """The same ring truncated (or re-read) at precision k."""
        if k == self.k:
            return self
        modulo = self.p ** k
        return GaloisRing(self.p, k, self.e, tuple(c % modulo for c in self.modulus))

    # --- elements -------------------------------------------------------------------------------

    @property
    def zero(self) -> RingElement:
        return (0,) * self.e

    @property
    def one(self) -> RingElement:
        return (1,) + (0,) * (self.e - 1)

    @property
    def generator(self) -> RingElement:
        """The class of x (a root of the modulus)."""
        if self.e == 1:
            return (self.modulo - self.modulus[0] % self.modulo) % self.modulo,
        return (0, 1) + (0,) * (self.e - 2)

    def element(self, value: int | Sequence[int]) -> RingElement:
        """Reduces an integer or a coefficient list into the ring."""
        m = self.modulo
        if isinstance(value, (int, np.integer)):
            return (int(value) % m,) + (0,) * (self.e - 1)
        coeffs = [int(c) % m for c in value]
        if len(coeffs) > self.e:
            return self._reduce_poly(coeffs)
        return tuple(coeffs) + (0,) * (self.e - len(coeffs))

    def from_element(self, a: RingElement) -> RingElement:
        """Reads an element of a ring with the same p and e (any precision) into this ring."""
        m = self.modulo
        return tuple(c % m for c in a)

    def to_json(self, a: RingElement) -> int | list[int]:
        return a[0] if self.e == 1 else list(a)

    def _reduce_poly(self, coeffs: list[int]) -> RingElement:
        m = self.modulo
        e = self.e
        coeffs = list(coeffs)
        for deg in range(len(coeffs) - 1, e - 1, -1):
            c = coeffs[deg] % m
            if c:
                for i in range(e):
                    coeffs[deg - e + i] -= c * self.modulus[i]
            coeffs[deg] = 0
        return tuple(c % m for c in coeffs[:e]) + (0,) * max(0, e - len(coeffs))

    # --- arithmetic -----------------------------------------------------------------------------

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        m = self.modulo
        if self.e == 1:
            return (a[0] + b[0]) % m,
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a: RingElement, b: RingElement) -> RingElement:
        m = self.modulo
        if self.e == 1:
            return (a[0] - b[0]) % m,
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a: RingElement) -> RingElement:
        m = self.modulo
        return tuple((-x) % m for x in a)

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        if self.e == 1:
            return (a[0] * b[0]) % self.modulo,
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce_poly(prod)

    def scale(self, a: RingElement, c: int) -> RingElement:
        m = self.modulo
        return tuple((x * c) % m for x in a)

    def pow(self, a: RingElement, exponent: int) -> RingElement:
        if exponent < 0:
            return self.pow(self.inverse(a), -exponent)
        if self.e == 1:
            return pow(a[0], exponent, self.modulo),
        result, base = self.one, a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def is_zero(self, a: RingElement) -> bool:
        return not any(a)

    def is_unit(self, a: RingElement) -> bool:
        return any(c % self.p for c in a)

    def valuation(self, a: RingElement) -> int:
        """p-adic valuation, capped at k (so valuation(0) == k)."""
        best = self.k
        for c in a:
            if c:
                v = 0
                while c % self.p == 0:
                    c //= self.p
                    v += 1
                best = min(best, v)
        return best

    def divide_by_p_power(self, a: RingElement, v: int) -> RingElement:
        """Exact division by p^v of an element of valuation >= v (a representative of the quotient)."""
        d = self.p ** v
        if any(c % d for c in a):
            raise ValueError(f"{a} is not divisible by {self.p}^{v}")
        return tuple(c // d for c in a)

    def inverse(self, a: RingElement) -> RingElement:
        if not self.is_unit(a):
            raise ValueError(f"{a} is not a unit in GR({self.p}^{self.k}, {self.e})")
        if self.e == 1:
            return pow(a[0], -1, self.modulo),
        unit_group_order = (self.residue_size - 1) * self.p ** (self.e * (self.k - 1))
        return self.pow(a, unit_group_order - 1)

    def reduce(self, a: RingElement) -> RingElement:
        """Reduction into the residue field."""
        return tuple(c % self.p for c in a)

    # --- enumeration and sampling ---------------------------------------------------------------

    def residue_elements(self) -> Iterator[RingElement]:
        """All elements of the residue field, read as representatives in this ring."""
        for coeffs in product(range(self.p), repeat=self.e):
            yield tuple(reversed(coeffs))

    def random_element(self, rng: np.random.Generator) -> RingElement:
        return tuple(int(x) for x in rng.integers(0, self.modulo, size=self.e))

    def describe(self) -> str:
        if self.e == 1:
            return f"Z/{self.p}^{self.k}"
        return f"GR({self.p}^{self.k}, {self.e}) mod {list(self.modulus)}"


def _primitive_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest (lexicographic in c_{e-1}, ..., c_0) monic primitive irreducible polynomial of degree e over F_p."""
    order = p ** e - 1
    cofactors = [order // r for r in primefactors(order)]
    for coeffs in product(range(p), repeat=e):
        if coeffs[-1] == 0:
            continue
        if not gf_irreducible_p([1, *coeffs], p, ZZ):
            continue
        modulus = tuple(reversed(coeffs)) + (1,)
        field = GaloisRing(p, 1, e, modulus)
        x = field.generator
        if all(field.pow(x, c) != field.one for c in cofactors):
            return modulus
    raise InvariantViolation(f"No primitive polynomial of degree {e} over F_{p}")


def _teichmuller_modulus(naive: GaloisRing) -> tuple[int, ...]:
    """Minimal polynomial over Z/p^k of the Teichmuller lift of x in the naive lift of the residue modulus."""
    omega = naive.pow(naive.generator, naive.p ** (naive.e * (naive.k - 1)))
    # prod_{i < e} (X - omega^(p^i)), coefficients lowest degree first
    poly = [naive.one]
    conjugate = omega
    for _ in range(naive.e):
        shifted = [naive.zero] + poly
        for j in range(len(poly)):
            shifted[j] = naive.sub(shifted[j], naive.mul(conjugate, poly[j]))
        poly = shifted
        conjugate = naive.pow(conjugate, naive.p)
    if any(any(c[1:]) for c in poly):
        raise InvariantViolation(f"Conjugates of the Teichmuller generator do not give an integral modulus: {poly}")
    return tuple(c[0] for c in poly)


def teichmuller(ring: GaloisRing, residue: int | Sequence[int]) -> RingElement:
    """
    Teichmuller lift of a nonzero residue: the unique t reducing to residue with t^(p^e - 1) = 1.

    Args:
        ring: the Galois ring to lift into
        residue: residue field element (integer for e = 1, coefficient list otherwise)
    Returns:
        the lift t as a ring element
    Raises:
        InputError if the residue is zero
    """
    r = ring.residue_field().element(residue)
    if ring.is_zero(r):
        raise InputError("The Teichmuller lift of zero is undefined")
    return ring.pow(ring.from_element(r), ring.p ** (ring.e * (ring.k - 1)))
