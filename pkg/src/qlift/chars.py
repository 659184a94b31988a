"""Kronecker and Jacobi symbols, and real Dirichlet characters built from them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for every integer n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    return sign * jacobi(a, n)


def _fundamental_period(d: int) -> int:
    # n -> kronecker(d, n) on n > 0 is periodic mod |d| when d = 0, 1 (mod 4), else mod 4|d|
    return abs(d) if d % 4 in (0, 1) else 4 * abs(d)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class RealChar:
    """n -> kronecker(top, n) * jacobi(n, bottom) * [gcd(n, indicator_mod) = 1].

    `bottom` is an odd positive integer; 1 switches the Jacobi factor off.  It
    gives an independent evaluation route for characters written as (./r).
    """

    top: int = 1
    indicator_mod: int = 1
    bottom: int = 1

    def __post_init__(self):
        if self.top == 0:
            raise ValueError("character top argument must be nonzero")
        if self.indicator_mod < 1:
            raise ValueError("indicator modulus must be positive")
        if self.bottom < 1 or self.bottom % 2 == 0:
            raise ValueError("bottom argument must be odd and positive")

    @classmethod
    def trivial(cls) -> RealChar:
        return cls()

    @classmethod
    def kron(cls, d: int) -> RealChar:
        return cls(top=d)

    @classmethod
    def indicator(cls, m: int) -> RealChar:
        return cls(indicator_mod=m)

    @classmethod
    def legendre_bottom(cls, r: int) -> RealChar:
        """(n/r) for odd r > 0, stored as a Kronecker symbol with top ±r."""
        if r < 1 or r % 2 == 0:
            raise ValueError(f"(./r) needs odd positive r, got {r}")
        if r == 1:
            return cls()
        return cls(top=r if r % 4 == 1 else -r)

    @classmethod
    def jacobi_bottom(cls, r: int) -> RealChar:
        """(n/r) evaluated directly as a Jacobi symbol."""
        return cls(bottom=r)

    def __call__(self, n: int) -> int:
        return char_eval(self, n)

    def __mul__(self, other: RealChar) -> RealChar:
        if not isinstance(other, RealChar):
            return NotImplemented
        return RealChar(self.top * other.top,
                        _lcm(self.indicator_mod, other.indicator_mod),
                        self.bottom * other.bottom)

    def __pow__(self, e: int) -> RealChar:
        if e < 0:
            raise ValueError("negative character power")
        out = RealChar()
        for _ in range(e):
            out = out * self
        return out

    @property
    def modulus(self) -> int:
        """A period of n -> chi(n) on the positive integers."""
        return _lcm(_lcm(_fundamental_period(self.top), self.indicator_mod), self.bottom)

    def is_trivial(self) -> bool:
        return all(self(n) == 1 for n in range(1, self.modulus + 1))

    @property
    def parity(self) -> str:
        return char_parity(self)

    def __str__(self) -> str:
        parts = []
        if self.top != 1:
            parts.append(f"kron({self.top})")
        if self.indicator_mod != 1:
            parts.append(f"ind({self.indicator_mod})")
        if self.bottom != 1:
            parts.append(f"jac({self.bottom})")
        return "*".join(parts) if parts else "1"


def char_eval(chi: RealChar, n: int) -> int:
    if gcd(n, chi.indicator_mod) != 1:
        return 0
    value = kronecker(chi.top, n)
    if value and chi.bottom != 1:
        value *= jacobi(n, chi.bottom)
    return value


def char_parity(chi: RealChar) -> str:
    return "even" if char_eval(chi, -1) == 1 else "odd"


_TERM = re.compile(r"\s*(kron|ind|jac)\(\s*(-?\d+)\s*\)\s*")


def parse_char(text: str) -> RealChar:
    """Parse "kron(D)*ind(M)*jac(t)" (any subset, any order) or "1"."""
    text = text.strip()
    if text in ("1", ""):
        return RealChar()
    chi = RealChar()
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"bad character literal {text!r} at position {pos}")
        kind, val = m.group(1), int(m.group(2))
        if kind == "kron":
            chi = chi * RealChar(top=val)
        elif kind == "ind":
            chi = chi * RealChar(indicator_mod=val)
        else:
            chi = chi * RealChar(bottom=val)
        pos = m.end()
        if pos == len(text):
            return chi
        if text[pos] != "*":
            raise ValueError(f"bad character literal {text!r} at position {pos}")
        pos += 1
