"""Dedekind eta, eta-quotients, and their multiplier/character bookkeeping."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from ..chars import RealChar, jacobi
from ..qseries import NegativeValuation, Series24, op_V, series_mul, series_pow
from .meta import FormMeta


class LiteralError(ValueError):
    """A form literal could not be parsed; `pos` is the offending offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def eta_series(prec: int) -> Series24:
    """eta(z) = sum_{n >= 1} (12/n) q^(n^2/24)."""
    c = {}
    n = 1
    while n * n < prec:
        if n % 12 in (1, 11):
            c[n * n] = 1
        elif n % 12 in (5, 7):
            c[n * n] = -1
        n += 2
    return Series24(c, prec, 24)


def _pentagonal_unit(n_terms: int) -> Series24:
    """prod (1 - q^n) on the integer grid, exponents below n_terms."""
    c = {}
    k = 0
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= n_terms:
            break
        sign = -1 if k % 2 else 1
        c[24 * e1] = sign
        if k and e2 < n_terms:
            c[24 * e2] = sign
        k += 1
    return Series24(c, 24 * n_terms, 24)


@lru_cache(maxsize=256)
def _unit_power(r: int, n_terms: int) -> Series24:
    return series_pow(_pentagonal_unit(n_terms), r)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(delta z)^(r_delta) for the (delta, r_delta) pairs in `factors`."""

    factors: tuple = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for d, r in self.factors:
            if d < 1:
                raise ValueError(f"dilation must be positive, got {d}")
            merged[d] = merged.get(d, 0) + r
        norm = tuple(sorted((d, r) for d, r in merged.items() if r))
        object.__setattr__(self, "factors", norm)

    @classmethod
    def of(cls, *pairs) -> EtaQuotient:
        return cls(tuple(pairs))

    @classmethod
    def parse(cls, text: str) -> EtaQuotient:
        return parse_eta_literal(text)

    @property
    def weight2(self) -> int:
        return sum(r for _, r in self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight2, 2)

    @property
    def offset(self) -> int:
        """Grid index of the leading term: sum delta * r_delta."""
        return sum(d * r for d, r in self.factors)

    @property
    def level(self) -> int:
        out = 1
        for d, _ in self.factors:
            out = _lcm(out, d)
        return out

    def dilate(self, m: int) -> EtaQuotient:
        return EtaQuotient(tuple((d * m, r) for d, r in self.factors))

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        return EtaQuotient(self.factors + other.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"eta({d})^{r}" if r != 1 else f"eta({d})" for d, r in self.factors)


_ETA_TOKEN = re.compile(r"eta\(\s*(\d+)\s*\)(?:\s*\^\s*(-?\d+))?")


def parse_eta_literal(text: str) -> EtaQuotient:
    """Parse "eta(1)^15*eta(5)^-3"."""
    pairs = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        m = _ETA_TOKEN.match(text, pos)
        if not m:
            raise LiteralError(f"expected eta(d)^r in {text!r}", pos)
        pairs.append((int(m.group(1)), int(m.group(2) or 1)))
        pos = m.end()
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            return EtaQuotient(tuple(pairs))
        if text[pos] != "*":
            raise LiteralError(f"expected '*' in {text!r}", pos)
        pos += 1


@lru_cache(maxsize=512)
def eta_quotient_series(e: EtaQuotient, prec: int) -> Series24:
    off = e.offset
    if off < 0:
        raise NegativeValuation(f"{e} has negative valuation {off}/24")
    rest = prec - off
    if rest <= 0:
        return Series24.zero(prec, 1)
    out = None
    for d, r in e.factors:
        n_terms = -(-rest // (24 * d))
        factor = op_V(_unit_power(r, n_terms), d)
        out = factor if out is None else series_mul(out, factor)
    if out is None:
        out = Series24.constant(1, rest)
    return out.truncate(rest).shift(off)


def _sqfree_kernel(n: int) -> int:
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return out * n


def ghn_meta(e: EtaQuotient, N: int | None = None) -> FormMeta:
    """Weight, character, and eta-multiplier power of an eta-quotient.

    Integer weight: chi(d) = ((-1)^k s / d) with s = prod delta^(r_delta), and the
    two level congruences are checked ("ghn_failed" flag when they fail).
    Half-integral weight: the reported character is kron(s) * (-4/.)^(k + (r-1)/2)
    with weight k + 1/2 and r = sum delta r_delta mod 24; this reproduces the
    psi column of both theta tables.
    """
    if N is None:
        N = e.level
    if N % e.level:
        raise ValueError(f"level {N} is not a multiple of every dilation in {e}")
    num = 1
    den = 1
    for d, r in e.factors:
        if r > 0:
            num *= d ** r
        else:
            den *= d ** (-r)
    kernel = _sqfree_kernel(num * den)
    w2 = e.weight2
    flags = set()
    power = e.offset % 24
    if w2 % 2 == 0:
        k = w2 // 2
        top = (-1) ** k * kernel
        if e.offset % 24 or sum(N // d * r for d, r in e.factors) % 24:
            flags.add("ghn_failed")
        chi = RealChar(top=top, indicator_mod=N) if top != 1 else RealChar(indicator_mod=N)
    else:
        flags.add("half_integral")
        k = (w2 - 1) // 2
        chi = RealChar(top=kernel, indicator_mod=N)
        if (k + (power - 1) // 2) % 2:
            chi = chi * RealChar(top=-4)
    return FormMeta(w2, N, chi, power, frozenset(flags))


def cusp_order(e: EtaQuotient, N: int, d: int) -> Fraction:
    """Order of vanishing at the cusp 1/d (d | N), per the Ligozat formula."""
    if N % d:
        raise ValueError(f"{d} does not divide {N}")
    return sum((Fraction(gcd(d, delta) ** 2 * r, delta) for delta, r in e.factors),
               Fraction(0)) / 24


def denominator_D(e: EtaQuotient, N: int | None = None) -> int:
    if N is None:
        N = e.level
    out = 1
    for d in range(1, N + 1):
        if N % d == 0:
            out = _lcm(out, cusp_order(e, N, d).denominator)
    return out


def eta_multiplier_nu(a: int, b: int, c: int, d: int) -> int:
    """x mod 24 with nu_eta((a, b; c, d)) = e(x/24)."""
    if a * d - b * c != 1:
        raise ValueError("matrix is not in SL2(Z)")
    extra = 0
    if c < 0 or (c == 0 and d < 0):
        # nu(-gamma) = i nu(gamma)
        a, b, c, d = -a, -b, -c, -d
        extra = 6
    if c == 0:
        return (b + extra) % 24
    if d < 0:
        # gamma T^j has lower row (c, d + jc) and nu(gamma T^j) = nu(gamma) e(j/24)
        j = -d // c + 1
        return (eta_multiplier_nu(a, b + j * a, c, d + j * c) - j + extra) % 24
    if c % 2:
        sym = jacobi(d, c)
        x = (a + d) * c - b * d * (c * c - 1) - 3 * c
    else:
        sym = jacobi(c, d)
        x = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d
    if sym == -1:
        x += 12
    return (x + extra) % 24


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


__all__ = [
    "EtaQuotient", "LiteralError", "cusp_order", "denominator_D", "eta_multiplier_nu",
    "eta_quotient_series", "eta_series", "ghn_meta", "is_square", "parse_eta_literal",
]
