"""Bernoulli numbers, L-values at negative integers, Eisenstein series, level-one forms."""

from __future__ import annotations

import warnings
from fractions import Fraction
from functools import lru_cache
from math import comb

from ..chars import RealChar, char_eval
from ..qseries import Series24
from .eta import EtaQuotient, eta_quotient_series


@lru_cache(maxsize=None)
def bernoulli_Bk(k: int) -> Fraction:
    """Bernoulli number with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Fraction(1)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    return -sum((comb(k + 1, j) * bernoulli_Bk(j) for j in range(k)), Fraction(0)) / (k + 1)


def bernoulli_poly_at(k: int, x) -> Fraction:
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli_Bk(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def gen_bernoulli(k: int, chi: RealChar) -> Fraction:
    """B_{k,chi} = M^(k-1) sum_{a=1}^{M} chi(a) B_k(a/M) over a period M of chi."""
    if k < 1:
        raise ValueError("k must be positive")
    M = chi.modulus
    total = sum((char_eval(chi, a) * bernoulli_poly_at(k, Fraction(a, M))
                 for a in range(1, M + 1)), Fraction(0))
    return Fraction(M) ** (k - 1) * total


def L_neg(k: int, chi: RealChar) -> Fraction:
    """L(1 - k, chi) = -B_{k,chi}/k."""
    return -gen_bernoulli(k, chi) / k


def _as_int(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def eisenstein_pair(k: int, psi: RealChar, phi: RealChar, prec: int) -> Series24:
    """E_k^{psi,phi}: constant L(1-k, phi)/2 (psi trivial) and q^n coefficient
    sum_{d | n} psi(n/d) phi(d) d^(k-1).  `prec` is a grid bound (24 per q-power)."""
    if char_eval(psi, -1) * char_eval(phi, -1) != (-1) ** k:
        warnings.warn(f"parity of {psi}*{phi} does not match weight {k}; the space is zero",
                      stacklevel=2)
        return Series24.zero(prec, 24)
    n_max = -(-prec // 24)
    coeffs = [0] * n_max
    for d in range(1, n_max):
        pd = char_eval(phi, d)
        if not pd:
            continue
        dk = pd * d ** (k - 1)
        for m in range(1, (n_max - 1) // d + 1):
            s = char_eval(psi, m)
            if s:
                coeffs[d * m] += s * dk
    if psi.is_trivial():
        coeffs[0] = _as_int(L_neg(k, phi) / 2)
    return Series24({24 * n: c for n, c in enumerate(coeffs)}, prec, 24)


def E_normalized(k: int, prec: int) -> Series24:
    """Level-one Eisenstein eigenform with a(1) = 1."""
    one = RealChar()
    return eisenstein_pair(k, one, one, prec)


def E_classical(k: int, prec: int) -> Series24:
    """E_k with constant term 1."""
    f = E_normalized(k, prec)
    return f.scale(_as_int(1 / Fraction(f.coeff(0))))


def delta(prec: int) -> Series24:
    return eta_quotient_series(EtaQuotient.of((1, 24)), prec)
