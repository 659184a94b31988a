"""Hecke operators (integral T_p, T_n; half-integral T_{p^2}), eigen tests, decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chars import RealChar, char_eval, kronecker
from .hecke_constants import TP2_SIGN_VARIANT
from .qseries import (Coeff, FieldElem, PrecisionError, Series24, op_U, op_V,
                      series_add, _rat)


@dataclass(frozen=True)
class HeckeContext:
    weight2: int
    character: RealChar = RealChar()
    variant: str | None = None   # None (integral), "mod24", or "mod8"

    def __post_init__(self):
        half = self.weight2 % 2 == 1
        if half and self.variant not in ("mod24", "mod8"):
            raise ValueError("half-integral weight needs variant 'mod24' or 'mod8'")
        if not half and self.variant is not None:
            raise ValueError("integral weight takes no grid variant")

    @property
    def k(self) -> int:
        return self.weight2 // 2


def _integral(ctx: HeckeContext):
    if ctx.weight2 % 2:
        raise ValueError("integral-weight Hecke operator applied with a half-integral context")


def hecke_Tp_int(f: Series24, ctx: HeckeContext, p: int) -> Series24:
    """f|T_p = f|U_p + chi(p) p^(k-1) f|V_p on the integer grid."""
    _integral(ctx)
    u = op_U(f, p, stride=24)
    c = char_eval(ctx.character, p) * p ** (ctx.k - 1)
    v = op_V(f, p).truncate(u.prec)
    return series_add(u, v.scale(c)) if c else u


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def hecke_Tn_int(f: Series24, ctx: HeckeContext, n: int) -> Series24:
    """Coefficient m of f|T_n is sum_{d | (m, n)} chi(d) d^(k-1) a(mn/d^2)."""
    _integral(ctx)
    if n == 1:
        return f
    count = -(-f.prec // 24)
    m_max = (count - 1) // n   # need a(m n) below prec
    out = {}
    for m in range(m_max + 1):
        acc = 0
        for d in _divisors(n):
            if m % d:
                continue
            x = char_eval(ctx.character, d)
            if x:
                a = f.coeff(24 * (m * n // (d * d)))
                if a:
                    acc += x * d ** (ctx.k - 1) * a
        if acc != 0:
            out[24 * m] = acc
    return Series24(out, 24 * (m_max + 1), 24)


def tp2_middle_sign(n_red: int, k: int, p: int, variant: str = TP2_SIGN_VARIANT) -> int:
    """The (+-n/p) factor of the middle T_{p^2} term under a sign convention.

    "class_sign":  ((-1)^((n_red-1)/2) n_red / p)
    "kappa_sign":  ((-1)^k n_red / p)
    "no_sign":     (n_red / p)
    """
    if variant == "class_sign":
        s = -1 if (n_red % 4) == 3 else 1
    elif variant == "kappa_sign":
        s = -1 if k % 2 else 1
    elif variant == "no_sign":
        s = 1
    else:
        raise ValueError(f"unknown sign variant {variant!r}")
    return kronecker(s * n_red, p)


def hecke_Tp2_half(f: Series24, ctx: HeckeContext, p: int,
                   sign_variant: str = TP2_SIGN_VARIANT) -> Series24:
    """T_{p^2} on an eta-multiplier form of weight k + 1/2.

    b(n) = a(p^2 n) + chi(p) eps(p) (+-n/p) p^(k-1) a(n) + chi(p^2) p^(2k-1) a(n/p^2),
    eps = (12/.) on the 1/24 grid and (-4/.) on the 1/8 grid (indices 3n).
    """
    if ctx.weight2 % 2 == 0:
        raise ValueError("T_{p^2} needs a half-integral context")
    if ctx.variant == "mod24":
        if p < 5:
            raise ValueError("T_{p^2} on the 1/24 grid needs p >= 5")
        unit, eps = 1, kronecker(12, p)
    else:
        if p < 3:
            raise ValueError("T_{p^2} on the 1/8 grid needs p >= 3")
        unit, eps = 3, kronecker(-4, p)
    k = ctx.k
    chi_p = char_eval(ctx.character, p)
    chi_p2 = char_eval(ctx.character, p * p)
    pp = p * p
    mid = chi_p * eps * p ** (k - 1)
    last = chi_p2 * p ** (2 * k - 1)
    prec = -(-f.prec // pp)
    out = {}
    for n in range(0, prec, unit):
        nr = n // unit
        acc = f.coeff(pp * n)
        a = f._c.get(n)
        if a is not None and mid:
            acc += tp2_middle_sign(nr, k, p, sign_variant) * mid * a
        if last and nr % pp == 0:
            b = f._c.get(n // pp)
            if b is not None:
                acc += last * b
        if acc != 0:
            out[n] = acc
    return Series24(out, prec, 1)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: list | None
    violation: int | None = None

    @property
    def is_eigen(self) -> bool:
        return self.eigenvalues is not None


def is_eigen_upto(f: Series24, results: list) -> EigenResult:
    """Eigenvalues lambda_i with results[i] = lambda_i f below the common prec."""
    if f.is_zero():
        raise ValueError("the zero series has no eigenvalue")
    lams = []
    for g in results:
        bound = min(f.prec, g.prec)
        lead = f.valuation()
        if lead >= bound:
            raise PrecisionError("not enough precision to see the leading coefficient")
        lam = _div(g.coeff(lead), f.coeff(lead))
        bad = f.scale(lam).first_mismatch(g, bound)
        if bad is not None:
            return EigenResult(None, bad)
        lams.append(lam)
    return EigenResult(lams)


def _div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, FieldElem) or isinstance(b, FieldElem):
        return a / b if isinstance(a, FieldElem) else FieldElem(a) / b
    return _rat(Fraction(a) / b)


class DecompositionError(ValueError):
    """Singular basis rows, or target outside the span of the basis."""


def decompose_in_basis(target: Series24, basis: list) -> list:
    """Exact alpha with target = sum alpha_i basis_i below the common precision."""
    if not basis:
        raise DecompositionError("empty basis")
    bound = min([target.prec] + [b.prec for b in basis])
    indices = sorted({n for b in basis for n in b.support() if n < bound})
    m = len(basis)
    # scan upward for rows making the basis matrix nonsingular
    pivots: list = []   # fully reduced rows as (row, rhs, pivot column)
    for n in indices:
        row = [b.coeff(n) for b in basis]
        val = target.coeff(n)
        for (prow, prhs, col) in pivots:
            c = row[col]
            if c != 0:
                row = [x - c * y for x, y in zip(row, prow)]
                val = val - c * prhs
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            continue
        inv = _div(1, row[col])
        row = [x * inv for x in row]
        val = val * inv
        # keep earlier pivots reduced in this column
        new = []
        for (prow, prhs, pcol) in pivots:
            c = prow[col]
            if c != 0:
                prow = [x - c * y for x, y in zip(prow, row)]
                prhs = prhs - c * val
            new.append((prow, prhs, pcol))
        pivots = new + [(row, val, col)]
        if len(pivots) == m:
            break
    if len(pivots) < m:
        raise DecompositionError(f"basis rows are singular below index {bound}")
    alpha = [0] * m
    for prow, prhs, col in pivots:
        alpha[col] = _normal(prhs)
    recon = None
    for a, b in zip(alpha, basis):
        term = b.scale(a)
        recon = term if recon is None else series_add(recon, term)
    bad = recon.first_mismatch(target, bound)
    if bad is not None:
        raise DecompositionError(f"target is outside the span (residual at index {bad})")
    return alpha


def _normal(x: Coeff) -> Coeff:
    if isinstance(x, FieldElem) and x.b == 0:
        return x.a
    if isinstance(x, Fraction):
        return _rat(x)
    return x
