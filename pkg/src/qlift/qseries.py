"""Exact truncated q-series on the q^(1/24) grid.

A series stores sparse coefficients a(n) of q^(n/24) for 0 <= n < prec.  Forms
on the q^(1/8) grid use indices 3n; integer-weight forms use indices 24n.
Coefficients are ints, Fractions, or FieldElem values in one quadratic field.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Union

from .chars import RealChar, char_eval


class DiscMismatch(ValueError):
    """Coefficients from two different quadratic fields were combined."""


class PrecisionError(ValueError):
    """A coefficient at or beyond the trusted bound was requested."""


class StrideError(ValueError):
    """An index is not divisible by the stride an operation requires."""


class NegativeValuation(ValueError):
    """A quotient would need negative powers of q."""


def _rat(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@lru_cache(maxsize=None)
def _squarefree(d: int) -> bool:
    d = abs(d)
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


class FieldElem:
    """a + b*sqrt(disc) with rational a, b.  disc = 0 means a plain rational."""

    __slots__ = ("a", "b", "disc")

    def __init__(self, a=0, b=0, disc: int = 0):
        if disc == 0 and b != 0:
            raise ValueError("b must vanish when disc = 0")
        if disc != 0 and (disc == 1 or not _squarefree(disc)):
            raise ValueError(f"disc must be square-free and not 1, got {disc}")
        self.a = _rat(Fraction(a)) if not isinstance(a, int) else a
        self.b = _rat(Fraction(b)) if not isinstance(b, int) else b
        self.disc = disc

    @staticmethod
    def _split(x, disc):
        if isinstance(x, FieldElem):
            if x.disc and disc and x.disc != disc:
                raise DiscMismatch(f"sqrt({x.disc}) vs sqrt({disc})")
            return x.a, x.b, x.disc or disc
        if isinstance(x, (int, Fraction)):
            return x, 0, disc
        raise TypeError(f"cannot combine FieldElem with {type(x).__name__}")

    def __add__(self, other):
        try:
            a, b, d = self._split(other, self.disc)
        except TypeError:
            return NotImplemented
        return FieldElem(self.a + a, self.b + b, d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.a, -self.b, self.disc)

    def __sub__(self, other):
        try:
            a, b, d = self._split(other, self.disc)
        except TypeError:
            return NotImplemented
        return FieldElem(self.a - a, self.b - b, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b, d = self._split(other, self.disc)
        except TypeError:
            return NotImplemented
        return FieldElem(self.a * a + d * self.b * b, self.a * b + self.b * a, d)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("FieldElem inverse of zero")
        return FieldElem(Fraction(self.a) / norm, -Fraction(self.b) / norm, self.disc)

    def __truediv__(self, other):
        if isinstance(other, FieldElem):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return FieldElem(Fraction(self.a) / other, Fraction(self.b) / other, self.disc)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = FieldElem(1, 0, self.disc)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def norm(self):
        return self.a * self.a - self.disc * self.b * self.b

    def conj(self) -> FieldElem:
        return FieldElem(self.a, -self.b, self.disc)

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.disc == other.disc
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.disc))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __complex__(self):
        root = cmath.sqrt(self.disc) if self.disc else 0
        return complex(float(self.a)) + float(self.b) * root

    def __repr__(self):
        return f"FieldElem({self.a!s}, {self.b!s}, {self.disc})"

    def __str__(self):
        return format_coeff(self)


Coeff = Union[int, Fraction, FieldElem]


def format_coeff(c: Coeff) -> str:
    if isinstance(c, FieldElem):
        if c.b == 0:
            return str(c.a)
        return f"{c.a} + {c.b}*sqrt({c.disc})"
    return str(c)


def parse_coeff(text: str, disc: int = 0) -> Coeff:
    text = text.strip()
    if "sqrt(" in text:
        head, _, tail = text.partition(" + ")
        b_text, _, rest = tail.partition("*sqrt(")
        d = int(rest.rstrip(")"))
        return FieldElem(Fraction(head), Fraction(b_text), d)
    return _rat(Fraction(text))


def coeff_disc(c: Coeff) -> int:
    return c.disc if isinstance(c, FieldElem) and c.b != 0 else 0


def conj_coeff(c: Coeff) -> Coeff:
    return c.conj() if isinstance(c, FieldElem) else c


def _join_disc(d1: int, d2: int) -> int:
    if d1 and d2 and d1 != d2:
        raise DiscMismatch(f"sqrt({d1}) vs sqrt({d2})")
    return d1 or d2


class Series24:
    """Immutable truncated series sum_{0 <= n < prec} a(n) q^(n/24)."""

    __slots__ = ("_c", "prec", "stride", "disc")

    def __init__(self, coeffs: dict | None = None, prec: int = 0, stride: int = 1,
                 disc: int = 0):
        if prec < 0:
            raise ValueError("negative precision")
        if stride < 1:
            raise ValueError("stride must be positive")
        c = {}
        for n, v in (coeffs or {}).items():
            if n < 0:
                raise NegativeValuation(f"negative grid index {n}")
            if n < prec and v != 0:
                c[n] = v
                disc = _join_disc(disc, coeff_disc(v))
        if c and stride > 1:
            base = next(iter(c)) % stride
            if any(n % stride != base for n in c):
                raise StrideError(f"indices are not congruent mod {stride}")
        self._c = c
        self.prec = prec
        self.stride = stride
        self.disc = disc

    @classmethod
    def _raw(cls, c: dict, prec: int, stride: int, disc: int) -> Series24:
        # trusted fast path: c has no zeros and no index >= prec
        s = object.__new__(cls)
        s._c = c
        s.prec = prec
        s.stride = stride
        s.disc = disc
        return s

    @classmethod
    def zero(cls, prec: int, stride: int = 1) -> Series24:
        return cls._raw({}, prec, stride, 0)

    @classmethod
    def constant(cls, c: Coeff, prec: int, stride: int = 24) -> Series24:
        return cls({0: c}, prec, stride)

    @classmethod
    def monomial(cls, index: int, c: Coeff, prec: int) -> Series24:
        return cls({index: c}, prec)

    @classmethod
    def from_integer_coeffs(cls, coeffs: Iterable[Coeff], prec: int | None = None) -> Series24:
        """Integer-grid series with a(m) = coeffs[m]."""
        cs = list(coeffs)
        p = 24 * len(cs) if prec is None else prec
        return cls({24 * m: v for m, v in enumerate(cs)}, p, 24)

    def coeff(self, n: int) -> Coeff:
        if n >= self.prec:
            raise PrecisionError(f"index {n} is at or beyond prec {self.prec}")
        return self._c.get(n, 0)

    def __getitem__(self, n: int) -> Coeff:
        return self.coeff(n)

    def int_coeff(self, m: int) -> Coeff:
        """Coefficient of q^m on the integer grid."""
        return self.coeff(24 * m)

    def int_coeffs(self, count: int | None = None) -> list:
        if count is None:
            count = -(-self.prec // 24)
        return [self.coeff(24 * m) for m in range(count)]

    def items(self) -> list:
        return sorted(self._c.items())

    def support(self) -> list[int]:
        return sorted(self._c)

    def valuation(self) -> int:
        """Least nonzero index; the prec itself for a zero series."""
        return min(self._c) if self._c else self.prec

    def is_zero(self) -> bool:
        return not self._c

    def __len__(self):
        return len(self._c)

    def truncate(self, prec: int) -> Series24:
        if prec >= self.prec:
            return self
        return Series24._raw({n: v for n, v in self._c.items() if n < prec}, prec,
                             self.stride, self.disc)

    def shift(self, k: int) -> Series24:
        """Multiply by q^(k/24); k may be negative if no index drops below zero."""
        c = {}
        for n, v in self._c.items():
            if n + k < 0:
                raise NegativeValuation(f"shift by {k} leaves index {n + k}")
            c[n + k] = v
        return Series24._raw(c, max(self.prec + k, 0), self.stride, self.disc)

    def map_coeffs(self, fn: Callable[[int, Coeff], Coeff]) -> Series24:
        return Series24({n: fn(n, v) for n, v in self._c.items()}, self.prec, self.stride)

    def conj(self) -> Series24:
        return Series24._raw({n: conj_coeff(v) for n, v in self._c.items()}, self.prec,
                             self.stride, self.disc)

    def scale(self, c: Coeff) -> Series24:
        if c == 0:
            return Series24._raw({}, self.prec, self.stride, 0)
        c = _rat(c)
        return Series24({n: _rat(v * c) for n, v in self._c.items()}, self.prec, self.stride,
                        _join_disc(self.disc, coeff_disc(c)))

    def __add__(self, other):
        if isinstance(other, Series24):
            return series_add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Series24):
            return series_add(self, other.scale(-1))
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, Series24):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Series24):
            return NotImplemented
        return self.prec == other.prec and self._c == other._c

    def __hash__(self):
        return hash((self.prec, frozenset(self._c.items())))

    def first_mismatch(self, other: Series24, bound: int | None = None) -> int | None:
        """First index below the common trusted bound where the two series differ."""
        b = min(self.prec, other.prec)
        if bound is not None:
            b = min(b, bound)
        bad = [n for n in set(self._c) | set(other._c)
               if n < b and self._c.get(n, 0) != other._c.get(n, 0)]
        return min(bad) if bad else None

    def dump(self) -> str:
        lines = [f"prec={self.prec} stride={self.stride} disc={self.disc}"]
        for n, v in self.items():
            lines.append(f"{n}/24\t{format_coeff(v)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_dump(cls, text: str) -> Series24:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = dict(part.split("=") for part in lines[0].split())
        c = {}
        for ln in lines[1:]:
            idx, val = ln.split("\t")
            c[int(idx.split("/")[0])] = parse_coeff(val)
        return cls(c, int(header["prec"]), int(header["stride"]), int(header["disc"]))

    def __repr__(self):
        head = ", ".join(f"{n}:{format_coeff(v)}" for n, v in self.items()[:6])
        more = ", ..." if len(self._c) > 6 else ""
        return f"Series24({{{head}{more}}}, prec={self.prec})"


def _stride_join(s1: int, v1: int | None, s2: int, v2: int | None) -> int:
    if v1 is None:
        return s2
    if v2 is None:
        return s1
    return gcd(gcd(s1, s2), abs(v1 - v2)) or gcd(s1, s2)


def series_add(f: Series24, g: Series24) -> Series24:
    disc = _join_disc(f.disc, g.disc)
    prec = min(f.prec, g.prec)
    c = {n: v for n, v in f._c.items() if n < prec}
    for n, v in g._c.items():
        if n < prec:
            w = c.get(n, 0) + v
            if w == 0:
                c.pop(n, None)
            else:
                c[n] = w
    stride = _stride_join(f.stride, min(f._c) if f._c else None,
                          g.stride, min(g._c) if g._c else None)
    return Series24(c, prec, stride, disc)


def series_sum(terms: Iterable[Series24]) -> Series24:
    out = None
    for t in terms:
        out = t if out is None else series_add(out, t)
    if out is None:
        raise ValueError("empty sum")
    return out


def mul_prec(f: Series24, g: Series24) -> int:
    return min(f.prec + g.valuation(), g.prec + f.valuation())


def series_mul(f: Series24, g: Series24) -> Series24:
    disc = _join_disc(f.disc, g.disc)
    prec = mul_prec(f, g)
    a = f.items()
    b = g.items()
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for i, x in a:
        lim = prec - i
        for j, y in b:
            if j >= lim:
                break
            k = i + j
            out[k] = get(k, 0) + x * y
    out = {k: _rat(v) for k, v in out.items() if v != 0}
    return Series24._raw(out, prec, gcd(f.stride, g.stride), disc)


def _unit_part(f: Series24) -> tuple[int, int, list]:
    """(valuation, stride, dense coefficients of f / q^(val/24) in steps of stride)."""
    v = f.valuation()
    s = f.stride
    # the unit part only has indices that are multiples of s
    length = -(-(f.prec - v) // s)
    dense = [0] * max(length, 0)
    for n, c in f._c.items():
        dense[(n - v) // s] = c
    return v, s, dense


def _from_dense(dense: list, v: int, s: int, prec: int, disc: int) -> Series24:
    c = {v + s * j: x for j, x in enumerate(dense) if x != 0 and v + s * j < prec}
    return Series24._raw(c, prec, s, disc)


def series_inv(f: Series24, target_prec: int | None = None) -> Series24:
    """1/f for a series with nonzero constant term."""
    if f.is_zero():
        raise ZeroDivisionError("inverse of the zero series")
    v, s, dense = _unit_part(f)
    if v != 0:
        raise NegativeValuation("inverse of a series with positive valuation")
    prec = f.prec if target_prec is None else min(target_prec, f.prec)
    n_terms = -(-prec // s)
    inv0 = dense[0].inverse() if isinstance(dense[0], FieldElem) else Fraction(1, 1) / dense[0]
    inv0 = _rat(inv0)
    sparse = [(j, x) for j, x in enumerate(dense[:n_terms]) if j and x != 0]
    out = [0] * n_terms
    out[0] = inv0
    for n in range(1, n_terms):
        acc = 0
        for j, x in sparse:
            if j > n:
                break
            acc += x * out[n - j]
        out[n] = _rat(-acc * inv0) if acc != 0 else 0
    return _from_dense(out, 0, s, prec, f.disc)


def series_div(f: Series24, g: Series24) -> Series24:
    """f/g, factoring the leading monomial of g so only a unit is inverted."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero series")
    vg = g.valuation()
    unit = g.shift(-vg)
    if f.is_zero():
        return Series24.zero(max(f.prec - vg, 0), f.stride)
    if f.valuation() < vg:
        raise NegativeValuation("quotient has negative valuation")
    need = f.prec - f.valuation()
    inv = series_inv(unit, need)
    return series_mul(f, inv).shift(-vg)


def series_pow(f: Series24, e: int) -> Series24:
    """f^e by the J.C.P. Miller recurrence on the unit part (e may be negative)."""
    if f.is_zero():
        if e <= 0:
            raise ZeroDivisionError("nonpositive power of the zero series")
        return Series24.zero(f.prec * e, f.stride)
    v, s, dense = _unit_part(f)
    if e < 0 and v > 0:
        raise NegativeValuation("negative power of a series with positive valuation")
    n_terms = len(dense)
    f0 = dense[0]
    out = [0] * n_terms
    out[0] = _rat(Fraction(f0) ** e) if not isinstance(f0, FieldElem) else f0 ** e
    inv_f0 = f0.inverse() if isinstance(f0, FieldElem) else Fraction(1, 1) / f0
    inv_f0 = _rat(inv_f0)
    sparse = [(j, x) for j, x in enumerate(dense) if j and x != 0]
    exact_int = isinstance(f0, int) and f0 in (1, -1) and all(isinstance(x, int) for _, x in sparse)
    for n in range(1, n_terms):
        acc = 0
        for j, x in sparse:
            if j > n:
                break
            w = out[n - j]
            if w:
                acc += ((e + 1) * j - n) * x * w
        if acc == 0:
            continue
        if exact_int:
            q, r = divmod(acc, n)
            out[n] = q * f0 if r == 0 else Fraction(acc, n) * f0
        else:
            out[n] = _rat(acc * inv_f0 / n) if not isinstance(acc, FieldElem) else acc * inv_f0 / n
    prec = f.prec - v + v * e
    return _from_dense(out, v * e, s, prec, f.disc)


def op_V(f: Series24, m: int) -> Series24:
    if m < 1:
        raise ValueError("V_m needs m >= 1")
    return Series24._raw({m * n: v for n, v in f._c.items()}, m * f.prec, m * f.stride, f.disc)


def _check_stride(f: Series24, stride: int):
    if stride < 1:
        raise ValueError("stride must be positive")
    if stride > 1:
        for n in f._c:
            if n % stride:
                raise StrideError(f"index {n} is not divisible by stride {stride}")


def op_U(f: Series24, m: int, stride: int = 1) -> Series24:
    """sum a(m n) q^n on the grid whose exponents are index/stride."""
    if m < 1:
        raise ValueError("U_m needs m >= 1")
    _check_stride(f, stride)
    step = m * stride
    c = {n // m: v for n, v in f._c.items() if n % step == 0}
    # outputs are multiples of stride and lie in one class mod f.stride/gcd(f.stride, m)
    s1 = f.stride // gcd(f.stride, m)
    new_stride = s1 * stride // gcd(s1, stride)
    return Series24._raw(c, -(-f.prec // m), new_stride, f.disc)


def op_twist(f: Series24, psi: RealChar, stride: int = 1) -> Series24:
    _check_stride(f, stride)
    c = {}
    for n, v in f._c.items():
        s = char_eval(psi, n // stride)
        if s:
            c[n] = v if s == 1 else -v
    return Series24._raw(c, f.prec, f.stride, f.disc)


def op_theta(f: Series24) -> Series24:
    """q d/dq: the coefficient at index n picks up the factor n/24."""
    c = {}
    for n, v in f._c.items():
        if n == 0:
            continue
        c[n] = v * (n // 24) if n % 24 == 0 else v * Fraction(n, 24)
        c[n] = _rat(c[n]) if not isinstance(c[n], FieldElem) else c[n]
    return Series24._raw(c, f.prec, f.stride, f.disc)


def op_sieve(f: Series24, a: int, b: int, stride: int = 1) -> Series24:
    _check_stride(f, stride)
    c = {n: v for n, v in f._c.items() if (n // stride - a) % b == 0}
    return Series24._raw(c, f.prec, f.stride, f.disc)


def gen_binomial(x, j: int) -> Fraction | int:
    if j < 0:
        raise ValueError("negative j")
    out = Fraction(1)
    for i in range(j):
        out *= Fraction(x) - i
    return _rat(out / math.factorial(j))


def op_rankin_cohen(f: Series24, k1, g: Series24, k2, w: int) -> Series24:
    """The w-th Rankin-Cohen bracket [f, g]_w for forms of weights k1, k2."""
    k1 = Fraction(k1)
    k2 = Fraction(k2)
    thetas_f = [f]
    thetas_g = [g]
    for _ in range(w):
        thetas_f.append(op_theta(thetas_f[-1]))
        thetas_g.append(op_theta(thetas_g[-1]))
    terms = []
    for r in range(w + 1):
        c = (-1) ** r * gen_binomial(w + k1 - 1, w - r) * gen_binomial(w + k2 - 1, r)
        terms.append(series_mul(thetas_f[r], thetas_g[w - r]).scale(c))
    return series_sum(terms)


def eval_numeric(f: Series24, z: complex, tol: float = 1e-12) -> complex:
    """Numerical value of sum a(n) e(z n / 24)."""
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    abs_q = math.exp(-2 * math.pi * z.imag)
    if abs_q ** (f.prec / 24) / (1 - abs_q) >= tol:
        raise PrecisionError(f"prec {f.prec} too small for tolerance {tol} at z = {z}")
    step = cmath.exp(2j * math.pi * z / 24)
    total = 0j
    for n, v in f.items():
        total += complex(v) * step ** n
    return total


class CoefficientView:
    """Read-only lazy coefficient source: coeff(n) for n < prec, memoised."""

    def __init__(self, fn: Callable[[int], Coeff], prec: int, disc: int = 0):
        self._fn = fn
        self._memo: dict = {}
        self.prec = prec
        self.disc = disc

    def coeff(self, n: int) -> Coeff:
        if n >= self.prec:
            raise PrecisionError(f"index {n} is at or beyond prec {self.prec}")
        if n not in self._memo:
            self._memo[n] = self._fn(n)
        return self._memo[n]


def lazy_product(f: Series24, g: Series24) -> CoefficientView:
    """Coefficients of f*g computed on demand (cheap when few are needed)."""
    prec = mul_prec(f, g)
    a = f.items()
    gc = g._c

    def fn(n):
        acc = 0
        for i, x in a:
            if i > n:
                break
            y = gc.get(n - i)
            if y is not None:
                acc += x * y
        return acc

    return CoefficientView(fn, prec, _join_disc(f.disc, g.disc))


def lazy_U(src, m: int, stride: int = 1) -> CoefficientView:
    """U_m of a coefficient source, lazily: index j reads index m*j."""

    def fn(j):
        if j % stride:
            return 0
        return src.coeff(m * j)

    return CoefficientView(fn, -(-src.prec // m), getattr(src, "disc", 0))
