"""Shimura lifts: Sh_t (theta multiplier) and S_t (eta multiplier, 1/24 and 1/8 grids)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Union

from .chars import RealChar, char_eval, kronecker
from .forms.eta import EtaQuotient, eta_quotient_series
from .hecke import decompose_in_basis
from .qseries import (CoefficientView, Series24, lazy_U, lazy_product, op_theta, op_twist,
                      op_U, op_V, series_mul, series_sum)

Source = Union[Series24, CoefficientView]
VARIANTS = ("theta", "eta24", "eta8")


class ResidueClassError(ValueError):
    """Input coefficients lie outside the residue class the lift formula assumes."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class LiftSpec:
    t: int
    kappa: int
    chi: RealChar = RealChar()
    variant: str = "eta24"

    def __post_init__(self):
        if not is_squarefree(self.t):
            raise ValueError(f"t = {self.t} is not square-free")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown lift variant {self.variant!r}")

    @property
    def unit(self) -> int:
        """Grid indices per unit exponent of the input (24, 1, or 3)."""
        return {"theta": 24, "eta24": 1, "eta8": 3}[self.variant]


def _divisor_lists(n_max: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(n_max + 1)]
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            divs[m].append(d)
    return divs


def _n_max(prec: int, unit: int, t: int) -> int:
    # largest n with unit * t * n^2 < prec
    if prec <= 0:
        return 0
    n = isqrt((prec - 1) // (unit * t)) if prec - 1 >= unit * t else 0
    return n


def _check_class(f: Source, spec: LiftSpec):
    if not isinstance(f, Series24) or f.is_zero():
        return
    if spec.variant == "eta24":
        classes = {n % 24 for n in f.support()}
        if len(classes) > 1 or classes.pop() % 2 == 0:
            raise ResidueClassError("eta24 lift needs support in one odd class mod 24")
    elif spec.variant == "eta8":
        if any(n % 3 for n in f.support()):
            raise ResidueClassError("eta8 lift needs indices divisible by 3")
        classes = {(n // 3) % 8 for n in f.support()}
        if len(classes) > 1 or classes.pop() % 2 == 0:
            raise ResidueClassError("eta8 lift needs support in one odd class mod 8")
    else:
        if any(n % 24 for n in f.support()):
            raise ResidueClassError("theta lift needs an integer-grid input")


def _lift(f: Source, spec: LiftSpec, weight_of_d: Callable[[int], int],
          outer: Callable[[int], int] | None) -> Series24:
    if spec.kappa < 2:
        warnings.warn(f"lift with kappa = {spec.kappa} < 2 is outside the supported range",
                      stacklevel=3)
    _check_class(f, spec)
    t, k, unit = spec.t, spec.kappa, spec.unit
    n_max = _n_max(f.prec, unit, t)
    divs = _divisor_lists(n_max)
    out = {}
    for n in range(1, n_max + 1):
        acc = 0
        for d in divs[n]:
            m = n // d
            w = weight_of_d(d)
            if not w:
                continue
            if outer is not None:
                w *= outer(m)
                if not w:
                    continue
            a = f.coeff(unit * t * m * m)
            if a:
                acc += w * d ** (k - 1) * a
        if acc != 0:
            out[24 * n] = acc
    return Series24(out, 24 * (n_max + 1), 24)


def s_eta(f: Source, spec: LiftSpec) -> Series24:
    """S_t on the eta-multiplier grids.

    B_t(n) = sum_{d | n} chi(d) (d/t) eps(n/d) d^(k-1) a(t n^2 / d^2) with
    eps = (12/.) for eta24 and (-4/.) for eta8 (input read at index 3 m).
    """
    if spec.variant not in ("eta24", "eta8"):
        raise ValueError("s_eta needs variant eta24 or eta8")
    eps_top = 12 if spec.variant == "eta24" else -4
    chi, t = spec.chi, spec.t

    def w(d):
        return char_eval(chi, d) * kronecker(d, t)

    return _lift(f, spec, w, lambda m: kronecker(eps_top, m))


def sh_theta(f: Source, spec: LiftSpec) -> Series24:
    """Sh_t on integer-grid input: A_t(n) = sum chi(d)(-1/d)^k (t/d) d^(k-1) a(t n^2/d^2)."""
    if spec.variant != "theta":
        raise ValueError("sh_theta needs variant theta")
    chi, t, k = spec.chi, spec.t, spec.kappa

    def w(d):
        return char_eval(chi, d) * kronecker(-4, d) ** k * kronecker(t, d)

    return _lift(f, spec, w, None)


# ---- the S_r(eta^r f) and S_r(eta^{3r} f) pipelines ----------------------------------

FormFactory = Callable[[int], Series24]


@dataclass
class PipelineReport:
    direct: Series24 | None
    eigen: Series24 | None
    alphas: list | None
    agree_bound: int | None
    mismatch: int | None

    @property
    def agree(self) -> bool:
        return self.mismatch is None


def _pipeline_params(r: int, s: int, mode: str) -> tuple[int, int, str, int]:
    if mode == "eta_r":
        if r not in (1, 5, 7, 11, 13, 17, 19, 23):
            raise ValueError(f"mode eta_r needs r coprime to 6 in 1..23, got {r}")
        return r, (r - 1) // 2 + s, "eta24", 1
    if mode == "eta_3r":
        if r not in (1, 3, 5, 7):
            raise ValueError(f"mode eta_3r needs r in (1, 3, 5, 7), got {r}")
        return 3 * r, (3 * r - 1) // 2 + s, "eta8", 3
    raise ValueError(f"unknown mode {mode!r}")


def _as_factory(f) -> FormFactory:
    if isinstance(f, Series24):
        return lambda prec: f
    return f


def pipeline_direct(r: int, f, s: int, mode: str, n_out: int) -> Series24:
    """S_1((eta^e f) | U_r) with e = r or 3r, first n_out integer coefficients."""
    e, kappa, variant, unit = _pipeline_params(r, s, mode)
    chi = RealChar.legendre_bottom(r) if r > 1 else RealChar()
    need = unit * r * (n_out - 1) ** 2 + 1
    g = _as_factory(f)(need)
    eta_e = eta_quotient_series(EtaQuotient.of((1, e)), need)
    product = lazy_product(eta_e, g)
    view = lazy_U(product, r, unit)
    return s_eta(view, LiftSpec(1, kappa, chi, variant))


def eigen_G(g: Series24, mode: str) -> Series24:
    """g(z)g(6z) - g(2z)g(3z) (eta_r) or g(2z)Theta(g) - g Theta(g(2z)) (eta_3r)."""
    if mode == "eta_r":
        return series_mul(g, op_V(g, 6)) - series_mul(op_V(g, 2), op_V(g, 3))
    g2 = op_V(g, 2)
    return series_mul(g2, op_theta(g)) - series_mul(g, op_theta(g2))


def pipeline_target(r: int, f, s: int, mode: str, n_coeffs: int) -> Series24:
    """(eta^e(z)/eta^(e/r)(rz) f) | U_r on the integer grid."""
    e, _, _, _ = _pipeline_params(r, s, mode)
    quotient = EtaQuotient.of((1, e), (r, -(e // r)))
    need = 24 * r * n_coeffs
    g = _as_factory(f)(need)
    prod = series_mul(eta_quotient_series(quotient, need), g)
    return op_U(prod, r, stride=24)


def pipeline_eigen(r: int, f, s: int, mode: str, n_out: int,
                   basis: Callable[[int], list]) -> tuple[Series24, list]:
    n_dec = max(n_out, 30)
    target = pipeline_target(r, f, s, mode, n_dec)
    gs = list(basis(24 * n_dec))
    alphas = decompose_in_basis(target, gs)
    terms = [eigen_G(g.truncate(24 * n_out), mode).scale(a)
             for a, g in zip(alphas, gs) if a != 0]
    if not terms:
        return Series24.zero(24 * n_out, 24), alphas
    return series_sum(terms).truncate(24 * n_out), alphas


def s_r_pipeline(r: int, f, s: int, mode: str, path: str = "both", prec: int = 2400,
                 basis: Callable[[int], list] | None = None) -> PipelineReport:
    """Run S_r(eta^r f) (mode eta_r) or S_r(eta^{3r} f) (mode eta_3r).

    `f` is an integer-grid form of weight s, given as a Series24 or as a
    function prec -> Series24; `basis` maps a precision to eigenforms g_i.
    `prec` is the output grid bound (24 per integer coefficient).
    """
    n_out = max(-(-prec // 24), 1)
    direct = eigen = alphas = None
    if path in ("direct", "both"):
        direct = pipeline_direct(r, f, s, mode, n_out)
    if path in ("eigenbasis", "both"):
        if basis is None:
            raise ValueError("the eigenbasis path needs a basis")
        eigen, alphas = pipeline_eigen(r, f, s, mode, n_out, basis)
    if direct is not None and eigen is not None:
        bound = min(direct.prec, eigen.prec)
        bad = direct.first_mismatch(eigen, bound)
        return PipelineReport(direct, eigen, alphas, bound if bad is None else bad, bad)
    return PipelineReport(direct, eigen, alphas, None, None)


# ---- Sh_t(f(24z)) = S_t(f) (x) (12/.) and its 1/8-grid analogue ----------------------

@dataclass
class RelationReport:
    bound: int
    mismatch: int | None
    lhs: Series24
    rhs: Series24

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def lift_relation_check(f: Series24, spec: LiftSpec) -> RelationReport:
    """Compare Sh_t(f(Dz)) with S_t(f) twisted by (12/.) (D = 24) or (-4/.) (D = 8)."""
    t, k = spec.t, spec.kappa
    if spec.variant == "eta24":
        dil, eps = 24, RealChar.kron(12)
        chi_theta = spec.chi * RealChar.kron(12)
        power = k + (t - 1) // 2
    elif spec.variant == "eta8":
        dil, eps = 8, RealChar.kron(-4)
        chi_theta = spec.chi
        power = 1 + k + (t - 1) // 2
    else:
        raise ValueError("lift_relation_check needs an eta variant")
    if power % 2:
        chi_theta = chi_theta * RealChar.kron(-4)
    lhs = sh_theta(op_V(f, dil), LiftSpec(t, k, chi_theta, "theta"))
    rhs = op_twist(s_eta(f, spec), eps, 24)
    bound = min(lhs.prec, rhs.prec)
    return RelationReport(bound, lhs.first_mismatch(rhs, bound), lhs, rhs)
