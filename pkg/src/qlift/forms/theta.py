"""Theta series sum chi(n) n^nu q^(n^2/D) that are eta-quotients (or short combinations)."""

from __future__ import annotations

from dataclasses import dataclass

from ..chars import RealChar, char_eval
from ..qseries import Series24, series_sum
from .eta import EtaQuotient, eta_quotient_series


@dataclass(frozen=True)
class ThetaEntry:
    name: str
    D: int
    chi: RealChar
    nu: int
    N: int
    psi: RealChar
    r: int
    eta_quotient: EtaQuotient | None = None
    # sum of coefficient * eta-quotient, for rows that are not a single quotient
    combination: tuple = ()

    @property
    def weight2(self) -> int:
        return 1 + 2 * self.nu


def _q(*pairs) -> EtaQuotient:
    return EtaQuotient(tuple(pairs))


K = RealChar.kron
IND = RealChar.indicator

THETA_EVEN = (
    ThetaEntry("theta:even:1", 8, IND(2), 0, 8, K(-4), 3, _q((1, -1), (2, 2))),
    ThetaEntry("theta:even:2", 8, K(8), 0, 32, K(-8), 3, _q((1, 1), (2, -1), (4, 1))),
    ThetaEntry("theta:even:3", 24, K(12), 0, 1, RealChar(), 1, _q((1, 1))),
    ThetaEntry("theta:even:4", 24, K(24), 0, 32, K(8), 1, _q((1, -1), (2, 3), (4, -1))),
    ThetaEntry("theta:even:5", 24, IND(6), 0, 144, K(12), 1,
               _q((1, -1), (2, 1), (3, 2), (6, -1))),
    ThetaEntry("theta:even:6", 24, K(8) * IND(3), 0, 288, K(24), 1,
               _q((1, 1), (2, -2), (3, -2), (4, 1), (6, 5), (12, -2))),
)

_X = _q((1, -3), (2, 9), (4, -3))

THETA_ODD = (
    ThetaEntry("theta:odd:1", 8, K(-4), 1, 1, RealChar(), 3, _q((1, 3))),
    ThetaEntry("theta:odd:2", 8, K(-8), 1, 32, K(8), 3, _X),
    ThetaEntry("theta:odd:3", 24, K(-3) * IND(2), 1, 8, K(-4), 1, _q((1, 5), (2, -2))),
    ThetaEntry("theta:odd:4", 24, K(-24), 1, 32, K(-8), 1, _q((1, -5), (2, 13), (4, -5))),
    ThetaEntry("theta:odd:5", 8, K(-4) * IND(3), 1, 9, RealChar(), 3,
               combination=((1, _q((1, 3))), (3, _q((9, 3))))),
    ThetaEntry("theta:odd:6", 8, K(-8) * IND(3), 1, 288, K(8), 3,
               combination=((1, _X), (-3, _X.dilate(9)))),
)

THETA_TABLE = {e.name: e for e in THETA_EVEN + THETA_ODD}


def theta_series_build(entry: ThetaEntry, prec: int) -> Series24:
    """sum_{n >= 1} chi(n) n^nu q^(n^2/D) on the universal grid (index (24/D) n^2)."""
    if entry.D not in (8, 24):
        raise ValueError(f"unsupported denominator {entry.D}")
    step = 24 // entry.D
    c = {}
    n = 1
    while step * n * n < prec:
        v = char_eval(entry.chi, n)
        if v:
            c[step * n * n] = v * n ** entry.nu
        n += 1
    return Series24(c, prec, 1)


def theta_eta_side(entry: ThetaEntry, prec: int) -> Series24:
    """The eta-quotient (or eta-product combination) claimed to equal the theta series."""
    if entry.eta_quotient is not None:
        return eta_quotient_series(entry.eta_quotient, prec)
    return series_sum(eta_quotient_series(e, prec).scale(c) for c, e in entry.combination)
