"""Regression for the frozen T_{p^2} sign convention on eta-multiplier forms.

Each candidate placement of the sign in the middle term is run through the
commutation S_t(f | T_{p^2}) = eps(p) S_t(f) | T_p on inputs from both grids;
exactly one candidate survives, and it must be the frozen constant.
"""

from functools import lru_cache

import pytest

from qlift.chars import RealChar, kronecker
from qlift.forms import E_classical, EtaQuotient, delta, eta_quotient_series
from qlift.hecke import HeckeContext, hecke_Tp2_half, hecke_Tp_int
from qlift.hecke_constants import TP2_SIGN_VARIANT, TP2_SIGN_VARIANTS
from qlift.qseries import op_U, series_mul
from qlift.shimura import LiftSpec, s_eta

PREC = 24 * 400


@lru_cache(maxsize=None)
def _input(name: str):
    """(series, weight2, character, grid, t)"""
    eta = lambda e, p=PREC: eta_quotient_series(EtaQuotient.of((1, e)), p)
    if name == "eta*delta":
        return series_mul(eta(1), delta(PREC)), 25, RealChar(), "mod24", 1
    if name == "eta^7*E4":
        return series_mul(eta(7), E_classical(4, PREC)), 15, RealChar(), "mod24", 7
    if name == "(eta^7*E4)|U7":
        big = series_mul(eta(7, 7 * PREC), E_classical(4, 7 * PREC))
        return op_U(big, 7), 15, RealChar.legendre_bottom(7), "mod24", 1
    if name == "eta^3*delta":
        return series_mul(eta(3), delta(PREC)), 27, RealChar(), "mod8", 1
    if name == "eta^9*E4":
        return series_mul(eta(9), E_classical(4, PREC)), 17, RealChar(), "mod8", 3
    raise KeyError(name)


def _failures(name: str, variant: str) -> list:
    f, w2, chi, grid, t = _input(name)
    k = w2 // 2
    lift = "eta24" if grid == "mod24" else "eta8"
    eps = 12 if grid == "mod24" else -4
    primes = (5, 7, 11, 13) if grid == "mod24" else (3, 5, 7)
    bad = []
    for p in primes:
        if chi(p) == 0:
            continue
        spec = LiftSpec(t, k, chi, lift)
        lhs = s_eta(hecke_Tp2_half(f, HeckeContext(w2, chi, grid), p, variant), spec)
        base = s_eta(f, spec)
        assert not base.is_zero()
        rhs = hecke_Tp_int(base, HeckeContext(4 * k, chi * chi), p).scale(kronecker(eps, p))
        if lhs.first_mismatch(rhs) is not None:
            bad.append(p)
    return bad


EXPECTED = {
    # name: primes failing under (class_sign, kappa_sign, no_sign)
    "eta*delta": ([], [], []),
    "eta^7*E4": ([], [], [11]),
    "(eta^7*E4)|U7": ([], [11], []),
    "eta^3*delta": ([], [3, 7], []),
    "eta^9*E4": ([], [7], [7]),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_sign_variants_per_input(name):
    got = tuple(_failures(name, v) for v in TP2_SIGN_VARIANTS)
    assert got == EXPECTED[name]


def test_unique_survivor_is_frozen():
    survivors = [v for v in TP2_SIGN_VARIANTS if not any(_failures(n, v) for n in EXPECTED)]
    assert survivors == [TP2_SIGN_VARIANT] == ["class_sign"]
