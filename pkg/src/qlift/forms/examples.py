"""Bases and eigenforms for the two worked lifts S_5(eta^5 E_4) and S_3(eta^9 E_6)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..chars import RealChar
from ..qseries import FieldElem, Series24, series_sum
from .eta import EtaQuotient, eta_quotient_series


@dataclass(frozen=True)
class ExampleData:
    name: str
    r: int                  # the lift index t = r
    eta_power: int          # power of eta multiplying f (r or 3r)
    mode: str               # "eta_r" or "eta_3r"
    f_weight: int
    weight: int             # weight of the eigenforms g_i
    level: int
    character: RealChar
    disc: int
    basis: tuple            # f_0..f_3 as eta-quotients
    eigen_combos: tuple     # g_i as coefficient tuples over f_0..f_3
    alphas: tuple           # expected decomposition of the U_r target in g_1..g_4
    expansion: tuple        # a(1..5) of the lift
    lmfdb_label: str
    f_name: str = "E4"
    extra: dict = field(default_factory=dict)


def _ex1() -> ExampleData:
    d = -11
    w = FieldElem(9, -2, d)
    alpha = FieldElem(Fraction(-3 * 5 ** 4 * 103, 67), Fraction(-3 * 5 ** 4 * 3 * 283, 67 * 11), d)
    return ExampleData(
        name="ex1", r=5, eta_power=5, mode="eta_r", f_weight=4, weight=6, level=5,
        character=RealChar.legendre_bottom(5), disc=d,
        basis=(EtaQuotient.of((1, 15), (5, -3)), EtaQuotient.of((1, 9), (5, 3)),
               EtaQuotient.of((1, 3), (5, 9)), EtaQuotient.of((1, -3), (5, 15))),
        eigen_combos=((Fraction(-67, 5), -200, -625, 0),
                      (0, 1, w, 0),
                      (0, 1, w.conj(), 0),
                      (0, 1, 40, 335)),
        alphas=(Fraction(-5, 67), alpha.conj(), alpha, 0),
        expansion=(1, -32, -243, 1024, 5766),
        lmfdb_label="6.12.a.a", f_name="E4",
    )


def _ex2() -> ExampleData:
    d = -14
    w = FieldElem(15, -6, d)
    alpha3 = FieldElem(Fraction(5296914, 809), Fraction(-6348861, 809), d)
    return ExampleData(
        name="ex2", r=3, eta_power=9, mode="eta_3r", f_weight=6, weight=9, level=3,
        character=RealChar.legendre_bottom(3), disc=d,
        basis=(EtaQuotient.of((1, 27), (3, -9)), EtaQuotient.of((1, 3), (3, 15)),
               EtaQuotient.of((1, 15), (3, 3)), EtaQuotient.of((1, -9), (3, 27))),
        eigen_combos=((0, 270, 1, 7281),
                      (Fraction(809, 27), 2187, 810, 0),
                      (0, w, 1, 0),
                      (0, w.conj(), 1, 0)),
        alphas=(0, Fraction(27, 809), alpha3, alpha3.conj()),
        expansion=(1, -512, -13092, 262144, 6546750),
        lmfdb_label="2.20.a.a", f_name="E6",
    )


EXAMPLES = {"ex1": _ex1(), "ex2": _ex2()}


@lru_cache(maxsize=64)
def example_basis(name: str, prec: int) -> tuple:
    ex = EXAMPLES[name]
    return tuple(eta_quotient_series(e, prec) for e in ex.basis)


@lru_cache(maxsize=64)
def example_eigenforms(name: str, prec: int) -> tuple:
    ex = EXAMPLES[name]
    basis = example_basis(name, prec)
    out = []
    for combo in ex.eigen_combos:
        out.append(series_sum(b.scale(c) for b, c in zip(basis, combo)))
    return tuple(out)


def example_form(label: str, prec: int) -> Series24:
    """Fixture by name: "ex1.f0".."ex1.f3", "ex1.g1".."ex1.g4", same for ex2."""
    try:
        name, part = label.split(".")
        kind, idx = part[0], int(part[1:])
        if name not in EXAMPLES:
            raise KeyError(label)
        if kind == "f" and 0 <= idx <= 3:
            return example_basis(name, prec)[idx]
        if kind == "g" and 1 <= idx <= 4:
            return example_eigenforms(name, prec)[idx - 1]
    except (ValueError, IndexError):
        pass
    raise KeyError(f"unknown fixture {label!r}")


def fixtures_examples(prec: int = 24 * 40) -> dict:
    """Catalog: fixture name -> Series24, plus the example records under "data"."""
    catalog = {}
    for name in EXAMPLES:
        for i in range(4):
            catalog[f"{name}.f{i}"] = example_form(f"{name}.f{i}", prec)
        for i in range(1, 5):
            catalog[f"{name}.g{i}"] = example_form(f"{name}.g{i}", prec)
    catalog["data"] = dict(EXAMPLES)
    return catalog
