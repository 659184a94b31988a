from fractions import Fraction
from functools import partial

import pytest

from qlift.chars import RealChar
from qlift.forms import (EXAMPLES, E_classical, E_normalized, EtaQuotient, delta,
                         eta_quotient_series, example_eigenforms)
from qlift.hecke import (DecompositionError, HeckeContext, decompose_in_basis, hecke_Tn_int,
                         hecke_Tp2_half, hecke_Tp_int, is_eigen_upto, tp2_middle_sign)
from qlift.qseries import FieldElem, Series24, op_sieve, series_mul, series_sum
from qlift.shimura import pipeline_target

W12 = HeckeContext(24)


def test_delta_t2():
    d = delta(1000 * 2)
    t2 = hecke_Tp_int(d, W12, 2)
    assert t2.prec >= 1000
    assert t2 == d.truncate(t2.prec).scale(-24)


def test_e4_eigenvalue_at_3():
    e4 = E_normalized(4, 24 * 90)
    res = is_eigen_upto(e4, [hecke_Tp_int(e4, HeckeContext(8), 3)])
    assert res.eigenvalues == [28]


def test_zero_series():
    z = Series24.zero(240, 24)
    assert hecke_Tp_int(z, W12, 5).is_zero()
    assert hecke_Tp2_half(Series24.zero(240, 1), HeckeContext(25, RealChar(), "mod24"), 5).is_zero()


def test_tn_examples():
    d = delta(24 * 80)
    assert hecke_Tn_int(d, W12, 1) == d
    t4 = hecke_Tn_int(d, W12, 4)
    assert t4 == d.truncate(t4.prec).scale(-1472)
    for k in (4, 6):
        e = E_classical(k, 24 * 120)
        ctx = HeckeContext(2 * k)
        t6 = hecke_Tn_int(e, ctx, 6)
        t23 = hecke_Tp_int(hecke_Tp_int(e, ctx, 3), ctx, 2)
        assert t6.first_mismatch(t23) is None


def test_tn_composition_on_non_eigenforms():
    # T_m T_n = T_mn for coprime m, n on an arbitrary integer-grid form
    f = series_sum([delta(24 * 300), E_classical(4, 24 * 300).scale(3)])
    ctx = HeckeContext(24)
    for m, n in ((2, 3), (3, 4), (2, 5), (5, 7)):
        lhs = hecke_Tn_int(hecke_Tn_int(f, ctx, n), ctx, m)
        assert lhs.first_mismatch(hecke_Tn_int(f, ctx, m * n)) is None


def test_half_integral_context_rejected_for_integral_ops():
    with pytest.raises(ValueError):
        hecke_Tp_int(delta(240), HeckeContext(25, RealChar(), "mod24"), 5)
    with pytest.raises(ValueError):
        HeckeContext(25)
    with pytest.raises(ValueError):
        hecke_Tp2_half(delta(240), HeckeContext(25, RealChar(), "mod24"), 3)


def test_tp2_preserves_residue_class_and_commutes_with_sieve():
    prec = 24 * 200
    f = series_mul(eta_quotient_series(EtaQuotient.of((1, 1)), prec), delta(prec))
    ctx = HeckeContext(25, RealChar(), "mod24")
    for p in (5, 7):
        g = hecke_Tp2_half(f, ctx, p)
        assert {n % 24 for n in g.support()} <= {1}
        assert op_sieve(g, 1, 24) == hecke_Tp2_half(op_sieve(f, 1, 24), ctx, p)


def test_middle_sign_variants():
    assert tp2_middle_sign(3, 12, 5, "class_sign") == tp2_middle_sign(-3, 0, 5, "no_sign")
    assert tp2_middle_sign(3, 12, 5, "kappa_sign") == tp2_middle_sign(3, 0, 5, "no_sign")
    with pytest.raises(ValueError):
        tp2_middle_sign(1, 1, 5, "other")


def test_eigen_detection():
    d = delta(24 * 40)
    assert is_eigen_upto(d, [hecke_Tp_int(d, W12, 2)]).eigenvalues == [-24]
    mixed = series_sum([E_classical(4, 24 * 40), d])
    res = is_eigen_upto(mixed, [hecke_Tp_int(mixed, HeckeContext(8), 2)])
    assert not res.is_eigen and res.violation is not None
    assert is_eigen_upto(d, []).eigenvalues == []


def test_decompose_trivial():
    g = example_eigenforms("ex1", 24 * 30)
    assert decompose_in_basis(g[0], [g[0], g[1]]) == [1, 0]
    with pytest.raises(DecompositionError):
        decompose_in_basis(delta(24 * 30), [g[0], g[1]])


def _target(name, n=40):
    ex = EXAMPLES[name]
    return pipeline_target(ex.r, partial(E_classical, ex.f_weight), ex.f_weight, ex.mode, n)


def test_decompose_example1_order():
    g = list(example_eigenforms("ex1", 24 * 40))
    alphas = decompose_in_basis(_target("ex1"), g)
    alpha = FieldElem(Fraction(-3 * 5 ** 4 * 103, 67), Fraction(-3 * 5 ** 4 * 3 * 283, 67 * 11), -11)
    # alpha multiplies g_2 (the member with 9 - 2 sqrt(-11) over f_2)
    assert alphas == [Fraction(-5, 67), alpha, alpha.conj(), 0]


def test_printed_example1_assignment_does_not_recombine():
    g = list(example_eigenforms("ex1", 24 * 40))
    target = _target("ex1")
    printed = EXAMPLES["ex1"].alphas
    recon = series_sum([b.scale(a) for a, b in zip(printed, g) if a != 0])
    bad = recon.first_mismatch(target)
    assert bad == 48    # already the q^2 coefficient differs
    computed = decompose_in_basis(target, g)
    recon = series_sum([b.scale(a) for a, b in zip(computed, g) if a != 0])
    assert recon.first_mismatch(target) is None


def test_decompose_example2():
    g = list(example_eigenforms("ex2", 24 * 40))
    a3 = FieldElem(Fraction(5296914, 809), Fraction(-6348861, 809), -14)
    assert decompose_in_basis(_target("ex2"), g) == [0, Fraction(27, 809), a3, a3.conj()]
    assert list(EXAMPLES["ex2"].alphas) == [0, Fraction(27, 809), a3, a3.conj()]
