from dataclasses import replace
from functools import partial

import pytest

from qlift import verify
from qlift.forms import E_classical, delta, example_eigenforms
from qlift.lmfdb import NewformRecord, load_fixture
from qlift.qseries import series_sum


def test_t17_w0_coincides_with_t13_for_every_case():
    for case in verify.T13_CASES:
        a = verify.check_T13(case, "delta", 24 * 40)
        b = verify.check_T17(case, "delta", 0, 24 * 40)
        assert a.passed
        assert a.series == b.series
        # 2d: the bracket formula at w = 0 has constant 1/k on the first term only
        assert b.passed == (case != "2d")


@pytest.mark.parametrize("case", verify.REGROUPED)
def test_bracket_grouping_record(case):
    # the printed bracket formula leaves the second term without the constant;
    # at w >= 1 only the whole-sum reading matches
    lhs = verify.t13_lhs(case, verify.get_eigenform("delta"), 24 * 40, 1)
    g = delta(24 * 80)
    printed = verify.t13_rhs(case, g, 12, 24 * 40, 1, "printed", "T17")
    whole = verify.t13_rhs(case, g, 12, 24 * 40, 1, "whole", "T17")
    assert lhs.first_mismatch(printed) is not None
    assert lhs.first_mismatch(whole) is None
    rep = verify.check_T17(case, "delta", 1, 24 * 40)
    assert rep.status == "fail"
    assert rep.notes == ["printed grouping: fail; constant on the whole sum: pass"]


@pytest.mark.parametrize("case", ["1a", "1b", "1c", "1d", "2a", "2b", "2c"])
@pytest.mark.parametrize("w", [1, 2])
def test_t17_higher_w(case, w):
    assert verify.check_T17(case, "delta", w, 24 * 40).passed


def test_t13_note_for_2a():
    rep = verify.check_T13("2a", "delta", 24 * 40)
    assert any("Theta reading" in n and n.endswith("pass") for n in rep.notes)


def test_non_eigenform_is_skipped():
    mixed = verify.Eigenform("E4+delta", 12, lambda p: series_sum([E_classical(12, p), delta(p)]))
    for fn in (partial(verify.check_T13, "1a"), partial(verify.check_T14, 1),
               partial(verify.check_T17, "1a", w=1), verify.check_selberg):
        rep = fn(mixed, prec=240) if fn is not verify.check_selberg else fn(mixed, 240)
        assert rep.status == "skipped" and "not a Hecke eigenform" in rep.reason


def test_selberg_skips_non_cusp_forms():
    assert verify.check_selberg("E4", 240).status == "skipped"


def test_unknown_cases_raise():
    with pytest.raises(KeyError):
        verify.check_T13("3a")
    with pytest.raises(KeyError):
        verify.check_T14(3)
    with pytest.raises(KeyError):
        verify.get_eigenform("E8")


@pytest.mark.parametrize("selector,count", [
    ("all", 30 + 4 + 2 + 4 + 1 + 12 + 28 + 7), ("T13", 10), ("T13:1e", 1), ("T14", 2),
    ("T14:2", 1), ("T15:ex1", 1), ("T16:ex2", 1), ("T17:1a", 2), ("T17:2a:3", 1),
    ("selberg", 1), ("theta-tables", 12), ("theta:odd:4", 1), ("comm", 28),
    ("lift-relation", 7)])
def test_selectors(selector, count):
    assert len(verify.select(selector)) == count


@pytest.mark.parametrize("selector", ["T13:9z", "T14:3", "T17:1a:x", "bogus", "T15:ex9"])
def test_bad_selectors(selector):
    with pytest.raises(KeyError):
        verify.select(selector)


def test_run_all_small_prec_has_no_failure():
    reports = verify.run_specs(verify.select("all", 24, comm_prec=24 * 60, theta_prec=240))
    assert reports and all(r.status != "fail" for r in reports)
    assert verify.summary_exit_code(reports) == 0


def test_run_all_default_passes():
    reports = verify.run_all(2400)
    assert len(reports) == 88
    assert [r.check_id for r in reports if r.status != "pass"] == []


def test_parallel_matches_serial():
    specs = verify.select("T13", 240)
    serial = verify.run_specs(specs)
    parallel = verify.run_specs(specs, 2)
    assert [(r.check_id, r.status, r.bound) for r in serial] == \
        [(r.check_id, r.status, r.bound) for r in parallel]


def test_corrupted_fixture_reports_index():
    rec = load_fixture("6.12.a.a")
    coeffs = list(rec.coeffs)
    coeffs[16] += 1                       # a(17)
    bad = replace(rec, coeffs=tuple(coeffs))
    rep = verify.check_T15_T16("ex1", 2400, fixture_record=bad)
    assert rep.status == "fail"
    assert rep.mismatch == (24 * 17, rec.coeffs[16], coeffs[16])
    assert "a(17)" in rep.reason
    assert verify.summary_exit_code([rep]) == 1


def test_custom_pipeline_check():
    rep = verify.check_T15_T16("custom", 24 * 30, r=5, f=partial(E_classical, 4), s=4,
                               mode="eta_r", basis=partial(example_eigenforms, "ex1"))
    assert rep.passed
    rep = verify.check_T15_T16("custom", 24 * 30, r=6, f=partial(E_classical, 4), s=4,
                               mode="eta_r", basis=partial(example_eigenforms, "ex1"))
    assert rep.status == "fail"


def test_report_formatting():
    rep = verify.check_T13("1a", "delta", 240)
    assert rep.line(timings=False) == "T13:1a:delta\tpass\t240\t-"
    assert rep.line(timings=True).split("\t")[3] == str(rep.millis)
    table = verify.format_table([rep], timings=False)
    assert table.startswith("T13:1a:delta") and "ms" not in table


def test_lmfdb_record_fixture_is_used():
    rec = verify._lmfdb_record("2.20.a.a")
    assert isinstance(rec, NewformRecord) and rec.count == 100
