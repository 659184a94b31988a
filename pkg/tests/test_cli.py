import subprocess
import sys

import pytest

from qlift.cli import main, parse_form
from qlift.forms import delta
from qlift.qseries import Series24


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_delta(capsys):
    code, out, _ = run(capsys, "expand", "eta(1)^24", "--prec", "120")
    assert code == 0
    assert Series24.parse_dump(out) == delta(120)
    code2, out2, _ = run(capsys, "expand", "delta", "--prec", "120")
    assert out2 == out


def test_expand_literals(capsys):
    assert parse_form("eta(1)^5 * E4").weight2 == 13
    assert parse_form("theta:odd:3").weight2 == 3
    assert parse_form("ex1.g2").weight2 == 12
    assert parse_form("0").weight2 is None
    code, out, _ = run(capsys, "expand", "0")
    assert code == 0 and Series24.parse_dump(out).is_zero()


@pytest.mark.parametrize("literal", ["eta(1)^-1", "eta(1)^2 + E4", "zeta(3)", "ex1.g9", "E4 E6"])
def test_bad_literals_exit_2(capsys, literal):
    code, _, err = run(capsys, "expand", literal)
    assert code == 2 and err.startswith("error:")


def test_op_commands(capsys):
    code, out, _ = run(capsys, "op", "T", "delta", "--m", "2", "--prec", "480")
    assert code == 0
    s = Series24.parse_dump(out)
    assert s == delta(s.prec).scale(-24)
    code, out, _ = run(capsys, "op", "U", "delta", "--m", "2", "--stride", "24")
    assert code == 0 and Series24.parse_dump(out).coeff(24) == -24
    code, out, _ = run(capsys, "op", "twist", "delta", "--char", "kron(-4)", "--stride", "24")
    assert Series24.parse_dump(out).coeff(72) == -252
    code, out, _ = run(capsys, "op", "sieve", "E4", "--a", "0", "--b", "2", "--stride", "24")
    assert code == 0 and Series24.parse_dump(out).coeff(24) == 0
    code, out, _ = run(capsys, "op", "T2", "eta(1)*delta", "--m", "5", "--prec", "2400")
    assert code == 0
    assert run(capsys, "op", "U", "delta")[0] == 2
    assert run(capsys, "op", "T", "0", "--m", "2")[0] == 2


def test_lift_example1(capsys):
    code, out, _ = run(capsys, "lift", "eta(1)^5 * E4", "--t", "5", "--prec", "144")
    s = Series24.parse_dump(out)
    assert code == 0 and s.int_coeffs(6) == [0, 1, -32, -243, 1024, 5766]


def test_lift_errors(capsys):
    assert run(capsys, "lift", "eta(1)^5 * E4", "--t", "4")[0] == 2
    assert run(capsys, "lift", "eta(1) + E4")[0] == 2
    code, out, _ = run(capsys, "lift", "0", "--t", "5")
    assert code == 0 and Series24.parse_dump(out).is_zero()


def test_verify_exit_codes_and_determinism(capsys):
    code, out, _ = run(capsys, "verify", "T13:1a", "--prec", "480")
    assert code == 0 and "pass" in out and "ms" not in out
    code2, out2, _ = run(capsys, "verify", "T13:1a", "--prec", "480")
    assert out2 == out
    code, out, _ = run(capsys, "verify", "T17:2d:1", "--prec", "480")
    assert code == 1 and "fail" in out
    assert run(capsys, "verify", "bogus")[0] == 2
    assert run(capsys, "verify", "T13", "--g", "E8")[0] == 2
    code, out, _ = run(capsys, "verify", "T14", "--format", "lines", "--prec", "480")
    assert out.splitlines() == ["T14:1:delta\tpass\t480\t-", "T14:2:delta\tpass\t480\t-"]
    code, out, _ = run(capsys, "verify", "T14:1", "--timings", "--prec", "480")
    assert " ms" in out


def test_verify_writes_file(capsys, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "verify", "selberg", "--prec", "480", "--out", str(target))
    assert code == 0 and out == "" and "selberg:delta" in target.read_text()


def test_example_command(capsys):
    code, out, _ = run(capsys, "example", "ex2", "--prec", "240")
    assert code == 0 and "agree" in out and "T16:ex2" in out
    assert run(capsys, "example", "ex3")[0] == 2


def test_fetch(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QLIFT_CACHE_DIR", str(tmp_path))
    code, out, _ = run(capsys, "fetch", "6.12.a.a", "--count", "5")
    assert code == 0 and out.split() == ["6.12.a.a", "12", "6", "5", "1", "-32", "-243",
                                         "1024", "5766"]
    assert run(capsys, "fetch", "6.12.a.a", "--count", "500")[0] == 3
    assert run(capsys, "fetch", "6.12.a")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qlift", "expand", "delta", "--prec", "48"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "prec=48 stride=24 disc=0"
