import json
import subprocess
import sys
from pathlib import Path

import pytest

from quasiharm.cli import SuiteConfig, render, run_suite
from quasiharm.cli.main import main, parse_range
from quasiharm.dihedral import rho
from quasiharm.ring import MPoly, from_structured, parse_poly, proportional

GOLDEN = Path(__file__).parent / "golden"


def run(capsysbinary, *argv):
    code = main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err


def test_render_text_and_roundtrip():
    z, zb = MPoly.gens(("z", "zb"))
    assert render(z * zb).decode().strip() == "z*zb"
    p = rho(3, 3)
    assert parse_poly(render(p).decode().strip(), p.vars) == p
    assert from_structured(json.loads(render(p, "structured"))) == p
    with pytest.raises(ValueError):
        render(p, "yaml")


def test_golden_s4_e4(capsysbinary):
    code, out, _ = run(capsysbinary, "--format", "structured", "invariants", "deformed", "--group", "Sn:4", "--degree", "4")
    assert code == 0
    golden = (GOLDEN / "s4_e4.json").read_bytes()
    assert out == golden
    gens = from_structured(json.loads(golden)["generators"])
    assert proportional(gens, parse_poly("4*(12*c1-5)*e4 - (4*c1-1)*e2^2", gens.vars))


def test_qh_dims(capsysbinary):
    code, out, _ = run(capsysbinary, "qh", "dims", "--group", "Sn:4", "--degmax", "5", "--c", "symbolic")
    assert code == 0
    assert "dims: [1, 3, 5, 6, 6, 6]" in out.decode()


def test_dihedral_commands(capsysbinary):
    code, out, _ = run(capsysbinary, "--format", "structured", "dihedral", "charpoly", "--m", "3", "--n", "4",
                       "--c", "1/7", "--check-minors")
    assert code == 0 and json.loads(out)["proportional"] is True
    code, out, _ = run(capsysbinary, "--format", "structured", "dihedral", "quotient", "--m", "3", "--n", "2", "--c", "1/7")
    data = json.loads(out)
    assert code == 0 and data["dims"] == [1, 2, 3, 2, 1] and data["standard"] is True
    code, out, _ = run(capsysbinary, "dihedral", "rho", "--m", "3", "--n", "3")
    assert code == 0 and parse_poly(out.decode().split("rho: ")[1].strip(), ("z", "zb")) == rho(3, 3)
    code, out, _ = run(capsysbinary, "dihedral", "s", "--m", "4", "--n", "3", "--c1", "1/3", "--c2", "2/5")
    assert code == 0 and "S: " in out.decode()


def test_frobenius_commands(capsysbinary, tmp_path):
    gens = tmp_path / "gens.txt"
    gens.write_text("x1^3  # first\nx2^4\n")
    code, out, _ = run(capsysbinary, "--format", "structured", "frobenius", "charpoly", "--gens", str(gens))
    assert code == 0 and json.loads(out)["dims"] == [1, 2, 3, 3, 2, 1]
    cp = tmp_path / "cp.txt"
    cp.write_text("x1*x2\n")
    code, out, _ = run(capsysbinary, "frobenius", "dims", "--charpoly", str(cp))
    assert code == 0 and out.decode().strip() == "dims: [1, 2, 1]"
    code, _, _ = run(capsysbinary, "frobenius", "coinvariants", "--group", "I2:5")
    assert code == 0


def test_singular_scan(capsysbinary):
    code, out, _ = run(capsysbinary, "--format", "structured", "singular", "scan", "--group", "I2:5", "--c", "2/5", "--degmax", "4")
    assert code == 0
    assert json.loads(out)["singular"]["2/5"][0]["degree"] == 2


def test_out_flag(capsysbinary, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsysbinary, "--out", str(target), "verify", "frobenius")
    assert code == 0 and out == b""
    text = target.read_text()
    assert text.startswith("suite frobenius (criterion 9)")
    assert "result PASS" in text


@pytest.mark.parametrize("argv", [
    ["qh", "dims", "--group", "E8"],
    ["qh", "dims"],
    ["qh", "dims", "--group", "Sn:4", "--c", "abc"],
    ["verify", "nonsense"],
    ["verify", "sl2", "--m", "3..x"],
    ["dihedral", "quotient", "--m", "3", "--n", "2"],
    ["dihedral", "rho", "--m", "3"],
    ["frobenius", "charpoly", "--gens", "/nonexistent/file"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(capsysbinary, argv):
    code, out, _ = run(capsysbinary, *argv)
    assert code == 2 and out == b""


def test_failing_suite_exits_1(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "rho-family", "--m", "3", "--n", "3..4")
    assert code == 1
    assert b"result FAIL" in out


def test_verify_by_criterion_number(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "5")
    assert code == 0 and out.startswith(b"suite sl2 (criterion 5)")


def test_byte_stable_and_worker_independent():
    for name in ("sl2", "frobenius", "dihedral-core"):
        cfg = dict(m=[3, 4], seed=7)
        a = run_suite(name, SuiteConfig(workers=1, **cfg))
        b = run_suite(name, SuiteConfig(workers=3, **cfg))
        for fmt in ("text", "structured"):
            assert render(a, fmt) == render(b, fmt)
        assert b"wall_clock" not in render(a, "structured")
        assert b"wall_clock" in render(a, "structured", timing=True)


def test_run_suite_unknown():
    with pytest.raises(KeyError):
        run_suite("nope", SuiteConfig())


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("4") == [4]
    assert parse_range("3,6") == [3, 6]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quasiharm", "dihedral", "rho", "--m", "4", "--n", "2"],
                          capture_output=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.decode().splitlines()[-1] == "rho: z^2"
