import subprocess
import sys

import pytest

from mfstruct import cli


def run(capsys, *argv):
    rc = cli.run(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_verify_moebius_passes(capsys, tmp_path):
    rc, out, _ = run(capsys, "verify", "--fn", "moebius", "--D", "1", "--A", "4", "--N", "1000000", "--T", "5", "--out", str(tmp_path))
    assert rc == 0
    assert "Gamma = {0:1}" in out and "psi == 0" in out
    header = (tmp_path / "moebius_verify.csv").read_text().splitlines()[0]
    assert header == "x,psi_re,psi_im,normalized"
    assert (tmp_path / "moebius_verify.svg").read_text().startswith("<svg")


def test_verify_constant_one_fails_with_diagnostic(capsys, tmp_path):
    rc, out, _ = run(capsys, "verify", "--fn", "one", "--D", "1", "--A", "4", "--N", "100000", "--out", str(tmp_path))
    assert rc == 1
    assert "hypothesis violation" in out


def test_class_violation_exit_code(capsys, tmp_path):
    rc, out, _ = run(capsys, "verify", "--fn", "tau(3)", "--D", "2", "--N", "10000", "--out", str(tmp_path))
    assert rc == 1 and out.startswith("FAIL [MEMBERSHIP]")


def test_an_example(capsys):
    rc, out, _ = run(capsys, "an", "--gammas", "1.41421356", "--N", "3", "--x", "0")
    assert rc == 0 and out.splitlines()[0] == "20"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["verify"],
        ["verify", "--fn", "nosuch(1)"],
        ["eval", "--fn", "moebius", "--N", "-5"],
        ["lambda-j", "--j", "2", "--N", "100", "--n", "500"],
        ["an", "--gammas", "1", "--N", "x"],
    ],
)
def test_usage_errors(capsys, argv):
    rc, _, _ = run(capsys, *argv)
    assert rc == 2


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("N=20000\nT=2\n")
    rc, out, _ = run(capsys, "sieve", "--fn", "moebius", "--config", str(cfg), "--N", "30000")
    assert rc == 0 and "N=30000" in out
    bad = tmp_path / "bad.cfg"
    bad.write_text("N=1000\nwhat=1\n")
    rc, _, err = run(capsys, "sieve", "--fn", "moebius", "--config", str(bad))
    assert rc == 2 and "bad.cfg:2" in err


def test_find_zeros_outputs_are_byte_identical(capsys, tmp_path):
    outs = []
    for name in ("a", "b"):
        d = tmp_path / name
        rc, _, _ = run(capsys, "find-zeros", "--fn", "twist(2)", "--N", "100000", "--T", "3", "--out", str(d), "--no-cache")
        assert rc == 0
        outs.append([(d / f).read_bytes() for f in ("twist_2_scan.csv", "twist_2_zeros.csv")])
    assert outs[0] == outs[1]
    assert outs[0][0].startswith(b"gamma,absL,tail\n")
    assert outs[0][1].startswith(b"gamma,mult,d0,d1\n")


def test_warm_cache_run_matches_cold(capsys, tmp_path):
    cache = tmp_path / "cache"
    results = []
    for name in ("cold", "warm"):
        d = tmp_path / name
        rc, _, _ = run(capsys, "verify", "--fn", "liouville", "--N", "100000", "--cache-dir", str(cache), "--out", str(d))
        results.append((rc, (d / "liouville_verify.csv").read_bytes()))
    assert any(cache.iterdir())
    assert results[0] == results[1]


def test_other_subcommands(capsys, tmp_path):
    rc, out, _ = run(capsys, "catalog")
    assert rc == 0 and "moebius" in out and "kronecker(-4)" in out
    rc, out, _ = run(capsys, "eval", "--fn", "moebius", "--N", "100000", "--sigma", "2", "--j", "0", "1")
    assert rc == 0 and out.startswith("L^(0)(2+0i) = 0.6079")
    rc, out, _ = run(capsys, "lambda-j", "--j", "2", "--N", "10000", "--n", "6", "--check")
    assert rc == 0 and "Lambda_2(6) = 1.523000020837" in out
    rc, out, _ = run(capsys, "perron", "--fn", "twist(2)", "--out", str(tmp_path))
    assert rc == 0 and "PERRON PASS" in out
    rc, out, _ = run(capsys, "bt-check", "--j", "1", "2", "--samples", "100000:1000")
    assert rc == 0 and "max ratio" in out
    rc, out, _ = run(capsys, "mean-value", "--fn", "one", "--j", "1", "--sigma", "1.1", "--X", "20", "--out", str(tmp_path))
    assert rc == 0 and "monotone in X: True" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mfstruct", "an", "--gammas", "1.5", "--N", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "6"
