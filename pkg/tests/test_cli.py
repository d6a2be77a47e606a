"""Command-line interface: output shapes, exit codes, determinism."""

import contextlib
import io
import json
import math
import subprocess
import sys

import pytest

from steinmink.cli import (
    EXIT_OK,
    EXIT_QUADRATURE,
    EXIT_ROOTS,
    EXIT_USAGE,
    EXIT_VALIDATION,
    main,
)


def run(args):
    buf = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
        code = main(args)
    return code, buf.getvalue(), err.getvalue()


class TestCoeffs:
    def test_square_multipliers(self):
        code, out, _ = run(["coeffs", "--family", "cube", "--dim", "2"])
        assert code == EXIT_OK
        d = json.loads(out)
        assert d["kind"] == "cube"
        mu = [float(x) for x in d["mu"]]
        assert mu == pytest.approx([1.0, 1.0, 0.7853981634], abs=1e-9)
        m = [float(x) for x in d["m"]]
        assert m == pytest.approx([4.0, 8.0, math.pi], rel=1e-12)

    def test_csv_layout(self):
        code, out, _ = run(["coeffs", "--family", "ball", "--dim", "3",
                            "--format", "csv"])
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "l,m,W,V,c,mu"
        assert len(lines) == 5  # header + l = 0..3

    def test_rho_scales_m_not_c(self):
        _, out1, _ = run(["coeffs", "--family", "simplex", "--dim", "4"])
        _, out2, _ = run(["coeffs", "--family", "simplex", "--dim", "4",
                          "--rho", "2.5"])
        a, b = json.loads(out1), json.loads(out2)
        assert [float(x) for x in a["c"]] == pytest.approx(
            [float(x) for x in b["c"]], rel=1e-12)
        assert float(b["m"][0]) == pytest.approx(
            float(a["m"][0]) * 2.5 ** 4, rel=1e-12)

    def test_json_roundtrip_bytes(self):
        # emitted JSON is canonical: parse and re-serialize reproduces it
        _, out, _ = run(["coeffs", "--family", "crosspolytope", "--dim", "5"])
        assert json.dumps(json.loads(out), indent=2) + "\n" == out


class TestZeros:
    def test_ball_roots(self):
        code, out, _ = run(["zeros", "--family", "ball", "--dim", "7"])
        assert code == EXIT_OK
        d = json.loads(out)
        roots = d["root_sets"][0]["roots"]
        assert len(roots) == 7
        for re_s, im_s in roots:
            assert float(re_s) == pytest.approx(-7.0, abs=1e-6)
            assert float(im_s) == 0.0

    def test_square_frozen_roots(self):
        _, out, _ = run(["zeros", "--family", "cube", "--dim", "2"])
        roots = sorted(float(r) for r, _ in json.loads(out)["root_sets"][0]["roots"])
        assert roots[0] == pytest.approx(-3.7261390295246474, rel=1e-9)
        assert roots[1] == pytest.approx(-1.3668191494160033, rel=1e-9)

    def test_dimension_range_summary(self):
        code, out, _ = run(["zeros", "--family", "crosspolytope",
                            "--dim", "2..6", "--format", "csv"])
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "n,max_real_part,all_negative_real"
        assert [int(l.split(",")[0]) for l in lines[1:]] == [2, 3, 4, 5, 6]
        for line in lines[1:]:
            assert float(line.split(",")[1]) < 0

    def test_comma_list(self):
        _, out, _ = run(["zeros", "--family", "simplex", "--dim", "3,5"])
        d = json.loads(out)
        assert [row["n"] for row in d["summary"]] == [3, 5]

    def test_deterministic(self):
        a = run(["zeros", "--family", "cube", "--dim", "2..8"])
        b = run(["zeros", "--family", "cube", "--dim", "2..8"])
        assert a == b


class TestConverge:
    def test_zero_radius(self):
        code, out, _ = run(["converge", "--family", "cube", "--dims", "10",
                            "--radius", "0"])
        assert code == EXIT_OK
        assert float(json.loads(out)["distances"][0]) == 0.0

    def test_decreasing_distances_csv(self):
        code, out, _ = run(["converge", "--family", "ball",
                            "--dims", "8,16,32", "--radius", "1",
                            "--format", "csv"])
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "n,d_n"
        d = [float(l.split(",")[1]) for l in lines[1:]]
        assert d[0] > d[1] > d[2] > 0


class TestMcValidate:
    def test_ball_passes(self):
        code, out, _ = run(["mc-validate", "--family", "ball", "--dim", "2",
                            "--t", "0.25,0.5", "--samples", "100000"])
        assert code == EXIT_OK
        d = json.loads(out)
        assert d["passed"] is True
        assert len(d["rows"]) == 2
        for row in d["rows"]:
            assert abs(float(row["z"])) <= 4.0

    def test_threshold_failure_exit_code(self):
        code, _, _ = run(["mc-validate", "--family", "ball", "--dim", "2",
                          "--t", "0.5", "--samples", "50000",
                          "--threshold", "1e-9"])
        assert code == EXIT_VALIDATION


class TestOutputFile:
    def test_out_writes_identical_content(self, tmp_path):
        path = tmp_path / "coeffs.json"
        code, out, _ = run(["coeffs", "--family", "ball", "--dim", "4"])
        code2, out2, _ = run(["coeffs", "--family", "ball", "--dim", "4",
                              "--out", str(path)])
        assert code == code2 == EXIT_OK
        assert out2 == ""
        assert path.read_text() == out


class TestExitCodes:
    @pytest.mark.parametrize("args", [
        [],
        ["coeffs"],
        ["coeffs", "--family", "cube", "--dim", "0"],
        ["coeffs", "--family", "moebius", "--dim", "3"],
        ["coeffs", "--family", "cube", "--dim", "2", "--format", "xml"],
        ["zeros", "--family", "cube", "--dim", "5..2"],
        ["zeros", "--family", "cube", "--dim", "abc"],
        ["converge", "--family", "ball", "--dims", "16,8", "--radius", "1"],
        ["converge", "--family", "ball", "--dims", "8,16", "--radius", "-1"],
        ["mc-validate", "--family", "ball", "--dim", "7", "--t", "0.5"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, args):
        code, _, _ = run(args)
        assert code == EXIT_USAGE

    def test_quadrature_failure(self):
        code, _, _ = run(["coeffs", "--family", "crosspolytope", "--dim", "20",
                          "--quad-tol", "1e-40"])
        assert code == EXIT_QUADRATURE

    def test_root_certificate_failure(self):
        code, _, _ = run(["zeros", "--family", "cube", "--dim", "30",
                          "--residual-tol", "1e-25"])
        assert code == EXIT_ROOTS

    def test_help_exits_zero_and_documents_units(self):
        code, out, _ = run(["--help"])
        assert code == EXIT_OK
        assert "length" in out  # units of rho and t are spelled out
        code, out, _ = run(["zeros", "--help"])
        assert code == EXIT_OK
        assert "dimensionless" in out


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "steinmink.cli", "coeffs",
             "--family", "cube", "--dim", "2", "--format", "csv"],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        assert proc.stdout.startswith("l,m,W,V,c,mu")
