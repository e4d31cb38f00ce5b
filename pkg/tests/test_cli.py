"""End-to-end CLI behavior through the in-process entry point."""

import json
import math

import pytest

from mtoeplitz.cli import (
    EXIT_DISPATCH,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_RESOURCE,
    EXIT_SCOPE,
    EXIT_USAGE,
    main,
)

ZETA4_SQRT = 1.0403476504088314


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _strip_timing(report_dict):
    out = dict(report_dict)
    out.pop("elapsed_ms", None)
    return out


class TestMatrix:
    def test_natural_symbol_csv(self, capsys):
        code, out, _ = _run(capsys, ["matrix", "--symbol", "power:2", "--n", "3"])
        assert code == EXIT_OK
        assert out == "1,0,0\n0.25,1,0\n0.1111111111111111,0,1\n"

    def test_rational_symbol_csv(self, capsys):
        code, out, _ = _run(capsys, ["matrix", "--symbol", "prodpow:1,1", "--n", "2"])
        assert code == EXIT_OK
        assert out == "1,0.5\n0.5,1\n"

    def test_json_shape(self, capsys):
        code, out, _ = _run(
            capsys, ["matrix", "--symbol", "power:2", "--n", "3", "--json"]
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["n"] == 3
        assert doc["lowerTriangular"] is True
        assert doc["entries"][1][0] == 0.25

    def test_budget_exit_code(self, capsys):
        code, _, err = _run(capsys, ["matrix", "--symbol", "power:2", "--n", "4097"])
        assert code == EXIT_RESOURCE
        assert err


class TestBracket:
    def test_delta_edge_reports_tight_bracket(self, capsys):
        code, out, _ = _run(
            capsys, ["bracket", "--symbol", "power:2", "--p", "1", "--q", "2"]
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["witnessKind"] == "deltaAtC"
        assert doc["lower"] == pytest.approx(ZETA4_SQRT, rel=1e-9)
        assert doc["upper"] == pytest.approx(ZETA4_SQRT, rel=1e-9)
        assert doc["p"] == 1.0 and doc["q"] == 2.0 and doc["r"] == 2.0

    @pytest.mark.parametrize(
        "T,expected", [("3", 1.1875), ("7", 1.2915880102040818)]
    )
    def test_diagonal_witness_values(self, capsys, T, expected):
        code, out, _ = _run(
            capsys,
            [
                "bracket",
                "--symbol",
                "power:2",
                "--p",
                "2",
                "--q",
                "2",
                "--witness",
                "diagonal",
                "--T",
                T,
            ],
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["witnessKind"] == "divisorUniform"
        assert doc["lower"] == pytest.approx(expected, rel=1e-12)

    def test_divergent_upper_is_spelled_out(self, capsys):
        code, out, _ = _run(
            capsys,
            [
                "bracket",
                "--symbol",
                "power:0.6",
                "--p",
                "1.5",
                "--q",
                "2",
                "--n",
                "64",
            ],
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["upper"] == "diverges"
        assert isinstance(doc["lower"], float)

    def test_infinite_exponent_round_trips_as_string(self, capsys):
        code, out, _ = _run(
            capsys,
            ["bracket", "--symbol", "power:1", "--p", "2", "--q", "inf", "--k", "1"],
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["q"] == "inf"
        assert doc["witnessKind"] == "dualExponent"


class TestVerify:
    def test_theorem2_pq_reports_hand_values(self, capsys):
        code, out, _ = _run(
            capsys, ["verify", "--target", "theorem2", "--edge", "pq"]
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        lowers = doc["report"]["measurements"]["lower"]
        assert lowers[0] == 1.125 and lowers[1] == 1.1875
        assert doc["report"]["verdict"] == "pass"

    def test_csv_output_shape(self, capsys):
        code, out, _ = _run(
            capsys,
            ["verify", "--target", "dyadic", "--levels", "20", "--csv"],
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "step,name,value"
        assert all(len(line.split(",")) == 3 for line in lines[1:])
        names = {line.split(",")[1] for line in lines[1:]}
        assert "partial" in names and "total" in names

    def test_unknown_target_uses_dispatch_exit_code(self, capsys):
        code, _, err = _run(capsys, ["verify", "--target", "theorem9"])
        assert code == EXIT_DISPATCH
        assert err

    def test_scope_violation_exit_code(self, capsys):
        code, _, _ = _run(
            capsys,
            ["verify", "--target", "theorem1", "--p", "3", "--q", "2", "--trials", "2"],
        )
        assert code == EXIT_SCOPE

    def test_precondition_exit_code(self, capsys):
        code, _, _ = _run(
            capsys,
            ["bracket", "--symbol", "power:2", "--p", "0.5", "--q", "2"],
        )
        assert code == EXIT_PRECONDITION

    def test_same_seed_reproduces_measurements(self, capsys):
        argv = [
            "verify",
            "--target",
            "theorem1",
            "--trials",
            "10",
            "--n",
            "128",
            "--seed",
            "17",
        ]
        code_a, out_a, _ = _run(capsys, argv)
        code_b, out_b, _ = _run(capsys, argv)
        assert code_a == code_b == EXIT_OK
        rep_a = _strip_timing(json.loads(out_a)["report"])
        rep_b = _strip_timing(json.loads(out_b)["report"])
        assert rep_a == rep_b

    def test_figures_flag_writes_png(self, capsys, tmp_path):
        code, out, err = _run(
            capsys,
            [
                "verify",
                "--target",
                "dyadic",
                "--levels",
                "20",
                "--figures",
                str(tmp_path),
            ],
        )
        assert code == EXIT_OK
        pngs = list(tmp_path.glob("*.png"))
        assert len(pngs) == 1
        assert pngs[0].name in err
        json.loads(out)  # report still lands on stdout


class TestSearch:
    def test_short_schedule_runs_and_reports_slopes(self, capsys):
        code, out, _ = _run(
            capsys,
            ["search", "--families", "dyadic", "--n", "16384", "--csv"],
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "step,name,value"
        assert any("R:DyadicPowers" in line for line in lines)

    def test_rejects_unknown_family(self, capsys):
        code, _, _ = _run(capsys, ["search", "--families", "hexagonal"])
        assert code == EXIT_USAGE


class TestArgumentSurface:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "matrix" in capsys.readouterr().out
        assert main(["bracket", "--help"]) == EXIT_OK
        assert "--witness" in capsys.readouterr().out

    def test_malformed_flag_exits_one(self, capsys):
        code = main(["matrix", "--symbol", "power:2", "--n", "3", "--bogus"])
        assert code == EXIT_USAGE

    def test_malformed_symbol_exits_one(self, capsys):
        code = main(["matrix", "--symbol", "power:two", "--n", "3"])
        assert code == EXIT_USAGE

    def test_missing_subcommand_exits_one(self, capsys):
        code = main([])
        assert code == EXIT_USAGE

    def test_inline_json_symbol(self, capsys):
        import mtoeplitz as mt

        blob = json.dumps(mt.symbol_to_json(mt.power_on_naturals(2.0)))
        code, out, _ = _run(capsys, ["matrix", "--symbol", blob, "--n", "2"])
        assert code == EXIT_OK
        assert out == "1,0\n0.25,1\n"

    def test_config_file_replays_argv(self, capsys, tmp_path):
        argv = ["verify", "--target", "theorem2", "--edge", "pq"]
        code, out, _ = _run(capsys, argv)
        doc = json.loads(out)
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"argv": argv}))
        code2, out2, _ = _run(capsys, ["--config", str(cfg)])
        assert code2 == EXIT_OK
        doc2 = json.loads(out2)
        assert _strip_timing(doc2["report"]) == _strip_timing(doc["report"])

    def test_thread_env_is_echoed_not_used(self, capsys, monkeypatch):
        monkeypatch.setenv("MTOEPLITZ_THREADS", "4")
        code, out, err = _run(
            capsys, ["matrix", "--symbol", "power:2", "--n", "2"]
        )
        assert code == EXIT_OK
        assert "MTOEPLITZ_THREADS" in err
        assert out == "1,0\n0.25,1\n"
