"""
Tests for the command-line front end and the workbench exit codes
"""

import json
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.cli import build_parser, default_variables, field_conductor, main, point_coordinates
from src.workbench import EXIT_ERROR, EXIT_OK, EXIT_UNDETERMINED, MaxsubWorkbench

PSI_ZERO = '{"case": "psi", "alpha": {"kind": "finite", "series": "0"}}'
PSI_SQRT = '{"case": "psi", "alpha": {"kind": "finite", "series": "t^(1/2)"}}'
PSI_MINUS_SQRT = '{"case": "psi", "alpha": {"kind": "finite", "series": "-t^(1/2)"}}'
PSI_ALGEBRAIC = '{"case": "psi", "alpha": {"kind": "algebraic", "minpoly": "y^2 - t", "prefix": "t^(1/2)"}}'
PSI_INTEGERS = '{"case": "psi", "alpha": {"kind": "stream", "rule": "integers"}}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestArgumentHelpers:
    """Test argument conversions"""

    def test_field_conductor(self):
        assert field_conductor("zeta:8") == 8
        assert field_conductor("5") == 5

    def test_point_coordinates(self):
        assert point_coordinates("0,1,0") == ["0", "1", "0"]
        assert point_coordinates("0:1:0") == ["0", "1", "0"]
        assert point_coordinates("1/2, -1") == ["1/2", "-1"]
        assert point_coordinates('["1/2", "1", "0"]') == ["1/2", "1", "0"]

    def test_default_variables(self):
        assert default_variables(1) == ["x"]
        assert default_variables(2) == ["x", "y"]
        assert default_variables(3) == ["x1", "x2", "x3"]


class TestSubcommands:
    """Test one JSON object per command and the exit status"""

    def test_member(self, capsys):
        code, payload = run_json(capsys, "member", "--alg", PSI_ZERO, "t + y")
        assert code == EXIT_OK
        assert payload["verdict"] == "In"
        assert payload["order"] == "1"
        code, payload = run_json(capsys, "member", "--alg", PSI_ZERO, "t^(-1)")
        assert payload["verdict"] == "NotIn"

    def test_descriptor_file(self, capsys, tmp_path):
        path = tmp_path / "psi.json"
        path.write_text(PSI_ZERO, encoding="utf-8")
        code, payload = run_json(capsys, "member", "--alg", str(path), "y")
        assert code == EXIT_OK
        assert payload["verdict"] == "InConductor"

    def test_undetermined_exit_code(self, capsys):
        code, payload = run_json(capsys, "--prec", "8", "member", "--alg", PSI_INTEGERS, "(1 - t)*y - t")
        assert code == EXIT_UNDETERMINED
        assert payload["verdict"] == "Undetermined"

    def test_domain_error(self, capsys):
        code, payload = run_json(capsys, "member", "--alg", PSI_ZERO, "y^(1/2)")
        assert code == EXIT_ERROR
        assert payload["error"] == "ExponentDomainError"
        assert payload["message"]

    def test_bad_precision(self, capsys):
        code, payload = run_json(capsys, "--prec", "-3", "conductor", "--alg", PSI_ZERO)
        assert code == EXIT_ERROR
        assert "error" in payload

    def test_conductor(self, capsys):
        code, payload = run_json(capsys, "conductor", "--alg", PSI_ALGEBRAIC)
        assert code == EXIT_OK
        assert payload == {"conductor": "y^2 - t", "zero": False}
        _, payload = run_json(capsys, "conductor", "--alg", PSI_SQRT)
        assert payload == {"conductor": "y^2 - t", "zero": False}

    def test_equiv(self, capsys):
        code, payload = run_json(capsys, "equiv", PSI_SQRT, PSI_MINUS_SQRT)
        assert code == EXIT_OK
        assert payload["equivalent"] is True
        assert payload["character"] == {"N": 2, "zeta": "-1"}

    def test_puiseux(self, capsys):
        code, payload = run_json(capsys, "puiseux", "y^2 - t", "--prec", "3")
        assert code == EXIT_OK
        assert [b["series"] for b in payload["branches"]] == ["-t^(1/2)", "t^(1/2)"]

    def test_curves(self, capsys):
        _, payload = run_json(capsys, "tangency", "--curve", "y - x^2", "--point", "0,1,0")
        assert payload == {"tangency": 1}
        _, payload = run_json(capsys, "defined-at", "--curve", "x*y - 1", "--point", "0,1,0", "--member", "x")
        assert payload["defined"] is True
        _, payload = run_json(capsys, "curve-infinity", "x*y - 1")
        assert len(payload["points"]) == 2
        assert all(p["smooth"] for p in payload["points"])

    def test_constructions(self, capsys):
        _, payload = run_json(capsys, "glue", "--point", "0", "--point", "1", "--member", "x^2 - x")
        assert payload == {"member": True, "crucial": False}
        _, payload = run_json(capsys, "basis", "glue", "2", "--point", "0", "--point", "1")
        assert payload == {"basis": ["1", "x^2 - x"], "dimension": 2}
        code, payload = run_json(capsys, "basis", "residue_field", "2", "--point", "0")
        assert code == EXIT_ERROR
        assert payload["error"] == "UnsupportedConstruction"

    def test_normalize(self, capsys):
        _, payload = run_json(capsys, "normalize", "--t-inverse", "--k", "2")
        assert payload == {"case": "i", "sigma": {"swap": True, "twist": 2}}

    def test_text_output(self, capsys):
        code, out = run(capsys, "--text", "member", "--alg", PSI_ZERO, "t + y")
        assert code == EXIT_OK
        assert "verdict: In" in out.splitlines()


class TestDocumentedCommandLines:
    """Test the flag forms shown in the usage documentation"""

    @pytest.mark.parametrize("argv", [
        ["glue", "--point", "0,0", "--point", "1,1", "--member", "x^2-x"],
        ["tangent", "--point", "0,0", "--vector", "0,1", "--member", "y"],
        ["defined-at", "--curve", "y - x^3 + x*y^2", "--point", "0,1,0", "--member", "x*y"],
        ["tangency", "--curve", "y - x^3 + x*y^2", "--point", "0,1,0"],
        ["puiseux", "y^2 - t", "--prec", "3"],
        ["curve-infinity", "y - x^3 + x*y^2"],
    ])
    def test_parses(self, argv):
        args = build_parser().parse_args(argv)
        assert args.command == argv[0]

    def test_puiseux_prec_is_not_the_global_cap(self):
        args = build_parser().parse_args(["--prec", "16", "puiseux", "y^2 - t", "--prec", "3"])
        assert args.prec == "16"
        assert args.precision == "3"

    def test_glue_in_the_plane(self, capsys):
        code, payload = run_json(capsys, "glue", "--point", "0,0", "--point", "1,1", "--member", "x^2-x")
        assert code == EXIT_OK
        assert payload == {"member": True, "crucial": False}
        _, payload = run_json(capsys, "glue", "--point", "0,0", "--point", "1,1", "--member", "x")
        assert payload["member"] is False

    def test_tangent_in_the_plane(self, capsys):
        code, payload = run_json(capsys, "tangent", "--point", "0,0", "--vector", "0,1", "--member", "y")
        assert code == EXIT_OK
        assert payload["member"] is False
        _, payload = run_json(capsys, "tangent", "--point", "0,0", "--vector", "0,1", "--member", "x")
        assert payload["member"] is True

    def test_defined_at_infinity(self, capsys):
        code, payload = run_json(
            capsys, "defined-at", "--curve", "y - x^3 + x*y^2", "--point", "0,1,0", "--member", "x*y"
        )
        assert code == EXIT_OK
        assert payload["defined"] is True
        _, payload = run_json(
            capsys, "defined-at", "--curve", "y - x^3 + x*y^2", "--point", "0,1,0", "--member", "y"
        )
        assert payload["defined"] is False

    def test_missing_member_is_a_usage_error(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["glue", "--point", "0", "--point", "1"])


class TestBatch:
    """Test batch files run in input order"""

    def _write(self, tmp_path, documents):
        path = tmp_path / "batch.jsonl"
        path.write_text("\n".join(documents) + "\n", encoding="utf-8")
        return path

    def test_batch_keeps_order(self, capsys, tmp_path):
        documents = [
            json.dumps({"command": "member", "alg": json.loads(PSI_ZERO), "expr": f"t^{k}"})
            for k in range(-3, 4)
        ]
        path = self._write(tmp_path, documents)
        code, out = run(capsys, "--batch", str(path), "--jobs", "2")
        assert code == EXIT_OK
        verdicts = [json.loads(line)["verdict"] for line in out.splitlines()]
        assert verdicts == ["NotIn"] * 3 + ["In"] * 4

    def test_batch_reports_the_worst_status(self, capsys, tmp_path):
        documents = [
            json.dumps({"command": "conductor", "alg": json.loads(PSI_ALGEBRAIC)}),
            "{not json",
        ]
        path = self._write(tmp_path, documents)
        code, out = run(capsys, "--batch", str(path))
        assert code == EXIT_ERROR
        lines = [json.loads(line) for line in out.splitlines()]
        assert lines[0]["conductor"] == "y^2 - t"
        assert lines[1]["error"] == "ParseError"

    def test_missing_batch_file(self, capsys, tmp_path):
        code, payload = run_json(capsys, "--batch", str(tmp_path / "missing.jsonl"))
        assert code == EXIT_ERROR
        assert payload["error"] == "FileNotFoundError"


class TestWorkbench:
    """Test the workbench directly"""

    def setup_method(self):
        self.workbench = MaxsubWorkbench()

    def test_run_accepts_mappings(self):
        code, payload = self.workbench.run({"command": "tangency", "curve": "y - x^2", "point": ["0", "1", "0"]})
        assert (code, payload) == (EXIT_OK, {"tangency": 1})

    def test_generators_need_psi(self):
        code, payload = self.workbench.run({
            "command": "generators",
            "alg": {"case": "units", "alpha": {"kind": "finite", "series": "1 + u"}},
        })
        assert code == EXIT_ERROR
        assert payload["error"] == "PreconditionFailed"


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
