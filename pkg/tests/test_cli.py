"""Tests for the paramono command-line application."""

import io
import json

import pytest

from src.cli.app import run
from src.cli.loader import effective_tol, parse_vector
from src.cli.schemas.spec import parse_spec
from src.exceptions import SpecDecodeError, SpecSchemaError

ROTATION = {"kind": "matrix", "entries": [[0, 1], [-1, 0]]}
IDENTITY = {"kind": "matrix", "entries": [[1, 0], [0, 1]]}


@pytest.fixture
def spec_file(tmp_path):
    """Write a specification to disk and return its path."""

    def write(payload, name: str = "spec.json") -> str:
        path = tmp_path / name
        if isinstance(payload, bytes):
            path.write_bytes(payload)
        else:
            path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return write


def invoke(capsys, *argv: str) -> tuple[int, str]:
    code = run(list(argv))
    return code, capsys.readouterr().out.strip()


@pytest.mark.unit
class TestParseSpec:
    def test_matrix(self):
        spec = parse_spec(json.dumps(ROTATION))
        assert spec.kind == "matrix" and spec.n == 2

    def test_relation(self):
        spec = parse_spec(b'{"kind":"relation","graph_basis":[[1,0,0,0],[0,0,0,1]]}')
        assert spec.n == 2

    def test_gallery(self):
        spec = parse_spec('{"kind":"gallery","gallery_name":"volterra","param":4}')
        assert spec.to_json_obj() == {"kind": "gallery", "gallery_name": "volterra", "param": 4}

    @pytest.mark.parametrize("payload", [b"{not json", b"\xff\xfe\x00", b""])
    def test_malformed_input(self, payload):
        with pytest.raises(SpecDecodeError):
            parse_spec(payload)

    @pytest.mark.parametrize(
        "payload,field",
        [
            ({"kind": "tensor", "entries": [[1]]}, "kind"),
            ({"kind": "matrix"}, "entries"),
            ({"kind": "matrix", "entries": [[1, 2]]}, "entries"),
            ({"kind": "relation", "graph_basis": [[1, 0, 0]]}, "graph_basis"),
            ({"kind": "matrix", "entries": [[1]], "gallery_name": "rotation"}, "gallery_name"),
            ({"kind": "matrix", "entries": [[1]], "colour": "red"}, "colour"),
            ({"kind": "matrix", "entries": [[1]], "tolerance": -1}, "tolerance"),
        ],
    )
    def test_schema_violations_name_the_field(self, payload, field):
        with pytest.raises(SpecSchemaError) as exc:
            parse_spec(json.dumps(payload))
        assert exc.value.field == field

    def test_non_object(self):
        with pytest.raises(SpecSchemaError):
            parse_spec("[1, 2]")


@pytest.mark.unit
class TestLoaderHelpers:
    def test_parse_vector(self):
        assert parse_vector("1, -2.5,0", "x").tolist() == [1.0, -2.5, 0.0]
        with pytest.raises(SpecSchemaError):
            parse_vector("1,a", "x")
        with pytest.raises(SpecSchemaError):
            parse_vector("", "x")

    def test_tolerance_precedence(self):
        spec = parse_spec('{"kind":"matrix","entries":[[1]],"tolerance":1e-6}')
        assert effective_tol(spec, 1e-4) == 1e-4
        assert effective_tol(spec, None) == 1e-6


@pytest.mark.integration
class TestClassifyCommand:
    def test_rotation(self, capsys, spec_file):
        code, out = invoke(capsys, "classify", spec_file(ROTATION))
        assert code == 0
        body = json.loads(out)
        assert body["monotone"] and body["maximal"]
        assert not body["paramonotone"] and not body["rectangular"] and not body["strictly_monotone"]
        assert body["cocoercivity_modulus"] == 0.0
        point, image = body["witnesses"]["paramonotone"]
        assert point + image == pytest.approx([1.0, 0.0, 0.0, -1.0], abs=1e-12)
        assert "gallery_expected" not in body
        assert list(body)[-1] == "operator"

    def test_identity(self, capsys, spec_file):
        code, out = invoke(capsys, "classify", spec_file(IDENTITY))
        body = json.loads(out)
        assert code == 0
        assert all(body[k] for k in ("monotone", "maximal", "strictly_monotone", "paramonotone", "rectangular"))
        assert body["cocoercivity_modulus"] == pytest.approx(1.0)

    def test_shift_sum_from_stdin(self, capsys, monkeypatch):
        data = b'{"kind":"gallery","gallery_name":"shift_sum","param":1}'
        monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(data)))
        code, out = invoke(capsys, "classify")
        body = json.loads(out)
        assert code == 0
        assert body["cocoercivity_modulus"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert body["gallery_expected"]["paramonotone"] is True

    def test_output_is_deterministic(self, capsys, spec_file):
        path = spec_file({"kind": "gallery", "gallery_name": "volterra", "param": 6})
        first = invoke(capsys, "classify", path)
        second = invoke(capsys, "classify", path)
        assert first == second

    def test_operator_echo_round_trips(self, capsys, spec_file):
        _, out = invoke(capsys, "classify", spec_file(ROTATION))
        echoed = json.loads(out)["operator"]
        _, again = invoke(capsys, "classify", spec_file(echoed, "echo.json"))
        assert again == out

    def test_non_monotone_matrix(self, capsys, spec_file):
        code, out = invoke(capsys, "classify", spec_file({"kind": "matrix", "entries": [[1, 0], [0, -1]]}))
        body = json.loads(out)
        assert code == 0
        assert body["monotone"] is False and body["paramonotone"] is None
        assert body["cocoercivity_modulus"] is None

    def test_ball_operator(self, capsys, spec_file):
        code, out = invoke(capsys, "classify", spec_file({"kind": "gallery", "gallery_name": "rotation_ball"}))
        body = json.loads(out)
        assert code == 0
        assert body["rectangular"] is True and body["paramonotone"] is False
        assert body["cocoercivity_modulus"] is None

    @pytest.mark.parametrize(
        "entries", [[[0, 1e6], [-1e6, 0]], [[1e4, 1e4], [-1e4, 0]]], ids=["rotation", "shear"]
    )
    def test_large_entries_keep_their_flags(self, capsys, spec_file, entries):
        code, out = invoke(capsys, "classify", spec_file({"kind": "matrix", "entries": entries}))
        body = json.loads(out)
        assert code == 0
        assert body["monotone"] is True and body["maximal"] is True
        assert body["paramonotone"] is False and body["rectangular"] is False
        assert body["cocoercivity_modulus"] == 0.0

    def test_table_format(self, capsys, spec_file):
        code, out = invoke(capsys, "classify", spec_file(ROTATION), "--format", "table")
        assert code == 0
        assert "paramonotone: no" in out


@pytest.mark.integration
class TestOtherCommands:
    def test_fitz_off_graph(self, capsys, spec_file):
        code, out = invoke(capsys, "fitz", spec_file(ROTATION), "--x=1,0", "--xstar=0,0")
        assert code == 0
        assert json.loads(out) == {"value": "inf"}

    def test_fitz_identity(self, capsys, spec_file):
        code, out = invoke(capsys, "fitz", spec_file(IDENTITY), "--x=1,0", "--xstar=1,0")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0)

    def test_fitz_ball(self, capsys, spec_file):
        path = spec_file({"kind": "gallery", "gallery_name": "rotation_ball"})
        code, out = invoke(capsys, "fitz", path, "--x=1,0", "--xstar=0,0")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0)

    def test_fitz_ball_honours_tol(self, capsys, spec_file):
        path = spec_file({"kind": "gallery", "gallery_name": "rotation_ball"})
        code, out = invoke(capsys, "fitz", path, "--x=1.000000005,0", "--xstar=0,0")
        assert code == 0
        assert json.loads(out) == {"value": "inf"}
        code, out = invoke(capsys, "fitz", path, "--x=1.000000005,0", "--xstar=0,0", "--tol=1e-8")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-7)

    def test_fitz_leading_minus(self, capsys, spec_file):
        path = spec_file({"kind": "gallery", "gallery_name": "rotation_ball"})
        code, out = invoke(capsys, "fitz", path, "--x=-1,0", "--xstar=0,0")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0)

    def test_fitz_dimension_mismatch(self, capsys, spec_file):
        code, _ = invoke(capsys, "fitz", spec_file(ROTATION), "--x=1,0,0", "--xstar=0,0")
        assert code == 3

    def test_modulus(self, capsys, spec_file):
        code, out = invoke(capsys, "modulus", spec_file({"kind": "matrix", "entries": [[1, 0], [0, 2]]}))
        assert code == 0
        assert json.loads(out)["cocoercivity_modulus"] == pytest.approx(0.5)

    def test_modulus_of_zero_matrix(self, capsys, spec_file):
        code, out = invoke(capsys, "modulus", spec_file({"kind": "matrix", "entries": [[0, 0], [0, 0]]}))
        assert code == 0
        assert json.loads(out) == {"cocoercivity_modulus": "inf"}

    def test_modulus_outside_domain(self, capsys, spec_file):
        assert invoke(capsys, "modulus", spec_file({"kind": "matrix", "entries": [[1, 0], [0, -1]]}))[0] == 3
        assert invoke(capsys, "modulus", spec_file({"kind": "gallery", "gallery_name": "rotation_ball"}))[0] == 3

    def test_gallery_listing(self, capsys):
        code, out = invoke(capsys, "gallery")
        assert code == 0
        names = [entry["name"] for entry in json.loads(out)["operators"]]
        assert "volterra" in names and "rotation_ball" in names

    def test_sweep_keeps_parameter_order(self, capsys):
        code, out = invoke(capsys, "sweep", "--name", "shift_sum", "--start", "1", "--stop", "5")
        body = json.loads(out)
        assert code == 0
        assert [item["param"] for item in body["results"]] == [1, 2, 3, 4, 5]
        moduli = [item["cocoercivity_modulus"] for item in body["results"]]
        assert moduli == sorted(moduli, reverse=True)

    def test_sweep_bad_range(self, capsys):
        assert invoke(capsys, "sweep", "--name", "shift_sum", "--start", "3", "--stop", "1")[0] == 3
        assert invoke(capsys, "sweep", "--name", "nope", "--start", "1", "--stop", "2")[0] == 3


@pytest.mark.integration
class TestExitCodes:
    def test_malformed_json(self, capsys, spec_file):
        assert invoke(capsys, "classify", spec_file("{oops"))[0] == 2

    def test_not_utf8(self, capsys, spec_file):
        assert invoke(capsys, "classify", spec_file(b"\xff\xfe"))[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert invoke(capsys, "classify", str(tmp_path / "absent.json"))[0] == 2

    def test_unknown_subcommand(self, capsys):
        assert invoke(capsys, "explode")[0] == 2

    def test_schema_violation(self, capsys, spec_file):
        assert invoke(capsys, "classify", spec_file({"kind": "matrix", "entries": [[1, 2]]}))[0] == 3

    def test_non_positive_tolerance(self, capsys, spec_file):
        assert invoke(capsys, "classify", spec_file(ROTATION), "--tol=0")[0] == 3
