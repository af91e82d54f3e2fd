import io
import json
from contextlib import redirect_stderr, redirect_stdout
from importlib import resources

import jsonschema
import pytest

from fractalmra import cli


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def load_schema(name):
    path = resources.files("fractalmra.schemas").joinpath(f"{name}.schema.json")
    return json.loads(path.read_text())


SAMPLE_RUNS = {
    "dimension": ("dimension", "--scale", "3", "--digits", "0,2"),
    "filters": ("filters", "--scale", "3", "--digits", "0,2"),
    "spectrum": ("spectrum", "--scale", "3", "--digits", "0,2"),
    "moments": ("moments", "--scale", "3", "--digits", "0,2", "--range", "8"),
    "cycles": ("cycles", "--scale", "2", "--digits", "0,1", "--length", "6"),
    "classify": ("classify", "--scale", "3", "--digits", "0,2", "--length", "8"),
    "duality": ("duality", "--scale", "4", "--digits", "0,2", "--dual", "0,1",
                "--count", "8"),
    "onb-check": ("onb-check", "--scale", "4", "--digits", "0,2", "--dual", "0,1",
                  "--count", "8"),
    "cascade": ("cascade", "--scale", "3", "--digits", "0,2", "--modifier", "z3",
                "--steps", "6"),
    "riesz": ("riesz", "--depth", "3", "--grid", "27"),
    "gram": ("gram", "--scale", "3", "--digits", "0,2", "--jrange", "1",
             "--krange", "2"),
    "table": ("table",),
    "replimit": ("replimit", "--scale", "3", "--digits", "0,2", "--level", "6",
                 "--range", "4"),
}


@pytest.mark.parametrize("name", sorted(SAMPLE_RUNS))
def test_json_output_validates_against_schema(name):
    code, out, err = run_cli(*SAMPLE_RUNS[name])
    assert code == 0, err
    obj = json.loads(out)
    jsonschema.validate(obj, load_schema(name))


@pytest.mark.parametrize("name", sorted(SAMPLE_RUNS))
def test_byte_determinism(name):
    _, first, _ = run_cli(*SAMPLE_RUNS[name])
    _, second, _ = run_cli(*SAMPLE_RUNS[name])
    assert first == second
    assert first.encode() == second.encode()


def test_dimension_value():
    code, out, _ = run_cli("dimension", "--scale", "3", "--digits", "0,2")
    assert code == 0
    assert json.loads(out) == {"dimension": 0.6309297535714574}


def test_duality_lambda_prefix():
    _, out, _ = run_cli("duality", "--scale", "4", "--digits", "0,2",
                        "--dual", "0,1", "--count", "8")
    obj = json.loads(out)
    assert obj["verdict"] == "Dual"
    assert obj["lambda_prefix"] == [0, 1, 4, 5, 16, 17, 20, 21]
    assert obj["b_cycles"]["trivial_only"]


def test_cascade_csv():
    code, out, _ = run_cli("cascade", "--scale", "3", "--digits", "0,2",
                           "--modifier", "z3", "--steps", "6", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,norm_sq,inner_re,inner_im"
    assert len(lines) == 7
    for row in lines[1:]:
        n, norm_sq, re, im = row.split(",")
        assert float(norm_sq) == 2.0
        assert float(re) == 0.0
        assert float(im) == 0.0


def test_riesz_csv_columns():
    code, out, _ = run_cli("riesz", "--depth", "2", "--grid", "9",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,value"
    assert len(lines) == 10


def test_moments_csv_and_wiener_csv():
    code, out, _ = run_cli("moments", "--scale", "3", "--digits", "0,2",
                           "--range", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,re,im,status"
    code, out, _ = run_cli("moments", "--scale", "3", "--digits", "0,2",
                           "--range", "4", "--emit", "wiener", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "k,s_k,ratio"


def test_text_format():
    code, out, _ = run_cli("filters", "--scale", "3", "--digits", "0,2",
                           "--format", "text")
    assert code == 0
    assert "m_0" in out and "unitarity defect" in out


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run_cli("dimension", "--scale", "4", "--digits", "0,2",
                           "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text()) == {"dimension": 0.5}


def test_exit_code_unknown_subcommand():
    code, _, err = run_cli("frobnicate")
    assert code == 64
    assert "unknown subcommand" in err


def test_exit_code_invalid_digits():
    code, _, err = run_cli("dimension", "--scale", "3", "--digits", "0,x")
    assert code == 2
    code, _, err = run_cli("dimension", "--scale", "3", "--digits", "0,7")
    assert code == 2


def test_exit_code_cap_exceeded():
    code, _, err = run_cli("cascade", "--scale", "3", "--digits", "0,2",
                           "--steps", "13")
    assert code == 3
    assert "cap" in err


def test_exit_code_precondition_error():
    # onb-check on a non-dual pair
    code, _, err = run_cli("onb-check", "--scale", "3", "--digits", "0,2",
                           "--dual", "0,1")
    assert code == 2


def test_table_contents():
    _, out, _ = run_cli("table")
    obj = json.loads(out)
    dims = [row["hausdorff_dimension"] for row in obj["dual_systems"]]
    import math
    assert abs(dims[0] - 0.5) <= 1e-12
    assert abs(dims[1] - math.log(2) / math.log(6)) <= 1e-12
    assert abs(dims[2] - math.log(2) / math.log(6)) <= 1e-12
    assert abs(dims[3] - math.log(3) / math.log(6)) <= 1e-12
    assert [row["verdict"] for row in obj["dual_systems"]] == ["Dual"] * 4
    prefixes = [row["lambda_prefix"] for row in obj["spectra"]]
    assert prefixes[0] == [0, 1, 4, 5, 16, 17, 20, 21]
    assert prefixes[1] == [0, 1, 6, 7, 36, 37, 42, 43]
    for row in obj["dual_transfer"]:
        assert row["partition_of_unity_max_dev"] < 1e-12


def test_cycle_length_clamped_to_cap():
    code, out, _ = run_cli("cycles", "--scale", "6", "--digits", "0,2,4")
    assert code == 0
    obj = json.loads(out)
    assert obj["requested_length"] == 12
    assert obj["searched_length"] == 11  # 6^12 - 1 exceeds the point cap
    code, out, _ = run_cli("classify", "--scale", "6", "--digits", "0,2,4")
    assert code == 0
    assert json.loads(out)["kind"] == "full_support"


def test_table_text_format():
    code, out, _ = run_cli("table", "--format", "text")
    assert code == 0
    assert "Lambda prefix" in out
    assert "dual transfer branches" in out


def test_help_shows_defaults():
    import contextlib
    import io

    buf = io.StringIO()
    with pytest.raises(SystemExit), contextlib.redirect_stdout(buf):
        cli.main(["moments", "--help"])
    assert "default: 256" in buf.getvalue()


def test_threads_env_preserves_results(monkeypatch):
    monkeypatch.setenv("FRACTALMRA_THREADS", "4")
    _, threaded, _ = run_cli("moments", "--scale", "3", "--digits", "0,2",
                             "--range", "16")
    monkeypatch.setenv("FRACTALMRA_THREADS", "1")
    _, single, _ = run_cli("moments", "--scale", "3", "--digits", "0,2",
                           "--range", "16")
    assert threaded == single


def test_threads_env_validation(monkeypatch):
    monkeypatch.setenv("FRACTALMRA_THREADS", "0")
    code, _, err = run_cli("moments", "--scale", "3", "--digits", "0,2",
                           "--range", "2")
    assert code == 2
