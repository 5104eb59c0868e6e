import json
import subprocess
import sys

import pytest

from orthoconv.cli import main, run_convert, RequestError
from orthoconv.field import DEFAULT_MODULUS

P = DEFAULT_MODULUS
INV2 = pow(2, -1, P)


def call(argv, stdin_text, capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_run_convert_examples():
    res = run_convert({"direction": "expand", "family": "chebyshev-t", "coeffs": ["0", "0", "0", "1"]})
    assert res["coeffs"] == ["0", str(P - 3), "0", "4"]
    assert res["modulus"] == str(P) and res["n"] == 4
    back = run_convert({"direction": "decomp", "family": "chebyshev-t", "coeffs": res["coeffs"]})
    assert back["coeffs"] == ["0", "0", "0", "1"]
    mom = run_convert({"direction": "moments", "family": "chebyshev-t", "n": 3})
    assert mom["coeffs"] == ["1", "0", str(INV2), "0", str(3 * pow(8, -1, P) % P)]


def test_texpand_direction():
    res = run_convert({"direction": "texpand", "family": "chebyshev-t", "coeffs": ["0", "0", "0", "1"]})
    # row 3 of the basis matrix: coefficient of x^3 in T_0..T_3
    assert res["coeffs"] == ["0", "0", "0", "4"]


def test_cli_roundtrip_bytes(capsys, monkeypatch, rng):
    for n in [1, 5, 32, 100]:
        coeffs = [str(rng.randrange(P)) for _ in range(n)]
        fam = {k: [str(rng.randrange(1, P)) for _ in range(n)] for k in "abc"}
        req = json.dumps({"coeffs": coeffs, "family": fam})
        code, out, _ = call(["--direction", "expand"], req, capsys, monkeypatch)
        assert code == 0
        expanded = json.loads(out)
        req2 = json.dumps({"coeffs": expanded["coeffs"], "family": fam})
        code, out, _ = call(["--direction", "decomp"], req2, capsys, monkeypatch)
        assert code == 0
        assert json.dumps(json.loads(out)["coeffs"]) == json.dumps(coeffs)


def test_family_file_and_output_path(tmp_path, capsys, monkeypatch):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"a": ["1", "2", "2"], "b": ["0", "0", "0"], "c": ["1", str(P - 1), str(P - 1)]}))
    req = tmp_path / "req.json"
    req.write_text(json.dumps({"coeffs": ["0", "0", "0", "1"]}))
    out = tmp_path / "out.json"
    code, stdout, _ = call(["--direction", "expand", "--family-file", str(fam), "--input", str(req),
                            "--output", str(out)], "", capsys, monkeypatch)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["coeffs"] == ["0", str(P - 3), "0", "4"]


@pytest.mark.parametrize("argv,doc,field", [
    (["--direction", "expand", "--family", "chebyshev-t", "--modulus", "15"], {"coeffs": ["1"]}, "modulus"),
    (["--direction", "expand", "--family", "chebyshev-t", "--modulus", "257"], {"coeffs": ["1"]}, "modulus"),
    (["--direction", "expand", "--family", "jacobi"], {"coeffs": ["1"]}, "family"),
    (["--direction", "expand", "--family", "legendre"], {"coeffs": ["-1"]}, "coeffs[0]"),
    (["--direction", "expand", "--family", "legendre"], {"coeffs": [str(P)]}, "coeffs[0]"),
    (["--direction", "expand", "--family", "legendre", "--n", "1"], {"coeffs": ["1", "2"]}, "coeffs"),
    (["--family", "legendre"], {"coeffs": ["1"]}, "direction"),
    (["--direction", "expand"], {"coeffs": ["1"]}, "family"),
    (["--direction", "expand"], {"coeffs": ["1", "2", "3"], "family": {"a": ["1", "0"], "b": ["0", "0"],
                                                                          "c": ["1", "1"]}}, "family"),
    (["--direction", "expand"], {"coeffs": ["1", "2", "3", "4"], "family": {"a": ["1"], "b": ["0"],
                                                                               "c": ["1"]}}, "family"),
])
def test_error_paths(argv, doc, field, capsys, monkeypatch):
    code, out, err = call(argv, json.dumps(doc), capsys, monkeypatch)
    assert code != 0 and out == ""
    assert json.loads(err)["error"]["field"] == field


def test_malformed_json(capsys, monkeypatch):
    code, out, err = call(["--direction", "expand", "--family", "legendre"], "{not json", capsys, monkeypatch)
    assert code == 2 and out == "" and json.loads(err)["error"]["field"] == "input"


def test_request_error_from_document():
    with pytest.raises(RequestError):
        run_convert({"direction": "moments", "family": "legendre", "n": 0})


def test_module_entry_point(tmp_path):
    req = json.dumps({"direction": "expand", "family": "chebyshev-t", "coeffs": ["0", "0", "0", "1"]})
    proc = subprocess.run([sys.executable, "-m", "orthoconv"], input=req, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coeffs"] == ["0", str(P - 3), "0", "4"]
    proc = subprocess.run([sys.executable, "-m", "orthoconv", "--direction", "nope"], input="",
                          capture_output=True, text=True)
    assert proc.returncode != 0 and proc.stdout == ""


def test_bench_subcommand(capsys, monkeypatch):
    code, out, _ = call(["bench", "--op", "expand", "--min-log-n", "3", "--max-log-n", "5", "--reps", "3",
                         "--seed", "7"], "", capsys, monkeypatch)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "# seed=7" and lines[1] == "op,n,reps,median_ns,modulus"
    assert [line.split(",")[1] for line in lines[2:]] == ["8", "16", "32"]


def test_bench_subcommand_errors(capsys, monkeypatch):
    code, out, err = call(["bench", "--reps", "2"], "", capsys, monkeypatch)
    assert code == 2 and out == ""
    code, out, err = call(["bench", "--modulus", "257", "--max-log-n", "10"], "", capsys, monkeypatch)
    assert code == 2 and out == ""
