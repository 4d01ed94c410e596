from __future__ import annotations

import json
import subprocess
import sys

import pytest

from surgeq import fileio
from surgeq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_lens(capsys):
    code, out, _ = run(capsys, "invariants", "fixture:lens_5_2")
    doc = json.loads(out)
    assert code == 0
    assert doc["h1"] == {"betti": 0, "factors": [5]}
    assert doc["linking_form"]["orders"] == [5]
    assert all(isinstance(x, str) for row in doc["linking_form"]["values"] for x in row)


def test_invariants_unlink_and_borromean(capsys):
    _, out, _ = run(capsys, "invariants", "fixture:unlink3")
    doc = json.loads(out)
    assert doc["h1"]["betti"] == 3 and doc["trilinear"] == {"m": 3, "coeffs": {}}
    _, out, _ = run(capsys, "invariants", "fixture:borromean", "--certificate")
    doc = json.loads(out)
    assert abs(doc["trilinear"]["coeffs"]["1,2,3"]) == 1
    assert doc["trilinear_invariants"]["content"] == 1


@pytest.mark.parametrize("argv, code", [
    (["compare", "fixture:lens_7_1", "fixture:lens_7_2"], 0),
    (["compare", "fixture:borromean", "fixture:unlink3", "--relation", "rational2"], 1),
    (["compare", "fixture:whitehead", "fixture:unlink2", "--relation", "k=3"], 1),
    (["compare", "fixture:whitehead", "fixture:unlink2", "--relation", "k=2"], 0),
    (["compare", "fixture:lens_5_1", "fixture:lens_5_2"], 1),
    (["lens", "7", "1", "7", "2"], 0),
    (["lens", "7", "1", "7", "6"], 1),
])
def test_exit_codes(capsys, argv, code):
    got, out, _ = run(capsys, *argv)
    assert got == code
    doc = json.loads(out)
    assert doc["status"] == ["Equivalent", "NotEquivalent"][code]


def test_unknown_verdict_exit(tmp_path, capsys):
    path = tmp_path / "bare.json"
    path.write_text(json.dumps({"components": [{"framing": "0"}] * 3}))
    code, out, _ = run(capsys, "compare", str(path), "fixture:unlink3")
    assert code == 4 and json.loads(out)["status"] == "Unknown"


def test_certificate_flag(capsys):
    _, out, _ = run(capsys, "compare", "fixture:lens_5_1", "fixture:lens_5_2")
    assert "a" not in json.loads(out)["certificate"]
    _, out, _ = run(capsys, "compare", "fixture:lens_5_1", "fixture:lens_5_2", "--certificate")
    assert json.loads(out)["certificate"]["a"]["h1"]["factors"] == [5]


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "invariants", str(bad))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "invariants", "fixture:nope")
    assert code == 2
    bad.write_text(json.dumps({"components": [{"framing": 0.5}]}))
    assert run(capsys, "invariants", str(bad))[0] == 2
    bad.write_text(json.dumps({"components": [{"framing": "1"}, {"framing": "1"}], "lk": [[0, 1], [2, 0]]}))
    assert run(capsys, "invariants", str(bad))[0] == 2


def test_precondition_exit(capsys):
    code, _, err = run(capsys, "compare", "fixture:lens_5_1", "fixture:lens_5_2", "--relation", "k=2")
    assert code == 3 and "zero-framed" in err
    code, _, err = run(capsys, "lens", "6", "2", "6", "1")
    assert code == 3


def test_bad_relation(capsys):
    with pytest.raises(SystemExit):
        main(["compare", "fixture:unlink2", "fixture:unlink2", "--relation", "k=1"])


def test_expand_roundtrip(tmp_path, capsys):
    out = tmp_path / "chain.json"
    assert run(capsys, "expand", "fixture:lens_5_2", "-o", str(out))[0] == 0
    chain = fileio.load(out)
    assert chain.framings == (3, 2) and chain.lk == ((0, 1), (1, 0))
    _, text, _ = run(capsys, "expand", "fixture:unlink2")
    assert fileio.loads(text) == fileio.fixture("unlink2")
    _, text, _ = run(capsys, "expand", "fixture:unknot_1_2")
    doc = json.loads(text)
    assert [c["framing"] for c in doc["components"]] == ["1", "2"]


@pytest.mark.parametrize("name", fileio.fixture_names())
def test_fixture_roundtrip(name):
    link = fileio.fixture(name)
    again = fileio.loads(fileio.dumps(link))
    assert again == link and again.name == link.name


def test_rationals_serialised_as_strings():
    doc = json.loads(fileio.dumps(fileio.fixture("lens_5_2")))
    assert doc["components"] == [{"framing": "5/2"}]


def test_milnor_command(capsys):
    _, out, _ = run(capsys, "milnor", "fixture:whitehead", "--max-length", "5")
    doc = json.loads(out)
    assert doc["first_nonvanishing_length"] == 4 and abs(doc["first_nonvanishing"]["value"]) == 1
    _, out, _ = run(capsys, "milnor", "fixture:borromean", "--index", "1,2,3")
    assert json.loads(out) == {"index": [1, 2, 3], "value": 1, "modulus": 0}


def test_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", '{"m": 4, "coeffs": {"1,2,3": 1}}', '{"m": 4, "coeffs": {"2,3,4": 1}}')
    assert code == 0 and json.loads(out)["status"] == "Yes"
    code, out, _ = run(capsys, "orbit", '{"m": 3, "coeffs": {"1,2,3": 2}}')
    assert code == 0 and json.loads(out)["invariants"]["content"] == 2
    assert run(capsys, "orbit", "{bad")[0] == 2


@pytest.mark.parametrize("m, k, rank", [("2", "3", "1"), ("4", "2", "4")])
def test_nilpotent_ranks(capsys, m, k, rank):
    assert run(capsys, "nilpotent-ranks", m, k)[1].strip() == rank


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surgeq", "lens", "5", "1", "5", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "Equivalent"
