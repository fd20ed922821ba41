import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bellcalc.cli import main, named_sequence, parse_sequence_file
from bellcalc.errors import ParseError
from bellcalc.sequence import Sequence, conv_power


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_bell_plain():
    assert run("bell", "--n", "4", "--k", "2", "--seq", "ones", "--flavor", "exp") == (0, "7\n")


@pytest.mark.parametrize("seq", ["ones", "factorial", "geometric:2/3"])
def test_bell_independent_of_algorithm(seq):
    outputs = {run("bell", "--n", "18", "--k", "6", "--seq", seq, "--algorithm", a)[1]
               for a in ("auto", "91", "92", "genal", "recurrence")}
    assert len(outputs) == 1


def test_bell_json_with_counts():
    code, text = run("bell", "--n", "100", "--k", "10", "--seq", "ones", "--format", "json", "--count")
    obj = json.loads(text)
    assert code == 0 and obj["algorithm"] == "92"
    assert obj["cost"] == {"predicted": 64327, "measured": 64327, "n0": 0}


def test_bell_ordinary_flavor():
    assert run("bell", "--n", "5", "--k", "3", "--seq", "ones", "--flavor", "ord")[1] == "6\n"


def test_bell_with_leading_zeros_uses_break_down(tmp_path):
    path = write(tmp_path, "x.json", {"start": 1, "terms": ["0", "0"] + ["1"] * 30})
    code, text = run("bell", "--n", "30", "--k", "6", "--in", path, "--format", "json", "--count")
    obj = json.loads(text)
    assert obj["algorithm"] == "genal" and obj["cost"]["n0"] == 2
    assert obj["cost"]["measured"] == obj["cost"]["predicted"]
    assert run("bell", "--n", "30", "--k", "6", "--in", path, "--algorithm", "recurrence")[1] == obj["value"] + "\n"


def test_conv_root_cli(tmp_path):
    path = write(tmp_path, "x.json", {"start": 0, "terms": ["1", "2"]})
    code, text = run("conv-root", "--k", "2", "--in", path, "--upto", "3")
    obj = json.loads(text)
    assert code == 0
    assert obj["terms"] == ["1", "1", "-1/2", "1/2"] and obj["sign_pair"] is True
    root = Sequence.from_json_obj(obj)
    assert conv_power(root, 2, 3) == Sequence(0, [1, 2])


def test_conv_root_no_root(tmp_path, capsys):
    path = write(tmp_path, "x.json", {"start": 2, "terms": ["1", "2"]})
    code, _ = run("conv-root", "--k", "3", "--in", path)
    err = json.loads(capsys.readouterr().err)
    assert code == 1 and err["code"] == "NO_ROOT" and err["message"]


def test_conv_power_methods_agree():
    a = run("conv-power", "--k", "3", "--upto", "9", "--seq", "geometric:1/2")
    b = run("conv-power", "--k", "3", "--upto", "9", "--seq", "geometric:1/2", "--method", "direct")
    assert a == b and json.loads(a[1])["start"] == 3


def test_invert_cli(tmp_path):
    x = Sequence(1, [1, 2, Fraction(-1, 3), 4, 5, 6])
    from bellcalc.bell_basic import exponential_bell_table

    y = Sequence(1, exponential_bell_table(x, 7, 2)[2][1:])
    path = write(tmp_path, "y.json", y.to_json_obj())
    code, text = run("invert", "--k", "2", "--in", path, "--flavor", "exp")
    assert code == 0 and Sequence.from_json(text) == x


def test_compound_cli(tmp_path, capsys):
    path = write(tmp_path, "p.json", {"start": 1, "terms": ["1/2", "1/2"]})
    assert run("compound", "--k", "2", "--n", "3", "--in", path) == (0, "1/2\n")
    bad = write(tmp_path, "q.json", {"start": 1, "terms": ["1/2", "1/3"]})
    assert run("compound", "--k", "2", "--n", "3", "--in", bad)[0] == 1
    assert json.loads(capsys.readouterr().err)["code"] == "INVALID_DISTRIBUTION"


def test_table1_cli():
    code, text = run("table1")
    rows = text.splitlines()
    assert code == 0 and rows[0] == "n,k,n0,Q,Qprime,e_percent"
    assert "100,10,0,83002,64327,22.5" in rows
    assert len(rows) == 1 + 81


def test_table1_grid_and_custom_lists():
    code, text = run("table1", "--ns", "50,100", "--ks", "10,50", "--layout", "grid")
    assert text.splitlines() == ["k\\n,50,100", "10,12.9,22.5", "50,-22307.8,19.2"]


def test_figure1_cli():
    code, text = run("figure1", "--k", "50", "--n-max", "60", "--n0s", "0,1")
    rows = text.splitlines()
    assert rows[0] == "n,k,n0,Q,Qprime,e_percent" and len(rows) == 1 + 11 * 2
    assert rows[2] == "50,50,1,,,"


def test_bench_verify_small():
    code, text = run("bench", "--k-max", "4", "--n-max", "12", "--verify")
    assert code == 0 and ",no" not in text


def test_bench_verify_reports_mismatch(monkeypatch, capsys):
    import bellcalc.cli as cli

    def broken(k_max, n_max, n0s):
        yield 5, 2, 0, "91", 10, 11

    monkeypatch.setattr(cli, "bench_rows", broken)
    code, _ = run("bench", "--verify")
    assert code == 1 and json.loads(capsys.readouterr().err)["code"] == "COST_MISMATCH"


@pytest.mark.parametrize(
    "content, code",
    [
        ('{"start":1,"terms":["1.5"]}', "PARSE_ERROR"),
        ("not json", "MALFORMED_JSON"),
        ('{"start":1}', "MISSING_FIELD"),
    ],
)
def test_sequence_file_errors(tmp_path, capsys, content, code):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run("conv-root", "--k", "2", "--in", str(path))[0] == 2
    assert json.loads(capsys.readouterr().err)["code"] == code


def test_parse_sequence_file(tmp_path):
    path = write(tmp_path, "x.json", {"start": 1, "terms": ["1", "1/2"]})
    x = parse_sequence_file(path)
    assert x[1] == 1 and x[2] == Fraction(1, 2)
    assert parse_sequence_file(write(tmp_path, "z.json", {"start": 0, "terms": []})).is_zero()
    with pytest.raises(ParseError) as info:
        parse_sequence_file(tmp_path / "missing.json")
    assert info.value.code == "FILE_NOT_FOUND"


def test_usage_error(capsys):
    assert run("bell", "--n", "x")[0] == 2
    assert json.loads(capsys.readouterr().err)["code"] == "USAGE_ERROR"


def test_named_sequences():
    assert named_sequence("ones", 3) == Sequence(1, [1, 1, 1])
    assert named_sequence("factorial", 4) == Sequence(1, [1, 2, 6, 24])
    assert named_sequence("geometric:2", 3) == Sequence(1, [2, 4, 8])
    with pytest.raises(ParseError):
        named_sequence("primes", 3)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bellcalc", "bell", "--n", "4", "--k", "2", "--seq", "ones"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "7\n"
