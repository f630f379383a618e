import json
import subprocess
import sys

import pytest

from bottchern.cli import BundleSpecError, main, parse_bundle_spec, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_bundle_spec():
    spec = parse_bundle_spec("1,1", 1)
    assert spec.twists == (1, 1) and spec.n == 1
    flat = parse_bundle_spec("0", 3)
    assert flat.r == 1 and flat.n == 3
    with pytest.raises(BundleSpecError, match="'x'"):
        parse_bundle_spec("2,x", 1)
    with pytest.raises(BundleSpecError, match="base-dim"):
        parse_bundle_spec("1,1", None)


def test_parse_range():
    assert parse_range("3") == (3, 3)
    assert parse_range("2-4") == (2, 4)


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["compute", "height", "--twists", "1,1", "--base-dim", "1"], "2\n"),
        (["compute", "fl-coefficient"], "-1/6\n"),
        (["compute", "r-class", "--rank", "2", "--order", "2"], "R_1 = -1\nR_2 = -3/2*s'_1\n"),
        (["compute", "s-class", "--rank", "2", "--order", "3"], "S_1 = -1\nS_2 = -1/2*s'_1\nS_3 = -1/3*s'_2\n"),
    ],
)
def test_compute(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_compute_records(capsys):
    code, out, _ = run(capsys, "compute", "r-class", "--rank", "3", "--order", "2", "--format", "records")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0] == {"class": "R", "index": 1, "coefficients": [["1", "-5/2"]]}
    assert rows[1]["coefficients"] == [["s'_1", "-10/3"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "height", "--twists", "2,x", "--base-dim", "1"],
        ["compute", "height", "--twists", "1,1"],
        ["compute", "r-class", "--rank", "1"],
        ["verify", "--rank", "9"],
        ["verify", "--trials", "0"],
        ["verify", "--suite", "nonsense"],
        ["verify", "--rank", "3-2"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_parse_error_names_the_token(capsys):
    _, _, err = run(capsys, "compute", "height", "--twists", "2,x", "--base-dim", "1")
    assert "'x'" in err


VERIFY = ["verify", "--suite", "bott-chern", "--rank", "2-3", "--base-dim", "1-2", "--degree-max", "2",
          "--trials", "2", "--seed", "5"]


def test_verify_is_deterministic(capsys):
    first = run(capsys, *VERIFY, "--format", "records", "--no-timing")
    second = run(capsys, *VERIFY, "--format", "records", "--no-timing")
    assert first == second and first[0] == 0
    third = run(capsys, *VERIFY[:-1], "6", "--format", "records", "--no-timing")
    assert third[1] != first[1]


def test_timing_fields_are_the_only_difference(capsys):
    def strip(text):
        rows = [json.loads(line) for line in text.splitlines()]
        for row in rows:
            row.pop("seconds", None)
            row.get("summary", {}).pop("seconds", None)
        return rows

    a = run(capsys, *VERIFY, "--format", "records")
    b = run(capsys, *VERIFY, "--format", "records")
    assert strip(a[1]) == strip(b[1])
    assert all("seconds" in json.loads(line) for line in a[1].splitlines()[1:-1])


def test_records_are_sorted(capsys):
    _, out, _ = run(capsys, *VERIFY, "--format", "records", "--no-timing")
    rows = [json.loads(line) for line in out.splitlines()[1:-1]]
    keys = [(row["check"], sorted((k, str(v)) for k, v in row["params"].items())) for row in rows]
    assert keys == sorted(keys)


def test_negative_control_exits_1_with_witness(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jets", "--non-normal-frame", "--rank", "2",
                       "--base-dim", "1-2", "--trials", "1")
    assert code == 1
    fails = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert fails and all("witness: " in line for line in fails)


def test_flat_segre_inversion(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "segre-inversion", "--coeff-bound", "0", "--no-timing")
    assert code == 0
    assert "FAIL" not in out


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("# flat key=value\nsuite = series\nrank = 2-3\nhermitian = true\nseed = 4\n")
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--format", "records", "--no-timing")
    assert code == 0
    header = json.loads(out.splitlines()[0])["config"]
    assert header["suite"] == "series" and header["hermitian"] is True and header["seed"] == 4
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--seed", "9", "--format", "records")
    assert json.loads(out.splitlines()[0])["config"]["seed"] == 9


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no equals sign here\n")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bottchern", "compute", "fl-coefficient"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "-1/6\n"
