import json
import math

import pytest

from extremal_primes.cli import build_parser, main

SUBCOMMANDS = [
    "scan",
    "predict",
    "st-hist",
    "approx-verify",
    "fourier-dump",
    "sympow-dump",
    "smoothed-sum",
]


@pytest.fixture()
def curve_file(tmp_path):
    path = tmp_path / "curves.jsonl"
    path.write_text('{"label": "E11", "A": 1, "B": 1, "bad_primes": []}\n')
    return path


@pytest.fixture()
def sympow_curve_file(tmp_path):
    path = tmp_path / "sp.jsonl"
    rows = [
        {
            "label": "m37",
            "A": 1,
            "B": 17,
            "bad_primes": [
                {"p": 37, "kind": "multiplicative", "a_p1": 1},
                {"p": 2, "kind": "potentially_multiplicative", "a_p1": 0, "delta1_at_2": 1},
                {"p": 211, "kind": "potentially_good_abelian_4"},
            ],
        }
    ]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    return path


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_every_subcommand_has_help(cmd, capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([cmd, "--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "--" in out


def test_predict_output(capsys):
    assert main(["predict", "--x", "1e6", "--cm"]) == 0
    assert capsys.readouterr().out.strip() == "485.726646567"
    assert main(["predict", "--x", "1e6", "--no-cm"]) == 0
    assert capsys.readouterr().out.strip() == "1.94290658627"


def test_predict_domain_error(capsys):
    assert main(["predict", "--x", "2", "--cm"]) == 1
    assert "error:" in capsys.readouterr().err


def test_scan_json(curve_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["scan", "--curves", str(curve_file), "--lo", "2", "--hi", "100",
                 "--out", str(out), "--format", "json"]) == 0
    obj = json.loads(out.read_text())
    assert obj["n_primes"] == 22
    assert obj["skipped_primes"] == [[2, "bad"], [3, "small"], [31, "bad"]]
    assert "records" not in obj


def test_scan_json_with_records(curve_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["scan", "--curves", str(curve_file), "--lo", "2", "--hi", "30",
                 "--records", "--out", str(out), "--format", "json"]) == 0
    obj = json.loads(out.read_text())
    assert [r["p"] for r in obj["records"]] == [5, 7, 11, 13, 17, 19, 23, 29]
    assert obj["records"][0]["a_p"] == -3


def test_scan_csv_and_prime_count_consistency(curve_file, tmp_path):
    out = tmp_path / "report.csv"
    assert main(["scan", "--curves", str(curve_file), "--lo", "2", "--hi", "1000",
                 "--out", str(out), "--format", "csv"]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "p,a_p,theta,extremal"
    # pi(1000) = 168, minus skipped {2, 3, 31}
    assert len(lines) - 1 == 168 - 3


def test_scan_csv_rejects_multiple_curves(tmp_path, capsys):
    path = tmp_path / "two.jsonl"
    path.write_text(
        '{"label": "a", "A": 1, "B": 1, "bad_primes": []}\n'
        '{"label": "b", "A": -1, "B": 0, "bad_primes": []}\n'
    )
    out = tmp_path / "x.csv"
    assert main(["scan", "--curves", str(path), "--lo", "2", "--hi", "50",
                 "--out", str(out), "--format", "csv"]) == 1
    assert "one-curve" in capsys.readouterr().err


def test_scan_threads_byte_identical(curve_file, tmp_path):
    out1 = tmp_path / "a.csv"
    out8 = tmp_path / "b.csv"
    base = ["scan", "--curves", str(curve_file), "--lo", "2", "--hi", "20000", "--format", "csv"]
    assert main(base + ["--out", str(out1), "--threads", "1"]) == 0
    assert main(base + ["--out", str(out8), "--threads", "8"]) == 0
    assert out1.read_bytes() == out8.read_bytes()


def test_st_hist_output(curve_file, capsys):
    assert main(["st-hist", "--curves", str(curve_file), "--lo", "2", "--hi", "2000",
                 "--bins", "4"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "label,bin_lo,bin_hi,empirical,mu_st"
    assert len(lines) == 5
    emp = sum(float(line.split(",")[3]) for line in lines[1:])
    assert emp == pytest.approx(1.0, abs=1e-9)


def test_approx_verify_passes(capsys):
    assert main(["approx-verify", "--M", "16"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["interval"] == [0.0, 0.0625]
    assert obj["all_pass"] is True
    assert obj["majorant"]["bounds_check"]["f0_pass"] is True
    assert obj["minorant"]["bounds_check"]["fn_pass"] is True
    assert obj["sandwich"]["pass"] is True
    assert obj["edge_decay"]["pass"] is True


def test_approx_verify_custom_interval(capsys):
    assert main(["approx-verify", "--M", "12", "--alpha", "0.4", "--beta", "1.2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert "edge_decay" not in obj
    assert obj["all_pass"] is True


def test_fourier_dump(capsys):
    assert main(["fourier-dump", "--M", "8", "--alpha", "0.0", "--beta", "0.5", "--side", "maj"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["side"] == "majorant"
    assert len(obj["coeffs"]) == 9
    assert obj["M"] == 8
    assert obj["bounds_check"]["f0_pass"] is True


def test_sympow_dump(sympow_curve_file, capsys):
    assert main(["sympow-dump", "--curves", str(sympow_curve_file), "--n", "3"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().split("\n")]
    assert [row["p"] for row in lines] == [37, 2, 211]
    mult, potmult, abelian = lines
    assert (mult["eps_n"], mult["delta_n"], mult["exact"]) == (3, 0, True)
    assert mult["lambda_m1"] == pytest.approx(math.log(37) / 37**1.5, rel=1e-9)
    assert (potmult["eps_n"], potmult["delta_n"]) == (4, 2)
    assert potmult["lambda_m1"] == 0.0
    assert abelian["exact"] is False
    assert abelian["lambda_m1"] is None


def test_smoothed_sum_cli(sympow_curve_file, capsys):
    assert main(["smoothed-sum", "--curves", str(sympow_curve_file), "--n", "0", "--x", "2000"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["label"] == "m37"
    assert 0.8 <= obj["ratio"] <= 1.2
    assert obj["value"] == pytest.approx(obj["ratio"] * obj["main_term"], rel=1e-9)


def test_missing_curve_file(tmp_path, capsys):
    assert main(["scan", "--curves", str(tmp_path / "nope.jsonl"), "--lo", "2", "--hi", "10",
                 "--out", str(tmp_path / "o.json")]) == 1
    assert "error:" in capsys.readouterr().err
