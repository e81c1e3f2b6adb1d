import json

import numpy as np
import pytest

from genpotts.cli import main, parse_grid, parse_partition
from genpotts.critical import beta_c_cached


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_grid():
    assert parse_grid("2,3,4.5") == [2.0, 3.0, 4.5]
    assert parse_grid("2:4:1") == [2.0, 3.0, 4.0]
    assert np.allclose(parse_grid("0.2:0.6:0.2"), [0.2, 0.4, 0.6])
    with pytest.raises(ValueError):
        parse_grid("1:2")
    assert parse_partition("2,3") == (2, 3)


def test_critical_json_second_order(capsys):
    code, out, _ = run(capsys, "critical", "--q", "2", "--z", "3")
    assert code == 0
    assert json.loads(out) == {"beta_one": 2.0, "beta_c": 2.0, "order": "second"}


def test_critical_json_first_order(capsys):
    code, out, _ = run(capsys, "critical", "--q", "3", "--z", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == "first"
    assert payload["beta_c"] == pytest.approx(4 * np.log(2), abs=1e-8)
    assert payload["beta_zero"] < payload["beta_c"] <= payload["beta_one"]


def test_critical_validation_exit(capsys):
    code, _, err = run(capsys, "critical", "--q", "1.5", "--z", "2")
    assert code == 2
    assert "q" in err


def test_phase_diagram_strip_columns(capsys, tmp_path):
    out_path = tmp_path / "pd.csv"
    code, _, _ = run(capsys, "phase-diagram", "--q-grid", "2", "--z-grid", "2:4:0.5",
                     "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "q,z,beta_zero,beta_one,beta_c,order"
    for line in lines[1:]:
        q, z, b0, b1, bc, order = line.split(",")
        assert b0 == ""  # the three curves coincide on the strip
        assert float(bc) == pytest.approx(float(b1), rel=1e-12)
        assert order == "second"


def test_phase_diagram_first_order_rows(capsys):
    code, out, _ = run(capsys, "phase-diagram", "--q-grid", "3", "--z-grid", "3:7:1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    for line in lines[1:]:
        _, _, b0, b1, bc, order = line.split(",")
        assert float(b0) < float(bc) < float(b1)
        assert order == "first"


def test_landscape_csv(capsys, tmp_path):
    out_path = tmp_path / "l.csv"
    code, out, _ = run(capsys, "landscape", "--q", "3", "--z", "4", "--beta", "5",
                       "--u-grid", "0:0.999:0.111", "--out", str(out_path))
    assert code == 0
    stations = json.loads(out)
    assert "stationary_points" in stations and "global_min_u" in stations
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "u,k,k_prime"
    rows = [line.split(",") for line in lines[1:]]
    # the value column at u=0 is the closed form -(beta/z) q^(1-z)
    assert float(rows[0][1]) == pytest.approx(-(5 / 4) * 3 ** (-3), rel=1e-12)
    assert float(rows[0][2]) == 0.0
    assert all(float(r[0]) <= 1 - 1e-9 for r in rows)


def test_fuzzy_json(capsys):
    code, out, _ = run(capsys, "fuzzy", "--q", "5", "--z", "3", "--beta", "1",
                       "--partition", "2,3")
    assert code == 0
    payload = json.loads(out)
    assert payload["threshold_beta"] == pytest.approx(beta_c_cached(3, 3).beta_c, rel=1e-12)
    assert payload["governing_class"] == 3
    assert payload["is_gibbs"] is True

    code, out, _ = run(capsys, "fuzzy", "--q", "5", "--z", "3", "--beta", "1",
                       "--partition", "2,2,1")
    assert json.loads(out)["gibbs_for_all_beta"] is True

    code, _, _ = run(capsys, "fuzzy", "--q", "5", "--z", "3", "--beta", "1",
                     "--partition", "2,2")
    assert code == 2


def test_kernel_discontinuity_exit(capsys):
    bc33 = beta_c_cached(3, 3).beta_c
    beta = 1.2 * bc33
    nustar = (bc33 / beta) ** 0.5
    code, _, err = run(capsys, "kernel", "--q", "5", "--z", "3", "--beta", str(beta),
                       "--partition", "2,3", "--nu", f"{1 - nustar},{nustar}")
    assert code == 3
    assert "class 1" in err


def test_kernel_row_json(capsys):
    code, out, _ = run(capsys, "kernel", "--q", "3", "--z", "3", "--beta", "1",
                       "--partition", "1,2", "--nu", "0.5,0.5")
    assert code == 0
    row = json.loads(out)["probabilities"]
    assert sum(row) == pytest.approx(1.0, abs=1e-12)


def test_scheme_table(capsys, tmp_path):
    scheme = {
        "q": 5, "z": 5,
        "partitions": [
            [[1], [2], [3], [4], [5]],
            [[1, 2], [3], [4], [5]],
            [[1, 2, 3], [4], [5]],
            [[1, 2, 3], [4, 5]],
            [[1, 2, 3, 4, 5]],
        ],
    }
    path = tmp_path / "scheme.json"
    path.write_text(json.dumps(scheme))
    bc2 = beta_c_cached(2, 5).beta_c
    bc3 = beta_c_cached(3, 5).beta_c
    code, out, _ = run(capsys, "scheme", "--file", str(path), "--beta", str(0.5 * (bc2 + bc3)))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,sizes,r_star,status"
    statuses = [line.split(",")[3] for line in lines[1:]]
    assert statuses == ["trivial_endpoint", "non_gibbs", "gibbs", "non_gibbs", "trivial_endpoint"]
    stars = [line.split(",")[2] for line in lines[1:]]
    assert stars == ["", "2", "3", "2", ""]


def test_scheme_validation_exit(capsys, tmp_path):
    bad = {
        "q": 3, "z": 5,
        "partitions": [[[1], [2], [3]], [[1], [2], [3]], [[1, 2, 3]]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "scheme", "--file", str(path), "--beta", "1")
    assert code == 2
    assert "t = 1" in err


def test_sample_deterministic_bytes(capsys, tmp_path):
    args = ["sample", "--n", "40", "--q", "3", "--z", "2", "--beta", "2.5",
            "--sweeps", "30", "--seed", "7"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().strip().splitlines()
    assert lines[0] == "sweep_index,n_1,n_2,n_3"
    assert len(lines) == 31
    counts = [int(c) for c in lines[1].split(",")[1:]]
    assert sum(counts) == 40


def test_sample_record_every(capsys, tmp_path):
    out_path = tmp_path / "thin.csv"
    code = main(["sample", "--n", "10", "--q", "2", "--z", "2", "--beta", "1",
                 "--sweeps", "10", "--record-every", "5", "--seed", "1",
                 "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "5"]


def test_rcm_csv(capsys):
    code, out, _ = run(capsys, "rcm", "--n", "40", "--z-int", "2", "--q", "1",
                       "--lambda-grid", "0.0,0.5", "--samples", "12", "--seed", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,mean_max_component_fraction,stderr"
    assert float(lines[1].split(",")[1]) == pytest.approx(1 / 40, abs=1e-12)


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gradient")
    assert code == 0
    assert out.startswith("[PASS] gradient")


def test_phase_diagram_threaded_matches_sequential(capsys, tmp_path, monkeypatch):
    args = ["phase-diagram", "--q-grid", "2,3,4", "--z-grid", "2,3"]
    a, b = tmp_path / "seq.csv", tmp_path / "par.csv"
    monkeypatch.setenv("GENPOTTS_THREADS", "1")
    assert main(args + ["--out", str(a)]) == 0
    monkeypatch.setenv("GENPOTTS_THREADS", "3")
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()  # rows in input order either way
