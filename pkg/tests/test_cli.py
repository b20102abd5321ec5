import json
import subprocess
import sys

from lensroots import mixedpoly as mp


def run_cli(args, stdin_text=None):
    proc = subprocess.run(
        [sys.executable, "-m", "lensroots", *args],
        input=stdin_text, capture_output=True, text=True, timeout=240)
    return proc


def poly_json(f):
    return json.dumps(mp.to_json_dict(f))


def test_family_pipe_solve_rhie3():
    made = run_cli(["family", "rhie_preset", "--preset", "3"])
    assert made.returncode == 0
    solved = run_cli(["solve"], stdin_text=made.stdout)
    assert solved.returncode == 0
    report = json.loads(solved.stdout)
    assert report["rho"] == 10
    assert report["status"] == "certified"
    assert report["beta"] == 2 == report["signed_sum"]


def test_family_ell_pipe_solve():
    made = run_cli(["family", "ell", "--n", "5", "--m", "2", "--a", "0.6"])
    solved = run_cli(["solve", "--symmetry", "5"], stdin_text=made.stdout)
    report = json.loads(solved.stdout)
    assert report["rho"] == 15
    # the multiple point at the origin leaves the strict count uncertified
    assert solved.returncode == 4
    assert [p["multiplicity"] for p in report["multiple_points"]] == [-2]
    assert sorted(len(o) for o in report["orbits"]) == [5, 5, 5]


def test_beta_not_admissible_exit_3():
    f = mp.Z ** 2 - mp.ZBAR ** 2
    proc = run_cli(["beta"], stdin_text=poly_json(f))
    assert proc.returncode == 3
    report = json.loads(proc.stdout)
    assert report["beta"] is None and not report["admissible"]
    assert report["error"]["code"] == "not_admissible"


def test_beta_report_contents():
    f = mp.Z ** 2 - 4 * mp.ZBAR ** 2
    proc = run_cli(["beta"], stdin_text=poly_json(f))
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["beta"] == -2 and report["admissible"]
    assert len(report["factorization"]["factors"]) == 2


def test_bad_json_exit_2():
    proc = run_cli(["solve"], stdin_text="{broken")
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["error"]["code"] == "input_error"


def test_solve_report_round_trips():
    made = run_cli(["family", "rhie_preset", "--preset", "2"])
    first = json.loads(run_cli(["solve"], stdin_text=made.stdout).stdout)
    # feeding the report's own polynomial back reproduces identical counts
    again = json.loads(run_cli(
        ["solve"], stdin_text=json.dumps(first["polynomial"])).stdout)
    assert first["rho"] == again["rho"] == 5
    assert first["roots"] == again["roots"]


def test_radial_subcommand():
    proc = run_cli(["radial", "--n", "5", "--m", "1", "--a", "0.1"])
    report = json.loads(proc.stdout)
    assert report["sturm_count"] == 3
    assert report["census_total"] == 15
    assert report["coefficients"][-1] == 1.0


def test_milnor_subcommand():
    made = run_cli(["family", "rhie_preset", "--preset", "2"])
    proc = run_cli(["milnor", "--p", "1", "--q", "1"], stdin_text=made.stdout)
    report = json.loads(proc.stdout)
    assert report == {
        "weight": [1, 1], "polar_degree": 1, "radial_degree": 3, "rho": 5,
        "chi_fiber": -3, "chi_fiber_reduced": -3, "link_components": 5,
        "convenient": True,
    }


def test_census_csv(tmp_path):
    out = tmp_path / "census.csv"
    proc = run_cli(["census", "ell", "--n", "4", "--m", "1",
                    "--sweep", "a", "0.3", "0.5", "2", "--csv", str(out)])
    assert proc.returncode == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "param,rho,beta,certified,seconds"
    assert len(rows) == 3
    for row in rows[1:]:
        param, rho, beta, certified, seconds = row.split(",")
        assert int(rho) == 13  # 3n nonzero roots + the simple origin root
        assert int(beta) == 3


def test_svg_deterministic(tmp_path):
    made = run_cli(["family", "rhie_preset", "--preset", "2"])
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for target in (a, b):
        proc = run_cli(["plot", "--svg", str(target), "--grid", "60",
                        "--box", "-2", "2", "-2", "2"], stdin_text=made.stdout)
        assert proc.returncode == 0
    assert a.read_text() == b.read_text()
    text = a.read_text()
    assert "green" in text and "red" in text and text.startswith("<svg")


def test_solve_svg_has_root_markers(tmp_path):
    made = run_cli(["family", "rhie_preset", "--preset", "2"])
    target = tmp_path / "roots.svg"
    proc = run_cli(["solve", "--svg", str(target), "--grid", "60"],
                   stdin_text=made.stdout)
    assert proc.returncode == 0
    assert target.read_text().count("<circle") == 5
