"""End-to-end tests of the command-line interface."""

import csv
import io

import pytest

from epigames import cli, oracle

BASELINE = """\
[mask]
c_out = 1
c_in = 10
c_use = 100
c_infection = 1000

[bayesian]
rho = 0.5
p1 = 0.5

[distancing]
B = 3000
C = 500
m = 0.034
L = 11300000
rho = 0.0077

[functions]
benefit = linear:10,0
cost = constant:500

[meeting]
z_min = 0.1
z_max = 100
grid_steps = 400

[population]
n = 1000

[policies]
baseline =
mandate = mask_mandate
shutdown = lockdown
test_traced = targeted_testing per_test_cost=50 traced_fraction=0.1

[designer]
weight_infection = 10000
weight_test = 1
weight_economic = 1
"""


@pytest.fixture
def scenario_path(tmp_path):
    path = tmp_path / "scenario.ini"
    path.write_text(BASELINE, encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


class TestReports:
    def test_mask_bayesian_reports_price_threshold_and_decision(self, capsys, scenario_path):
        code, out, err = run_cli(capsys, "mask-bayesian", "--scenario", scenario_path)
        assert code == 0 and err == ""
        assert "125.000000" in out
        assert "wear" in out

    def test_mask_basic_reports_equilibria_and_optima(self, capsys, scenario_path):
        code, out, _ = run_cli(capsys, "mask-basic", "--scenario", scenario_path)
        assert code == 0
        assert "(in, no)" in out
        assert "(no, out)" in out
        assert "(no, no)" in out

    def test_mask_basic_csv_schema(self, capsys, scenario_path):
        code, out, _ = run_cli(
            capsys, "mask-basic", "--scenario", scenario_path, "--format", "csv"
        )
        rows = parse_csv(out)
        assert rows[0] == ["game", "item", "player", "action_p1", "action_p2", "cost_p1", "cost_p2"]
        assert all(len(row) == 7 for row in rows)
        assert ["one_infected", "nash_equilibrium", "", "in", "no", "10", "1000"] in rows

    def test_curves_csv_has_header_and_full_grid(self, capsys, scenario_path):
        code, out, _ = run_cli(
            capsys, "curves", "--scenario", scenario_path, "--format", "csv"
        )
        rows = parse_csv(out)
        assert rows[0] == ["z", "objective"]
        assert len(rows) == 1 + 400 + 1  # header + grid_steps + 1 samples
        for row in rows[1:]:
            float(row[0]), float(row[1])  # every field parses as a number

    def test_grid_steps_flag_overrides_the_scenario(self, capsys, scenario_path):
        code, out, _ = run_cli(
            capsys,
            "curves",
            "--scenario",
            scenario_path,
            "--format",
            "csv",
            "--grid-steps",
            "10",
        )
        assert code == 0
        assert len(parse_csv(out)) == 12

    def test_meeting_opt_reports_optimum_and_decision(self, capsys, scenario_path):
        code, out, _ = run_cli(capsys, "meeting-opt", "--scenario", scenario_path)
        assert code == 0
        assert "z_star" in out and "decision" in out

    def test_distancing_reports_threshold(self, capsys, scenario_path):
        code, out, _ = run_cli(
            capsys, "distancing", "--scenario", scenario_path, "--format", "csv"
        )
        rows = parse_csv(out)
        index = rows[0].index("life_value_threshold")
        # (3000 + 500) * 3819.7
        assert float(rows[1][index]) == pytest.approx(3500 / (0.0077 * 0.034), rel=1e-4)

    def test_policy_compare_ranks_by_designer_cost(self, capsys, scenario_path):
        code, out, _ = run_cli(
            capsys, "policy-compare", "--scenario", scenario_path, "--format", "csv"
        )
        rows = parse_csv(out)
        header = rows[0]
        costs = [float(row[header.index("designer_cost")]) for row in rows[1:]]
        assert costs == sorted(costs)
        assert [row[header.index("rank")] for row in rows[1:]] == ["1", "2", "3", "4"]

    def test_precision_flag_controls_rendering(self, capsys, scenario_path):
        code, out, _ = run_cli(
            capsys, "mask-bayesian", "--scenario", scenario_path, "--precision", "2"
        )
        assert "125.00" in out and "125.000000" not in out


class TestDeterminismAndOutput:
    def test_two_runs_are_byte_identical(self, tmp_path, capsys, scenario_path):
        for command in ("mask-basic", "mask-bayesian", "meeting-opt", "policy-compare"):
            paths = []
            for attempt in ("one", "two"):
                out_path = tmp_path / f"{command}-{attempt}.csv"
                code = cli.run(
                    [
                        command,
                        "--scenario",
                        scenario_path,
                        "--format",
                        "csv",
                        "--out",
                        str(out_path),
                    ]
                )
                assert code == 0
                paths.append(out_path)
            assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_out_file_matches_stdout(self, tmp_path, capsys, scenario_path):
        code, out, _ = run_cli(capsys, "distancing", "--scenario", scenario_path)
        out_path = tmp_path / "report.txt"
        cli.run(["distancing", "--scenario", scenario_path, "--out", str(out_path)])
        assert out_path.read_text(encoding="utf-8") == out


class TestExitCodes:
    def test_invalid_config_exits_one_and_names_the_key(self, tmp_path, capsys):
        path = tmp_path / "bad.ini"
        path.write_text("[bayesian]\nrho = 1.5\np1 = 0.5\n", encoding="utf-8")
        code, out, err = run_cli(capsys, "mask-bayesian", "--scenario", str(path))
        assert code == 1 and out == ""
        assert "[bayesian].rho" in err

    def test_missing_section_exits_one(self, tmp_path, capsys):
        path = tmp_path / "thin.ini"
        path.write_text("[bayesian]\nrho = 0.5\np1 = 0.5\n", encoding="utf-8")
        code, _, err = run_cli(capsys, "mask-basic", "--scenario", str(path))
        assert code == 1 and "[mask] section" in err

    def test_domain_error_exits_two(self, tmp_path, capsys):
        path = tmp_path / "norisk.ini"
        path.write_text(
            "[distancing]\nB = 1\nC = 1\nm = 0.034\nL = 10\nrho = 0\n"
            "[functions]\nbenefit = constant:1\ncost = constant:1\n",
            encoding="utf-8",
        )
        code, _, err = run_cli(capsys, "meeting-opt", "--scenario", str(path))
        assert code == 2 and "domain error" in err

    def test_verify_mismatch_exits_three(self, capsys, scenario_path, monkeypatch):
        monkeypatch.setattr(oracle, "enumerate_pure_ne", lambda game, tol=1e-9: [])
        code, out, err = run_cli(
            capsys, "mask-basic", "--scenario", scenario_path, "--verify"
        )
        assert code == 3 and out == ""
        assert "verification mismatch" in err

    def test_verify_passes_on_every_subcommand(self, capsys, scenario_path):
        for command in cli.SUBCOMMANDS:
            code, _, err = run_cli(capsys, command, "--scenario", scenario_path, "--verify")
            assert code == 0, f"{command} failed verification: {err}"
