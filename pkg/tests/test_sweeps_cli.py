import os

import numpy as np
import pytest

from qcorr import cli, measures, states, sweeps
from qcorr.sweeps import ConfigError, SweepConfig


class TestGridParsing:
    def test_range_and_list_and_scalar(self):
        assert cli.parse_grid("0:0.5:1") == (0.0, 0.5, 1.0)
        assert cli.parse_grid("0,0.25,1") == (0.0, 0.25, 1.0)
        assert cli.parse_grid("0.3") == (0.3,)

    def test_inclusive_end_with_float_steps(self):
        grid = cli.parse_grid("0:0.1:1")
        assert len(grid) == 11 and grid[-1] == 1.0

    def test_rejects_malformed(self):
        for bad in ("0:0.1", "a:b:c", "0:-0.1:1", "0:0:1"):
            with pytest.raises(ConfigError):
                cli.parse_grid(bad)


class TestConfigFile:
    def test_round_trip(self, tmp_path):
        p = tmp_path / "cfg"
        p.write_text(
            "# comment\n"
            "scenario = PHASE_ONE\n"
            "family=PHI\n"
            "c_in = 0.5   # inline comment\n"
            "grid = 0:0.5:1\n"
        )
        cfg = cli.read_config(str(p))
        assert cfg == {
            "scenario": "PHASE_ONE",
            "family": "PHI",
            "c_in": "0.5",
            "grid": "0:0.5:1",
        }

    def test_unknown_key_rejected(self, tmp_path):
        p = tmp_path / "cfg"
        p.write_text("scenario=PHASE_ONE\nwibble=3\n")
        with pytest.raises(ConfigError, match="unknown key"):
            cli.read_config(str(p))

    def test_duplicate_key_rejected(self, tmp_path):
        p = tmp_path / "cfg"
        p.write_text("grid=0:0.5:1\ngrid=0:0.1:1\n")
        with pytest.raises(ConfigError, match="duplicate"):
            cli.read_config(str(p))


class TestSweepConfig:
    def test_rejects_bad_scenario(self):
        with pytest.raises(ConfigError):
            SweepConfig(scenario="PHASE_THREE")

    def test_rejects_wrong_bipartition_for_scenario(self):
        with pytest.raises(ConfigError, match="E_AE_B"):
            SweepConfig(scenario="PHASE_ONE", bipartitions=("E_AE_B",))
        SweepConfig(scenario="PHASE_BOTH", bipartitions=("E_AE_B",))  # fine

    def test_rejects_grid_b_for_single_damping(self):
        with pytest.raises(ConfigError):
            SweepConfig(scenario="AMP_ONE", grid_b=(0.0, 1.0))

    def test_rejects_unsorted_grid(self):
        with pytest.raises(ConfigError):
            SweepConfig(scenario="PHASE_ONE", grid=(1.0, 0.0))

    def test_rejects_bad_eta(self):
        with pytest.raises(ConfigError):
            SweepConfig(scenario="WERNER_PHASE", eta=0.0)


class TestRunSweep:
    def test_phase_both_bell_endpoints(self):
        cfg = SweepConfig(
            scenario="PHASE_BOTH",
            c_in_values=(1.0,),
            grid=(0.0, 1.0),
            bipartitions=("AB",),
        )
        rows = sweeps.run_sweep(cfg).rows
        assert len(rows) == 2
        start, end = rows
        assert abs(start.report.eof - 1.0) <= 1e-6
        assert abs(start.report.discord_a - 1.0) <= 1e-6
        assert end.report.eof <= 1e-6 and end.report.discord_a <= 1e-6

    def test_amp_one_full_damping_swaps_correlations(self):
        cfg = SweepConfig(
            scenario="AMP_ONE",
            c_in_values=(0.5,),
            grid=(1.0,),
            bipartitions=("AB", "BE"),
        )
        rows = {r.bipartition: r.report for r in sweeps.run_sweep(cfg).rows}
        assert rows["AB"].eof <= 1e-6 and rows["AB"].discord_sym <= 1e-6
        initial = measures.eof(states.to_density(states.make_pure(states.StateFamily("PHI", 0.5))))
        assert abs(rows["BE"].eof - initial) <= 1e-6

    def test_phase_one_ae_discordant_but_never_entangled(self):
        cfg = SweepConfig(
            scenario="PHASE_ONE",
            c_in_values=(0.5,),
            grid=(0.3, 0.7),
            bipartitions=("AE",),
        )
        for row in sweeps.run_sweep(cfg).rows:
            assert row.report.concurrence <= 1e-10
            assert row.report.discord_b > 1e-4
            assert row.strength_b == 0.0

    def test_endpoint_sanity_all_scenarios(self):
        for scenario in sweeps.SCENARIOS:
            cfg = SweepConfig(
                scenario=scenario,
                c_in_values=(0.75,),
                eta=0.75,
                grid=(0.0,) if "PHASE" not in scenario else (0.0, 1.0),
                bipartitions=("AB",),
            )
            rows = sweeps.run_sweep(cfg).rows
            if scenario.startswith("WERNER"):
                initial = states.make_werner(0.75)
            else:
                initial = states.to_density(
                    states.make_pure(states.StateFamily("PHI", 0.75))
                )
            first = rows[0].report
            assert abs(first.eof - measures.eof(initial)) <= 1e-6
            assert abs(first.discord_sym - measures.symmetrized_discord(initial)) <= 1e-6
            if "PHASE" in scenario:  # full dephasing kills all quantum correlations
                last = rows[-1].report
                assert last.eof <= 1e-6 and last.discord_sym <= 1e-6

    def test_row_order_independent_of_threads(self):
        cfg1 = SweepConfig(scenario="PHASE_ONE", c_in_values=(0.5, 1.0), grid=(0.0, 0.5))
        cfg4 = SweepConfig(
            scenario="PHASE_ONE", c_in_values=(0.5, 1.0), grid=(0.0, 0.5), threads=4
        )
        r1 = sweeps.run_sweep(cfg1)
        r4 = sweeps.run_sweep(cfg4)
        assert sweeps.render_csv(sweeps.SWEEP_HEADER, r1.rows) == sweeps.render_csv(
            sweeps.SWEEP_HEADER, r4.rows
        )


class TestAudits:
    def test_conservation_small_lattice(self):
        for family, kind in (("PHI", "PHASE"), ("PHI", "AMPLITUDE"), ("PSI", "AMPLITUDE")):
            viol, rows = sweeps.conservation_audit(
                family, kind, cin_grid=(0.3, 0.8), strength_grid=(0.0, 0.4, 1.0)
            )
            assert viol <= 1e-4
            for r in rows:
                if r.strength == 0.0:
                    assert r.violation <= 1e-9

    def test_dominance_phase(self):
        ok, rows = sweeps.dominance_audit(
            "PHASE_ONE", "PHI", cin_grid=(0.5,), strength_grid=(0.0, 0.5, 1.0)
        )
        assert ok
        mid = next(r for r in rows if r.strength == 0.5)
        assert mid.e_ab - mid.d_ab > 1e-4  # strictly dominant away from endpoints

    def test_dominance_amplitude(self):
        ok, rows = sweeps.dominance_audit(
            "AMP_ONE", "PHI", cin_grid=(0.5,), strength_grid=(0.0, 0.5, 1.0)
        )
        assert ok
        mid = next(r for r in rows if r.strength == 0.5)
        assert mid.d_ae - mid.e_ae > 1e-4  # strict in the interior

    def test_dominance_rejects_both_scenarios(self):
        with pytest.raises(ConfigError):
            sweeps.dominance_audit("PHASE_BOTH", "PHI")

    def test_werner_eta_one_matches_bell_sweep(self):
        rows = sweeps.werner_rescaled_sweep(1.0, "PHASE", strength_grid=(0.0, 0.5))
        assert abs(rows[0].eof - 1.0) <= 1e-6
        assert abs(rows[0].eof_ratio - rows[0].eof) <= 1e-12
        assert abs(rows[1].eof_ratio - rows[1].eof) <= 1e-12

    def test_werner_separable_eta_has_undefined_eof_ratio(self):
        rows = sweeps.werner_rescaled_sweep(0.3, "PHASE", strength_grid=(0.0, 0.5))
        assert rows[0].eof_ratio is None
        assert abs(rows[0].discord_ratio_a - 1.0) <= 1e-9
        text = sweeps.render_csv(sweeps.WERNER_HEADER, rows)
        assert "undefined" in text.splitlines()[1]

    def test_werner_rejects_eta_zero(self):
        with pytest.raises(ConfigError):
            sweeps.werner_rescaled_sweep(0.0, "PHASE")

    def test_werner_nearly_pure_phase_eof_ratio_dominates(self):
        # strong initial correlation: rescaled EoF stays above rescaled QD
        rows = sweeps.werner_rescaled_sweep(0.95, "PHASE", strength_grid=(0.25, 0.5, 0.75))
        for r in rows:
            assert r.eof_ratio >= r.discord_ratio_a - 1e-9
        # weak initial correlation: the ordering flips
        rows = sweeps.werner_rescaled_sweep(0.5, "PHASE", strength_grid=(0.25, 0.5))
        for r in rows:
            assert r.discord_ratio_a > r.eof_ratio

    def test_phase_both_environment_pairs_discordant_never_entangled(self):
        cfg = SweepConfig(
            scenario="PHASE_BOTH",
            c_in_values=(0.5,),
            grid=(0.3, 0.5, 0.8),
            bipartitions=("AE_A", "E_AE_B"),
        )
        rows = sweeps.run_sweep(cfg).rows
        assert all(r.report.concurrence <= 1e-10 for r in rows)
        assert all(r.report.discord_sym > 1e-6 for r in rows)

    def test_geometric_small_lattice(self):
        ok, rows = sweeps.inequality_audit_geometric(
            "PHI", cin_grid=(0.5, 1.0), strength_grid=(0.0, 0.5, 1.0)
        )
        assert ok
        for r in rows:
            assert r.neg_sq <= r.geo_discord + 1e-9
            if r.bipartition == "AB":
                assert r.saturated
        ae_mid = next(r for r in rows if r.bipartition == "AE" and r.strength == 0.5 and r.c_in == 0.5)
        assert ae_mid.negativity <= 1e-10 and ae_mid.geo_discord > 1e-5


class TestCsv:
    def test_header_only_for_empty_rows(self, tmp_path):
        out = tmp_path / "empty.csv"
        sweeps.emit_csv(sweeps.SWEEP_HEADER, (), str(out))
        assert out.read_text() == sweeps.SWEEP_HEADER + "\n"

    def test_single_row_two_lines(self, tmp_path):
        cfg = SweepConfig(scenario="PHASE_ONE", c_in_values=(0.5,), grid=(0.5,), bipartitions=("AB",))
        rows = sweeps.run_sweep(cfg).rows
        out = tmp_path / "one.csv"
        sweeps.emit_csv(sweeps.SWEEP_HEADER, rows, str(out))
        assert len(out.read_text().splitlines()) == 2

    def test_repeated_runs_byte_identical(self, tmp_path):
        cfg = SweepConfig(scenario="AMP_ONE", c_in_values=(0.5,), grid=(0.0, 0.5, 1.0))
        a = sweeps.render_csv(sweeps.SWEEP_HEADER, sweeps.run_sweep(cfg).rows)
        b = sweeps.render_csv(sweeps.SWEEP_HEADER, sweeps.run_sweep(cfg).rows)
        assert a.encode() == b.encode()

    def test_twelve_significant_digits(self):
        cfg = SweepConfig(scenario="PHASE_ONE", c_in_values=(0.5,), grid=(0.0,), bipartitions=("AB",))
        text = sweeps.render_csv(sweeps.SWEEP_HEADER, sweeps.run_sweep(cfg).rows)
        assert "0.354578902665" in text  # undamped EoF at C_in = 0.5, 12 digits


class TestCli:
    def test_sweep_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        rc = cli.main(
            ["sweep", "--scenario", "PHASE_ONE", "--cin", "0.5", "--grid", "0:0.5:1",
             "--out", str(out)]
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == sweeps.SWEEP_HEADER
        assert len(lines) == 1 + 3 * 3  # 3 strengths x 3 bipartitions

    def test_sweep_stdout_when_no_out(self, capsys):
        rc = cli.main(["sweep", "--scenario", "PHASE_ONE", "--cin", "1", "--grid", "1"])
        assert rc == 0
        captured = capsys.readouterr()
        assert captured.out.startswith(sweeps.SWEEP_HEADER)

    def test_config_file_with_overrides(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("scenario=PHASE_BOTH\nc_in=1\ngrid=0:0.5:1\nbipartitions=AB\n")
        out = tmp_path / "o.csv"
        rc = cli.main(["sweep", "--config", str(cfg), "--grid", "0,1", "--out", str(out)])
        assert rc == 0
        assert len(out.read_text().splitlines()) == 3  # override grid has 2 points

    def test_bad_config_exits_1(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("nonsense=1\n")
        assert cli.main(["sweep", "--config", str(cfg)]) == cli.EXIT_CONFIG
        assert cli.main(["sweep", "--scenario", "BOGUS"]) == cli.EXIT_CONFIG
        assert cli.main(["conserve", "--scenario", "WERNER_PHASE"]) == cli.EXIT_CONFIG

    def test_unwritable_out_exits_3(self, tmp_path):
        rc = cli.main(
            ["sweep", "--scenario", "PHASE_ONE", "--cin", "1", "--grid", "1",
             "--out", str(tmp_path / "no" / "such" / "dir.csv")]
        )
        assert rc == cli.EXIT_IO

    def test_audit_failure_exits_2(self, monkeypatch):
        monkeypatch.setattr(sweeps, "conservation_audit", lambda *a, **k: (1.0, ()))
        rc = cli.main(["conserve", "--cin", "0.5", "--grid", "0.5"])
        assert rc == cli.EXIT_AUDIT

    def test_conserve_ok(self, tmp_path):
        out = tmp_path / "c.csv"
        rc = cli.main(
            ["conserve", "--scenario", "AMP_ONE", "--cin", "0.5",
             "--grid", "0:0.5:1", "--out", str(out)]
        )
        assert rc == 0
        assert out.read_text().splitlines()[0] == sweeps.CONSERVE_HEADER

    def test_dominance_ok(self, tmp_path):
        out = tmp_path / "d.csv"
        rc = cli.main(
            ["dominance", "--scenario", "PHASE_ONE", "--cin", "0.5",
             "--grid", "0:0.5:1", "--out", str(out)]
        )
        assert rc == 0

    def test_werner_ok(self, tmp_path):
        out = tmp_path / "w.csv"
        rc = cli.main(
            ["werner", "--scenario", "WERNER_AMP", "--eta", "0.95",
             "--grid", "0:0.5:1", "--out", str(out)]
        )
        assert rc == 0
        assert out.read_text().splitlines()[0] == sweeps.WERNER_HEADER

    def test_geometric_ok(self, tmp_path):
        out = tmp_path / "g.csv"
        rc = cli.main(
            ["geometric", "--cin", "0.5", "--grid", "0:0.5:1", "--out", str(out)]
        )
        assert rc == 0
        assert out.read_text().splitlines()[0] == sweeps.GEOMETRIC_HEADER
