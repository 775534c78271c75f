"""Tests para el punto de entrada de línea de comandos."""

from __future__ import annotations

import inspect

import pytest

import netcode.cli
from netcode.cli.campaign import run_campaign
from netcode.cli.main import EXIT_INCOMPLETE, EXIT_IO, EXIT_OK, EXIT_USAGE, build_parser, main, resolve_campaign
from netcode.shared.config import AlgorithmKind, DecoderKind

SMALL = ["--nodes", "4", "--symbols", "8", "--runs", "2"]


class TestMain:
    """Tests end-to-end de main."""

    def test_single_hop_run(self, tmp_path):
        code = main(["--scenario", "single_hop", "--erasure", "0.3", "--seed", "1", "--out", str(tmp_path), *SMALL])
        assert code == EXIT_OK
        assert (tmp_path / "summary.csv").exists()
        assert (tmp_path / "greedy_simple_recovery.csv").exists()
        assert (tmp_path / "greedy_simple_potential.csv").read_text(encoding="utf-8").startswith("round,")

    def test_invalid_config(self, tmp_path):
        assert main(["--scenario", "grid", "--nodes", "10", "--out", str(tmp_path)]) == EXIT_USAGE

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "nada.toml"), "--out", str(tmp_path)]) == EXIT_USAGE

    def test_bad_runs(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["--runs", "0", "--out", str(tmp_path)])
        assert exc.value.code == EXIT_USAGE

    def test_incomplete_runs(self, tmp_path):
        args = ["--erasure", "1.0", "--max-rounds", "5", "--out", str(tmp_path), *SMALL]
        assert main(args) == EXIT_INCOMPLETE
        assert main([*args, "--max-incomplete", "1.0"]) == EXIT_OK

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "archivo"
        blocker.write_text("x", encoding="utf-8")
        assert main(["--out", str(blocker), *SMALL]) == EXIT_IO

    def test_export_topology(self, tmp_path):
        edges = tmp_path / "edges.txt"
        code = main(
            ["--scenario", "grid", "--nodes", "9", "--runs", "1", "--out", str(tmp_path), "--export-topology", str(edges)]
        )
        assert code == EXIT_OK
        assert len(edges.read_text(encoding="utf-8").splitlines()) == 36

    def test_figure_preset(self, tmp_path, mocker):
        spy = mocker.patch("netcode.cli.main.run_campaign", wraps=run_campaign)
        code = main(
            ["--figure", "1hop", "--max-rounds", "300", "--max-incomplete", "1.0", "--out", str(tmp_path), *SMALL]
        )
        assert code == EXIT_OK
        campaign = spy.call_args.args[0]
        assert [v.algorithm for v in campaign.variants] == [
            AlgorithmKind.GREEDY,
            AlgorithmKind.EQUALIZING,
            AlgorithmKind.OPPORTUNISTIC,
            AlgorithmKind.ANC,
        ]
        assert spy.call_args.kwargs["workers"] == 1
        assert (tmp_path / "anc_simple_delay.csv").exists()


    def test_package_exposes_main_module(self):
        assert inspect.ismodule(netcode.cli.main)
        assert netcode.cli.main.run_campaign is run_campaign


class TestResolveCampaign:
    """Precedencia preset < archivo < flags."""

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text('algorithm = "anc"\nerasure_p = 0.2\n', encoding="utf-8")
        args = build_parser().parse_args(["--config", str(path), "--algorithm", "equalizing"])
        campaign = resolve_campaign(args)
        assert campaign.base.algorithm is AlgorithmKind.EQUALIZING
        assert campaign.base.erasure_p == 0.2

    def test_file_overrides_preset(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text("erasure_p = 0.1\n", encoding="utf-8")
        args = build_parser().parse_args(["--figure", "1hop", "--config", str(path)])
        campaign = resolve_campaign(args)
        assert campaign.base.erasure_p == 0.1
        assert len(campaign.variants) == 4

    def test_preset_with_algorithm_keeps_decoder(self):
        args = build_parser().parse_args(["--figure", "1hop-full", "--algorithm", "greedy"])
        (variant,) = resolve_campaign(args).variants
        assert variant.algorithm is AlgorithmKind.GREEDY
        assert variant.decoder is DecoderKind.FULL

    def test_preset_with_algorithm_keeps_caps(self):
        args = build_parser().parse_args(["--figure", "grid", "--algorithm", "greedy"])
        labels = [v.label for v in resolve_campaign(args).variants]
        assert labels == ["greedy_simple", "greedy_simple_cap1"]


    def test_file_seed_without_flag(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text("seed = 7\n", encoding="utf-8")
        campaign = resolve_campaign(build_parser().parse_args(["--config", str(path)]))
        assert campaign.seed_base == 7
        assert campaign.base.seed == 7

    def test_seed_flag_beats_file(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text("seed = 7\n", encoding="utf-8")
        campaign = resolve_campaign(build_parser().parse_args(["--config", str(path), "--seed", "3"]))
        assert campaign.seed_base == 3

    def test_campaign_keys_in_file(self, tmp_path):
        out = tmp_path / "res"
        path = tmp_path / "c.toml"
        path.write_text(
            f'runs = 3\nworkers = 2\nmax_incomplete = 0.5\nout = "{out.as_posix()}"\nfigure = "1hop"\nn_symbols = 8\n',
            encoding="utf-8",
        )
        campaign = resolve_campaign(build_parser().parse_args(["--config", str(path)]))
        assert campaign.runs == 3
        assert campaign.workers == 2
        assert campaign.max_incomplete == 0.5
        assert campaign.out_dir == out
        assert len(campaign.variants) == 4
        assert campaign.base.n_symbols == 8

    def test_flags_beat_file_campaign_keys(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text("runs = 3\nworkers = 2\n", encoding="utf-8")
        args = build_parser().parse_args(["--config", str(path), "--runs", "5", "--workers", "1"])
        campaign = resolve_campaign(args)
        assert (campaign.runs, campaign.workers) == (5, 1)

    def test_settings_when_nothing_given(self):
        campaign = resolve_campaign(build_parser().parse_args([]))
        assert campaign.runs == 10
        assert campaign.seed_base == 0
        assert campaign.workers == 1

    def test_unknown_figure_in_file(self, tmp_path):
        path = tmp_path / "c.toml"
        path.write_text('figure = "nada"\n', encoding="utf-8")
        with pytest.raises(ValueError):
            resolve_campaign(build_parser().parse_args(["--config", str(path)]))

    def test_main_runs_from_file(self, tmp_path, mocker):
        spy = mocker.patch("netcode.cli.main.run_campaign", wraps=run_campaign)
        path = tmp_path / "c.toml"
        path.write_text("runs = 3\nn_nodes = 4\nn_symbols = 8\nerasure_p = 0.3\n", encoding="utf-8")
        assert main(["--config", str(path), "--out", str(tmp_path)]) == EXIT_OK
        assert spy.call_args.args[0].runs == 3
