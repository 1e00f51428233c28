import json
import os
import subprocess
import sys

import pytest

from almsq.cli import ConfigError, dump_config, load_config, main, normalize_config
from almsq.records import payload_lines, read_jsonl


def run_cli(args, **kw):
    return main(list(args))


class TestConfig:
    def test_defaults(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text("{}")
        cfg = load_config(p)
        assert cfg == {"eps": 0.1, "seed": 0, "samples": 1000}

    def test_theta_out_of_range(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text('{"theta": 0.6}')
        with pytest.raises(ConfigError):
            load_config(p)

    def test_unknown_key_named(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text('{"thetta": 0.3}')
        with pytest.raises(ConfigError, match="thetta"):
            load_config(p)

    def test_round_trip(self, tmp_path):
        cfg = normalize_config({"theta": 0.3, "c": 1.0, "samples": 50})
        p = tmp_path / "c.json"
        p.write_text(dump_config(cfg))
        assert load_config(p) == cfg

    def test_coercion(self):
        cfg = normalize_config({"theta": 0.25, "samples": 10})
        assert isinstance(cfg["samples"], int)
        assert isinstance(cfg["theta"], float)


class TestExitCodes:
    def test_success(self, capsys):
        assert run_cli(["certify", "--n", "999999", "--theta", "0.25", "--C", "1"]) == 0
        assert "999 x 1001" in capsys.readouterr().out

    def test_empty_enumerate(self, capsys):
        assert run_cli(["enumerate", "--lo", "2", "--hi", "3",
                        "--theta", "0", "--C", "0.4"]) == 0
        assert "0 almost squares" in capsys.readouterr().out

    def test_invalid_theta(self, capsys):
        rc = run_cli(["certify", "--n", "10", "--theta", "0.7", "--C", "1"])
        assert rc == 2

    def test_bad_config_file(self, tmp_path, capsys):
        p = tmp_path / "c.json"
        p.write_text('{"nope": 1}')
        rc = run_cli(["certify", "--n", "10", "--theta", "0.3", "--C", "1",
                      "--config", str(p)])
        assert rc == 2
        assert "nope" in capsys.readouterr().err

    def test_scale_error(self, capsys, tmp_path):
        rc = run_cli(["scan", "--x", "30", "--theta", "0.3", "--C", "1",
                      "--coef", "0.01", "--pow", "0", "--samples", "10"])
        assert rc == 3


class TestJsonl:
    def test_manifest_first(self, tmp_path, capsys):
        out = tmp_path / "r.jsonl"
        assert run_cli(["certify", "--n", "144", "--theta", "0.3", "--C", "1",
                        "--out", str(out)]) == 0
        recs = read_jsonl(out)
        assert recs[0]["kind"] == "manifest"
        assert recs[0]["command"] == "certify"
        assert len(recs[0]["config_digest"]) == 64
        assert recs[1]["kind"] == "witness"
        assert recs[1]["payload"]["a"] == 9

    def test_payloads_reproducible(self, tmp_path, capsys):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        args = ["scan", "--x", "20000", "--theta", "0.3", "--C", "1",
                "--coef", "1", "--pow", "0.4", "--samples", "100"]
        assert run_cli(args + ["--out", str(a)]) == 0
        assert run_cli(args + ["--out", str(b)]) == 0
        assert payload_lines(a) == payload_lines(b)

    def test_digest_matches_config(self, tmp_path, capsys):
        a = tmp_path / "a.jsonl"
        b = tmp_path / "b.jsonl"
        args = ["gaps", "--lo", "1000", "--hi", "3000", "--theta", "0.4", "--C", "1"]
        run_cli(args + ["--out", str(a)])
        run_cli(args + ["--out", str(b)])
        assert read_jsonl(a)[0]["config_digest"] == read_jsonl(b)[0]["config_digest"]


class TestTables:
    def test_csv_written(self, tmp_path, capsys):
        csv = tmp_path / "t.csv"
        assert run_cli(["zeta", "--grid", "[2, 10]", "--csv", str(csv)]) == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == "input,re,im,abs"
        assert len(lines) == 3

    def test_summary_derives_from_records(self, tmp_path, capsys):
        out = tmp_path / "r.jsonl"
        csv = tmp_path / "r.csv"
        run_cli(["scan", "--x", "20000", "--theta", "0.3", "--C", "1",
                 "--coef", "1", "--pow", "0.4", "--samples", "100",
                 "--out", str(out), "--csv", str(csv)])
        payloads = [r["payload"] for r in read_jsonl(out) if r["kind"] == "coverage"]
        rows = csv.read_text().splitlines()[1:]
        assert len(rows) == len(payloads)
        for row, pay in zip(rows, payloads):
            fields = row.split(",")
            assert float(fields[0]) == pay["x"]
            assert int(fields[1]) == pay["sampled"]
            assert int(fields[2]) == pay["exceptional"]
            assert float(fields[3]) == pay["exceptional_fraction"]

    def test_figures_rendered(self, tmp_path, capsys):
        figs = tmp_path / "figs"
        run_cli(["gaps", "--lo", "1000", "--hi", "5000", "--theta", "0.4",
                 "--C", "1", "--figdir", str(figs)])
        assert (figs / "gap_histogram.png").exists()

    def test_zeta_grid_from_file(self, tmp_path, capsys):
        grid = tmp_path / "grid.json"
        grid.write_text("[2, 50]")
        csv = tmp_path / "z.csv"
        assert run_cli(["zeta", "--evaluator", "afe", "--grid", str(grid),
                        "--csv", str(csv)]) == 0
        assert len(csv.read_text().splitlines()) == 3

    def test_verify_custom_grid_file(self, tmp_path, capsys):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps(
            {"points": [[8, 8, 32, 16], [4, 4, 16, 8]], "beta": 0.0}))
        out = tmp_path / "v.jsonl"
        assert run_cli(["verify", "--lemma", "1", "--grid", str(grid),
                        "--out", str(out)]) == 0
        recs = [r for r in read_jsonl(out) if r["kind"] == "bound"]
        assert len(recs) == 2

    def test_discrepancy_exact_mode(self, capsys):
        rc = run_cli(["discrepancy", "--x", "1e4", "--big-y", "1e3",
                      "--samples", "10", "--method", "exact",
                      "--u", "100", "--l", "20", "--v", "50", "--t", "10"])
        assert rc == 0
        assert "exact" in capsys.readouterr().out


class TestSubprocess:
    def test_module_entry(self, tmp_path):
        env = dict(os.environ, ALMSQ_THREADS="2")
        res = subprocess.run(
            [sys.executable, "-m", "almsq", "certify", "--n", "999999",
             "--theta", "0.25", "--C", "1"],
            capture_output=True, text=True, env=env)
        assert res.returncode == 0
        assert "999 x 1001" in res.stdout

    def test_thread_env_invariance(self, tmp_path):
        outs = []
        for threads in ("1", "3"):
            out = tmp_path / f"t{threads}.jsonl"
            env = dict(os.environ, ALMSQ_THREADS=threads)
            res = subprocess.run(
                [sys.executable, "-m", "almsq", "scan", "--x", "30000",
                 "--theta", "0.3", "--C", "1", "--coef", "1", "--pow", "0.3",
                 "--logpow", "1", "--samples", "200", "--mode", "corollary",
                 "--out", str(out)],
                capture_output=True, text=True, env=env)
            assert res.returncode == 0, res.stderr
            outs.append(payload_lines(out))
        assert outs[0] == outs[1]
