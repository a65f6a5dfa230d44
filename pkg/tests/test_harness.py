import csv
import json

import numpy as np
import pytest

from stripbounds.bounds import bound_bg, bound_sg
from stripbounds.errors import ConfigError
from stripbounds.families import SchwarzSpec
from stripbounds.harness import (
    ProbeConfig,
    VerifyConfig,
    emit_grid,
    evaluate_pair,
    grid_rows,
    probe_bounds,
    replay_trial,
    verify_all,
)
from stripbounds.kernel import PairParams, StripParams, b1_modulus


def small_cfg(**kw):
    base = dict(params=PairParams(0.0, 2.0, 0.0), trials=40, order=32, seed=7, max_n=6)
    base.update(kw)
    return ProbeConfig(**base)


class TestProbe:
    def test_identity_trial(self):
        cfg = small_cfg(params=PairParams(0.3, 2.0, 0.3), max_n=2)
        res = evaluate_pair(cfg, SchwarzSpec(), SchwarzSpec())
        s = b1_modulus(StripParams(0.3, 2.0))
        assert res.sg_moduli[0] <= s + 1e-12
        assert res.sg_moduli[0] / bound_sg(0.3, 2.0, 0.3, 2) <= 1 + 1e-12

    def test_no_violations(self):
        rep = probe_bounds(small_cfg())
        assert rep.passed and rep.violations == []
        assert [r["n"] for r in rep.per_n] == [2, 3, 4, 5, 6]
        for row in rep.per_n:
            assert 0 < row["ratio"] <= 1 + 1e-9
            assert row["ratio"] == row["empiricalMax"] / row["theoreticalBound"]

    def test_rho_columns(self):
        rep = probe_bounds(small_cfg(params=PairParams(0.0, 2.0, 0.0, rho=0.0)))
        bg = [r for r in rep.per_n if r["family"] == "B_g"]
        assert len(bg) == 5 and rep.passed
        for row in bg:
            assert row["theoreticalBound"] == bound_bg(0, 2, 0, 0, row["n"])
            assert row["ratio"] <= 1
        assert rep.stats["maxOdeResidual"] < 1e-11

    def test_argmax_replays(self):
        cfg = small_cfg()
        rep = probe_bounds(cfg)
        for row in rep.per_n:
            again = replay_trial(cfg, row["argmaxTrial"])
            assert again.sg_moduli[row["n"] - 2] == row["empiricalMax"]

    def test_parallel_equals_serial(self):
        a = probe_bounds(small_cfg(threads=1)).to_dict()
        b = probe_bounds(small_cfg(threads=4)).to_dict()
        a.pop("wallTimeSec"), b.pop("wallTimeSec")
        a["config"].pop("threads", None), b["config"].pop("threads", None)
        assert json.dumps(a) == json.dumps(b)

    def test_seed_changes_result(self):
        a = probe_bounds(small_cfg(seed=1)).per_n
        b = probe_bounds(small_cfg(seed=2)).per_n
        assert a != b

    def test_violation_is_reported(self, monkeypatch):
        from stripbounds import bounds

        monkeypatch.setattr(bounds, "bound_sg", lambda *a, **k: 1e-3)
        rep = probe_bounds(small_cfg(trials=3))
        assert rep.violations and not rep.passed

    def test_construction_errors_are_counted(self, monkeypatch):
        from stripbounds import harness
        from stripbounds.errors import DomainError

        def broken(*a, **k):
            raise DomainError("boom")

        monkeypatch.setattr(harness, "evaluate_pair", broken)
        rep = probe_bounds(small_cfg(trials=3))
        assert rep.stats["failedTrials"] == 3 and not rep.passed
        assert rep.stats["errors"][0]["error"] == "DomainError: boom"

    @pytest.mark.parametrize(
        "kw", [dict(trials=0), dict(max_n=1), dict(max_n=40), dict(grid_radius=1.0), dict(seed=-1), dict(threads=0)]
    )
    def test_config_errors(self, kw):
        with pytest.raises(ConfigError):
            small_cfg(**kw)


class TestVerify:
    def test_default_passes(self):
        rep = verify_all(VerifyConfig(samples=50))
        assert rep.passed and rep.exit_code == 0
        assert {f.name for f in rep.families} == {
            "series_roundtrip",
            "kernel_equivalence",
            "kernel_range",
            "rogosinski",
            "recurrence",
            "ode_residual",
            "bound_limits",
            "membership",
        }

    def test_fault_injection(self):
        rep = verify_all(VerifyConfig(samples=5, kernel_fault=1e-6))
        assert not rep.family("kernel_equivalence").passed
        assert rep.exit_code == 1
        assert "kernel_equivalence" in rep.to_dict()["violations"]

    def test_low_order(self):
        rep = verify_all(VerifyConfig(order=16, samples=30))
        assert rep.passed
        low = rep.family("membership")
        high = verify_all(VerifyConfig(samples=5)).family("membership")
        # truncation allowance widens as the order drops
        assert -low.threshold > -high.threshold >= 0


class TestGrid:
    def test_center_row(self):
        rows = grid_rows(StripParams(0, 2), 3, 8)
        for r, theta, re, im in rows[:8]:
            assert (r, re, im) == (0.0, 1.0, 0.0)

    def test_range(self):
        rows = grid_rows(StripParams(0, 2), 30, 128)
        re = np.array([row[2] for row in rows])
        assert re.min() > 0 and re.max() < 2

    def test_nested(self, tmp_path):
        p = StripParams(0.3, 1.9)
        emit_grid(p, 5, 16, tmp_path / "a.csv")
        emit_grid(p, 5, 32, tmp_path / "b.csv")
        small = set((tmp_path / "a.csv").read_text().splitlines())
        big = set((tmp_path / "b.csv").read_text().splitlines())
        assert small <= big and len(big) == 2 * len(small) - 1

    def test_csv_header(self, tmp_path):
        n = emit_grid(StripParams(0, 2), 4, 4, tmp_path / "g.csv")
        with open(tmp_path / "g.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["r", "theta", "re_w", "im_w"] and len(rows) == n + 1

    def test_io_error(self, tmp_path):
        with pytest.raises(OSError):
            emit_grid(StripParams(0, 2), 2, 2, tmp_path / "missing" / "g.csv")
