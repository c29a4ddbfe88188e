import io
import math

import numpy as np
import pytest

from balldesign.errors import ConfigurationError, ContractViolation
from balldesign.exact import (CSV_HEADER, FIXED, FROZEN, OPTIMAL, ROUNDED, efficiency_sweep,
                              envelope_minimum, fixed_weights, frozen_boundary,
                              optimal_design, read_sweep_csv, rounded_weights,
                              strategy_fixed_weights, strategy_frozen_boundary,
                              strategy_rounded_weights, write_sweep_csv)
from balldesign.marginal import Case, region_boundaries


class TestOptimalDesign:
    def test_simplex_when_slope_vanishes(self, logit):
        sol = optimal_design(logit, [0.4, 0.0, 0.0, 0.0])
        assert sol.marginal.case == Case.SIMPLEX
        assert sol.design.size == 4
        np.testing.assert_allclose(np.linalg.norm(sol.design.points, axis=1), 1.0)

    def test_poisson_pole_design(self, poisson):
        sol = optimal_design(poisson, [0.3, 2.0, 0.0])
        assert sol.marginal.case == Case.THEOREM1
        assert sol.design.size == 3
        np.testing.assert_allclose(sol.design.weights, 1 / 3)

    def test_seed_rotates_but_keeps_matrix(self, cll):
        from balldesign.information import info_matrix
        beta = [0.1, 1.0, 0.0, 0.0]
        a = optimal_design(cll, beta).design
        b = optimal_design(cll, beta, seed=9).design
        assert not np.allclose(a.points, b.points)
        np.testing.assert_allclose(info_matrix(a, cll, beta), info_matrix(b, cll, beta),
                                   atol=1e-12)


class TestStrategies:
    def test_rounded_exact_at_symmetric_point(self, logit):
        r = rounded_weights(logit, 3, 1.0, 0.0)
        assert r.m == 2
        assert r.efficiency == pytest.approx(1.0, abs=1e-10)
        assert r.exact_efficiency == pytest.approx(1.0, abs=1e-10)

    def test_fixed_m2_at_symmetric_point(self, logit):
        r = fixed_weights(logit, 3, 1.0, 0.0, m=2)
        assert r.efficiency == pytest.approx(1.0, abs=1e-10)
        assert r.x11 == pytest.approx(-r.x12, abs=1e-10)

    def test_frozen_k3_centre(self, logit):
        assert frozen_boundary(logit, 3, 1.0, 0.0).efficiency > 0.988

    def test_frozen_k6_centre(self, logit):
        assert frozen_boundary(logit, 6, 1.0, 0.0).efficiency > 0.986

    def test_frozen_at_region_boundary(self, logit):
        lo, hi = region_boundaries(logit, 3, 1.0)
        for b in (lo + 1e-9, hi - 1e-9):
            assert frozen_boundary(logit, 3, 1.0, -b).efficiency == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("k", [3, 4, 6])
    def test_strategy_designs_have_k_plus_one_points(self, logit, k):
        for make in (strategy_frozen_boundary, strategy_rounded_weights, strategy_fixed_weights):
            d = make(logit, k, 1.0, 0.15)
            assert d.size == k + 1
            np.testing.assert_allclose(d.weights, 1 / (k + 1), atol=1e-15)

    @pytest.mark.parametrize("k", [3, 6])
    def test_fixed_beats_rounded(self, logit, k):
        lo, hi = region_boundaries(logit, k, 1.0)
        for b in np.linspace(lo, hi, 9)[1:-1]:
            f = fixed_weights(logit, k, 1.0, -b)
            r = rounded_weights(logit, k, 1.0, -b)
            assert f.efficiency >= r.efficiency - 1e-10

    def test_exact_split_never_beats_orbit_level(self, logit):
        for b in (0.05, 0.2, 0.35):
            r = rounded_weights(logit, 6, 1.0, b)
            assert r.exact_efficiency <= r.efficiency + 1e-12

    def test_k_too_small(self, logit):
        with pytest.raises(ConfigurationError):
            rounded_weights(logit, 2, 1.0, 0.0)
        with pytest.raises(ConfigurationError):
            fixed_weights(logit, 2, 1.0, 0.0)

    def test_outside_region(self, logit):
        with pytest.raises(ContractViolation):
            rounded_weights(logit, 3, 1.0, 0.8)

    def test_m_range(self, logit):
        with pytest.raises(ConfigurationError):
            fixed_weights(logit, 3, 1.0, 0.0, m=3)


class TestSweep:
    def test_two_steps_hit_boundaries(self, logit):
        rows = efficiency_sweep(logit, 3, 1.0, steps=2, strategies=[FROZEN])
        assert len(rows) == 2
        for r in rows:
            assert r.efficiency == pytest.approx(1.0, abs=1e-6)
            assert not r.flag

    def test_order_and_optimal_rows(self, logit):
        rows = efficiency_sweep(logit, 3, 1.0, steps=5)
        b = [r.beta0_neg for r in rows]
        assert b == sorted(b)
        assert [r.strategy for r in rows[:4]] == [OPTIMAL, FROZEN, ROUNDED, FIXED]
        assert all(r.efficiency == 1.0 for r in rows if r.strategy == OPTIMAL)

    def test_symmetric_model_gives_mirror_sweep(self, logit):
        rows = efficiency_sweep(logit, 4, 1.0, steps=9, strategies=[FROZEN, ROUNDED, FIXED])
        by = {(round(r.beta0_neg, 12), r.strategy): r for r in rows}
        for (b, s), r in by.items():
            mirror = by[(round(-b, 12), s)]
            assert r.efficiency == pytest.approx(mirror.efficiency, abs=1e-8)
            # at the centre both choices of m tie
            if r.m is not None and abs(b) > 1e-12:
                assert mirror.m == 5 - r.m

    def test_figure_one_branches(self, logit):
        rows = efficiency_sweep(logit, 3, 1.0, (-1.2, 1.2), steps=25, strategies=[OPTIMAL])
        cases = {r.case for r in rows}
        assert {"c0", "c1", "c2"} <= cases
        for r in rows:
            if r.case in ("c1", "c2"):
                assert min(r.w1, 1 - r.w1) == pytest.approx(0.25)

    def test_threads_give_same_rows(self, logit):
        a = efficiency_sweep(logit, 3, 1.0, steps=7)
        b = efficiency_sweep(logit, 3, 1.0, steps=7, workers=3)
        assert write_sweep_csv(a) == write_sweep_csv(b)

    def test_failed_points_are_flagged(self, logit):
        rows = efficiency_sweep(logit, 3, 1.0, (-1.0, 1.0), steps=3, strategies=[ROUNDED])
        assert rows[0].flag.startswith("failed:") and math.isnan(rows[0].efficiency)
        assert not rows[1].flag

    def test_envelope(self, logit):
        rows = efficiency_sweep(logit, 3, 1.0, steps=21, strategies=[FROZEN, FIXED])
        env = envelope_minimum(rows, FIXED)
        assert env > 0.997
        assert env >= min(r.efficiency for r in rows)

    @pytest.mark.parametrize("bad", [dict(steps=1), dict(strategies=["nope"]),
                                     dict(evaluate="other"), dict(beta0_range=(0.2, 0.1))])
    def test_bad_arguments(self, logit, bad):
        with pytest.raises(ConfigurationError):
            efficiency_sweep(logit, 3, 1.0, **bad)


class TestCsv:
    def test_header_and_format(self, logit):
        text = write_sweep_csv(efficiency_sweep(logit, 3, 1.0, steps=3, strategies=[ROUNDED]))
        lines = text.split("\n")
        assert lines[0] == ",".join(CSV_HEADER)
        assert "\r" not in text and text.endswith("\n")
        assert len(lines[1].split(",")[4].lstrip("-").replace(".", "")) >= 15

    def test_round_trip(self, logit, tmp_path):
        rows = efficiency_sweep(logit, 3, 1.0, steps=4)
        path = tmp_path / "s.csv"
        path.write_text(write_sweep_csv(rows), encoding="utf-8")
        back = read_sweep_csv(path)
        assert back == rows

    def test_stream(self, logit):
        buf = io.StringIO()
        assert write_sweep_csv([], buf) is None
        assert buf.getvalue() == ",".join(CSV_HEADER) + "\n"
