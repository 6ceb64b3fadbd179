import math

import numpy as np
import pytest
from scipy.spatial.distance import cdist

from interplab.isoperimetry import (
    RasterSet,
    ball_inner_measure,
    ball_raster,
    distance_transform,
    inner_parallel,
    lemma_bmr_check,
    outer_parallel,
    random_blob,
    read_rsn,
    write_rsn,
)


def brute_distance(mask, spacing, direction):
    """O(N^2) reference: pairwise cell-center distances via scipy cdist."""
    seeds = ~mask if direction == "to-complement" else mask
    idx = np.argwhere(np.ones_like(mask)).astype(float)
    seed_idx = np.argwhere(seeds).astype(float)
    d = cdist(idx, seed_idx).min(axis=1)
    return spacing * d.reshape(mask.shape)


def raster(mask, spacing=1.0):
    mask = np.asarray(mask, dtype=bool)
    return RasterSet(n=mask.ndim, shape=mask.shape, spacing=spacing, mask=mask)


class TestDistanceTransform:
    @pytest.mark.parametrize("shape", [(40,), (13, 17), (7, 8, 9)])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_brute_force(self, shape, seed):
        rng = np.random.default_rng(seed)
        mask = rng.random(shape) < 0.4
        mask.flat[0] = True   # keep both regions nonempty
        mask.flat[-1] = False
        s = raster(mask, spacing=0.37)
        for direction in ("to-complement", "to-set"):
            fast = distance_transform(s, direction).values
            slow = brute_distance(mask, 0.37, direction)
            np.testing.assert_allclose(fast, slow, rtol=4e-16, atol=0.0)

    def test_interval_formula_1d(self):
        # cells 3..12 filled: distance to complement is min(i-2, 13-i) cells
        mask = np.zeros(16, dtype=bool)
        mask[3:13] = True
        d = distance_transform(raster(mask, 0.5), "to-complement").values
        i = np.arange(16)
        expected = 0.5 * np.where(mask, np.minimum(i - 2, 13 - i), 0.0)
        np.testing.assert_array_equal(d, expected)

    def test_zero_on_opposing_region(self):
        s = ball_raster((21, 21), 0.1, (1.0, 1.0), 0.6)
        d_in = distance_transform(s, "to-complement").values
        d_out = distance_transform(s, "to-set").values
        assert np.all(d_in[~s.mask] == 0.0)
        assert np.all(d_out[s.mask] == 0.0)
        assert np.all(d_in[s.mask] > 0.0)

    def test_rejects_empty_seed_region(self):
        full = raster(np.ones((5, 5), dtype=bool))
        with pytest.raises(ValueError):
            distance_transform(full, "to-complement")
        with pytest.raises(ValueError):
            distance_transform(full, "bogus")


class TestParallelSets:
    def test_t_zero_identities(self):
        s = ball_raster((31, 31), 0.2, (3.0, 3.0), 1.7)
        assert np.array_equal(inner_parallel(s, 0.0).mask, s.mask)
        assert not outer_parallel(s, 0.0).mask.any()

    def test_inner_monotone_in_t(self):
        s = random_blob((48, 48), 0.1, seed=5)
        prev = s.mask
        for t in (0.1, 0.2, 0.4, 0.8):
            cur = inner_parallel(s, t).mask
            assert not (cur & ~prev).any()
            prev = cur

    def test_outer_recovers_inner(self):
        # ((S)_t)^t is contained in S for any raster set
        s = random_blob((40, 40), 0.25, seed=9)
        t = 0.6
        inner = inner_parallel(s, t)
        if inner.mask.any():
            back = outer_parallel(inner, t)
            # outer parallel uses strict <, so add one cell of slack
            loose = outer_parallel(inner, t + 1.5 * s.spacing)
            assert not (back.mask & ~loose.mask).any()
            assert not (back.mask & ~s.mask).any()

    def test_ball_inner_is_smaller_ball(self):
        s = ball_raster((81, 81), 0.1, (4.0, 4.0), 2.5)
        inner = inner_parallel(s, 1.0)
        expected = ball_inner_measure(s.measure, 1.0, 2)
        assert inner.measure == pytest.approx(expected, rel=0.06)


class TestBallInnerMeasure:
    def test_half_radius_square_law(self):
        # volume pi (rho = 1), t = 1/2 -> pi / 4
        assert ball_inner_measure(math.pi, 0.5, 2) == pytest.approx(math.pi / 4)

    def test_exhausted_at_rho(self):
        assert ball_inner_measure(2.0, 1.0, 1) == 0.0
        assert ball_inner_measure(2.0, 5.0, 1) == 0.0

    def test_1d_linear(self):
        assert ball_inner_measure(2.0, 0.25, 1) == pytest.approx(1.5)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            ball_inner_measure(-1.0, 0.1, 2)


class TestLemmaBmr:
    def test_ball_no_violation(self):
        s = ball_raster((101, 101), 0.1, (5.0, 5.0), 3.0)
        reports = lemma_bmr_check(s, np.linspace(0.0, 3.5, 15))
        assert not any(r["violation"] for r in reports)

    def test_two_distant_balls_analytic(self):
        # two radius-rho balls far apart: inner measure is twice the
        # single-ball value at radius rho, strictly below the bound from the
        # combined-volume ball of radius 2^(1/n) rho
        h, rho = 0.05, 1.0
        mask = (ball_raster((161, 81), h, (2.0, 2.0), rho).mask
                | ball_raster((161, 81), h, (6.0, 2.0), rho).mask)
        s = raster(mask, h)
        omega = math.pi
        for t in (0.2, 0.5, 0.8):
            measured = inner_parallel(s, t).measure
            exact = 2 * omega * max(rho - t, 0.0) ** 2
            assert measured == pytest.approx(exact, abs=s.perimeter_proxy() * h * 2)
            assert exact <= ball_inner_measure(s.measure, t, 2) + 1e-12
        reports = lemma_bmr_check(s, (0.2, 0.5, 0.8))
        assert not any(r["violation"] for r in reports)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_blobs(self, seed):
        s = random_blob((64, 64), 0.125, seed=seed)
        t_grid = np.linspace(0.0, 2.0, 9)
        reports = lemma_bmr_check(s, t_grid)
        assert not any(r["violation"] for r in reports)

    def test_3d_blob(self):
        s = random_blob((24, 24, 24), 0.25, seed=3)
        reports = lemma_bmr_check(s, (0.0, 0.25, 0.5, 1.0))
        assert not any(r["violation"] for r in reports)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            lemma_bmr_check(raster(np.zeros((4, 4), dtype=bool)), (0.1,))


class TestRasterGeometry:
    def test_ball_measure_error_is_perimeter_h(self):
        # lattice-point counts fluctuate, but the error stays within one
        # boundary layer of cells
        exact = math.pi * 1.5**2
        for h in (0.2, 0.1, 0.05):
            m = int(round(4.0 / h)) + 1
            s = ball_raster((m, m), h, (2.0, 2.0), 1.5)
            assert abs(s.measure - exact) < s.perimeter_proxy() * h

    def test_perimeter_proxy_scale(self):
        s = ball_raster((101, 101), 0.1, (5.0, 5.0), 2.0)
        # ~ circumference 4 pi, rasterized axis-aligned boundary is larger but O(1)
        assert 2 * math.pi * 2.0 * 0.8 < s.perimeter_proxy() < 2 * math.pi * 2.0 * 3.0

    def test_blob_respects_fill(self):
        s = random_blob((64, 64), 1.0, seed=1, fill=0.3)
        frac = s.mask.sum() / s.mask.size
        assert 0.15 < frac < 0.35


class TestRsnFormat:
    def test_round_trip(self, tmp_path):
        s = random_blob((17, 23), 0.3, seed=2)
        path = tmp_path / "s.rsn"
        write_rsn(path, s)
        v = read_rsn(path)
        assert v.n == s.n and v.shape == s.shape
        assert v.spacing == s.spacing
        assert np.array_equal(v.mask, s.mask)

    def test_magic_checked(self, tmp_path):
        path = tmp_path / "bad.rsn"
        path.write_bytes(b"GFN1\n1\n4\n1.0\n0.0\n\n" + b"\0" * 4)
        with pytest.raises(ValueError):
            read_rsn(path)
