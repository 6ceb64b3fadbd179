import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from interplab.exponents import ExtendedExponent
from interplab.grids import dilate, gradient, scale
from interplab.norms import (
    OutOfScaleError,
    distribution_function,
    extended_norm,
    holder_seminorm_bb,
    holder_seminorm_naive,
    lebesgue_norm,
    scaling_exponent_check,
    weak_lorentz_norm,
)

from conftest import gaussian_1d, make_grid_function, random_supported, tent

E = ExtendedExponent.from_p


def unit_box_constant(value=1.0, n=17):
    h = 1.0 / n
    return make_grid_function(np.full(n, value), h, 0.0)


class TestLebesgue:
    def test_constant_on_unit_measure(self):
        u = unit_box_constant()
        assert lebesgue_norm(u, 2).value == pytest.approx(1.0, rel=1e-12)

    def test_gaussian_oracle(self):
        # integral of e^(-2x^2) = sqrt(pi/2)
        u = gaussian_1d(h=1e-3, box=8.0)
        assert lebesgue_norm(u, 2).value == pytest.approx((math.pi / 2) ** 0.25, abs=1e-4)

    def test_homogeneity(self, gaussian_u):
        for p in (1, 2, 3, math.inf):
            a = lebesgue_norm(scale(gaussian_u, -3.0), p).value
            b = 3.0 * lebesgue_norm(gaussian_u, p).value
            assert a == pytest.approx(b, rel=1e-13)

    def test_rejects_quasinorm_range(self, gaussian_u):
        with pytest.raises(OutOfScaleError):
            lebesgue_norm(gaussian_u, 0.5)

    def test_triangle_inequality(self):
        for seed in range(5):
            a = random_supported((33,), 0.1, seed)
            b = random_supported((33,), 0.1, seed + 100)
            ab = make_grid_function(a.values + b.values, 0.1, 0.0)
            for p in (1, 2, 4):
                lhs = lebesgue_norm(ab, p).value
                rhs = lebesgue_norm(a, p).value + lebesgue_norm(b, p).value
                assert lhs <= rhs * (1 + 1e-12)


class TestDistributionFunction:
    def test_indicator(self):
        u = unit_box_constant()
        assert distribution_function(u, 0.5) == pytest.approx(1.0, rel=1e-12)
        assert distribution_function(u, 2.0) == 0.0

    def test_nonincreasing(self, gaussian_u):
        ts = np.linspace(0.01, 1.1, 40)
        lams = [distribution_function(gaussian_u, t) for t in ts]
        assert all(a >= b for a, b in zip(lams, lams[1:]))

    def test_power_peak_measure(self):
        h = 1 / 512
        x = np.arange(-4, 4 + h / 2, h)
        with np.errstate(divide="ignore"):
            vals = np.minimum(4.0, np.where(x != 0, np.abs(x), 1.0) ** -1.0)
        vals[x == 0] = 4.0
        vals[0] = vals[-1] = 0.0
        u = make_grid_function(vals, h, -4.0)
        for t in (0.5, 1.0, 2.0):
            assert distribution_function(u, t) == pytest.approx(2.0 / t, abs=2 * h)


class TestWeakLorentz:
    def test_single_level(self):
        u = unit_box_constant(3.0)  # height 3 on measure 1
        for q in (1, 2, 4):
            assert weak_lorentz_norm(u, q).value == pytest.approx(3.0, rel=1e-12)

    def test_power_peak_plateau(self):
        # min(cap, |x|^(-1/q)) has t * lam(t)^(1/q) constant = 2^(1/q)
        h, q = 1 / 2048, 2.0
        x = np.arange(-2, 2 + h / 2, h)
        with np.errstate(divide="ignore"):
            vals = np.minimum(64.0, np.where(x != 0, np.abs(x), 1.0) ** (-1.0 / q))
        vals[x == 0] = 64.0
        vals[0] = vals[-1] = 0.0
        u = make_grid_function(vals, h, -2.0)
        # the node-counting superlevel measure overstates the analytic one by
        # up to a single cell, which inflates the sup near the peak; with one
        # cell removed per level the plateau value 2^(1/q) is recovered exactly
        norm = weak_lorentz_norm(u, q).value
        assert 2 ** (1 / q) * 0.98 <= norm <= 3 ** (1 / q) * 1.02
        mag = np.abs(u.values)
        v = np.sort(mag[mag > 0])[::-1]
        counts = np.arange(1, v.size + 1, dtype=float)
        shaved = (v[1:] * ((counts[1:] - 1) * h) ** (1 / q)).max()
        assert shaved == pytest.approx(2 ** (1 / q), rel=0.02)

    def test_dominated_by_strong(self):
        for seed in range(10):
            u = random_supported((65,), 0.05, seed, smooth=True)
            for q in (1, 1.5, 2, 4):
                assert weak_lorentz_norm(u, q).value <= lebesgue_norm(u, q).value

    def test_rejects_q_below_one(self, gaussian_u):
        with pytest.raises(OutOfScaleError):
            weak_lorentz_norm(gaussian_u, 0.5)


class TestHolderNaive:
    def test_identity_ramp(self):
        h = 1 / 64
        u = make_grid_function(np.arange(65) * h, h, 0.0)
        assert holder_seminorm_naive(u, 1.0).value == pytest.approx(1.0, rel=1e-12)

    def test_sqrt_profile(self):
        h = 1 / 256
        x = np.arange(257) * h
        u = make_grid_function(np.sqrt(x), h, 0.0)
        nv = holder_seminorm_naive(u, 0.5)
        assert nv.value == pytest.approx(1.0, rel=1e-12)

    def test_constant_is_kernel(self):
        u = make_grid_function(np.full(9, 2.5), 0.1, 0.0)
        assert holder_seminorm_naive(u, 0.5).value == 0.0


class TestBranchAndBoundEquivalence:
    @pytest.mark.parametrize("seed", range(12))
    def test_exact_match_scalar(self, seed):
        rng = np.random.default_rng(seed)
        ndim = int(rng.integers(1, 3))
        shape = tuple(int(s) for s in rng.integers(4, 34, size=ndim))
        u = random_supported(shape, float(rng.uniform(0.05, 1.0)), seed + 1000)
        alpha = float(rng.uniform(0.1, 1.0))
        naive = holder_seminorm_naive(u, alpha)
        bb = holder_seminorm_bb(u, alpha)
        assert bb.value == naive.value

    @pytest.mark.parametrize("seed", range(4))
    def test_exact_match_vector_field(self, seed):
        u = random_supported((21, 19), 0.1, seed, smooth=True)
        g = gradient(u, 1)
        naive = holder_seminorm_naive(g, 0.5)
        bb = holder_seminorm_bb(g, 0.5)
        assert bb.value == naive.value

    def test_pruning_reported(self):
        u = gaussian_1d(h=1 / 64, box=4.0)
        bb = holder_seminorm_bb(u, 0.5)
        assert 0 < bb.stats["pairs"] < bb.stats["total_pairs"]

    def test_ramp_extremal_value(self):
        h = 1 / 32
        u = make_grid_function(np.arange(33) * h, h, 0.0)
        assert holder_seminorm_bb(u, 1.0).value == pytest.approx(1.0, rel=1e-12)


class TestExtendedNorm:
    def test_lebesgue_dispatch(self, gaussian_u):
        assert extended_norm(gaussian_u, E(2), 1).value == lebesgue_norm(gaussian_u, 2).value

    def test_sup_dispatch(self, gaussian_u):
        nv = extended_norm(gaussian_u, ExtendedExponent.parse("inf"), 1)
        assert nv.value == np.abs(gaussian_u.values).max()

    def test_gradient_sup_branch(self, tent_u):
        # p = -1, n = 1: s = 1 = -n/p, so the norm is the sup of the gradient
        nv = extended_norm(tent_u, E(-1), 1)
        assert nv.params["s"] == 1
        assert nv.value == pytest.approx(1.0, rel=1e-10)

    def test_holder_branch(self, tent_u):
        # p = -2, n = 1: s = 0, alpha = 1/2 on u itself
        nv = extended_norm(tent_u, E(-2), 1)
        assert nv.params["s"] == 0
        assert nv.value == pytest.approx(1.0, rel=1e-6)

    def test_out_of_scale_rejected(self, gaussian_u):
        with pytest.raises(OutOfScaleError):
            extended_norm(gaussian_u, E(-2), 3)


class TestScalingLaw:
    @pytest.mark.parametrize("p,n", [(2, 1), ("inf", 1), (-2, 1)])
    @pytest.mark.parametrize("lam", [0.5, 2, 3])
    def test_residual_small(self, p, n, lam):
        u = gaussian_1d(h=1 / 128)
        e = ExtendedExponent.parse(str(p))
        rep = scaling_exponent_check(u, e, lam, n)
        assert rep["residual"] < 1e-10

    def test_sup_invariant(self, gaussian_u):
        rep = scaling_exponent_check(gaussian_u, ExtendedExponent.parse("inf"), 3, 1)
        assert rep["residual"] < 1e-14
