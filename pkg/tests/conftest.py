import numpy as np
import pytest

from interplab.grids import GridFunction


def make_grid_function(values, spacing, origin):
    """Wrap values without the ingestion support warning (tests build
    functions that are compactly supported by construction)."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    n = values.ndim
    spacing = tuple(float(h) for h in np.broadcast_to(spacing, (n,)))
    origin = tuple(float(o) for o in np.broadcast_to(origin, (n,)))
    return GridFunction(n=n, shape=values.shape, spacing=spacing,
                        origin=origin, values=values)


def tent(h=1 / 256, half_width=1.0, box=1.5):
    """(1 - |x|/w)_+ sampled on [-box, box]; node at the kink."""
    x = np.arange(-box, box + h / 2, h)
    vals = np.clip(1.0 - np.abs(x) / half_width, 0.0, None)
    return make_grid_function(vals, h, -box)


def gaussian_1d(h=1 / 256, box=4.0, width=1.0, amplitude=1.0):
    x = np.arange(-box, box + h / 2, h)
    vals = amplitude * np.exp(-((x / width) ** 2))
    vals[0] = vals[-1] = 0.0
    return make_grid_function(vals, h, -box)


def random_supported(shape, spacing, seed, smooth=False):
    """Random values, zero boundary frame."""
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal(shape)
    if smooth:
        from scipy.ndimage import gaussian_filter

        vals = gaussian_filter(vals, sigma=2.0)
    frame = np.ones(shape, dtype=bool)
    if min(shape) > 2:
        frame[tuple(slice(1, -1) for _ in range(len(shape)))] = False
    vals[frame] = 0.0
    return make_grid_function(vals, spacing, 0.0)


@pytest.fixture
def tent_u():
    return tent()


@pytest.fixture
def gaussian_u():
    return gaussian_1d()
