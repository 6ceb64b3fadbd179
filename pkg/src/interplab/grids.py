"""Uniform-grid sampled scalar functions on boxes in R^n, n <= 3.

Functions are compactly supported inside their bounding box: generators zero
the one-cell boundary frame and record the truncation level they clipped.
Dilation is a metadata-only reinterpretation of the spacing, so it is exact.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
from scipy.ndimage import gaussian_filter

MAX_DERIVATIVE_ORDER = 4

GENERATORS = ("gaussian", "power-peak", "power-tail", "bump", "smoothed-noise", "multi-bump")


class SupportWarning(UserWarning):
    """Nonzero values on the boundary frame of an ingested grid function."""


@dataclass(frozen=True)
class GridFunction:
    n: int
    shape: tuple
    spacing: tuple
    origin: tuple
    values: np.ndarray
    truncation_level: float = 0.0

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.n}")
        if len(self.shape) != self.n or any(s < 2 for s in self.shape):
            raise ValueError(f"bad shape {self.shape} for n={self.n}")
        if any(h <= 0 for h in self.spacing):
            raise ValueError("spacings must be strictly positive")
        if tuple(self.values.shape) != tuple(self.shape):
            raise ValueError("values shape does not match grid shape")
        self.values.setflags(write=False)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def axis_coords(self, axis: int) -> np.ndarray:
        return self.origin[axis] + self.spacing[axis] * np.arange(self.shape[axis])

    def node_coords(self) -> np.ndarray:
        """All node coordinates as an (N, n) array, row-major node order."""
        axes = [self.axis_coords(k) for k in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def boundary_max(self) -> float:
        """Largest |value| on the one-cell boundary frame."""
        mask = np.ones(self.shape, dtype=bool)
        if min(self.shape) > 2:
            mask[tuple(slice(1, -1) for _ in range(self.n))] = False
        return float(np.abs(self.values[mask]).max())


def ingest(values, spacing, origin) -> GridFunction:
    """Wrap raw samples as a GridFunction, warning if support touches the boundary."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    n = values.ndim
    spacing = tuple(float(h) for h in np.broadcast_to(spacing, (n,)))
    origin = tuple(float(o) for o in np.broadcast_to(origin, (n,)))
    u = GridFunction(n=n, shape=values.shape, spacing=spacing, origin=origin, values=values)
    bmax = u.boundary_max()
    if bmax != 0.0:
        warnings.warn(
            f"compact-support violation: boundary max |value| = {bmax:g}", SupportWarning
        )
    return u


@dataclass(frozen=True)
class DerivativeTensor:
    """All order-j partial derivatives (with multiplicity: n^j ordered tuples)."""

    n: int
    shape: tuple
    spacing: tuple
    origin: tuple
    order: int
    components: np.ndarray  # (n**order, *shape)
    index_tuples: tuple

    def component(self, multi_index) -> np.ndarray:
        return self.components[self.index_tuples.index(tuple(multi_index))]

    def magnitude(self) -> np.ndarray:
        """Pointwise Euclidean norm over all components."""
        return np.sqrt((self.components**2).sum(axis=0))

    def node_coords(self) -> np.ndarray:
        axes = [self.origin[k] + self.spacing[k] * np.arange(self.shape[k]) for k in range(self.n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


def gradient(u: GridFunction, j: int, max_order: int = MAX_DERIVATIVE_ORDER) -> DerivativeTensor:
    """Iterated second-order central differences (one-sided at the boundary)."""
    if j < 1:
        raise ValueError("derivative order must be >= 1")
    if j > max_order:
        raise ValueError(f"derivative order {j} exceeds configured maximum {max_order}")
    if min(u.shape) < 3:
        raise ValueError("grid too small for the second-order stencil")
    comps = {(): u.values}
    for _ in range(j):
        nxt = {}
        for mi, arr in comps.items():
            for ax in range(u.n):
                nxt[mi + (ax,)] = np.gradient(arr, u.spacing[ax], axis=ax, edge_order=2)
        comps = nxt
    idx = tuple(sorted(comps.keys()))
    stack = np.stack([comps[i] for i in idx], axis=0)
    return DerivativeTensor(
        n=u.n, shape=u.shape, spacing=u.spacing, origin=u.origin,
        order=j, components=stack, index_tuples=idx,
    )


def dilate(u: GridFunction, lam) -> GridFunction:
    """u_lam(x) = u(lam * x): same samples, spacing and origin divided by lam."""
    lamf = float(Fraction(lam)) if isinstance(lam, str) else float(lam)
    if lamf <= 0:
        raise ValueError("dilation factor must be positive")
    return replace(
        u,
        spacing=tuple(h / lamf for h in u.spacing),
        origin=tuple(o / lamf for o in u.origin),
    )


def scale(u: GridFunction, c: float) -> GridFunction:
    return replace(u, values=u.values * c)


# ---------------------------------------------------------------------------
# generator families

@dataclass(frozen=True)
class FamilySpec:
    """A named generator plus parameter ranges and the grid it samples on.

    Each entry of params is either a fixed value or a [lo, hi] range drawn
    uniformly per seed.
    """

    generator: str
    params: dict
    grid: dict  # {"shape": [...], "spacing": [...], "origin": [...]}
    seeds: tuple = ()

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")

    @classmethod
    def from_json(cls, doc) -> "FamilySpec":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        return cls(
            generator=doc["generator"],
            params=dict(doc.get("params", {})),
            grid=dict(doc["grid"]),
            seeds=tuple(doc.get("seeds", ())),
        )

    def to_json(self) -> str:
        return json.dumps(
            {"generator": self.generator, "params": self.params,
             "grid": self.grid, "seeds": list(self.seeds)}
        )


def _draw_params(spec: FamilySpec, rng: np.random.Generator) -> dict:
    drawn = {}
    for name in sorted(spec.params):
        val = spec.params[name]
        if isinstance(val, (list, tuple)) and len(val) == 2 and all(
            isinstance(v, (int, float)) for v in val
        ):
            lo, hi = val
            if not lo <= hi:
                raise ValueError(f"empty range for parameter {name!r}")
            drawn[name] = float(rng.uniform(lo, hi))
        else:
            drawn[name] = val
    return drawn


def _radial(coords_axes, center) -> np.ndarray:
    mesh = np.meshgrid(*coords_axes, indexing="ij")
    r2 = np.zeros_like(mesh[0])
    for m in mesh:
        r2 = r2 + (m - center) ** 2
    return np.sqrt(r2)


def _bump_profile(r, width):
    out = np.zeros_like(r)
    inside = r < width
    t = np.zeros_like(r)
    t[inside] = (r[inside] / width) ** 2
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside]))
    return out


def generate(spec: FamilySpec, seed: int) -> GridFunction:
    """Deterministically sample one family member; zeroes the boundary frame
    and records the clipped level."""
    rng = np.random.default_rng(seed)
    p = _draw_params(spec, rng)
    shape = tuple(int(s) for s in spec.grid["shape"])
    n = len(shape)
    spacing = tuple(float(h) for h in np.broadcast_to(spec.grid["spacing"], (n,)))
    origin = tuple(float(o) for o in np.broadcast_to(spec.grid["origin"], (n,)))
    axes = [origin[k] + spacing[k] * np.arange(shape[k]) for k in range(n)]

    gen = spec.generator
    if gen == "gaussian":
        amp = p.get("amplitude", 1.0)
        width = p.get("width", 1.0)
        center = p.get("center", 0.0)
        vals = amp * np.exp(-((_radial(axes, center) / width) ** 2))
    elif gen == "bump":
        amp = p.get("amplitude", 1.0)
        width = p.get("width", 1.0)
        center = p.get("center", 0.0)
        vals = amp * _bump_profile(_radial(axes, center), width)
    elif gen == "power-peak":
        a = p.get("a", 1.0)
        if a <= 0:
            raise ValueError("power-peak exponent a must be positive")
        cap = p.get("cap", 16.0)
        r = _radial(axes, p.get("center", 0.0))
        with np.errstate(divide="ignore", over="ignore"):
            vals = np.minimum(cap, np.where(r > 0, r, 1e-300) ** (-a))
    elif gen == "power-tail":
        a = p.get("a", 2.0)
        if a <= 0:
            raise ValueError("power-tail exponent a must be positive")
        amp = p.get("amplitude", 1.0)
        r = _radial(axes, p.get("center", 0.0))
        with np.errstate(divide="ignore", over="ignore"):
            vals = amp * np.minimum(1.0, np.where(r > 0, r, 1e-300) ** (-a))
    elif gen == "smoothed-noise":
        amp = p.get("amplitude", 1.0)
        width = p.get("width", 0.5)
        noise = rng.standard_normal(shape)
        sigma = [max(width / h, 1e-9) for h in spacing]
        vals = amp * gaussian_filter(noise, sigma=sigma)
    elif gen == "multi-bump":
        count = int(p.get("count", 3))
        amp = p.get("amplitude", 1.0)
        width = p.get("width", 0.5)
        vals = np.zeros(shape)
        for _ in range(count):
            c = [rng.uniform(axes[k][0] + 0.2 * (axes[k][-1] - axes[k][0]),
                             axes[k][-1] - 0.2 * (axes[k][-1] - axes[k][0]))
                 for k in range(n)]
            w = width * rng.uniform(0.5, 1.5)
            a = amp * rng.uniform(0.5, 1.5)
            mesh = np.meshgrid(*axes, indexing="ij")
            r2 = np.zeros_like(mesh[0])
            for k, m in enumerate(mesh):
                r2 = r2 + (m - c[k]) ** 2
            vals = vals + a * _bump_profile(np.sqrt(r2), w)
    else:  # pragma: no cover - guarded by FamilySpec
        raise ValueError(f"unknown generator {gen!r}")

    vals = np.ascontiguousarray(vals, dtype=np.float64)
    frame = np.ones(shape, dtype=bool)
    if min(shape) > 2:
        frame[tuple(slice(1, -1) for _ in range(n))] = False
    truncation = float(np.abs(vals[frame]).max()) if frame.any() else 0.0
    vals[frame] = 0.0
    return GridFunction(
        n=n, shape=shape, spacing=spacing, origin=origin,
        values=vals, truncation_level=truncation,
    )


# ---------------------------------------------------------------------------
# GFN1 file format

def write_gfn(path, u: GridFunction) -> None:
    header = "GFN1\n{n}\n{shape}\n{spacing}\n{origin}\n\n".format(
        n=u.n,
        shape=" ".join(str(s) for s in u.shape),
        spacing=" ".join(repr(h) for h in u.spacing),
        origin=" ".join(repr(o) for o in u.origin),
    )
    with open(path, "wb") as f:
        f.write(header.encode("ascii"))
        f.write(np.ascontiguousarray(u.values, dtype="<f8").tobytes())


def read_gfn(path) -> GridFunction:
    with open(path, "rb") as f:
        raw = f.read()
    head, _, body = raw.partition(b"\n\n")
    lines = head.decode("ascii").splitlines()
    if not lines or lines[0] != "GFN1":
        raise ValueError("not a GFN1 file")
    n = int(lines[1])
    shape = tuple(int(s) for s in lines[2].split())
    spacing = tuple(float(h) for h in lines[3].split())
    origin = tuple(float(o) for o in lines[4].split())
    values = np.frombuffer(body, dtype="<f8").reshape(shape).copy()
    return ingest(values, spacing, origin)
