"""Numerical Hausdorff-measure machinery over dyadic grids.

Everything here reduces to counting occupied half-open dyadic cells:

* ``cover_estimate``  -- one normalised cover sum alpha(s) * N * diam^s,
* ``box_dimension``   -- log2 N(k) against k regression (box-counting slope),
* ``graph_length_n2`` -- inscribed polyline length of the planar graph,
* ``projection_measure`` / ``lower_bound_total`` -- area of coordinate
  projections of the graph pieces classified by the slope probe; summing
  them realises the projection lower-bound mechanism.

Counts are exact integers; length/area accumulations keep float error far
below the 1e-12 budget (per-chunk pairwise sums combined with exact fsum).
Sampling jitter comes from a counter-based generator keyed by the seed and
the cell block, so results do not depend on how the grid is partitioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DomainError, InsufficientDataError, PrecisionError
from .singular import SingularSetProbe, evaluate_many, in_singular_set_many
from .surface import SurfaceSpec, surface_values

#: default cap on the number of surface evaluations in one estimator call
DEFAULT_EVAL_BUDGET = 100_000_000

#: cells per jitter block; a fixed constant that is part of the sampling
#: definition (jitter for a cell depends only on seed, block, in-block row)
JITTER_BLOCK = 2**17

#: sample rows processed per vectorised chunk
_CHUNK_ROWS = 2**21

#: domain coordinates are pulled this far inside the open cube before
#: evaluation; far below any cell width in use
_EDGE = 2.0**-50


@dataclass(frozen=True)
class DyadicGrid:
    """Half-open partition of [0,1)^dim into 2^(depth*dim) congruent cells."""

    dim: int
    depth: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DomainError(f"grid dim must be >= 1, got {self.dim}")
        if self.depth < 1:
            raise DomainError(f"grid depth must be >= 1, got {self.depth}")
        if self.dim * self.depth > 62:
            raise BudgetError(f"grid with dim={self.dim}, depth={self.depth} "
                              "cannot be linearised in 64-bit indices")

    @property
    def cells_per_axis(self) -> int:
        return 1 << self.depth

    @property
    def total_cells(self) -> int:
        return 1 << (self.depth * self.dim)

    @property
    def side(self) -> float:
        return 2.0**-self.depth

    @property
    def diameter(self) -> float:
        return self.side * math.sqrt(self.dim)

    def cell_index(self, coords) -> tuple[int, ...]:
        """Index of the unique cell containing a point of [0,1)^dim."""
        if len(coords) != self.dim:
            raise DomainError(f"expected {self.dim} coordinates")
        idx = []
        for c in coords:
            if not 0.0 <= c < 1.0:
                raise DomainError(f"coordinate {c} outside [0,1)")
            idx.append(int(c * self.cells_per_axis))
        return tuple(idx)

    def cell_origin(self, index: tuple[int, ...]) -> tuple[float, ...]:
        """Lower-left corner of a cell."""
        if len(index) != self.dim:
            raise DomainError(f"expected {self.dim} indices")
        for i in index:
            if not 0 <= i < self.cells_per_axis:
                raise DomainError(f"cell index {i} out of range")
        return tuple(i * self.side for i in index)

    def linearize(self, index: tuple[int, ...]) -> int:
        lin = 0
        for i in index:
            lin = (lin << self.depth) | i
        return lin

    def delinearize(self, lin: int) -> tuple[int, ...]:
        mask = self.cells_per_axis - 1
        out = []
        for j in range(self.dim):
            out.append((lin >> ((self.dim - 1 - j) * self.depth)) & mask)
        return tuple(out)


@dataclass(frozen=True)
class CoverEstimate:
    """One normalised cover sum: value = alpha(s) * count * delta^s."""

    s: float
    delta: float
    count: int
    value: float


@dataclass(frozen=True)
class DimensionEstimate:
    """Least-squares slope of log2 N(k) against k, with fit quality."""

    slope: float
    intercept: float
    r2: float
    depths: tuple[int, ...]


@dataclass(frozen=True)
class ProjectionEstimate:
    """Occupied-cell area of one coordinate projection of a graph piece."""

    axis: int
    area: float
    probe: SingularSetProbe
    grid_depth: int


def alpha(s: float) -> float:
    """Volume of the s-dimensional ball of radius 1/2: pi^(s/2) / (2^s Gamma(s/2+1))."""
    if s < 0:
        raise DomainError(f"dimension parameter must be >= 0, got {s}")
    return math.pi ** (s / 2.0) / (2.0**s * math.gamma(s / 2.0 + 1.0))


def _fsum_array(values: np.ndarray) -> float:
    """Sum with error far below 1e-12: exact fsum over pairwise chunk sums."""
    chunks = [float(np.sum(values[i : i + _CHUNK_ROWS]))
              for i in range(0, len(values), _CHUNK_ROWS)]
    return math.fsum(chunks)


def _offset_grid(samples_per_cell: int, dim: int) -> np.ndarray:
    """Per-cell sample offsets: the (m+1)^dim lattice j/m including all corners.

    Doubling m refines this lattice in place (old offsets are kept), which
    makes occupied-cell counts monotone under sample refinement.
    """
    offs = np.arange(samples_per_cell + 1, dtype=np.float64) / samples_per_cell
    grids = np.meshgrid(*([offs] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _cell_axis_indices(cell_ids: np.ndarray, depth: int, dim: int) -> np.ndarray:
    """Decode flat domain-cell ids to per-axis integer coordinates (N, dim)."""
    mask = (1 << depth) - 1
    cols = [(cell_ids >> ((dim - 1 - j) * depth)) & mask for j in range(dim)]
    return np.stack(cols, axis=1)


def _mark_codes(points: np.ndarray, depth: int) -> np.ndarray:
    """Linear half-open cell codes of ambient points in [0,1]^dim."""
    dim = points.shape[1]
    scale = 1 << depth
    idx = np.minimum((points * scale).astype(np.int64), scale - 1)
    np.maximum(idx, 0, out=idx)
    lin = idx[:, 0]
    for j in range(1, dim):
        lin = (lin << depth) | idx[:, j]
    return lin


def occupied_cell_count(
    spec: SurfaceSpec,
    domain_depth: int,
    samples_per_cell: int,
    mark_depth: int | None = None,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> int:
    """Number of ambient grid cells hit by sampled graph points.

    The domain grid at ``domain_depth`` is swept cell by cell; each cell is
    sampled on the corner-including offset lattice and the image cells of
    the lifted points are marked at ``mark_depth`` (defaults to the domain
    depth).  Separating the two depths lets nested runs share one sample
    set across mark resolutions.
    """
    if domain_depth < 1 or samples_per_cell < 1:
        raise DomainError("domain_depth and samples_per_cell must be >= 1")
    d = spec.domain_dim
    mark = domain_depth if mark_depth is None else mark_depth
    if mark < 1:
        raise DomainError("mark depth must be >= 1")
    if mark * spec.n > 62 or domain_depth * d > 62:
        raise BudgetError(f"grid depths ({domain_depth}, {mark}) in dimension "
                          f"{spec.n} overflow 64-bit cell codes")
    n_cells = 1 << (domain_depth * d)
    n_off = (samples_per_cell + 1) ** d
    if n_cells * n_off > budget:
        raise BudgetError(f"{n_cells * n_off} evaluations exceed budget {budget}")
    offsets = _offset_grid(samples_per_cell, d)
    scale = float(1 << domain_depth)
    block = max(1, _CHUNK_ROWS // n_off)
    seen: list[np.ndarray] = []
    for start in range(0, n_cells, block):
        ids = np.arange(start, min(start + block, n_cells), dtype=np.int64)
        axis_idx = _cell_axis_indices(ids, domain_depth, d)
        coords = (axis_idx[:, None, :] + offsets[None, :, :]) / scale
        pts = np.clip(coords.reshape(-1, d), _EDGE, 1.0 - _EDGE)
        F, _ = surface_values(spec, pts)
        ambient = np.concatenate([pts, F[:, None]], axis=1)
        seen.append(np.unique(_mark_codes(ambient, mark)))
    return int(np.unique(np.concatenate(seen)).size)


def cover_estimate(
    spec: SurfaceSpec,
    s: float,
    k: int,
    samples_per_cell: int,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> CoverEstimate:
    """Grid cover sum at one resolution: alpha(s) * N * (2^-k sqrt(n))^s.

    The grid restricts the infimum over arbitrary covers, so single values
    overestimate; trends over k carry the meaning.
    """
    count = occupied_cell_count(spec, k, samples_per_cell, budget=budget)
    delta = 2.0**-k * math.sqrt(spec.n)
    return CoverEstimate(s=s, delta=delta, count=count, value=alpha(s) * count * delta**s)


def _fit_log_counts(depths: list[int], counts: list[int]) -> tuple[float, float, float]:
    ks = np.asarray(depths, dtype=np.float64)
    logs = np.log2(np.asarray(counts, dtype=np.float64))
    slope, intercept = np.polyfit(ks, logs, 1)
    fitted = intercept + slope * ks
    ss_res = float(np.sum((logs - fitted) ** 2))
    ss_tot = float(np.sum((logs - logs.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def box_dimension(
    spec: SurfaceSpec,
    k_min: int,
    k_max: int,
    samples_per_cell: int,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> DimensionEstimate:
    """Box-counting dimension estimate of the graph over a depth window."""
    if k_max - k_min + 1 < 3:
        raise InsufficientDataError("need at least 3 grid depths for a regression")
    depths = list(range(k_min, k_max + 1))
    counts = [occupied_cell_count(spec, k, samples_per_cell, budget=budget) for k in depths]
    slope, intercept, r2 = _fit_log_counts(depths, counts)
    return DimensionEstimate(slope=slope, intercept=intercept, r2=r2, depths=tuple(depths))


def extrapolated_cover_value(
    spec: SurfaceSpec,
    s: float,
    k_min: int,
    k_max: int,
    samples_per_cell: int,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> float:
    """Cover value at the finest depth read off the fitted count trend.

    Fits log2 N(k) over the window and evaluates alpha(s) * N_fit * diam^s
    at k_max, smoothing single-grid noise out of upper-bound checks.
    """
    if k_max - k_min + 1 < 3:
        raise InsufficientDataError("need at least 3 grid depths for a regression")
    depths = list(range(k_min, k_max + 1))
    counts = [occupied_cell_count(spec, k, samples_per_cell, budget=budget) for k in depths]
    slope, intercept, _ = _fit_log_counts(depths, counts)
    n_fit = 2.0 ** (intercept + slope * k_max)
    delta = 2.0**-k_max * math.sqrt(spec.n)
    return alpha(s) * n_fit * delta**s


def graph_length_n2(spec: SurfaceSpec, k: int, budget: int = DEFAULT_EVAL_BUDGET) -> float:
    """Inscribed polyline length of the planar graph over the depth-k partition.

    Endpoint evaluations are exact (dyadic inputs of depth <= k terminate),
    so the result is the exact polygonal length up to summation rounding.
    Nondecreasing in k; converges upward to the length of the graph.
    """
    if spec.n != 2:
        raise DomainError(f"polyline length is defined for n = 2, got n = {spec.n}")
    if k < 1:
        raise DomainError("partition depth must be >= 1")
    if k > spec.f.depth:
        raise PrecisionError(f"partition depth {k} exceeds evaluation depth {spec.f.depth}")
    if (1 << k) + 1 > budget:
        raise BudgetError(f"{(1 << k) + 1} evaluations exceed budget {budget}")
    dx = 2.0**-k
    pieces: list[float] = []
    # chunk endpoint evaluations; chunks overlap by one point to close gaps
    step = _CHUNK_ROWS
    for start in range(0, 1 << k, step):
        stop = min(start + step, 1 << k)
        xs = np.arange(start, stop + 1, dtype=np.float64) * dx
        f, _ = evaluate_many(spec.f, xs)
        df = np.diff(f)
        pieces.append(float(np.sum(np.sqrt(dx * dx + df * df))))
    return math.fsum(pieces)


def _block_jitter(seed: int, block_index: int, n_cells: int, per_cell: int, dim: int) -> np.ndarray:
    """Stratified jitter for one block of cells, keyed by (seed, block)."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, block_index], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    return gen.random((n_cells, per_cell, dim))


def _image_dim(n: int) -> int:
    return n - 1


def _projection_sweep(
    spec: SurfaceSpec,
    probe: SingularSetProbe,
    axes: list[int],
    domain_depth: int,
    image_depth: int,
    samples_per_cell: int,
    seed: int,
    budget: int,
) -> tuple[dict[int, float], dict[int, int]]:
    """Classify jittered domain samples into the B-pieces and mark their
    projected graph images; one pass serves every requested axis."""
    d = spec.domain_dim
    n = spec.n
    if probe.depth > spec.f.depth:
        raise PrecisionError(f"probe depth {probe.depth} exceeds spec depth {spec.f.depth}")
    for axis in axes:
        if not 1 <= axis <= n:
            raise DomainError(f"projection axis must lie in 1..{n}, got {axis}")
    if domain_depth < 1 or image_depth < 1 or samples_per_cell < 1:
        raise DomainError("depths and samples_per_cell must be >= 1")
    if domain_depth * d > 62:
        raise BudgetError("domain grid overflows 64-bit cell ids")
    img_dim = _image_dim(n)
    if image_depth * img_dim > 28:
        raise BudgetError("image occupancy array would exceed the memory guard")
    per_cell = samples_per_cell**d
    n_cells = 1 << (domain_depth * d)
    if n_cells * per_cell > budget:
        raise BudgetError(f"{n_cells * per_cell} evaluations exceed budget {budget}")
    occupancy = {axis: np.zeros(1 << (image_depth * img_dim), dtype=bool) for axis in axes}
    members = {axis: 0 for axis in axes}
    scale = float(1 << domain_depth)
    for start in range(0, n_cells, JITTER_BLOCK):
        nb = min(JITTER_BLOCK, n_cells - start)
        jit = _block_jitter(seed, start // JITTER_BLOCK, nb, per_cell, d)
        ids = np.arange(start, start + nb, dtype=np.int64)
        axis_idx = _cell_axis_indices(ids, domain_depth, d)
        pts = ((axis_idx[:, None, :] + jit) / scale).reshape(-1, d)
        in_s = np.stack(
            [in_singular_set_many(spec.f, probe, pts[:, j]) for j in range(d)], axis=1
        )
        outside = (~in_s).sum(axis=1)
        for axis in axes:
            if axis == n:
                mask = outside == 0
                image = pts[mask]
            else:
                mask = (outside == 1) & ~in_s[:, axis - 1]
                chosen = pts[mask]
                F, _ = surface_values(spec, chosen)
                image = np.concatenate(
                    [chosen[:, : axis - 1], chosen[:, axis:], F[:, None]], axis=1
                )
            members[axis] += int(mask.sum())
            if len(image):
                occupancy[axis][_mark_codes(image, image_depth)] = True
    cell_area = (2.0**-image_depth) ** img_dim
    areas = {axis: float(occupancy[axis].sum()) * cell_area for axis in axes}
    return areas, members


def classify_regions(
    spec: SurfaceSpec, probe: SingularSetProbe, points: np.ndarray
) -> np.ndarray:
    """B-piece label per domain point: 1..n-1, n, or 0 for none.

    A point belongs to piece i < n when exactly coordinate i falls outside
    the probed set, to piece n when no coordinate does, and to no piece
    otherwise; the pieces partition their union by construction.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != spec.domain_dim:
        raise DomainError(f"expected points of dimension {spec.domain_dim}")
    in_s = np.stack(
        [in_singular_set_many(spec.f, probe, points[:, j]) for j in range(spec.domain_dim)],
        axis=1,
    )
    outside = (~in_s).sum(axis=1)
    labels = np.zeros(len(points), dtype=np.int64)
    labels[outside == 0] = spec.n
    only_one = outside == 1
    if only_one.any():
        which = np.argmax(~in_s[only_one], axis=1) + 1
        labels[only_one] = which
    return labels


def projection_measure(
    spec: SurfaceSpec,
    axis: int,
    probe: SingularSetProbe,
    domain_depth: int,
    image_depth: int,
    samples_per_cell: int,
    seed: int = 0,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> ProjectionEstimate:
    """Area estimate of one coordinate projection of its graph piece."""
    areas, _ = _projection_sweep(
        spec, probe, [axis], domain_depth, image_depth, samples_per_cell, seed, budget
    )
    return ProjectionEstimate(axis=axis, area=areas[axis], probe=probe, grid_depth=image_depth)


def projection_measures(
    spec: SurfaceSpec,
    probe: SingularSetProbe,
    domain_depth: int,
    image_depth: int,
    samples_per_cell: int,
    seed: int = 0,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> list[ProjectionEstimate]:
    """All n axis projections from a single shared sample sweep."""
    axes = list(range(1, spec.n + 1))
    areas, _ = _projection_sweep(
        spec, probe, axes, domain_depth, image_depth, samples_per_cell, seed, budget
    )
    return [
        ProjectionEstimate(axis=a, area=areas[a], probe=probe, grid_depth=image_depth)
        for a in axes
    ]


def lower_bound_total(
    spec: SurfaceSpec,
    probe: SingularSetProbe,
    domain_depth: int,
    image_depth: int,
    samples_per_cell: int,
    seed: int = 0,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> float:
    """Sum of the n projection areas; approaches n as resolution grows."""
    estimates = projection_measures(
        spec, probe, domain_depth, image_depth, samples_per_cell, seed, budget
    )
    return math.fsum(e.area for e in estimates)
