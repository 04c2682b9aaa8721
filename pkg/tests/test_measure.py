import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from antichain import (
    BudgetError,
    DomainError,
    DyadicGrid,
    InsufficientDataError,
    PrecisionError,
    SingularSetProbe,
    alpha,
    box_dimension,
    cover_estimate,
    extrapolated_cover_value,
    graph_length_n2,
    lower_bound_total,
    occupied_cell_count,
    projection_measure,
    projection_measures,
)
from antichain.measure import _block_jitter, classify_regions
from antichain.singular import in_singular_set

from conftest import seeded_rng


def length_binomial(k: int, lam: float) -> float:
    """Independent length oracle: group the dyadic cells by their digit-one
    count; each group shares the same f increment lam^(k-o) (1-lam)^o."""
    dx2 = (2.0**-k) ** 2
    return math.fsum(
        math.comb(k, o) * math.sqrt(dx2 + (lam ** (k - o) * (1.0 - lam) ** o) ** 2)
        for o in range(k + 1)
    )


def antidiagonal_cells(k: int) -> set[tuple[int, int]]:
    """Independent cell enumeration for the graph of 1 - x at depth k."""
    m = 1 << k
    cells = set()
    for i in range(m):
        cells.add((i, m - 1 - i))  # interior of the segment over column i
        if i >= 1:
            cells.add((i, m - i))  # left corner sits on the cell boundary above
    return cells


# ------------------------------------------------------------------- alpha


def test_alpha_closed_forms():
    assert abs(alpha(0.0) - 1.0) <= 1e-12
    assert abs(alpha(1.0) - 1.0) <= 1e-12
    assert abs(alpha(2.0) - math.pi / 4.0) <= 1e-12 * (math.pi / 4.0)
    assert abs(alpha(3.0) - math.pi / 6.0) <= 1e-12 * (math.pi / 6.0)


def test_alpha_negative_rejected():
    with pytest.raises(DomainError):
        alpha(-0.5)


@given(st.floats(min_value=0.0, max_value=25.0, allow_nan=False))
def test_alpha_positive(s):
    assert alpha(s) > 0.0


# -------------------------------------------------------------- DyadicGrid


def test_grid_basic_geometry():
    grid = DyadicGrid(dim=2, depth=3)
    assert grid.cells_per_axis == 8
    assert grid.total_cells == 64
    assert grid.side == 0.125
    assert grid.diameter == pytest.approx(0.125 * math.sqrt(2.0))


def test_grid_index_origin_inverse():
    grid = DyadicGrid(dim=3, depth=4)
    rng = seeded_rng(1)
    for _ in range(500):
        point = tuple(rng.random(3))
        idx = grid.cell_index(point)
        origin = grid.cell_origin(idx)
        for c, o in zip(point, origin):
            assert o <= c < o + grid.side
        assert grid.cell_index(origin) == idx  # origins belong to their own cell


def test_grid_half_open_boundaries():
    # internal boundaries belong to the cell on their right
    grid = DyadicGrid(dim=2, depth=2)
    assert grid.cell_index((0.5, 0.25)) == (2, 1)
    assert grid.cell_index((0.0, 0.999)) == (0, 3)


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=8),
       st.data())
def test_grid_linearize_roundtrip(dim, depth, data):
    grid = DyadicGrid(dim=dim, depth=depth)
    idx = tuple(
        data.draw(st.integers(min_value=0, max_value=grid.cells_per_axis - 1))
        for _ in range(dim)
    )
    lin = grid.linearize(idx)
    assert 0 <= lin < grid.total_cells
    assert grid.delinearize(lin) == idx


def test_grid_validation():
    with pytest.raises(DomainError):
        DyadicGrid(dim=0, depth=3)
    with pytest.raises(BudgetError):
        DyadicGrid(dim=3, depth=21)
    grid = DyadicGrid(dim=2, depth=2)
    with pytest.raises(DomainError):
        grid.cell_index((0.5,))
    with pytest.raises(DomainError):
        grid.cell_index((0.5, 1.0))
    with pytest.raises(DomainError):
        grid.cell_origin((4, 0))


# --------------------------------------------------------------- occupancy


def test_identity_occupancy_matches_enumeration(identity_n2):
    # the anti-diagonal crosses 2^{k+1} - 1 cells; enumerated independently
    oracle = antidiagonal_cells(8)
    assert len(oracle) == 511
    assert occupied_cell_count(identity_n2, 8, 3) == len(oracle)


def test_occupancy_monotone_under_sample_refinement(surface_n2, surface_n3):
    # offsets j/m nest when m doubles, so counts cannot drop
    for spec, k in ((surface_n2, 8), (surface_n3, 4)):
        counts = [occupied_cell_count(spec, k, m) for m in (1, 2, 4)]
        assert counts == sorted(counts)


def test_occupancy_child_cell_bound(surface_n2, surface_n3):
    # same sample set marked at two resolutions: children bound the growth
    for spec, k in ((surface_n2, 7), (surface_n3, 4)):
        coarse = occupied_cell_count(spec, k + 1, 2, mark_depth=k)
        fine = occupied_cell_count(spec, k + 1, 2, mark_depth=k + 1)
        assert fine <= 2**spec.n * coarse


def test_occupancy_budget_guard(surface_n2):
    with pytest.raises(BudgetError):
        occupied_cell_count(surface_n2, 10, 3, budget=100)
    with pytest.raises(BudgetError):
        occupied_cell_count(surface_n2, 10, 3, mark_depth=40)


# ----------------------------------------------------------- cover values


def test_cover_estimate_identity_example(identity_n2):
    est = cover_estimate(identity_n2, 1.0, 8, 3)
    assert est.count == 511
    assert est.count <= DyadicGrid(dim=2, depth=8).total_cells
    assert est.delta == 2.0**-8 * math.sqrt(2.0)
    assert est.value == alpha(1.0) * 511 * est.delta
    assert est.value == pytest.approx(2.823, abs=5e-4)


def test_cover_estimate_s0_counts_cells(surface_n2):
    est = cover_estimate(surface_n2, 0.0, 6, 2)
    assert est.value == float(est.count)


def test_cover_values_bounded_n2(surface_n2):
    # N(k) * 2^-k stays below the variation bound 2 (plus boundary effects)
    for k in (6, 9, 12):
        est = cover_estimate(surface_n2, 1.0, k, 3)
        assert est.value <= 2.0 * math.sqrt(2.0) * alpha(1.0) + 0.1


# ------------------------------------------------------------- dimension


def test_box_dimension_identity_segment(identity_n2):
    est = box_dimension(identity_n2, 6, 12, 2)
    assert est.slope == pytest.approx(1.0, abs=0.02)
    assert est.r2 > 0.999
    assert est.depths == tuple(range(6, 13))


def test_box_dimension_needs_three_depths(identity_n2):
    with pytest.raises(InsufficientDataError):
        box_dimension(identity_n2, 6, 7, 2)
    with pytest.raises(InsufficientDataError):
        extrapolated_cover_value(identity_n2, 1.0, 6, 7, 2)


def test_extrapolated_value_identity(identity_n2):
    # exact counts 2^{k+1} - 1 give a trend value just under 2 sqrt(2)
    value = extrapolated_cover_value(identity_n2, 1.0, 6, 12, 2)
    assert value == pytest.approx(2.0 * math.sqrt(2.0), rel=0.02)


def test_box_dimension_salem_calibrated_windows(surface_n2, surface_n3):
    # calibrated windows; the graph scales like a set of dimension n - 1
    est2 = box_dimension(surface_n2, 6, 14, 3)
    assert 0.95 <= est2.slope <= 1.05
    est3 = box_dimension(surface_n3, 4, 9, 2)
    assert 1.9 <= est3.slope <= 2.1


# ---------------------------------------------------------------- length


def test_length_identity_is_sqrt2(identity_n2):
    for k in (1, 5, 10):
        assert graph_length_n2(identity_n2, k) == pytest.approx(math.sqrt(2.0), abs=1e-14)


def test_length_salem_depth1(surface_n2):
    # two segments through (1/2, 3/4): hand value (sqrt(13) + sqrt(5)) / 4
    expected = (math.sqrt(13.0) + math.sqrt(5.0)) / 4.0
    assert graph_length_n2(surface_n2, 1) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(1.4604048132409448, rel=1e-15)


def test_length_matches_binomial_oracle(surface_n2):
    for k in (4, 10, 16):
        assert graph_length_n2(surface_n2, k) == pytest.approx(
            length_binomial(k, 0.25), rel=1e-12
        )


def test_length_monotone_in_k(surface_n2):
    values = [graph_length_n2(surface_n2, k) for k in range(2, 14, 2)]
    assert values == sorted(values)


def test_length_k22_frozen_value(surface_n2):
    # frozen from two agreeing routes: direct dyadic summation over 2^22
    # cells and the binomial aggregation above
    assert graph_length_n2(surface_n2, 22) == pytest.approx(1.8274409202959285, rel=1e-12)


def test_length_variation_bound_termwise(surface_n2):
    k = 10
    xs = np.arange((1 << k) + 1, dtype=np.float64) / (1 << k)
    from antichain import evaluate_many

    f, _ = evaluate_many(surface_n2.f, xs)
    df = np.abs(np.diff(f))
    dx = 2.0**-k
    terms = np.sqrt(dx * dx + df * df)
    assert (terms <= dx + df + 1e-18).all()
    assert math.fsum(dx + d for d in df) == pytest.approx(2.0, abs=1e-12)
    assert graph_length_n2(surface_n2, k) <= 2.0 + 1e-12


def test_length_validation(surface_n2, surface_n3):
    with pytest.raises(DomainError):
        graph_length_n2(surface_n3, 8)
    with pytest.raises(PrecisionError):
        graph_length_n2(surface_n2, 60)
    with pytest.raises(BudgetError):
        graph_length_n2(surface_n2, 20, budget=1000)


# ------------------------------------------------------------ projections


def test_classify_regions_is_partition(surface_n3):
    probe = SingularSetProbe(depth=40, eps=0.01)
    rng = seeded_rng(3)
    pts = rng.uniform(1e-6, 1 - 1e-6, (5000, 2))
    labels = classify_regions(surface_n3, probe, pts)
    assert set(np.unique(labels)) <= {0, 1, 2, 3}
    # dual route: the scalar membership op decides the label
    for row, label in list(zip(pts, labels))[:200]:
        outside = [not in_singular_set(surface_n3.f, probe, float(c)) for c in row]
        if sum(outside) == 0:
            assert label == 3
        elif sum(outside) == 1:
            assert label == outside.index(True) + 1
        else:
            assert label == 0


def test_projection_degenerate_probe(identity_n2):
    # huge eps accepts everything: the last-axis piece is the whole domain,
    # all other pieces are empty
    probe = SingularSetProbe(depth=10, eps=1e9)
    top = projection_measure(identity_n2, 2, probe, 8, 6, 2, seed=0)
    side = projection_measure(identity_n2, 1, probe, 8, 6, 2, seed=0)
    assert top.area == 1.0
    assert side.area == 0.0
    assert lower_bound_total(identity_n2, probe, 8, 6, 2, seed=0) == 1.0


def test_projection_areas_in_unit_interval(surface_n2):
    probe = SingularSetProbe(depth=40, eps=0.01)
    for est in projection_measures(surface_n2, probe, 10, 7, 3, seed=0):
        assert 0.0 <= est.area <= 1.0


def test_projection_axis_n_monotone_in_eps(surface_n2):
    # larger eps accepts a superset into the last piece; same seed, same jitter
    kwargs = dict(domain_depth=10, image_depth=7, samples_per_cell=3, seed=0)
    areas = [
        projection_measure(surface_n2, 2, SingularSetProbe(40, eps), **kwargs).area
        for eps in (0.002, 0.01, 0.05)
    ]
    assert areas == sorted(areas)


def test_projection_count_monotone_in_image_depth(surface_n2):
    # identical samples marked at two image resolutions: cells split, so the
    # occupied count cannot drop
    probe = SingularSetProbe(depth=40, eps=0.01)
    kwargs = dict(domain_depth=10, samples_per_cell=3, seed=0)
    coarse = projection_measure(surface_n2, 1, probe, image_depth=6, **kwargs)
    fine = projection_measure(surface_n2, 1, probe, image_depth=7, **kwargs)
    assert round(fine.area * 2**7) >= round(coarse.area * 2**6)


def test_projection_measures_consistent_with_single_axis(surface_n2):
    probe = SingularSetProbe(depth=40, eps=0.01)
    sweep = projection_measures(surface_n2, probe, 9, 6, 2, seed=4)
    for est in sweep:
        single = projection_measure(surface_n2, est.axis, probe, 9, 6, 2, seed=4)
        assert single.area == est.area


def test_projection_validation(surface_n3):
    probe = SingularSetProbe(depth=40, eps=0.01)
    with pytest.raises(DomainError):
        projection_measure(surface_n3, 5, probe, 6, 5, 2)
    with pytest.raises(PrecisionError):
        projection_measure(surface_n3, 1, SingularSetProbe(depth=60), 6, 5, 2)
    with pytest.raises(BudgetError):
        projection_measure(surface_n3, 1, probe, 10, 5, 3, budget=100)
    with pytest.raises(BudgetError):
        projection_measure(surface_n3, 1, probe, 6, 15, 2)  # image array guard


# ---------------------------------------------------------------- jitter


def test_jitter_deterministic_and_block_keyed():
    a = _block_jitter(7, 3, 16, 4, 2)
    b = _block_jitter(7, 3, 16, 4, 2)
    assert np.array_equal(a, b)
    c = _block_jitter(7, 4, 16, 4, 2)
    assert not np.array_equal(a, c)
    d = _block_jitter(8, 3, 16, 4, 2)
    assert not np.array_equal(a, d)
    assert a.min() >= 0.0 and a.max() < 1.0


def test_projection_deterministic(surface_n2):
    probe = SingularSetProbe(depth=40, eps=0.01)
    a = projection_measure(surface_n2, 1, probe, 9, 6, 2, seed=11)
    b = projection_measure(surface_n2, 1, probe, 9, 6, 2, seed=11)
    assert a == b
