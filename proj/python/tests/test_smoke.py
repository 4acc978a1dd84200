"""Smoke tests for the python bindings: every exported operation is called
once on a small problem and sanity-checked. Correctness depth lives in the
C++ test suite; these only prove the bindings round-trip."""

import math

import pytest

import nkclust


def two_blobs():
    rows = []
    for i in range(20):
        rows.append([0.01 * i, 0.013 * i])
    for i in range(20):
        rows.append([50.0 + 0.01 * i, 50.0 + 0.017 * i])
    truth = nkclust.Partition([1] * 20 + [2] * 20)
    return nkclust.Dataset(rows), truth


def test_dataset_roundtrip():
    ds = nkclust.Dataset([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    assert ds.n == 3 and ds.dims == 2 and len(ds) == 3
    assert ds.row(1) == [3.0, 4.0]
    with pytest.raises(IndexError):
        ds.row(3)


def test_generate_and_count():
    gen = nkclust.generate_gaussian_model(clusters=3, dims=2, n=90, seed=7)
    assert gen.data.n == 90
    assert len(gen.truth) == 90
    assert nkclust.count_clusters(gen.truth) == 3


def test_context_and_evaluate():
    ds, truth = two_blobs()
    ctx = nkclust.EvalContext(ds, k=3)
    assert ctx.n == 40 and ctx.k == 3
    assert ctx.epsilon > 0
    c1, c2, c3, c_rho = ctx.thresholds
    assert c1 <= c2 <= c3 and c_rho > 0
    assert len(ctx.group(0)) == 4 and 0 in ctx.group(0)

    good = nkclust.evaluate(truth, ctx)
    bad = nkclust.evaluate(nkclust.Partition([1] * 40), ctx)
    assert good < bad

    # Incremental evaluation matches the full recomputation.
    labels = list(truth.labels)
    delta = nkclust.delta_evaluate(truth, 0, 2, ctx)
    labels[0] = 2
    moved = nkclust.evaluate(nkclust.Partition(labels), ctx)
    assert math.isclose(good + delta, moved, rel_tol=0, abs_tol=1e-9)


def test_baselines_recover_blobs():
    ds, truth = two_blobs()
    km, objective = nkclust.kmeans(ds, k=2, restarts=5, seed=3)
    assert objective >= 0
    assert nkclust.adjusted_rand_index(km, truth) == pytest.approx(1.0)

    db = nkclust.dbscan(ds, eps=2.0, min_pts=3)
    assert nkclust.adjusted_rand_index(db, truth) == pytest.approx(1.0)

    dp = nkclust.density_peaks(ds, n_prototypes=2)
    assert nkclust.adjusted_rand_index(dp, truth) == pytest.approx(1.0)

    # floor(sqrt(40)) = 6: k-means k=2..6, a 3x3 dbscan grid, peaks 2..6.
    grid = nkclust.candidate_grid(ds, seed=5)
    assert len(grid) == 19
    algos = {algo for _, algo, _ in grid}
    assert algos == {"kmeans", "dbscan", "density_peaks"}


def test_metrics():
    a = nkclust.Partition([1, 1, 2, 2])
    b = nkclust.Partition([2, 2, 1, 1])
    assert nkclust.adjusted_rand_index(a, b) == pytest.approx(1.0)
    assert nkclust.adjusted_rand_index(a, nkclust.Partition([1, 2, 1, 2])) == pytest.approx(-0.5)

    noisy = nkclust.Partition([0, 1, 1])
    solid = nkclust.Partition([1, 1, 1])
    assert nkclust.adjusted_rand_index(noisy, solid, noise="cluster") == pytest.approx(0.0)
    assert nkclust.adjusted_rand_index(noisy, solid, noise="ignore") == pytest.approx(1.0)

    ds, truth = two_blobs()
    assert nkclust.silhouette_width(truth, ds) > 0.9


def test_ga_run():
    ds, truth = two_blobs()
    ctx = nkclust.EvalContext(ds, k=3)
    res = nkclust.run_ga(ctx, pop=10, stop_kind="generations", stop_value=15, seed=11)
    assert res["generations"] == 15
    assert len(res["fitness_trace"]) == 16  # initial best + one entry per generation
    assert res["best_fitness"] == pytest.approx(res["fitness_trace"][-1])
    assert nkclust.adjusted_rand_index(res["best"], truth) == pytest.approx(1.0)

    again = nkclust.run_ga(ctx, pop=10, stop_kind="generations", stop_value=15, seed=11)
    assert again["best"] == res["best"]
    assert again["fitness_trace"] == res["fitness_trace"]
