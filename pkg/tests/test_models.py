"""Built-in objectives: coupling energies, configuration spaces, the fixed
counterexample, and the synthetic benchmark cloud."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voroplex.geometry import fd_gradient
from voroplex.models import (
    MODEL_NAMES,
    config3_candidate_pool,
    config3_objective,
    figure1_model,
    figure_eight_cluster_cloud,
    ising_landmarks,
    ising_objective,
)


def test_model_registry_names():
    assert MODEL_NAMES == ("ising_interval", "ising_circle", "config3", "figure1", "density")


def test_ising_interval_values():
    f, dom = ising_objective(9, circular=False)
    ones = np.ones((1, 9))
    assert f.value_many(ones)[0] == pytest.approx(-8.0)
    assert f.value_many(np.zeros((1, 9)))[0] == 0.0
    assert f.lower_bound == -8.0
    a, b = dom.inequality_rows()
    assert a.shape == (18, 9)  # the box walls


def test_ising_circle_values():
    f, _ = ising_objective(9, circular=True)
    assert f.value_many(np.ones((1, 9)))[0] == pytest.approx(-9.0)
    assert f.lower_bound == -9.0


def test_ising_gradient_matches_fd():
    for circular in (False, True):
        f, _ = ising_objective(5, circular=circular)
        rng = np.random.default_rng(0)
        xs = rng.uniform(-1, 1, size=(50, 5))
        assert np.allclose(f.gradient_many(xs), fd_gradient(f.value_many, xs),
                           rtol=1e-4, atol=1e-4)


def test_ising_rejects_tiny_chains():
    with pytest.raises(ValueError):
        ising_objective(1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1, 1, allow_nan=False), min_size=2, max_size=8),
       st.booleans())
def test_ising_spin_flip_symmetry(sigma, circular):
    f, _ = ising_objective(len(sigma), circular=circular)
    s = np.array([sigma])
    assert f.value_many(s)[0] == pytest.approx(f.value_many(-s)[0], abs=1e-12)


def test_ising_landmarks_ground_states():
    lms = ising_landmarks(3, 2, circular=False)
    states = {tuple(p) for p in lms.points}
    assert states == {(1.0, 1.0, 1.0), (-1.0, -1.0, -1.0)}


def test_ising_landmarks_tiebreak_is_lexicographic():
    # d=3 interval: after the two ground states (H=-2) come the four H=0
    # states; lexicographically (-1 first) the least two are (-1,-1,1), (-1,1,1)
    lms = ising_landmarks(3, 4, circular=False)
    f, _ = ising_objective(3)
    assert {tuple(p) for p in lms.points} == {
        (1.0, 1.0, 1.0), (-1.0, -1.0, -1.0), (-1.0, -1.0, 1.0), (-1.0, 1.0, 1.0)
    }
    assert np.all(np.diff(f.value_many(lms.points)) >= 0)


def test_ising_landmarks_energies_nondecreasing():
    lms = ising_landmarks(9, 20, circular=False)
    f, _ = ising_objective(9)
    energies = f.value_many(lms.points)
    assert lms.n == 20
    assert np.all(np.diff(energies) >= 0)
    assert np.all(np.abs(lms.points) == 1.0)
    assert len({tuple(p) for p in lms.points}) == 20


def test_ising_landmarks_count_guard():
    with pytest.raises(ValueError):
        ising_landmarks(3, 9)


def _triangle(side=1.0, angle=0.0):
    base = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]]) * side
    base -= base.mean(axis=0)
    c, s = np.cos(angle), np.sin(angle)
    return (base @ np.array([[c, s], [-s, c]])).reshape(-1)


def test_config3_equilateral_is_zero():
    f, dom = config3_objective()
    assert f.value_many(_triangle()[None, :])[0] == pytest.approx(0.0, abs=1e-12)
    eq, rhs = dom.equality_rows()
    assert eq.shape == (2, 6) and np.allclose(rhs, 0.0)


def test_config3_collision_costs_at_least_one():
    f, _ = config3_objective()
    x = np.array([[0.0, 0.0, 0.0, 0.0, 1.0, 1.0]])  # p1 == p2
    assert f.value_many(x)[0] >= 1.0


def test_config3_collinear_unit_chain_is_zero():
    f, _ = config3_objective()
    x = np.array([[-1.0, 0.0, 0.0, 0.0, 1.0, 0.0]])
    assert f.value_many(x)[0] == pytest.approx(0.0, abs=1e-12)


def test_config3_gradient_matches_fd_off_the_kinks():
    # the declared gradient is a selection subgradient; compare with central
    # differences only where the active max/min branch is isolated by a margin
    f, _ = config3_objective()
    rng = np.random.default_rng(5)
    xs = rng.uniform(-2.0, 2.0, size=(400, 6))
    p = xs.reshape(-1, 3, 2)
    d01 = ((p[:, 0] - p[:, 1]) ** 2).sum(axis=1)
    d02 = ((p[:, 0] - p[:, 2]) ** 2).sum(axis=1)
    d12 = ((p[:, 1] - p[:, 2]) ** 2).sum(axis=1)
    v = np.stack([
        (np.minimum(d01, d02) - 1.0) ** 2,
        (np.minimum(d01, d12) - 1.0) ** 2,
        (np.minimum(d02, d12) - 1.0) ** 2,
    ], axis=1)
    vs = np.sort(v, axis=1)
    min_gaps = np.minimum(np.abs(d01 - d02), np.minimum(np.abs(d01 - d12), np.abs(d02 - d12)))
    keep = (min_gaps > 1e-2) & (vs[:, 2] - vs[:, 1] > 1e-2)
    assert keep.sum() > 100
    assert np.allclose(f.gradient_many(xs[keep]), fd_gradient(f.value_many, xs[keep]),
                       rtol=1e-4, atol=1e-4)


def test_config3_point_permutation_symmetry():
    f, _ = config3_objective()
    rng = np.random.default_rng(0)
    xs = rng.standard_normal((50, 6))
    base = f.value_many(xs)
    for perm in ([2, 3, 0, 1, 4, 5], [4, 5, 2, 3, 0, 1], [2, 3, 4, 5, 0, 1]):
        assert np.allclose(f.value_many(xs[:, perm]), base, atol=1e-12)


def test_config3_rotation_invariance():
    f, _ = config3_objective()
    rng = np.random.default_rng(1)
    xs = rng.standard_normal((100, 6))
    base = f.value_many(xs)
    for _ in range(100):
        t = rng.uniform(0, 2 * np.pi)
        c, s = np.cos(t), np.sin(t)
        r = np.array([[c, s], [-s, c]])
        rotated = (xs.reshape(-1, 3, 2) @ r).reshape(-1, 6)
        assert np.allclose(f.value_many(rotated), base, atol=1e-9)


def test_config3_candidate_pool_respects_level_and_centering():
    pool = config3_candidate_pool(200, rng_seed=0, level=0.1)
    f, dom = config3_objective()
    assert pool.shape == (200, 6)
    assert np.all(f.value_many(pool) <= 0.1)
    eq, _ = dom.equality_rows()
    assert np.max(np.abs(pool @ eq.T)) <= 1e-9
    again = config3_candidate_pool(200, rng_seed=0, level=0.1)
    assert np.array_equal(pool, again)


def test_figure1_fixed_configuration():
    f, dom, lms = figure1_model()
    assert dom.is_free and dom.dim == 2
    assert lms.points.shape == (4, 2)
    # the origin sits strictly inside the zero sublevel set
    assert f.value_many(np.zeros((1, 2)))[0] < 0.0
    # saddle shape: even in x, unbounded below along the x-axis
    xs = np.array([[3.0, 1.0], [-3.0, 1.0], [100.0, 0.0]])
    vals = f.value_many(xs)
    assert vals[0] == vals[1]
    assert vals[2] < -9000.0
    assert f.lower_bound is None  # exercises the clamp-and-flag path


def test_figure1_gradient_matches_fd():
    f, _, _ = figure1_model()
    rng = np.random.default_rng(2)
    xs = rng.uniform(-10, 10, size=(50, 2))
    assert np.allclose(f.gradient_many(xs), fd_gradient(f.value_many, xs),
                       rtol=1e-4, atol=1e-3)


def test_figure_eight_cluster_cloud_shape_and_determinism():
    cloud = figure_eight_cluster_cloud(500, rng_seed=3)
    assert cloud.shape == (500, 2)
    assert np.array_equal(cloud, figure_eight_cluster_cloud(500, rng_seed=3))
    assert not np.array_equal(cloud, figure_eight_cluster_cloud(500, rng_seed=4))
    # the cloud straddles both circles
    assert cloud[:, 0].min() < -3.0 and cloud[:, 0].max() > 3.0
