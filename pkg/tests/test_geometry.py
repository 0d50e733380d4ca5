"""Core types and input validation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from voroplex.geometry import (
    ConvexDomain,
    LandmarkSet,
    Objective,
    ToleranceConfig,
    fd_gradient,
    validate,
)


def test_landmark_set_basic():
    lms = LandmarkSet(np.array([[0.0, 0.0], [1.0, 0.0]]))
    assert lms.n == 2 and lms.dim == 2
    assert not lms.points.flags.writeable


@pytest.mark.parametrize(
    "bad", [np.zeros((0, 2)), np.zeros(3), np.array([[np.nan, 0.0]]), np.array([[np.inf]])]
)
def test_landmark_set_rejects_malformed(bad):
    with pytest.raises(ValueError):
        LandmarkSet(bad)


def test_duplicate_pairs():
    lms = LandmarkSet(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1e-14]]))
    assert lms.duplicate_pairs(1e-12) == [(0, 2)]
    assert lms.duplicate_pairs(1e-16) == []


def test_domain_box_expansion():
    dom = ConvexDomain.box([-1.0, 0.0], [1.0, 2.0])
    a, b = dom.inequality_rows()
    assert a.shape == (4, 2)
    # every row must cut off the outside of the box
    for p in ([0.0, 1.0], [-0.99, 1.99]):
        assert np.all(a @ np.asarray(p) <= b + 1e-12)
    assert np.any(a @ np.array([1.5, 1.0]) > b)


def test_domain_full_space_is_free():
    dom = ConvexDomain.full_space(3)
    assert dom.is_free
    a, b = dom.inequality_rows()
    assert a.shape == (0, 3) and b.shape == (0,)


def test_domain_infinite_box_sides_dropped():
    dom = ConvexDomain.box([-np.inf, 0.0], [np.inf, 1.0])
    a, _ = dom.inequality_rows()
    assert a.shape[0] == 2  # only the finite y bounds become rows


def test_tolerance_config_guards():
    with pytest.raises(ValueError):
        ToleranceConfig(tol_feas=0.0)
    with pytest.raises(ValueError):
        ToleranceConfig(n_starts=0)
    with pytest.raises(ValueError):
        ToleranceConfig(max_dim=-1)
    assert ToleranceConfig().max_dim is None


def test_objective_batched_and_scalar_paths_agree():
    f_b = Objective(2, lambda xs: (xs**2).sum(axis=1), batched=True)
    f_s = Objective(2, lambda x: float((x**2).sum()))
    xs = np.array([[1.0, 2.0], [0.5, -0.5]])
    assert np.allclose(f_b.value_many(xs), f_s.value_many(xs))
    assert f_b.value([1.0, 2.0]) == pytest.approx(5.0)


def test_fd_gradient_quadratic():
    value_many = lambda xs: (xs**2).sum(axis=1)
    xs = np.array([[1.0, -2.0], [0.3, 0.7]])
    g = fd_gradient(value_many, xs)
    assert np.allclose(g, 2 * xs, rtol=1e-5, atol=1e-5)


def _zero_objective(d=2):
    return Objective(d, lambda xs: np.zeros(len(xs)), batched=True)


def test_validate_consistent_inputs_ok():
    lms = LandmarkSet(np.array([[0.0, 0.0], [1.0, 0.0]]))
    report = validate(lms, ConvexDomain.full_space(2), Objective(2, lambda x: float(x[0])))
    assert report.ok
    assert report.summary() == "OK"


def test_validate_duplicate_landmark_fatal():
    lms = LandmarkSet(np.array([[0.0, 0.0], [0.0, 0.0]]))
    report = validate(lms, ConvexDomain.full_space(2), _zero_objective())
    assert not report.ok
    assert any(f.code == "duplicate-landmark" for f in report.findings)


def test_validate_empty_domain_fatal():
    dom = ConvexDomain.from_constraints(
        1, inequalities=[(np.array([1.0]), 0.0), (np.array([-1.0]), -1.0)]
    )
    report = validate(LandmarkSet(np.array([[0.0], [2.0]])), dom, _zero_objective(1))
    assert not report.ok
    assert any(f.code == "empty-domain" for f in report.findings)


def test_validate_dimension_mismatch_fatal():
    lms = LandmarkSet(np.array([[0.0, 0.0], [1.0, 0.0]]))
    report = validate(lms, ConvexDomain.full_space(3), _zero_objective(3))
    assert any(f.code == "dimension-mismatch" for f in report.findings)


def test_validate_catches_wrong_analytic_gradient():
    f = Objective(
        2,
        lambda xs: (xs**2).sum(axis=1),
        grad=lambda xs: np.zeros_like(xs),  # deliberately wrong
        batched=True,
    )
    lms = LandmarkSet(np.array([[0.5, 0.5], [2.0, 0.0]]))
    report = validate(lms, ConvexDomain.full_space(2), f)
    assert any(f_.code == "gradient-mismatch" for f_ in report.findings)


def test_validate_objective_error_reported_not_raised():
    def bad(x):
        raise RuntimeError("boom")

    report = validate(
        LandmarkSet(np.array([[0.0], [1.0]])), ConvexDomain.full_space(1), Objective(1, bad)
    )
    assert not report.ok
    assert any(f.code == "objective-error" for f in report.findings)


@settings(max_examples=40, deadline=None)
@given(
    hnp.arrays(
        float,
        st.tuples(st.integers(2, 6), st.integers(1, 3)),
        elements=st.floats(-100, 100, allow_nan=False),
    )
)
def test_validate_never_raises(points):
    lms = LandmarkSet(points)
    report = validate(lms, ConvexDomain.full_space(lms.dim), _zero_objective(lms.dim))
    # either a clean report or duplicate findings; both are fine, no exception
    assert report.ok or any(f.code == "duplicate-landmark" for f in report.findings)
