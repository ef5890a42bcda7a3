import math

import numpy as np
import pytest

from ContactGroup_R3.core import algebra_core
from ContactGroup_R3.core import classify
from ContactGroup_R3.core import metric_geometry
from ContactGroup_R3.core.exceptions import GridError, StepSizeError
from ContactGroup_R3.core.metric_geometry import LeftInvariantMetric

from conftest import CHART_PRESETS, PRESET_NAMES


def test_geodesic_criterion_on_case1(catalog):
    C, _ = catalog.get('case1')
    first = metric_geometry.geodesic_criterion(C, 1)
    assert not first.passed
    np.testing.assert_array_equal(first.residual, [0.0, 0.0, 1.0])
    assert metric_geometry.geodesic_criterion(C, 2).passed


@pytest.mark.parametrize('i', [0, 1, 2])
def test_every_frame_vector_of_su2_is_geodesic(catalog, i):
    assert metric_geometry.geodesic_criterion(catalog.get('su2')[0], i).passed


@pytest.mark.parametrize('name', PRESET_NAMES)
def test_criterion_agrees_with_the_flow(catalog, random_bases, name):
    C, data = catalog.get(name)
    frame = algebra_core.canonical_frame(C, data)
    for constants in [C, frame.constants] + [algebra_core.change_basis(C, P) for P in random_bases[:10]]:
        for i, u in enumerate(np.eye(3)):
            stationary = np.max(np.abs(metric_geometry.euler_arnold_rhs(constants, u))) <= 1e-12
            assert stationary == metric_geometry.geodesic_criterion(constants, i).passed


def test_geodesic_flow_stays_at_a_geodesic_field(catalog):
    C, _ = catalog.get('case1')
    trajectory = metric_geometry.integrate_geodesic(C, [0.0, 0.0, 1.0], 10.0)
    assert trajectory.drift() <= 1e-12
    assert len(trajectory.times) == 10001


@pytest.mark.parametrize('name', PRESET_NAMES)
def test_flow_conserves_energy(catalog, rng, name):
    C, _ = catalog.get(name)
    u0 = rng.normal(size=3)
    trajectory = metric_geometry.integrate_geodesic(C, u0 / np.linalg.norm(u0), 10.0)
    assert len(trajectory.times) == 10001
    assert trajectory.energy_error() <= 1e-10


def test_default_step_on_short_intervals(catalog):
    C, _ = catalog.get('case1')
    trajectory = metric_geometry.integrate_geodesic(C, [0.0, 1.0, 0.0], 0.5)
    assert len(trajectory.times) == 1001


def test_geodesic_flow_leaves_a_non_geodesic_field(catalog):
    C, _ = catalog.get('case1')
    trajectory = metric_geometry.integrate_geodesic(C, [0.0, 1.0, 0.0], 1.0)
    assert trajectory.drift() > 1e-3
    assert trajectory.energy_error() <= 1e-9


def test_bi_invariant_flow_is_constant(catalog, rng):
    C, _ = catalog.get('su2')
    trajectory = metric_geometry.integrate_geodesic(C, rng.normal(size=3), 2.0)
    assert trajectory.drift() <= 1e-12


def test_step_size_bound(catalog):
    C, _ = catalog.get('case1')
    with pytest.raises(StepSizeError):
        metric_geometry.integrate_geodesic(C, [0.0, 0.0, 1.0], 1.0, dt=0.01)
    with pytest.raises(StepSizeError):
        metric_geometry.integrate_geodesic(C, [0.0, 0.0, 1.0], 0.0)


@pytest.mark.parametrize('name', CHART_PRESETS)
def test_chart_generator_is_geodesic(catalog, name):
    result = classify.classify_algebra(*catalog.get(name))
    rhs = metric_geometry.euler_arnold_rhs(result.frame.constants, result.C)
    assert np.max(np.abs(rhs)) <= 1e-10


def test_left_invariant_metric(catalog):
    result = classify.classify_algebra(*catalog.get('case1'))
    metric = LeftInvariantMetric.from_result(result)
    np.testing.assert_array_equal(metric.gram, np.eye(3))
    for i, x in enumerate(result.frame.P.T):
        for j, y in enumerate(result.frame.P.T):
            assert metric.inner(x, y) == pytest.approx(float(i == j), abs=1e-12)


@pytest.mark.parametrize('model, det', [('heisenberg', 1.0), ('sl2', 4.0)])
def test_normal_exponential(model, det):
    report = metric_geometry.normal_exponential(model, np.linspace(-1, 1, 3), np.linspace(-1, 1, 3))
    assert report.passed, report.failures
    assert report.samples == 27
    assert report.min_abs_det == pytest.approx(det, rel=1e-5)
    assert report.injective


def test_normal_exponential_needs_points():
    with pytest.raises(GridError):
        metric_geometry.normal_exponential('heisenberg', [], [0.0])


def test_witness_of_su2_fails(catalog):
    witness = metric_geometry.check_classification(classify.classify_algebra(*catalog.get('su2')))
    assert not witness.passed


def test_single_sample_has_no_separation():
    report = metric_geometry.normal_exponential('heisenberg', [0.0], [0.0])
    assert report.samples == 1
    assert report.injective
    assert report.min_separation == math.inf
