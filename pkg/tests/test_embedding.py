import math

import numpy as np
import pytest

from ContactGroup_R3.core import algebra_core
from ContactGroup_R3.core import classify
from ContactGroup_R3.core import embedding
from ContactGroup_R3.core.embedding import GridSpec
from ContactGroup_R3.core.exceptions import GridError, StepResolutionError, UnsupportedCaseError
from ContactGroup_R3.core.mc_pullback import SecondKindChart

from conftest import CHART_PRESETS

E0, E1, E2 = np.eye(3)


def explicit_chart(catalog, name, C=E2):
    return SecondKindChart(E0, E1, C, E0, catalog.get(name)[0])


def test_wrap():
    assert embedding.wrap(math.pi) == math.pi
    assert embedding.wrap(-math.pi) == math.pi
    assert embedding.wrap(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert embedding.wrap(0.25) == 0.25


def test_grid_spec():
    grid = GridSpec(3, (-1, 1))
    np.testing.assert_array_equal(grid.axis(), [-1.0, 0.0, 1.0])
    with pytest.raises(GridError):
        GridSpec(0, (-1, 1))
    with pytest.raises(GridError):
        GridSpec(3, (1, -1))


def test_angle_lift_follows_a_turning_form(catalog):
    chart = explicit_chart(catalog, 'euclidean')
    z_grid = np.linspace(-2, 2, 10)
    np.testing.assert_allclose(embedding.angle_lift(chart, 0.5, -0.5, z_grid), z_grid, atol=1e-12)


def test_angle_lift_refines_coarse_steps(catalog):
    chart = explicit_chart(catalog, 'euclidean', C=2 * E2)
    z_grid = [0.0, 1.0, 2.0, 3.0]
    np.testing.assert_allclose(embedding.angle_lift(chart, 0.0, 0.0, z_grid), [0.0, 2.0, 4.0, 6.0], atol=1e-12)
    with pytest.raises(StepResolutionError):
        embedding.angle_lift(chart, 0.0, 0.0, z_grid, max_depth=0)


@pytest.mark.parametrize('name', CHART_PRESETS)
def test_angle_lift_is_stable_under_refinement(catalog, name):
    chart = classify.classify_algebra(*catalog.get(name)).chart()
    fine = np.linspace(-2, 2, 41)
    for x, y in [(0.0, 0.0), (1.5, -0.5), (-2.0, 2.0)]:
        coarse = embedding.angle_lift(chart, x, y, fine[::2])
        np.testing.assert_allclose(embedding.angle_lift(chart, x, y, fine)[::2], coarse, rtol=0, atol=1e-9)


def test_angle_lift_rejects_bad_grids(catalog):
    chart = explicit_chart(catalog, 'euclidean')
    with pytest.raises(GridError):
        embedding.angle_lift(chart, 0.0, 0.0, [])
    with pytest.raises(GridError):
        embedding.angle_lift(chart, 0.0, 0.0, [0.0, 1.0, 1.0])


def test_phi(catalog):
    heisenberg = explicit_chart(catalog, 'heisenberg')
    assert embedding.phi(heisenberg, (1.0, 2.0, 1.0)) == pytest.approx((1.0, 2.0, -math.pi / 4))
    euclidean = explicit_chart(catalog, 'euclidean')
    assert embedding.phi(euclidean, (0.0, 0.0, -5.0))[2] == pytest.approx(-5.0)
    assert embedding.phi(euclidean, (0.0, 0.0, 5.0))[2] == pytest.approx(5.0)
    assert embedding.phi(euclidean, (0.0, 0.0, 0.0))[2] == 0.0


def test_explicit_heisenberg_chart_passes(catalog):
    chart = explicit_chart(catalog, 'heisenberg')
    report = embedding.verify_pushforward(chart, GridSpec(4, (-1, 1)))
    assert report.passed, report.failures
    assert report.volume_sign == -1
    assert report.samples == 64


@pytest.mark.parametrize('name', CHART_PRESETS)
def test_presets_embed(catalog, name):
    samples, report, result = embedding.psi_embedding(*catalog.get(name), GridSpec(10, (-2, 2)))
    assert result.case_tag != 'Su2'
    assert report.passed, report.failures
    assert report.max_residual <= 1e-9
    assert report.max_beta_z <= 1e-12
    assert len(samples) == 1000


@pytest.mark.parametrize('name', ['heisenberg', 'case1', 'sl2'])
def test_embedding_after_basis_changes(catalog, random_bases, name):
    C, data = catalog.get(name)
    for P in random_bases[:3]:
        _, report, _ = embedding.psi_embedding(*algebra_core.transform(C, data, P), GridSpec(3, (-1, 1)))
        assert report.passed, report.failures


def test_su2_is_not_embedded(catalog):
    with pytest.raises(UnsupportedCaseError):
        embedding.psi_embedding(*catalog.get('su2'), GridSpec(3, (-1, 1)))


def test_shifted_samples_fail_alignment(catalog):
    chart = explicit_chart(catalog, 'euclidean')
    grid = GridSpec(3, (-1, 1))
    samples = embedding.sample_chart(chart, grid)
    broken = [embedding.EmbeddingSample(s.source, s.f + 0.1, s.bx, s.by, s.V, s.residual) for s in samples]
    report = embedding.verify_pushforward(chart, grid, samples=broken)
    assert not report.passed
    assert report.max_residual == pytest.approx(math.sin(0.1))


def test_collapsed_chart_fails_injectivity(catalog):
    chart = explicit_chart(catalog, 'euclidean')
    grid = GridSpec(2, (0, 1))
    samples = embedding.sample_chart(chart, grid)
    collapsed = [embedding.EmbeddingSample((0.0, 0.0, s.source[2]), s.f, s.bx, s.by, s.V, s.residual)
                 for s in samples]
    report = embedding.verify_pushforward(chart, grid, samples=collapsed)
    assert not report.injective


def test_sample_rows(catalog):
    chart = explicit_chart(catalog, 'euclidean')
    sample = embedding.sample_chart(chart, GridSpec(1, (0.5, 0.5)))[0]
    row = sample.row()
    assert tuple(row) == embedding.CSV_COLUMNS
    assert (row['u'], row['v'], row['w']) == (row['x'], row['y'], row['f'])
    assert sample.image == (0.5, 0.5, pytest.approx(0.5))


def test_embed_element_of_a_rotation():
    factorization, image = embedding.embed_element('sl2', [[0.0, -1.0], [1.0, 0.0]])
    assert factorization.params == pytest.approx((math.pi / 2, 0.0, 0.0), abs=1e-15)
    assert image[:2] == pytest.approx((math.pi / 2, 0.0))
    assert image[2] == pytest.approx(math.atan2(-1.0, 2.0))


def test_embed_element_of_the_heisenberg_group():
    factorization, image = embedding.embed_element('heisenberg', [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert factorization.params == pytest.approx((-1.0, 1.0, 1.0))
    assert image[:2] == pytest.approx((-1.0, 1.0))
