import itertools

import numpy as np
import pytest

from ContactGroup_R3.core import algebra_core
from ContactGroup_R3.core import group_models
from ContactGroup_R3.core.algebra_core import ContactData, StructureConstants
from ContactGroup_R3.core.exceptions import (ContactViolation, JacobiError, StructureError)

from conftest import PRESET_NAMES, canonical


@pytest.mark.parametrize('name', PRESET_NAMES)
def test_presets_satisfy_jacobi_and_contact(catalog, name):
    C, data = catalog.get(name)
    report = algebra_core.validate_jacobi(C)
    assert report.passed
    assert report.max_residual <= 1e-12
    assert algebra_core.is_contact(C, data).is_contact


def test_jacobi_violation_is_reported():
    # [v0,v1] = v1, [v1,v2] = v0 leaves a residual v0 on (v0, v1, v2)
    C = StructureConstants.from_brackets({'01': [0, 1, 0], '02': [0, 0, 0], '12': [1, 0, 0]})
    report = algebra_core.validate_jacobi(C)
    assert not report.passed
    assert report.max_residual == pytest.approx(1.0)
    with pytest.raises(JacobiError):
        algebra_core.is_contact(C, ContactData.standard())


def test_consistent_table_passes_jacobi():
    C = StructureConstants.from_brackets({'01': [0, 0, 1], '02': [0, 0, 0], '12': [1, 0, 0]})
    assert algebra_core.validate_jacobi(C).passed


def test_non_antisymmetric_table_is_rejected():
    tensor = np.zeros((3, 3, 3))
    tensor[0, 1, 2] = 1.0
    with pytest.raises(StructureError):
        algebra_core.validate_jacobi(StructureConstants(tensor))


def test_malformed_inputs_are_rejected():
    with pytest.raises(StructureError):
        StructureConstants.from_brackets({'01': [0, 0, 1], '02': [0, 0, 0]})
    with pytest.raises(StructureError):
        StructureConstants(np.zeros((3, 3)))
    with pytest.raises(StructureError):
        ContactData([[0, 1, 0], [0, 2, 0]], [1, 0, 0])
    with pytest.raises(StructureError):
        ContactData([[0, 1, 0], [0, 0, 1]], [1, 1, 0])
    with pytest.raises(StructureError):
        algebra_core.load_algebra({'brackets': {'01': [0, 0, 0], '02': [0, 0, 0], '12': [-1, 0, 0]}})


def test_plane_without_contact(catalog):
    C, _ = catalog.get('heisenberg')
    data = ContactData([[1, 0, 0], [0, 1, 0]], [0, 0, 1])
    report = algebra_core.is_contact(C, data)
    assert not report.is_contact
    assert report.value == 0.0
    with pytest.raises(ContactViolation):
        algebra_core.canonical_frame(C, data)


@pytest.mark.parametrize('name, expected', [
    ('heisenberg', [1.0, 0.0, 0.0]),
    ('su2', [1.0, 0.0, 0.0]),
    ('sl2', [1.0, 0.0, 0.0]),
    ('sl2_hyperbolic', [0.0, 0.5, -0.5]),
])
def test_reeb_vector(catalog, name, expected):
    C, data = catalog.get(name)
    np.testing.assert_allclose(algebra_core.reeb_vector(C, data), expected, atol=1e-15)


@pytest.mark.parametrize('name', PRESET_NAMES)
def test_reeb_vector_after_basis_change(catalog, random_bases, name):
    C, data = catalog.get(name)
    for P in random_bases[:20]:
        Cp, datap = algebra_core.transform(C, data, P)
        R = algebra_core.reeb_vector(Cp, datap)
        assert datap.alpha @ R == pytest.approx(1.0, abs=1e-12)
        for u in datap.xi:
            assert abs(datap.alpha @ Cp.bracket(R, u)) <= 1e-10


@pytest.mark.parametrize('name, expected', [
    ('su2', -2.0 * np.eye(3)),
    ('sl2', np.diag([-2.0, 2.0, 2.0])),
    ('heisenberg', np.zeros((3, 3))),
])
def test_killing_form(catalog, name, expected):
    C, _ = catalog.get(name)
    killing = algebra_core.killing_form(C)
    np.testing.assert_allclose(killing.K, expected, atol=1e-15)
    assert killing.invariance_residual(C) <= 1e-12


def test_killing_signature(catalog):
    assert algebra_core.killing_form(catalog.get('su2')[0]).is_definite()
    assert algebra_core.killing_form(catalog.get('sl2')[0]).signature() == (2, 1, 0)
    assert algebra_core.killing_form(catalog.get('heisenberg')[0]).signature() == (0, 0, 3)


def test_change_basis(catalog, rng):
    C, _ = catalog.get('case1')
    P = algebra_core.random_basis_change(rng)
    back = algebra_core.change_basis(algebra_core.change_basis(C, P), np.linalg.inv(P))
    np.testing.assert_allclose(back.tensor, C.tensor, atol=1e-12)
    with pytest.raises(StructureError):
        algebra_core.change_basis(C, np.ones((3, 3)))


def test_reciprocal_scaling_keeps_the_heisenberg_table(catalog):
    C, _ = catalog.get('heisenberg')
    for s in (0.5, 3.0, -2.0):
        moved = algebra_core.change_basis(C, np.diag([1.0, s, 1.0 / s]))
        np.testing.assert_allclose(moved.tensor, C.tensor, atol=1e-15)


@pytest.mark.parametrize('order', list(itertools.permutations(range(3))))
def test_su2_basis_permutation_matches_the_commutators(order):
    C = group_models.model_constants('su2')
    moved = algebra_core.change_basis(C, np.eye(3)[:, list(order)])
    expected = group_models.structure_constants_from_matrices([group_models.SU2_BASIS[k] for k in order])
    np.testing.assert_allclose(moved.tensor, expected.tensor, atol=1e-14)


@pytest.mark.parametrize('M, kind', [
    ([[1.0, 0.0], [0.0, -1.0]], 'real'),
    ([[2.0, 3.0], [1.0, -2.0]], 'real'),
    ([[0.0, 1.0], [-1.0, 0.0]], 'complex'),
    ([[0.5, -2.0], [1.0, -0.5]], 'complex'),
    ([[0.0, 1.0], [0.0, 0.0]], 'nilpotent'),
    ([[1.0, 1.0], [-1.0, -1.0]], 'nilpotent'),
])
def test_hollow_basis(M, kind):
    S, N, found = algebra_core.hollow_basis(np.array(M))
    assert found == kind
    assert abs(np.linalg.det(S)) > 1e-12
    np.testing.assert_allclose(N, np.linalg.solve(S, np.array(M) @ S), atol=1e-14)
    assert np.max(np.abs(np.diag(N))) <= 1e-12


def test_hollowing_of_a_real_split_matrix():
    M = np.array([[1.0, 2.0], [3.0, -1.0]])
    S, N, kind = algebra_core.hollow_basis(M)
    assert kind == 'real'
    assert np.max(np.abs(np.diag(N))) <= 1e-12
    assert np.linalg.det(N) == pytest.approx(-7.0)
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(N).real), [-np.sqrt(7.0), np.sqrt(7.0)], atol=1e-12)


def test_nilpotent_hollowing_orders_image_first():
    S, N, _ = algebra_core.hollow_basis(np.array([[0.0, 1.0], [0.0, 0.0]]))
    np.testing.assert_allclose(N, [[0.0, 1.0], [0.0, 0.0]])


@pytest.mark.parametrize('name', PRESET_NAMES)
def test_canonical_frame_under_basis_changes(catalog, random_bases, name):
    C, data = catalog.get(name)
    for P in random_bases:
        frame = algebra_core.canonical_frame(*algebra_core.transform(C, data, P))
        assert frame.pattern_residual() <= 1e-10 * max(1.0, frame.constants.scale())
        assert frame.heisenberg_branch == (name == 'heisenberg')
        assert abs(frame.reeb_trace()) <= 1e-10 * max(1.0, frame.constants.scale())


@pytest.mark.parametrize('name', PRESET_NAMES)
def test_canonical_frame_spans_the_plane(catalog, name):
    C, data = catalog.get(name)
    frame = algebra_core.canonical_frame(C, data)
    v0, v1, v2 = frame.P.T
    assert abs(data.alpha @ v1) <= 1e-14
    assert abs(data.alpha @ v2) <= 1e-14
    np.testing.assert_allclose(C.bracket(v1, v2), frame.m1 * v1 + frame.m2 * v2 - v0, atol=1e-12)


def test_canonical_frame_of_sl2(catalog):
    frame = algebra_core.canonical_frame(*catalog.get('sl2'))
    assert frame.hollow_kind == 'complex'
    assert frame.a == pytest.approx(0.5)
    assert frame.b == pytest.approx(-0.5)


def test_canonical_frame_of_case1_is_the_preset(catalog):
    frame = algebra_core.canonical_frame(*catalog.get('case1'))
    assert frame.hollow_kind == 'nilpotent'
    np.testing.assert_allclose(frame.P, np.eye(3), atol=1e-15)
    assert (frame.a, frame.b, frame.m1, frame.m2) == pytest.approx((0.0, 1.0, 1.0, 0.0))


def test_heisenberg_reduction_removes_m1():
    frame = algebra_core.reduce_to_heisenberg(canonical(0.0, 0.0, 2.0, 1.0))
    assert frame.heisenberg_branch
    assert frame.m1 == 0.0
    assert frame.m2 == pytest.approx(1.0)
    assert frame.pattern_residual() <= 1e-14


def test_from_constants_rejects_off_pattern_tables(catalog):
    with pytest.raises(StructureError):
        algebra_core.CanonicalFrame.from_constants(catalog.get('sl2_hyperbolic')[0])


def test_in_basis_keeps_alpha_on_the_plane(rng):
    data = ContactData.standard()
    P = algebra_core.random_basis_change(rng)
    moved = data.in_basis(P)
    np.testing.assert_allclose(moved.xi @ moved.alpha, 0.0, atol=1e-14)
    np.testing.assert_allclose(P @ moved.xi.T, data.xi.T, atol=1e-14)
