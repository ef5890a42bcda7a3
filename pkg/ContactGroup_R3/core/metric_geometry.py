#title           : metric_geometry.py
#description     : Left-invariant metric of a canonical frame: geodesic fields, Euler-Arnold flow and normal exponential witnesses
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : report = metric_geometry.geodesic_criterion(C, 2); traj = metric_geometry.integrate_geodesic(C, u0, 10.0)
#notes           : the frame is orthonormal, so <u, [u, v_k]> is a plain contraction of the bracket tensor
#python_version  : >= 3.8
#==============================================================================

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.linalg import expm
from scipy.spatial import cKDTree

from . import group_models
from . import settings
from .exceptions import GridError, StepSizeError

logger = logging.getLogger(__name__)

JACOBIAN_STEP = 1e-6


@dataclass(frozen=True, eq=False)
class LeftInvariantMetric:
    """eta = theta0^2 + theta1^2 + theta2^2 for the coframe dual to a canonical frame"""

    coframe: np.ndarray

    @property
    def gram(self):
        return np.eye(3)

    def inner(self, x, y):
        """inner product of two vectors given in the input basis"""
        return float((self.coframe @ x) @ (self.coframe @ y))

    @classmethod
    def from_result(cls, result):
        return cls(result.coframe)


@dataclass(frozen=True, eq=False)
class GeodesicReport:
    index: int
    passed: bool
    residual: np.ndarray

    def to_dict(self):
        return {'index': self.index, 'passed': self.passed, 'residual': self.residual.tolist()}


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray

    def drift(self):
        return float(np.max(np.linalg.norm(self.states - self.states[0], axis=1)))

    def energy_error(self):
        energy = 0.5 * np.sum(self.states ** 2, axis=1)
        return float(np.max(np.abs(energy - energy[0])))


@dataclass
class NormalExponentialReport:
    model: str
    samples: int = 0
    min_abs_det: float = math.inf
    min_separation: float = math.inf
    injective: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {'model': self.model, 'samples': self.samples, 'min_abs_det': self.min_abs_det,
                'min_separation': self.min_separation, 'injective': self.injective,
                'passed': self.passed, 'failures': list(self.failures)}


###################################
### Geodesics #####################
###################################

def geodesic_criterion(C, i, tolerance=settings.DEFAULTS.geodesic):
    """
    geodesic_criterion
    =====
    Boolean function to test whether the frame vector v_i is geodesic for the metric in which
    the frame is orthonormal: the v_i-component of [v_i, v_j] vanishes for every j

    Returns
    -----
    GeodesicReport : verdict and residual vector (components of [v_i, v_j] along v_i)
    """
    residual = np.array(C.tensor[i, :, i])
    return GeodesicReport(i, bool(np.max(np.abs(residual)) <= tolerance), residual)


def euler_arnold_rhs(C, u):
    """rhs_k = <u, [u, v_k]>"""
    u = np.asarray(u, dtype=float)
    return np.einsum('i,m,ikm->k', u, u, C.tensor)


def integrate_geodesic(C, u0, T, dt=None):
    """
    integrate_geodesic
    =====
    function to integrate du/dt = euler_arnold_rhs(u) with a fixed-step fourth order Runge-Kutta scheme

    Parameters
    -----
    C : StructureConstants
    u0 : array (3,)
    T : float
        final time
    dt : float, optional
        step, at most 1e-3 * T; defaults to settings.GEODESIC_DT, or to the bound when T < 1

    Returns
    -----
    Trajectory

    Raises
    -----
    StepSizeError : if dt exceeds 1e-3 * T or is not positive
    """
    if T <= 0:
        raise StepSizeError('final time must be positive, got %g' % T)
    bound = settings.GEODESIC_DT * T
    dt = min(settings.GEODESIC_DT, bound) if dt is None else dt
    if not 0 < dt <= bound * (1 + 1e-12):
        raise StepSizeError('step %g outside (0, %g]' % (dt, bound))
    steps = int(math.ceil(T / dt - 1e-9))
    dt = T / steps
    u = np.array(u0, dtype=float)
    states = [u.copy()]
    for _ in range(steps):
        k1 = euler_arnold_rhs(C, u)
        k2 = euler_arnold_rhs(C, u + 0.5 * dt * k1)
        k3 = euler_arnold_rhs(C, u + 0.5 * dt * k2)
        k4 = euler_arnold_rhs(C, u + dt * k3)
        u = u + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        states.append(u.copy())
    return Trajectory(np.linspace(0.0, T, steps + 1), np.array(states))


###################################
### Normal exponential ############
###################################

def _left_jacobian(basis, F, point, step):
    g = F(point)
    columns = []
    for axis in range(3):
        delta = np.zeros(3)
        delta[axis] = step
        derivative = (F(point + delta) - F(point - delta)) / (2 * step)
        columns.append(group_models.algebra_coordinates(basis, np.linalg.solve(g, derivative)))
    return np.column_stack(columns)


def normal_exponential(model, h_grid, z_grid, chart=None, tolerances=settings.DEFAULTS):
    """
    normal_exponential
    =====
    function to sample (s, t, z) -> exp(sA) exp(tB) exp(zC) in a matrix model, the subgroup
    exp(sA) exp(tB) pushed along the normal field C

    Parameters
    -----
    model : str
        'heisenberg' or 'sl2'
    h_grid : sequence of float
        values of s and t
    z_grid : sequence of float
    chart : SecondKindChart, optional
        generators in the model basis; defaults to the model chart

    Returns
    -----
    NormalExponentialReport : smallest |det| of the left-trivialized finite difference
        Jacobian and the pairwise image separation
    """
    h_grid = np.asarray(h_grid, dtype=float)
    z_grid = np.asarray(z_grid, dtype=float)
    if h_grid.size == 0 or z_grid.size == 0:
        raise GridError('normal exponential needs nonempty grids')
    chart = group_models.model_chart(model) if chart is None else chart
    basis = group_models.BASES[model]
    A, B, C = (group_models.to_matrix(basis, v) for v in (chart.A, chart.B, chart.C))

    def F(p):
        return expm(p[0] * A) @ expm(p[1] * B) @ expm(p[2] * C)

    report = NormalExponentialReport(model)
    images = []
    for s in h_grid:
        for t in h_grid:
            for z in z_grid:
                point = np.array([s, t, z])
                det = abs(float(np.linalg.det(_left_jacobian(basis, F, point, JACOBIAN_STEP))))
                report.min_abs_det = min(report.min_abs_det, det)
                images.append(F(point).ravel())
    report.samples = len(images)
    if report.min_abs_det < tolerances.jacobian:
        report.failures.append('Jacobian determinant %.3e below %.1e' % (report.min_abs_det, tolerances.jacobian))
    if len(images) > 1:
        tree = cKDTree(np.array(images))
        distances, _ = tree.query(np.array(images), k=2)
        report.min_separation = float(np.min(distances[:, 1]))
        if report.min_separation <= tolerances.injectivity:
            report.injective = False
            report.failures.append('images closer than %.1e' % tolerances.injectivity)
    logger.info('normal exponential on %s: %d samples, min |det| %.3e', model, report.samples, report.min_abs_det)
    return report


###################################
### Classification witness ########
###################################

@dataclass
class ClassificationWitness:
    """
    ClassificationWitness
    =====
    Residuals of the properties every chart-producing classification has

    Attributes
    -----
    beta_z : float
        theta0(C)
    subalgebra : float
        distance of [h1, h2] from span{h1, h2}
    bracket_ab : float
        |[A, B]|, zero for the solvable cases
    orthogonality : float
        largest of |eta(C, A)|, |eta(C, B)|
    geodesic : float
        |euler_arnold_rhs(C)|, zero when C is a geodesic field
    """

    case_tag: str
    beta_z: float = 0.0
    subalgebra: float = 0.0
    bracket_ab: float = 0.0
    orthogonality: float = 0.0
    geodesic: float = 0.0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {'case_tag': self.case_tag, 'beta_z': self.beta_z, 'subalgebra': self.subalgebra,
                'bracket_ab': self.bracket_ab, 'orthogonality': self.orthogonality,
                'geodesic': self.geodesic, 'passed': self.passed, 'failures': list(self.failures)}


def check_classification(result, tolerances=settings.DEFAULTS):
    """
    check_classification
    =====
    function to measure, in the orthonormal canonical frame, that C lies in the contact plane,
    h is a subalgebra, C is orthogonal to A and B and C is geodesic

    Parameters
    -----
    result : ClassificationResult
        any case except Su2

    Returns
    -----
    ClassificationWitness
    """
    witness = ClassificationWitness(result.case_tag)
    if result.C is None:
        witness.failures.append('%s has no chart generators' % result.case_tag)
        return witness
    constants = result.frame.constants
    A, B, C = result.A, result.B, result.C
    scale = max(1.0, constants.scale()) * max(1.0, float(np.max(np.abs([A, B, C])))) ** 2
    limit = max(tolerances.geodesic, tolerances.zero) * scale

    witness.beta_z = abs(float(C[0]))
    h1, h2 = result.h_span
    bracket = constants.bracket(h1, h2)
    span = np.column_stack([h1, h2])
    coords, *_ = np.linalg.lstsq(span, bracket, rcond=None)
    witness.subalgebra = float(np.max(np.abs(span @ coords - bracket)))
    witness.bracket_ab = float(np.max(np.abs(constants.bracket(A, B))))
    witness.orthogonality = max(abs(float(C @ A)), abs(float(C @ B)))
    witness.geodesic = float(np.max(np.abs(euler_arnold_rhs(constants, C))))

    if witness.beta_z > limit:
        witness.failures.append('C leaves the contact plane (%.3e)' % witness.beta_z)
    if witness.subalgebra > limit:
        witness.failures.append('h is not a subalgebra (%.3e)' % witness.subalgebra)
    if result.abelian and witness.bracket_ab > limit:
        witness.failures.append('[A, B] = %.3e, h should be abelian' % witness.bracket_ab)
    if witness.orthogonality > limit:
        witness.failures.append('C is not orthogonal to A and B (%.3e)' % witness.orthogonality)
    if witness.geodesic > limit:
        witness.failures.append('C is not geodesic (%.3e)' % witness.geodesic)
    return witness
