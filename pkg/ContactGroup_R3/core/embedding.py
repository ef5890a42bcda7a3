#title           : embedding.py
#description     : Normalization (x, y, z) -> (x, y, f) that carries the pulled-back contact form to cos(w) du + sin(w) dv
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : samples, report, result = embedding.psi_embedding(C, data, embedding.GridSpec(10, (-2, 2)))
#notes           : f is a continuous lift of the angle of (beta(d/dx), beta(d/dy)); f grows in z when V > 0
#python_version  : >= 3.8
#==============================================================================

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.spatial import cKDTree

from . import classify
from . import group_models
from . import mc_pullback
from . import settings
from .exceptions import GridError, StepResolutionError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('x', 'y', 'z', 'bx', 'by', 'f', 'u', 'v', 'w', 'V', 'residual')
HALF_TURN = math.pi / 2


@dataclass(frozen=True)
class GridSpec:
    """n points per axis on the cube box^3"""

    n: int = settings.DEFAULT_GRID
    box: Tuple[float, float] = settings.DEFAULT_BOX

    def __post_init__(self):
        if int(self.n) < 1:
            raise GridError('grid needs at least one point per axis, got %s' % self.n)
        lo, hi = float(self.box[0]), float(self.box[1])
        if not lo < hi and int(self.n) > 1:
            raise GridError('box must satisfy lo < hi, got %s' % (self.box,))
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'box', (lo, hi))

    def axis(self):
        return np.linspace(self.box[0], self.box[1], self.n)


@dataclass(frozen=True)
class EmbeddingSample:
    source: Tuple[float, float, float]
    f: float
    bx: float
    by: float
    V: float
    residual: float

    @property
    def image(self):
        return (self.source[0], self.source[1], self.f)

    def row(self):
        x, y, z = self.source
        return {'x': x, 'y': y, 'z': z, 'bx': self.bx, 'by': self.by, 'f': self.f,
                'u': x, 'v': y, 'w': self.f, 'V': self.V, 'residual': self.residual}


@dataclass
class PushforwardReport:
    """
    PushforwardReport
    =====
    Verdict of verify_pushforward with its itemized failures

    Attributes
    -----
    max_residual : float
        largest |bx sin f - by cos f| / |beta|
    min_abs_volume : float
        smallest |V| over the grid
    volume_sign : int
        common sign of V, 0 if it changes
    max_beta_z : float
        |theta0(C)|, the coefficient of dz
    max_derivative_error : float
        largest deviation of the analytic z-derivatives from central differences
    failures : list of str
    """

    max_residual: float = 0.0
    min_abs_volume: float = math.inf
    volume_sign: int = 0
    max_beta_z: float = 0.0
    max_derivative_error: float = 0.0
    monotone: bool = True
    injective: bool = True
    samples: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {'passed': self.passed, 'max_residual': self.max_residual,
                'min_abs_volume': self.min_abs_volume, 'volume_sign': self.volume_sign,
                'max_beta_z': self.max_beta_z, 'max_derivative_error': self.max_derivative_error,
                'monotone': self.monotone, 'injective': self.injective,
                'samples': self.samples, 'failures': list(self.failures)}


###################################
### Angle lifting #################
###################################

def wrap(angle):
    """representative of angle in (-pi, pi]"""
    wrapped = math.remainder(angle, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def _angular_speed(value):
    return abs(value.volume) / value.norm2


def _advance(chart, x, y, z_a, z_b, f_a, beta_a, depth, max_depth):
    beta_b = mc_pullback.beta_at(chart, x, y, z_b)
    step = wrap(math.atan2(beta_b.by, beta_b.bx) - f_a)
    bound = max(_angular_speed(beta_a), _angular_speed(beta_b)) * (z_b - z_a)
    if abs(step) < HALF_TURN and bound < HALF_TURN:
        return f_a + step, beta_b
    if depth >= max_depth:
        raise StepResolutionError('angle lift at (x, y) = (%g, %g) unresolved on [%g, %g] after %d bisections'
                                  % (x, y, z_a, z_b, depth))
    if depth == 0:
        logger.debug('refining z step [%g, %g] at (x, y) = (%g, %g)', z_a, z_b, x, y)
    z_mid = 0.5 * (z_a + z_b)
    f_mid, beta_mid = _advance(chart, x, y, z_a, z_mid, f_a, beta_a, depth + 1, max_depth)
    return _advance(chart, x, y, z_mid, z_b, f_mid, beta_mid, depth + 1, max_depth)


def angle_lift(chart, x, y, z_grid, max_depth=settings.MAX_REFINEMENT_DEPTH):
    """
    angle_lift
    =====
    function to lift the angle of (beta(d/dx), beta(d/dy)) continuously along a z-line

    The first value is the principal angle; each further value is the previous one plus the
    wrapped increment. Steps whose increment, or whose bound |V| / |beta|^2 * dz, reaches pi/2
    are bisected.

    Parameters
    -----
    chart : SecondKindChart
    x, y : float
    z_grid : sequence of float, strictly increasing
    max_depth : int
        bisection limit per grid step

    Returns
    -----
    array of f values, one per grid point

    Raises
    -----
    GridError : if z_grid is empty or not strictly increasing
    StepResolutionError : if a step cannot be resolved within max_depth bisections
    """
    z_grid = np.asarray(z_grid, dtype=float)
    if z_grid.ndim != 1 or z_grid.size == 0:
        raise GridError('z grid must be a nonempty sequence')
    if np.any(np.diff(z_grid) <= 0):
        raise GridError('z grid must be strictly increasing')
    beta = mc_pullback.beta_at(chart, x, y, z_grid[0])
    lifted = [math.atan2(beta.by, beta.bx)]
    for z_a, z_b in zip(z_grid[:-1], z_grid[1:]):
        f_b, beta = _advance(chart, x, y, z_a, z_b, lifted[-1], beta, 0, max_depth)
        lifted.append(f_b)
    return np.array(lifted)


def phi(chart, point, max_depth=settings.MAX_REFINEMENT_DEPTH):
    """
    phi
    =====
    (x, y, z) -> (x, y, f(x, y, z)), with f lifted along z from the principal angle at z = 0
    """
    x, y, z = (float(c) for c in point)
    if z == 0.0:
        beta = mc_pullback.beta_at(chart, x, y, 0.0)
        return (x, y, math.atan2(beta.by, beta.bx))
    if z > 0:
        return (x, y, float(angle_lift(chart, x, y, [0.0, z], max_depth)[-1]))
    back = angle_lift(chart, x, y, [z, 0.0], max_depth)
    beta = mc_pullback.beta_at(chart, x, y, 0.0)
    return (x, y, float(back[0] - back[-1] + math.atan2(beta.by, beta.bx)))


###################################
### Sampling and verification #####
###################################

def alignment_residual(value, f):
    return abs(value.bx * math.sin(f) - value.by * math.cos(f)) / math.sqrt(value.norm2)


def sample_chart(chart, grid, max_depth=settings.MAX_REFINEMENT_DEPTH):
    """
    sample_chart
    =====
    function to evaluate beta, V and the lifted angle on every grid point; every z-line is
    anchored at its first point

    Returns
    -----
    list of EmbeddingSample, ordered by x, then y, then z
    """
    axis = grid.axis()
    samples = []
    for x in axis:
        for y in axis:
            lifted = angle_lift(chart, x, y, axis, max_depth)
            for z, f in zip(axis, lifted):
                value = mc_pullback.beta_at(chart, x, y, z)
                samples.append(EmbeddingSample((float(x), float(y), float(z)), float(f), value.bx,
                                               value.by, value.volume, alignment_residual(value, f)))
    return samples


def verify_pushforward(chart, grid, tol=None, tolerances=settings.DEFAULTS, samples=None):
    """
    verify_pushforward
    =====
    function to check, on a grid, that (x, y, f) carries the kernel of beta to the kernel of
    cos(w) du + sin(w) dv

    Parameters
    -----
    chart : SecondKindChart
    grid : GridSpec
    tol : float, optional
        alignment tolerance, overrides tolerances.alignment
    samples : list of EmbeddingSample, optional
        precomputed samples; their f values are checked against freshly evaluated beta

    Returns
    -----
    PushforwardReport : residuals and the itemized list of failures
    """
    tol = tolerances.alignment if tol is None else tol
    if samples is None:
        samples = sample_chart(chart, grid)
    report = PushforwardReport(samples=len(samples))
    scale = max(1.0, float(np.max(np.abs(chart.theta0))) * float(np.max(np.abs(chart.C))))
    report.max_beta_z = abs(chart.beta_z)
    if report.max_beta_z > 1e-12 * scale:
        report.failures.append('beta(d/dz) = %.3e is not zero' % report.max_beta_z)

    signs = set()
    for sample in samples:
        value = mc_pullback.beta_at(chart, *sample.source)
        residual = alignment_residual(value, sample.f)
        report.max_residual = max(report.max_residual, residual)
        if residual > tol:
            report.failures.append('alignment residual %.3e at %s' % (residual, sample.source))
        if value.norm2 < 1e-12:
            report.failures.append('beta vanishes at %s' % (sample.source,))
        report.min_abs_volume = min(report.min_abs_volume, abs(value.volume))
        if abs(value.volume) < tolerances.volume:
            report.failures.append('|V| = %.3e below %.1e at %s'
                                   % (abs(value.volume), tolerances.volume, sample.source))
        signs.add(int(np.sign(value.volume)))
        error = mc_pullback.derivative_check(chart, *sample.source)
        report.max_derivative_error = max(report.max_derivative_error, error)
        if error > 1e-6:
            report.failures.append('z-derivative mismatch %.3e at %s' % (error, sample.source))
    report.volume_sign = signs.pop() if len(signs) == 1 else 0
    if report.volume_sign == 0:
        report.failures.append('V changes sign or vanishes on the grid')

    lines = {}
    for sample in samples:
        lines.setdefault(sample.source[:2], []).append((sample.source[2], sample.f))
    for (x, y), line in lines.items():
        line.sort()
        steps = np.diff([f for _, f in line])
        if steps.size and not np.all(np.sign(steps) == report.volume_sign):
            report.monotone = False
            report.failures.append('f is not strictly monotone along z at (x, y) = (%g, %g)' % (x, y))

    images = np.array([sample.image for sample in samples])
    if len(images) > 1:
        pairs = cKDTree(images).query_pairs(r=tolerances.injectivity)
        if pairs:
            report.injective = False
            report.failures.append('%d pairs of images closer than %.1e' % (len(pairs), tolerances.injectivity))
    if report.passed:
        logger.info('pushforward check passed on %d samples', len(samples))
    else:
        logger.warning('pushforward check failed on %d samples: %d failures, first: %s',
                       len(samples), len(report.failures), report.failures[0])
    return report


def psi_embedding(C, data, grid, tolerances=settings.DEFAULTS, tol=None):
    """
    psi_embedding
    =====
    function to run the whole pipeline: canonical frame, classification, chart, beta and phi

    Parameters
    -----
    C : StructureConstants
    data : ContactData
    grid : GridSpec

    Returns
    -----
    (samples, report, result) : the EmbeddingSample list, the PushforwardReport and the
        ClassificationResult the chart came from

    Raises
    -----
    UnsupportedCaseError : for su(2)
    """
    result = classify.classify_algebra(C, data, tolerances)
    chart = result.chart()
    samples = sample_chart(chart, grid)
    report = verify_pushforward(chart, grid, tol, tolerances, samples)
    return samples, report, result


def embed_element(model, matrix, max_depth=settings.MAX_REFINEMENT_DEPTH):
    """
    embed_element
    =====
    function to send a group element of a matrix model to R^3: factorize it, read the
    factors as chart coordinates and apply phi

    Parameters
    -----
    model : str
        'heisenberg' or 'sl2'
    matrix : array

    Returns
    -----
    (Factorization, (u, v, w))
    """
    factorization = group_models.factorize(model, matrix)
    chart = group_models.model_chart(model)
    return factorization, phi(chart, factorization.params, max_depth)
