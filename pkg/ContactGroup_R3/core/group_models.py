#title           : group_models.py
#description     : Matrix models of the Heisenberg group, SL(2) and SU(2), with factorization into one-parameter subgroups
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : fac = group_models.factorize('sl2', A); g = group_models.reconstruct('sl2', fac.params)
#notes           : chart coordinates of a model equal its factorization parameters
#python_version  : >= 3.8
#==============================================================================

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import expm

from . import algebra_core
from .exceptions import MalformedElementError, StepResolutionError
from .mc_pullback import SecondKindChart

logger = logging.getLogger(__name__)

LIFT_STEP = 0.5


def _unit(n, i, j):
    E = np.zeros((n, n))
    E[i, j] = 1.0
    return E


# v0 = -E13, v1 = E12, v2 = E23, so that [v1, v2] = -v0
HEISENBERG_BASIS = (-_unit(3, 0, 2), _unit(3, 0, 1), _unit(3, 1, 2))
# v0 elliptic, v1 diagonal, v2 symmetric off-diagonal
SL2_BASIS = (0.5 * np.array([[0.0, -1.0], [1.0, 0.0]]),
             0.5 * np.array([[1.0, 0.0], [0.0, -1.0]]),
             0.5 * np.array([[0.0, 1.0], [1.0, 0.0]]))
SU2_BASIS = (0.5 * np.array([[-1j, 0], [0, 1j]]),
             0.5 * np.array([[0, 1], [-1, 0]], dtype=complex),
             0.5 * np.array([[0, 1j], [1j, 0]]))

# chart generators in the model basis: exp(xA) exp(yB) exp(zC)
CHART_GENERATORS = {
    'heisenberg': (np.array([1.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0])),
    'sl2': (np.array([2.0, 0.0, 0.0]), np.array([-1.0, 0.0, 1.0]), np.array([0.0, 2.0, 0.0])),
}
BASES = {'heisenberg': HEISENBERG_BASIS, 'sl2': SL2_BASIS, 'su2': SU2_BASIS}


@dataclass(frozen=True, eq=False)
class MatrixElement:
    """
    MatrixElement
    =====
    Element of a matrix model, checked on construction

    Parameters
    -----
    model : str
        'heisenberg' (unit upper triangular 3x3), 'sl2' (2x2, det 1) or 'su2'
        (its adjoint image, a 3x3 rotation)
    m : array
    lift : float, optional
        continuous angle of the rotation factor, for elements of the universal cover of SL(2)
    """

    model: str
    m: np.ndarray
    lift: Optional[float] = None

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if not np.all(np.isfinite(m)):
            raise MalformedElementError('matrix entries must be finite')
        if self.model == 'heisenberg':
            if m.shape != (3, 3) or np.any(np.tril(m, -1)) or np.any(np.diag(m) != 1.0):
                raise MalformedElementError('Heisenberg elements are unit upper triangular 3x3 matrices')
        elif self.model == 'sl2':
            if m.shape != (2, 2) or abs(np.linalg.det(m) - 1.0) > 1e-12 * max(1.0, float(np.max(np.abs(m)))) ** 2:
                raise MalformedElementError('SL(2) elements are 2x2 matrices of determinant 1')
        elif self.model == 'su2':
            if m.shape != (3, 3) or np.max(np.abs(m.T @ m - np.eye(3))) > 1e-12 or np.linalg.det(m) < 0:
                raise MalformedElementError('SU(2) elements are given by their adjoint rotation')
        else:
            raise MalformedElementError('unknown model %r, expected one of heisenberg, sl2, su2' % self.model)
        m.setflags(write=False)
        object.__setattr__(self, 'm', m)


@dataclass(frozen=True)
class Factorization:
    """g = exp(t1 A) exp(t2 B) exp(t3 C) for the chart generators of the model"""

    model: str
    t1: float
    t2: float
    t3: float
    residual: float

    @property
    def params(self):
        return (self.t1, self.t2, self.t3)

    def to_dict(self):
        return {'model': self.model, 'params': list(self.params), 'residual': self.residual}


@dataclass(frozen=True, eq=False)
class Su2Frame:
    matrices: Tuple[np.ndarray, np.ndarray, np.ndarray]
    constants: algebra_core.StructureConstants
    adjoint: Tuple[np.ndarray, np.ndarray, np.ndarray]


###################################
### Algebra helpers ###############
###################################

def _flatten(matrix):
    flat = np.asarray(matrix).ravel()
    return np.concatenate([flat.real, flat.imag])


def algebra_coordinates(basis, matrix):
    """coordinates of a matrix in the span of the basis, by least squares"""
    design = np.column_stack([_flatten(b) for b in basis])
    coords, *_ = np.linalg.lstsq(design, _flatten(matrix), rcond=None)
    return coords


def to_matrix(basis, coords):
    return sum(c * b for c, b in zip(coords, basis))


def structure_constants_from_matrices(basis, labels=('v0', 'v1', 'v2')):
    """
    structure_constants_from_matrices
    =====
    bracket table of a matrix basis, from commutators

    Raises
    -----
    MalformedElementError : if a commutator leaves the span of the basis
    """
    tensor = np.zeros((3, 3, 3))
    for i, j in ((0, 1), (0, 2), (1, 2)):
        commutator = basis[i] @ basis[j] - basis[j] @ basis[i]
        coords = algebra_coordinates(basis, commutator)
        if np.max(np.abs(to_matrix(basis, coords) - commutator)) > 1e-12:
            raise MalformedElementError('basis does not span a Lie algebra')
        tensor[i, j] = coords
        tensor[j, i] = -coords
    return algebra_core.StructureConstants(tensor, labels)


def model_constants(model):
    if model not in BASES:
        raise MalformedElementError('unknown model %r' % model)
    return structure_constants_from_matrices(BASES[model])


def model_chart(model):
    """second-kind chart whose coordinates are the factorization parameters of the model"""
    if model not in CHART_GENERATORS:
        raise MalformedElementError('no chart of the second kind for model %r' % model)
    A, B, C = CHART_GENERATORS[model]
    return SecondKindChart(A, B, C, np.array([1.0, 0.0, 0.0]), model_constants(model))


def su2_standard_frame():
    """
    su2_standard_frame
    =====
    the basis e0, e1, e2 of su(2) as 2x2 matrices, its bracket table and the adjoint
    images ad(e0), ad(e1), ad(e2)
    """
    constants = structure_constants_from_matrices(SU2_BASIS, ('e0', 'e1', 'e2'))
    adjoint = tuple(constants.ad(e) for e in np.eye(3))
    return Su2Frame(SU2_BASIS, constants, adjoint)


###################################
### Factorization #################
###################################

def heis_factorize(g):
    """
    heis_factorize
    =====
    I + z E12 + y E23 - x E13 = exp(x v0) exp(y v2) exp(z v1)
    """
    element = g if isinstance(g, MatrixElement) else MatrixElement('heisenberg', g)
    m = element.m
    x, y, z = -m[0, 2], m[1, 2], m[0, 1]
    return Factorization('heisenberg', float(x), float(y), float(z),
                         float(np.max(np.abs(reconstruct('heisenberg', (x, y, z)) - m))))


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def sl2_factorize(A):
    """
    sl2_factorize
    =====
    function to write A = R(theta) [[1, v], [0, 1]] diag(e^u, e^-u)

    theta is the angle of the first column of A, so that R(-theta) A is upper triangular
    with positive diagonal [[e^u, b], [0, e^-u]]; then v = b e^u

    Parameters
    -----
    A : array (2, 2) or MatrixElement

    Returns
    -----
    Factorization with params (theta, v, u)
    """
    element = A if isinstance(A, MatrixElement) else MatrixElement('sl2', A)
    m = element.m
    column = m[:, 0]
    radius = float(np.hypot(column[0], column[1]))
    assert radius > 0, 'first column of an SL(2) matrix cannot vanish'
    theta = math.atan2(column[1], column[0])
    upper = rotation(-theta) @ m
    u = math.log(radius)
    v = upper[0, 1] * radius
    params = (theta, v, u)
    return Factorization('sl2', theta, float(v), u,
                         float(np.max(np.abs(reconstruct('sl2', params) - m))))


def factorize(model, matrix):
    if model == 'heisenberg':
        return heis_factorize(matrix)
    if model == 'sl2':
        return sl2_factorize(matrix)
    raise MalformedElementError('no factorization for model %r; SU(2) is not a product of three lines' % model)


def reconstruct(model, params):
    """exp(t1 A) exp(t2 B) exp(t3 C) in the model, computed in closed form"""
    t1, t2, t3 = params
    if model == 'heisenberg':
        return np.eye(3) - t1 * _unit(3, 0, 2) + t2 * _unit(3, 1, 2) + t3 * _unit(3, 0, 1)
    if model == 'sl2':
        return rotation(t1) @ np.array([[1.0, t2], [0.0, 1.0]]) @ np.diag([math.exp(t3), math.exp(-t3)])
    raise MalformedElementError('unknown model %r' % model)


def sl2_tilde_lift(path):
    """
    sl2_tilde_lift
    =====
    function to lift the rotation angle of a path in SL(2) continuously, as a path in the
    universal cover

    Parameters
    -----
    path : list of 2x2 arrays or MatrixElement

    Returns
    -----
    list of MatrixElement with the lifted angle in .lift

    Raises
    -----
    StepResolutionError : if two consecutive elements are 0.5 or more apart
    """
    elements = [p if isinstance(p, MatrixElement) else MatrixElement('sl2', p) for p in path]
    lifted = []
    previous = None
    for element in elements:
        theta = math.atan2(element.m[1, 0], element.m[0, 0])
        if previous is None:
            lift = theta
        else:
            gap = float(np.linalg.norm(element.m - previous.m))
            if gap >= LIFT_STEP:
                raise StepResolutionError('consecutive elements %.3f apart, refine the path below %.1f'
                                          % (gap, LIFT_STEP))
            lift = previous.lift + math.remainder(theta - math.atan2(previous.m[1, 0], previous.m[0, 0]),
                                                  2 * math.pi)
        previous = MatrixElement('sl2', element.m, lift)
        lifted.append(previous)
    if lifted:
        logger.debug('lifted %d elements, angle %.4f to %.4f', len(lifted), lifted[0].lift, lifted[-1].lift)
    return lifted


def random_element(model, rng):
    """random Heisenberg entries in [-5, 5]; SL(2) from random factors with parameters in [-2, 2]"""
    if model == 'heisenberg':
        g12, g13, g23 = rng.uniform(-5, 5, size=3)
        return np.array([[1.0, g12, g13], [0.0, 1.0, g23], [0.0, 0.0, 1.0]])
    if model == 'sl2':
        return reconstruct('sl2', rng.uniform(-2, 2, size=3))
    raise MalformedElementError('unknown model %r' % model)


###################################
### Oracle ########################
###################################

def model_beta_oracle(model, chart, x, y, z):
    """
    model_beta_oracle
    =====
    function to evaluate beta(d/dx), beta(d/dy) from g^-1 dg in the matrix model

    Parameters
    -----
    model : str
    chart : SecondKindChart
        generators expressed in the basis of the model

    Returns
    -----
    (bx, by)
    """
    basis = BASES[model]
    A, B, C = (to_matrix(basis, v) for v in (chart.A, chart.B, chart.C))
    gA, gB, gC = expm(x * A), expm(y * B), expm(z * C)
    g = gA @ gB @ gC
    tail = gB @ gC
    along_x = np.linalg.solve(g, A @ g)
    along_y = np.linalg.solve(tail, B @ tail)
    bx = float(chart.theta0 @ algebra_coordinates(basis, along_x))
    by = float(chart.theta0 @ algebra_coordinates(basis, along_y))
    return bx, by
