#title           : mc_pullback.py
#description     : Contact form pulled back to coordinates of the second kind (x, y, z) -> exp(xA) exp(yB) exp(zC)
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : chart = mc_pullback.SecondKindChart(A, B, C, theta0, constants); value = mc_pullback.beta_at(chart, x, y, z)
#notes           : g^-1 dg = Ad(exp(-zC) exp(-yB)) A dx + Ad(exp(-zC)) B dy + C dz
#python_version  : >= 3.8
#==============================================================================

import logging
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateChartError

logger = logging.getLogger(__name__)

TAYLOR_ORDER = 10
SCALED_NORM = 0.125
FD_STEP = 1e-5


@dataclass(frozen=True, eq=False)
class SecondKindChart:
    """
    SecondKindChart
    =====
    Chart generators with the covector whose kernel is the contact plane

    Parameters
    -----
    A, B, C : array (3,)
        chart generators; C lies in the contact plane
    theta0 : array (3,)
        covector with kernel the contact plane
    constants : StructureConstants
        the bracket table in which A, B, C and theta0 are expressed
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    theta0: np.ndarray
    constants: object

    def __post_init__(self):
        for field in ('A', 'B', 'C', 'theta0'):
            value = np.array(getattr(self, field), dtype=float)
            if value.shape != (3,):
                raise DegenerateChartError('%s must be a 3-vector' % field)
            value.setflags(write=False)
            object.__setattr__(self, field, value)
        generators = np.column_stack([self.A, self.B, self.C])
        scale = max(1.0, float(np.max(np.abs(generators))))
        if abs(np.linalg.det(generators)) <= 1e-12 * scale ** 3:
            raise DegenerateChartError('chart generators are linearly dependent')
        if abs(self.beta_z) > 1e-12 * scale * max(1.0, float(np.max(np.abs(self.theta0)))):
            raise DegenerateChartError('C is not in the contact plane (theta0(C) = %.3e)' % self.beta_z)
        ad_C = ad_matrix(self.constants, self.C)
        ad_B = ad_matrix(self.constants, self.B)
        ad_C.setflags(write=False)
        ad_B.setflags(write=False)
        object.__setattr__(self, 'ad_C', ad_C)
        object.__setattr__(self, 'ad_B', ad_B)
        logger.debug('second-kind chart A=%s B=%s C=%s', self.A, self.B, self.C)

    @property
    def beta_z(self):
        return float(self.theta0 @ self.C)

    def scaled(self, factor_a=1.0, factor_b=1.0):
        return SecondKindChart(factor_a * self.A, factor_b * self.B, self.C, self.theta0, self.constants)

    def to_dict(self):
        return {'A': self.A.tolist(), 'B': self.B.tolist(), 'C': self.C.tolist(),
                'theta0': self.theta0.tolist()}


@dataclass(frozen=True)
class BetaValue:
    bx: float
    by: float
    dbx_dz: float
    dby_dz: float

    @property
    def norm2(self):
        return self.bx ** 2 + self.by ** 2

    @property
    def volume(self):
        return self.bx * self.dby_dz - self.by * self.dbx_dz


###################################
### Operations ####################
###################################

def ad_matrix(C, v):
    """columns are the coordinates of [v, v_j]"""
    return C.ad(v)


def expm3(M, t=1.0):
    """
    expm3
    =====
    matrix exponential of t*M for a 3x3 matrix: scaling and squaring around a Taylor
    polynomial of fixed order

    Parameters
    -----
    M : array (3, 3)
    t : float

    Returns
    -----
    array (3, 3)
    """
    X = t * np.asarray(M, dtype=float)
    if not np.any(X @ X):
        return np.eye(3) + X
    norm = float(np.linalg.norm(X, 1))
    squarings = max(0, int(math.ceil(math.log2(norm / SCALED_NORM)))) if norm > 0 else 0
    X = X / 2.0 ** squarings
    result = np.eye(3)
    for k in range(TAYLOR_ORDER, 0, -1):
        result = np.eye(3) + (X @ result) / k
    for _ in range(squarings):
        result = result @ result
    return result


def pulled_back_vectors(chart, x, y, z):
    """algebra values of g^-1 dg on d/dx and d/dy"""
    Ez = expm3(chart.ad_C, -z)
    along_x = Ez @ (expm3(chart.ad_B, -y) @ chart.A)
    along_y = Ez @ chart.B
    return along_x, along_y


def beta_at(chart, x, y, z):
    """
    beta_at
    =====
    function to evaluate the pulled-back contact form and its z-derivatives at a chart point

    Parameters
    -----
    chart : SecondKindChart
    x, y, z : float

    Returns
    -----
    BetaValue : beta(d/dx), beta(d/dy) and their derivatives in z; beta(d/dz) = theta0(C) = 0
    """
    along_x, along_y = pulled_back_vectors(chart, x, y, z)
    theta0 = chart.theta0
    return BetaValue(float(theta0 @ along_x), float(theta0 @ along_y),
                     float(-theta0 @ (chart.ad_C @ along_x)), float(-theta0 @ (chart.ad_C @ along_y)))


def contact_volume(chart, x, y, z):
    """bx * dby/dz - by * dbx/dz, nonzero for a contact chart"""
    return beta_at(chart, x, y, z).volume


def derivative_check(chart, x, y, z, step=FD_STEP):
    """
    derivative_check
    =====
    compares the analytic z-derivatives with central finite differences

    Returns
    -----
    float : largest deviation relative to max(1, |analytic derivative|)
    """
    centre = beta_at(chart, x, y, z)
    upper = beta_at(chart, x, y, z + step)
    lower = beta_at(chart, x, y, z - step)
    deviation = 0.0
    for analytic, up, down in ((centre.dbx_dz, upper.bx, lower.bx), (centre.dby_dz, upper.by, lower.by)):
        numeric = (up - down) / (2 * step)
        deviation = max(deviation, abs(numeric - analytic) / max(1.0, abs(analytic)))
    return deviation
