#title           : settings.py
#description     : Default paths, tolerances and grid parameters shared by the core modules
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : from . import settings; tol = settings.DEFAULTS.override(alignment=1e-8)
#notes           : the tolerances are absolute unless the field says otherwise
#python_version  : >= 3.8
#==============================================================================

import os
from dataclasses import dataclass, replace

# presets are stored next to the package, as json, like any other shipped data
script_dir = os.path.dirname(__file__)
presetpath = script_dir + '/../example_data/presets.json'

DEFAULT_GRID = 10
DEFAULT_BOX = (-2.0, 2.0)
DEFAULT_TOL = 1e-9
DEFAULT_SEED = 42

MAX_REFINEMENT_DEPTH = 24
GEODESIC_DT = 1e-3


@dataclass(frozen=True)
class Tolerances:
    """
    Tolerances
    =====
    Thresholds used by validation, zero tests and the verification suite

    Attributes
    -----
    jacobi : float
        largest accepted Jacobi residual
    zero : float
        zero test on structure constants, relative to the largest constant
    trace : float
        trace of ad(Reeb) on the contact plane, relative to the largest constant
    contact : float
        |alpha([u1,u2])| must exceed this value
    discriminant : float
        band around 0 in which a traceless 2x2 matrix is treated as nilpotent
    alignment : float
        normalized pushforward residual
    volume : float
        smallest accepted |V|
    injectivity : float
        smallest accepted separation between two images
    geodesic : float
        geodesic criterion and Euler-Arnold residuals
    jacobian : float
        smallest accepted |det| of the normal exponential Jacobian
    """

    jacobi: float = 1e-12
    zero: float = 1e-10
    trace: float = 1e-10
    contact: float = 0.0
    discriminant: float = 1e-10
    alignment: float = 1e-9
    volume: float = 1e-6
    injectivity: float = 1e-9
    geodesic: float = 1e-12
    jacobian: float = 1e-10

    def override(self, **kwargs):
        return replace(self, **kwargs)


DEFAULTS = Tolerances()
