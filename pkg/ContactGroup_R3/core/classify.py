#title           : classify.py
#description     : Case analysis of a canonical frame: subalgebra, geodesic field and chart generators
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : result = classify.classify(frame); chart = result.chart()
#notes           : the sl(2) standard basis has [t, s1] = s2, [t, s2] = -s1, [s1, s2] = -t
#python_version  : >= 3.8
#==============================================================================

import inspect
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.transform import Rotation

from . import algebra_core
from . import contact_cases
from . import settings
from .exceptions import (NotContactDatum, NotSl2Error, StructureError,
                         UnsupportedCaseError)
from .mc_pullback import SecondKindChart

logger = logging.getLogger(__name__)

SL2_PATTERN = algebra_core.canonical_tensor(1.0, -1.0, 0.0, 0.0)
SL2_PATTERN_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ClassificationResult:
    """
    ClassificationResult
    =====
    Output of the case analysis

    Attributes
    -----
    case_tag : str
        one of Su2, Sl2Tilde, Case1, Case2, Case3Heis
    A, B, C : array (3,) or None
        chart generators in the coordinates of frame; C is the geodesic field. None for Su2
    h_span : array (2, 3) or None
        two vectors spanning the subalgebra
    frame : CanonicalFrame
        the canonical frame the generators refer to
    killing : KillingForm or None
        filled for the semisimple cases
    abelian : bool
        whether A and B commute, set by the selected case
    """

    case_tag: str
    A: Optional[np.ndarray]
    B: Optional[np.ndarray]
    C: Optional[np.ndarray]
    h_span: Optional[np.ndarray]
    frame: algebra_core.CanonicalFrame
    killing: Optional[algebra_core.KillingForm] = None
    abelian: bool = False

    @property
    def coframe(self):
        """rows are theta0, theta1, theta2 in the input basis; eta is their sum of squares"""
        return np.linalg.inv(self.frame.P)

    @property
    def theta0(self):
        return np.array([1.0, 0.0, 0.0])

    def chart(self):
        """
        chart
        =====
        second-kind chart (x, y, z) -> exp(xA) exp(yB) exp(zC)

        Raises
        -----
        UnsupportedCaseError : for su(2), where no such global chart exists
        """
        if self.case_tag == 'Su2':
            raise UnsupportedCaseError('su(2) has no chart of the second kind onto R^3; '
                                       'embeddings need a Lie algebra not isomorphic to su(2)')
        return SecondKindChart(self.A, self.B, self.C, self.theta0, self.frame.constants)

    def to_dict(self):
        def listed(value):
            return None if value is None else np.asarray(value).tolist()
        return {'case_tag': self.case_tag, 'A': listed(self.A), 'B': listed(self.B),
                'C': listed(self.C), 'h_span': listed(self.h_span),
                'frame': self.frame.to_dict(), 'coframe': self.coframe.tolist(),
                'killing': None if self.killing is None else self.killing.K.tolist(),
                'abelian': self.abelian}


@dataclass(frozen=True, eq=False)
class Sl2StandardBasis:
    """Q has columns (t, s1, s2) in the input basis; constants is the table in that basis."""

    Q: np.ndarray
    constants: algebra_core.StructureConstants
    residual: float


###################################
### Case registry #################
###################################

def set_cases(caseset=contact_cases):
    """
    set_cases
    =====
    function to return the case objects defined in a module, ordered by precedence
    when a new case class is added to the module it is picked up here

    Returns
    -----
    list of Case objects
    """
    cases = []
    for name, obj in inspect.getmembers(caseset, inspect.isclass):
        if name != 'Case' and issubclass(obj, contact_cases.Case):
            cases.append(obj())
    return sorted(cases, key=lambda case: case.precedence)


def select_case(cases, frame, tolerances=settings.DEFAULTS):
    """
    select_case
    =====
    Returns
    -----
    case : the first case in the list for which the preconditions are met
    OR
    False : if none of the cases apply
    """
    for case in cases:
        logger.debug('checking case %s', case.name)
        if case.preconditions_met(frame, tolerances):
            return case
    return False


CASES = set_cases()


###################################
### Main functions ################
###################################

def constraint_residuals(frame):
    return abs(frame.a * frame.m1), abs(frame.b * frame.m2)


def classify(frame, tolerances=settings.DEFAULTS, cases=None):
    """
    classify
    =====
    function to run the case analysis on a canonical frame

    Parameters
    -----
    frame : CanonicalFrame
    tolerances : Tolerances
    cases : list of Case objects, optional
        defaults to the cases of contact_cases

    Function calls
    -----
    select_case :
        the first case, in order of precedence, that applies
    Case.effects :
        writes tag, frame and generators to the state
    sl2_generators :
        chart generators for the indefinite semisimple case

    Returns
    -----
    ClassificationResult

    Raises
    -----
    NotContactDatum : when a*m1 or b*m2 is not zero or the frame misses its bracket pattern
    """
    scale = contact_cases.constant_scale(frame)
    residual = frame.pattern_residual()
    if residual > tolerances.zero * max(1.0, frame.constants.scale()):
        raise NotContactDatum('frame is not canonical (off-pattern residual %.3e)' % residual)
    for value in constraint_residuals(frame):
        if value > tolerances.zero * scale ** 2:
            raise NotContactDatum('not a contact Lie algebra datum: a*m1 = %.3e, b*m2 = %.3e'
                                  % constraint_residuals(frame))
    case = select_case(CASES if cases is None else cases, frame, tolerances)
    if not case:
        raise NotContactDatum('no case applies to a=%.3g, b=%.3g, m1=%.3g, m2=%.3g'
                              % (frame.a, frame.b, frame.m1, frame.m2))
    state = {'killing': None}
    case.effects(state, frame, tolerances)
    if state['case_tag'] == 'Sl2Tilde':
        state['A'], state['B'], state['C'], state['h_span'] = sl2_generators(state['frame'], tolerances)
    logger.info('classified as %s', state['case_tag'])
    return ClassificationResult(state['case_tag'], state['A'], state['B'], state['C'],
                                state['h_span'], state['frame'], state['killing'], state['abelian'])


def sl2_generators(frame, tolerances=settings.DEFAULTS):
    """
    sl2_generators
    =====
    chart generators for sl(2), in canonical-frame coordinates

    a > 0 > b : the Reeb field is elliptic; with the standard basis (t, s1, s2)
        A = 2t, B = s2 - t, C = 2s1, matching rotation, unipotent and diagonal factors of SL(2)
    a * b > 0 : the Reeb field is hyperbolic; C is the plane vector whose ad has a real
        eigenvector B, and A is the timelike frame vector

    Returns
    -----
    (A, B, C, h_span) with h_span = (B, C), a Borel subalgebra
    """
    e0, e1, e2 = np.eye(3)
    if frame.a > 0 > frame.b:
        Q = sl2_standardize(frame.constants, tolerances).Q
        t, s1, s2 = Q[:, 0], Q[:, 1], Q[:, 2]
        A, B, C = 2 * t, s2 - t, 2 * s1
    elif frame.a > 0 and frame.b > 0:
        A, B, C = e2, e0 + np.sqrt(frame.a) * e2, e1
    elif frame.a < 0 and frame.b < 0:
        A, B, C = e1, e0 + np.sqrt(-frame.b) * e1, e2
    else:
        raise NotSl2Error('a = %.3g, b = %.3g do not describe sl(2)' % (frame.a, frame.b))
    return A, B, C, np.array([B, C])


def sl2_standardize(C, tolerances=settings.DEFAULTS):
    """
    sl2_standardize
    =====
    function to find a basis (t, s1, s2) of sl(2) with [t, s1] = s2, [t, s2] = -s1, [s1, s2] = -t

    The Killing form is diagonalized; t is its timelike direction normalized to K(t, t) = -2,
    s1 is a Killing-unit vector orthogonal to t and s2 = [t, s1].

    Parameters
    -----
    C : StructureConstants

    Returns
    -----
    Sl2StandardBasis

    Raises
    -----
    NotSl2Error : if the Killing form does not have signature (2, 1)
    """
    killing = algebra_core.killing_form(C)
    K = killing.K
    positive, negative, null = killing.signature(tolerances.zero)
    if (positive, negative, null) != (2, 1, 0):
        raise NotSl2Error('Killing form has signature (%d, %d, %d), sl(2) needs (2, 1, 0)'
                          % (positive, negative, null))
    values, vectors = np.linalg.eigh(K)
    t = vectors[:, 0] * np.sqrt(2.0 / abs(values[0]))
    if t[int(np.argmax(np.abs(t)))] < 0:
        t = -t
    candidates = []
    for e in (np.eye(3)[1], np.eye(3)[2], np.eye(3)[0]):
        p = e - (e @ K @ t) / (t @ K @ t) * t
        candidates.append((p, float(p @ K @ p)))
    largest = max(norm for _, norm in candidates)
    p, norm = next(item for item in candidates if item[1] >= 0.1 * largest)
    s1 = p / np.sqrt(norm / 2.0)
    s2 = C.bracket(t, s1)
    Q = np.column_stack([t, s1, s2])
    standard = algebra_core.change_basis(C, Q)
    residual = float(np.max(np.abs(standard.tensor - SL2_PATTERN)))
    if residual > SL2_PATTERN_TOL:
        raise NotSl2Error('standard sl(2) pattern missed by %.3e' % residual)
    return Sl2StandardBasis(Q, standard, residual)


def su2_normalize(xi):
    """
    su2_normalize
    =====
    function to find an automorphism of su(2) mapping a plane onto span{e1, e2}

    In the basis with [x, y] = -x cross y every rotation is an automorphism; the rotation
    taking the unit normal n of the plane to sign(n0) e0 is returned.

    Parameters
    -----
    xi : array (2, 3)
        two vectors spanning the plane

    Returns
    -----
    array (3, 3) : rotation matrix

    Raises
    -----
    StructureError : if the vectors do not span a plane
    """
    xi = np.asarray(xi, dtype=float)
    normal = np.cross(xi[0], xi[1])
    length = np.linalg.norm(normal)
    if length <= 1e-12 * max(1.0, float(np.max(np.abs(xi)))) ** 2:
        raise StructureError('degenerate plane: the two vectors are dependent')
    normal = normal / length
    target = np.array([1.0 if normal[0] >= 0 else -1.0, 0.0, 0.0])
    axis = np.cross(normal, target)
    angle = float(np.arctan2(np.linalg.norm(axis), normal @ target))
    if np.linalg.norm(axis) == 0:
        return np.eye(3)
    return Rotation.from_rotvec(axis / np.linalg.norm(axis) * angle).as_matrix()


def classify_algebra(C, data, tolerances=settings.DEFAULTS):
    """canonical frame followed by classification"""
    return classify(algebra_core.canonical_frame(C, data, tolerances), tolerances)
