#title           : algebra_core.py
#description     : 3-dimensional Lie algebras with a contact plane: validation, Reeb field, canonical frame
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : C, data = algebra_core.load_algebra(doc); cf = algebra_core.canonical_frame(C, data)
#notes           : brackets are stored as T[i, j, k] = coefficient of v_k in [v_i, v_j]
#python_version  : >= 3.8
#==============================================================================

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import settings
from .exceptions import (ContactViolation, InconsistentContactData, JacobiError,
                         StructureError)

logger = logging.getLogger(__name__)

BRACKET_PAIRS = ('01', '02', '12')
SINGULAR_DET = 1e-12


###################################
### Domain types ##################
###################################

@dataclass(frozen=True, eq=False)
class StructureConstants:
    """
    StructureConstants
    =====
    Bracket table of a 3-dimensional real Lie algebra in a fixed basis

    Parameters
    -----
    tensor : array (3, 3, 3)
        tensor[i, j, k] is the coefficient of v_k in [v_i, v_j]
    labels : tuple of str
        names of the basis vectors
    """

    tensor: np.ndarray
    labels: Tuple[str, str, str] = ('v0', 'v1', 'v2')

    def __post_init__(self):
        tensor = np.array(self.tensor, dtype=float)
        if tensor.shape != (3, 3, 3):
            raise StructureError('structure constants must have shape (3, 3, 3), got %s' % (tensor.shape,))
        if not np.all(np.isfinite(tensor)):
            raise StructureError('structure constants must be finite')
        labels = tuple(self.labels)
        if len(labels) != 3:
            raise StructureError('exactly three basis labels are needed')
        tensor.setflags(write=False)
        object.__setattr__(self, 'tensor', tensor)
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_brackets(cls, brackets, labels=('v0', 'v1', 'v2')):
        """
        from_brackets
        =====
        builds the full tensor from the three independent brackets, completing it antisymmetrically

        Parameters
        -----
        brackets : dict
            keys '01', '02', '12', values the coordinates of [v_i, v_j]
        """
        missing = [key for key in BRACKET_PAIRS if key not in brackets]
        if missing:
            raise StructureError('missing brackets %s' % ', '.join(missing))
        tensor = np.zeros((3, 3, 3))
        for key in BRACKET_PAIRS:
            i, j = int(key[0]), int(key[1])
            value = np.asarray(brackets[key], dtype=float)
            if value.shape != (3,):
                raise StructureError('bracket %s must have three components' % key)
            tensor[i, j] = value
            tensor[j, i] = -value
        return cls(tensor, labels)

    def bracket(self, x, y):
        return np.einsum('i,j,ijk->k', x, y, self.tensor)

    def ad(self, v):
        """matrix of ad_v: column j holds the coordinates of [v, v_j]"""
        return np.einsum('i,ijk->kj', np.asarray(v, dtype=float), self.tensor)

    def antisymmetry_residual(self):
        return float(np.max(np.abs(self.tensor + self.tensor.transpose(1, 0, 2))))

    def scale(self):
        largest = float(np.max(np.abs(self.tensor)))
        return largest if largest > 0 else 1.0


@dataclass(frozen=True, eq=False)
class ContactData:
    """
    ContactData
    =====
    A plane in the Lie algebra together with a covector that annihilates it

    Parameters
    -----
    xi : array (2, 3)
        two vectors spanning the plane
    alpha : array (3,)
        covector with alpha(xi) = 0
    """

    xi: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=float)
        alpha = np.array(self.alpha, dtype=float)
        if xi.shape != (2, 3) or alpha.shape != (3,):
            raise StructureError('xi must be two 3-vectors and alpha a 3-covector')
        if np.linalg.matrix_rank(xi, tol=SINGULAR_DET * max(1.0, np.max(np.abs(xi)))) < 2:
            raise StructureError('the vectors spanning xi are linearly dependent')
        if not np.any(alpha):
            raise StructureError('alpha must be nonzero')
        leak = np.abs(xi @ alpha) / (np.linalg.norm(xi, axis=1) * np.linalg.norm(alpha))
        if np.max(leak) > 1e-10:
            raise StructureError('alpha does not annihilate xi (residual %.3e)' % np.max(leak))
        xi.setflags(write=False)
        alpha.setflags(write=False)
        object.__setattr__(self, 'xi', xi)
        object.__setattr__(self, 'alpha', alpha)

    @classmethod
    def standard(cls):
        return cls(np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]), np.array([1.0, 0.0, 0.0]))

    def in_basis(self, P):
        """the same plane and form expressed in the basis given by the columns of P"""
        P = np.asarray(P, dtype=float)
        return ContactData(np.linalg.solve(P, self.xi.T).T, self.alpha @ P)


@dataclass(frozen=True, eq=False)
class CanonicalFrame:
    """
    CanonicalFrame
    =====
    Basis (v0, v1, v2) with v1, v2 in the contact plane and
        [v0,v1] = a v2,  [v0,v2] = b v1,  [v1,v2] = m1 v1 + m2 v2 - v0

    Attributes
    -----
    P : array (3, 3)
        columns are v0, v1, v2 in the input basis
    a, b, m1, m2 : float
        the four free constants
    heisenberg_branch : bool
        True when ad(v0) vanishes on the plane and m1 has been eliminated
    constants : StructureConstants
        the bracket table in the new basis
    hollow_kind : str
        which branch produced the plane basis: 'zero', 'real', 'complex' or 'nilpotent'
    """

    P: np.ndarray
    a: float
    b: float
    m1: float
    m2: float
    heisenberg_branch: bool
    constants: StructureConstants
    hollow_kind: str = 'given'

    @classmethod
    def from_constants(cls, C, tolerances=settings.DEFAULTS):
        """
        from_constants
        =====
        reads a bracket table that is already in canonical form; P is the identity

        Raises
        -----
        StructureError : if the table does not follow the canonical pattern
        """
        T = C.tensor
        a, b, m1, m2 = T[0, 1, 2], T[0, 2, 1], T[1, 2, 1], T[1, 2, 2]
        zero = tolerances.zero * C.scale()
        frame = cls(np.eye(3), float(a), float(b), float(m1), float(m2),
                    bool(abs(a) <= zero and abs(b) <= zero and abs(m1) <= zero), C)
        residual = frame.pattern_residual()
        if residual > zero:
            raise StructureError('brackets are not in canonical form (off-pattern residual %.3e)' % residual)
        return frame

    def ideal_tensor(self):
        return canonical_tensor(self.a, self.b, self.m1, self.m2)

    def pattern_residual(self):
        return float(np.max(np.abs(self.constants.tensor - self.ideal_tensor())))

    def reeb_trace(self):
        T = self.constants.tensor
        return float(T[0, 1, 1] + T[0, 2, 2])

    def to_dict(self):
        return {'P': self.P.tolist(), 'a': self.a, 'b': self.b, 'm1': self.m1, 'm2': self.m2,
                'heisenberg_branch': self.heisenberg_branch, 'hollow_kind': self.hollow_kind}


@dataclass(frozen=True, eq=False)
class KillingForm:
    """Killing form K(x, y) = trace(ad_x ad_y) as a symmetric 3x3 matrix."""

    K: np.ndarray

    def signature(self, tolerance=1e-10):
        eigenvalues = np.linalg.eigvalsh(self.K)
        cutoff = tolerance * max(1.0, float(np.max(np.abs(eigenvalues))))
        return (int(np.sum(eigenvalues > cutoff)), int(np.sum(eigenvalues < -cutoff)),
                int(np.sum(np.abs(eigenvalues) <= cutoff)))

    def is_definite(self, tolerance=1e-10):
        positive, negative, _ = self.signature(tolerance)
        return positive == 3 or negative == 3

    def invariance_residual(self, C):
        residual = 0.0
        for m in range(3):
            ad = C.ad(np.eye(3)[m])
            residual = max(residual, float(np.max(np.abs(ad.T @ self.K + self.K @ ad))))
        return residual


@dataclass(frozen=True)
class JacobiReport:
    max_residual: float
    passed: bool
    tolerance: float


@dataclass(frozen=True)
class ContactReport:
    is_contact: bool
    value: float


###################################
### Construction helpers ##########
###################################

def canonical_tensor(a, b, m1, m2):
    """bracket tensor of the canonical pattern"""
    return StructureConstants.from_brackets({
        '01': [0.0, 0.0, a],
        '02': [0.0, b, 0.0],
        '12': [-1.0, m1, m2]}).tensor


def load_algebra(doc):
    """
    load_algebra
    =====
    function to parse an algebra document
        {"labels": [...], "brackets": {"01": [...], "02": [...], "12": [...]}, "xi": [[...], [...]], "alpha": [...]}

    Returns
    -----
    (StructureConstants, ContactData)
    """
    try:
        labels = doc.get('labels', ['v0', 'v1', 'v2'])
        C = StructureConstants.from_brackets(doc['brackets'], labels)
        data = ContactData(doc['xi'], doc['alpha'])
    except (KeyError, TypeError, AttributeError) as err:
        raise StructureError('malformed algebra document: %s' % err) from err
    return C, data


###################################
### Operations ####################
###################################

def jacobi_residual(C):
    """residual tensor J[i, j, l, m] of [[v_i,v_j],v_l] + [[v_j,v_l],v_i] + [[v_l,v_i],v_j]"""
    T = C.tensor
    return (np.einsum('ijk,klm->ijlm', T, T)
            + np.einsum('jlk,kim->ijlm', T, T)
            + np.einsum('lik,kjm->ijlm', T, T))


def validate_jacobi(C, tolerance=settings.DEFAULTS.jacobi):
    """
    validate_jacobi
    =====
    checks the Jacobi identity on all index triples

    Returns
    -----
    JacobiReport : the largest residual and whether it is within tolerance

    Raises
    -----
    StructureError : if the tensor is not antisymmetric in its first two indices
    """
    asym = C.antisymmetry_residual()
    if asym > SINGULAR_DET * C.scale():
        raise StructureError('bracket table is not antisymmetric (residual %.3e)' % asym)
    residual = float(np.max(np.abs(jacobi_residual(C))))
    # quadratic in the constants, so the threshold scales with their square
    return JacobiReport(residual, residual <= tolerance * max(1.0, C.scale()) ** 2, tolerance)


def is_contact(C, data, tolerances=settings.DEFAULTS):
    """
    is_contact
    =====
    Boolean function to check the contact condition on a plane; for left-invariant forms
    alpha ^ d alpha != 0 reduces to alpha([u1, u2]) != 0 with u1, u2 spanning the plane

    Returns
    -----
    ContactReport : the verdict and the scalar alpha([u1, u2])
    """
    report = validate_jacobi(C, tolerances.jacobi)
    if not report.passed:
        raise JacobiError('Jacobi residual %.3e exceeds %.1e' % (report.max_residual, report.tolerance))
    value = float(data.alpha @ C.bracket(data.xi[0], data.xi[1]))
    return ContactReport(abs(value) > tolerances.contact, value)


def reeb_vector(C, data, tolerances=settings.DEFAULTS):
    """
    reeb_vector
    =====
    solves alpha(R) = 1, alpha([R, u_i]) = 0 for the vectors u_i spanning the plane
    (d alpha(X, Y) = -alpha([X, Y]) for left-invariant fields)
    """
    rows = [data.alpha]
    for u in data.xi:
        rows.append(np.einsum('ijk,j,k->i', C.tensor, u, data.alpha))
    system = np.array(rows)
    if abs(np.linalg.det(system)) <= SINGULAR_DET * max(1.0, np.max(np.abs(system))) ** 3:
        raise ContactViolation('Reeb system is singular, the plane is not a contact plane')
    return np.linalg.solve(system, np.array([1.0, 0.0, 0.0]))


def killing_form(C):
    return KillingForm(np.einsum('ilk,jkl->ij', C.tensor, C.tensor))


def change_basis(C, P):
    """
    change_basis
    =====
    bracket table in the basis whose vectors are the columns of P

    Raises
    -----
    StructureError : if P is singular
    """
    P = np.asarray(P, dtype=float)
    if P.shape != (3, 3) or abs(np.linalg.det(P)) <= SINGULAR_DET:
        raise StructureError('change of basis must be an invertible 3x3 matrix')
    Pinv = np.linalg.inv(P)
    tensor = np.einsum('ai,bj,abc,kc->ijk', P, P, C.tensor, Pinv)
    return StructureConstants(0.5 * (tensor - tensor.transpose(1, 0, 2)), C.labels)


def hollow_basis(M, tolerances=settings.DEFAULTS):
    """
    hollow_basis
    =====
    function to find a basis in which a traceless 2x2 matrix has zero diagonal

    Parameters
    -----
    M : array (2, 2)
        traceless, nonzero

    Returns
    -----
    S : array (2, 2)
        columns are the new basis vectors
    N : array (2, 2)
        S^-1 M S
    kind : str
        'real' (sum and difference of eigenvectors), 'complex' (real and imaginary part
        of an eigenvector) or 'nilpotent' (image vector, then a preimage)
    """
    M = np.asarray(M, dtype=float)
    disc = float(M[0, 0] ** 2 + M[0, 1] * M[1, 0])
    band = tolerances.discriminant * max(1.0, float(np.max(np.abs(M))) ** 2)
    if disc > band:
        kind = 'real'
        values, vectors = np.linalg.eig(M)
        order = np.argsort(values.real)[::-1]
        plus, minus = vectors[:, order[0]].real, vectors[:, order[1]].real
        S = np.column_stack([plus + minus, plus - minus])
    elif disc < -band:
        kind = 'complex'
        values, vectors = np.linalg.eig(M)
        vector = vectors[:, int(np.argmax(values.imag))]
        # fix the phase so that the first component is real and nonnegative
        pivot = vector[0] if abs(vector[0]) > 0 else vector[1]
        vector = vector * np.conj(pivot) / abs(pivot)
        S = np.column_stack([vector.real, vector.imag])
    else:
        kind = 'nilpotent'
        if abs(disc) > 0:
            logger.warning('discriminant %.3e inside the zero band, treated as nilpotent', disc)
        column = int(np.argmax(np.linalg.norm(M, axis=0)))
        preimage = np.eye(2)[column]
        # ordered (image, preimage), so N = [[0, 1], [0, 0]] and the frame has a = 0
        S = np.column_stack([M @ preimage, preimage])
    N = np.linalg.solve(S, M @ S)
    logger.debug('hollowing branch %s, diagonal %s', kind, np.diag(N))
    return S, N, kind


def _heisenberg_substitution(a0, a1, a2, tolerance):
    """
    change of basis, in (w0, w1, w2) coordinates, for [w0, xi] = 0 and
    [w1, w2] = a1 w1 + a2 w2 + a0 w0; the result has [v1, v2] = m2 v2 - v0
    """
    if abs(a0) <= tolerance:
        raise ContactViolation('[w1, w2] lies in the plane, the plane is not a contact plane')
    v0 = np.array([-a0, 0.0, 0.0])
    if abs(a1) <= tolerance and abs(a2) <= tolerance:
        return np.column_stack([v0, [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    if abs(a2) >= abs(a1):
        v1 = np.array([0.0, 1.0 / a2, 0.0])
    else:
        v1 = np.array([0.0, 0.0, -1.0 / a1])
    v2 = np.array([0.0, a1, a2])
    return np.column_stack([v0, v1, v2])


def _frame_from_basis(C, P, heisenberg_branch, kind, tolerances):
    Cn = change_basis(C, P)
    T = Cn.tensor
    a, b, m1, m2 = float(T[0, 1, 2]), float(T[0, 2, 1]), float(T[1, 2, 1]), float(T[1, 2, 2])
    if heisenberg_branch:
        a = b = m1 = 0.0
    frame = CanonicalFrame(P, a, b, m1, m2, heisenberg_branch, Cn, kind)
    residual = frame.pattern_residual()
    if residual > tolerances.zero * Cn.scale():
        raise InconsistentContactData('canonical frame misses the bracket pattern by %.3e' % residual)
    return frame


def canonical_frame(C, data, tolerances=settings.DEFAULTS):
    """
    canonical_frame
    =====
    function to build the basis (v0, v1, v2) with v1, v2 in the plane and brackets
        [v0,v1] = a v2,  [v0,v2] = b v1,  [v1,v2] = m1 v1 + m2 v2 - v0

    Parameters
    -----
    C : StructureConstants
    data : ContactData

    Function calls
    -----
    reeb_vector :
        w0, the Reeb vector of alpha
    hollow_basis :
        the plane basis in which ad(w0) has zero diagonal
    _heisenberg_substitution :
        when ad(w0) vanishes on the plane, the elimination of the v1-component of [v1, v2]

    Returns
    -----
    CanonicalFrame

    Raises
    -----
    ContactViolation : the plane is not a contact plane
    InconsistentContactData : ad(w0) on the plane is not traceless
    """
    report = is_contact(C, data, tolerances)
    if not report.is_contact:
        raise ContactViolation('alpha([u1, u2]) = %.3e, the plane is not a contact plane' % report.value)
    w0 = reeb_vector(C, data, tolerances)
    W = np.column_stack([w0, data.xi[0], data.xi[1]])
    adapted = change_basis(C, W)
    T = adapted.tensor
    scale = adapted.scale()
    # column j: coordinates of [w0, w_j] in (w1, w2)
    M = np.array([[T[0, 1, 1], T[0, 2, 1]],
                  [T[0, 1, 2], T[0, 2, 2]]])
    leak = max(abs(T[0, 1, 0]), abs(T[0, 2, 0]))
    if leak > tolerances.zero * scale:
        raise InconsistentContactData('[R, xi] leaves the plane (residual %.3e)' % leak)
    trace = float(np.trace(M))
    if abs(trace) > tolerances.trace * scale:
        raise InconsistentContactData('ad(R) on the plane has trace %.3e' % trace)

    if np.max(np.abs(M)) <= tolerances.zero * scale:
        logger.debug('ad(R) vanishes on the plane, taking the Heisenberg branch')
        sub = _heisenberg_substitution(T[1, 2, 0], T[1, 2, 1], T[1, 2, 2], tolerances.zero * scale)
        return _frame_from_basis(C, W @ sub, True, 'zero', tolerances)

    S, N, kind = hollow_basis(M, tolerances)
    plane = np.column_stack([data.xi[0], data.xi[1]]) @ S
    v1, v2 = plane[:, 0], plane[:, 1]
    k = float(data.alpha @ C.bracket(v1, v2))
    P = np.column_stack([-k * w0, v1, v2])
    return _frame_from_basis(C, P, False, kind, tolerances)


def reduce_to_heisenberg(frame, tolerances=settings.DEFAULTS):
    """
    reduce_to_heisenberg
    =====
    re-runs the elimination of the v1-component of [v1, v2] on a canonical frame with a = b = 0

    Returns
    -----
    CanonicalFrame : with heisenberg_branch set and P composed with the input's P
    """
    T = frame.constants.tensor
    zero = tolerances.zero * frame.constants.scale()
    if abs(frame.a) > zero or abs(frame.b) > zero:
        raise InconsistentContactData('the Heisenberg reduction needs a = b = 0')
    sub = _heisenberg_substitution(T[1, 2, 0], T[1, 2, 1], T[1, 2, 2], zero)
    reduced = _frame_from_basis(frame.constants, sub, True, 'zero', tolerances)
    return CanonicalFrame(frame.P @ sub, reduced.a, reduced.b, reduced.m1, reduced.m2,
                          True, reduced.constants, reduced.hollow_kind)


def random_basis_change(rng):
    """well-conditioned random basis: orthogonal * diag(d) * orthogonal with d in [0.5, 2]"""
    Q1, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    Q2, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    return Q1 @ np.diag(rng.uniform(0.5, 2.0, size=3)) @ Q2


def transform(C, data, P):
    """the same algebra and contact plane written in the basis given by the columns of P"""
    return change_basis(C, P), data.in_basis(P)
