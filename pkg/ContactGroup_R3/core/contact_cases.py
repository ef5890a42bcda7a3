#title           : contact_cases.py
#description     : Classes to model the cases of a canonical frame, with their own preconditions and effects on the classification state
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : cases = classify.set_cases(contact_cases); case = classify.select_case(cases, frame, tolerances)
#notes           : cases are tried in order of precedence, the first whose preconditions hold is applied
#python_version  : >= 3.8
#==============================================================================

import logging

import numpy as np

from . import algebra_core
from . import settings

logger = logging.getLogger(__name__)

E0, E1, E2 = np.eye(3)


def constant_scale(frame):
    return max(1.0, abs(frame.a), abs(frame.b), abs(frame.m1), abs(frame.m2))


def is_zero(value, frame, tolerances):
    return abs(value) <= tolerances.zero * constant_scale(frame)


###################################
### cases #########################
###################################


class Case:
    """
    Case
    =====
    Abstract case class to model the preconditions and effects of one branch of the case analysis

    Parameters
    -----
    name : str
        the case tag written to the classification result
    precedence : int
        position in which the case is tried; lower values are tried first
    abelian : bool
        whether the subalgebra spanned by the first two chart generators is abelian

    Attributes
    -----
    self.name : str
        the case tag
    self.precedence : int
        order of evaluation, resolving overlapping zero patterns
    self.abelian : bool
        True for the solvable cases, whose subalgebra is abelian
    """

    def __init__(self, name, precedence, abelian):
        self.name = name
        self.precedence = precedence
        self.abelian = abelian

    def preconditions_met(self, frame, tolerances=settings.DEFAULTS):
        """
        preconditions_met
        =====
        Boolean function to return if the constants of the canonical frame fall in this case

        Parameters
        -----
        frame : CanonicalFrame
            the canonical frame under classification
        tolerances : Tolerances
            zero-tests are relative to max(1, |a|, |b|, |m1|, |m2|)

        Returns
        -----
        Boolean
        """
        return False

    def effects(self, state, frame, tolerances=settings.DEFAULTS):
        """
        effects
        =====
        Function to write the most basic case effects to the classification state

        Parameters
        -----
        state : dict
            the classification state, filled with the case tag, the frame and the chart generators
        frame : CanonicalFrame
            the canonical frame under classification

        Transforms
        -----
        state['case_tag'] : the name of the case
        state['frame'] : the canonical frame in which the generators are expressed
        state['abelian'] : whether the chart generators A and B commute
        """
        state['case_tag'] = self.name
        state['frame'] = frame
        state['abelian'] = self.abelian
        logger.debug('case %s selected (a=%.3g, b=%.3g, m1=%.3g, m2=%.3g)',
                     self.name, frame.a, frame.b, frame.m1, frame.m2)


class HeisenbergCase(Case):
    """
    HeisenbergCase
    =====
    a = b = 0: the Reeb field is central on the plane; if m1 is nonzero the frame is first
    rewritten so that [v1, v2] = m2 v2 - v0, then A = v0, B = v2 and C = v1
    """

    def __init__(self):
        Case.__init__(self, 'Case3Heis', 1, True)

    def preconditions_met(self, frame, tolerances=settings.DEFAULTS):
        return is_zero(frame.a, frame, tolerances) and is_zero(frame.b, frame, tolerances)

    def effects(self, state, frame, tolerances=settings.DEFAULTS):
        if not is_zero(frame.m1, frame, tolerances):
            logger.debug('m1 = %.3g, eliminating it before choosing generators', frame.m1)
            frame = algebra_core.reduce_to_heisenberg(frame, tolerances)
        Case.effects(self, state, frame, tolerances)
        state['A'], state['B'], state['C'] = E0.copy(), E2.copy(), E1.copy()
        state['h_span'] = np.array([E0, E2])


class Case1(Case):
    """a = 0 and m2 = 0: the subalgebra is span{v1, v0} and v2 is geodesic"""

    def __init__(self):
        Case.__init__(self, 'Case1', 2, True)

    def preconditions_met(self, frame, tolerances=settings.DEFAULTS):
        return is_zero(frame.a, frame, tolerances) and is_zero(frame.m2, frame, tolerances)

    def effects(self, state, frame, tolerances=settings.DEFAULTS):
        Case.effects(self, state, frame, tolerances)
        state['A'], state['B'], state['C'] = E0.copy(), E1.copy(), E2.copy()
        state['h_span'] = np.array([E1, E0])


class Case2(Case):
    """b = 0 and m1 = 0: the subalgebra is span{v2, v0} and v1 is geodesic"""

    def __init__(self):
        Case.__init__(self, 'Case2', 3, True)

    def preconditions_met(self, frame, tolerances=settings.DEFAULTS):
        return is_zero(frame.b, frame, tolerances) and is_zero(frame.m1, frame, tolerances)

    def effects(self, state, frame, tolerances=settings.DEFAULTS):
        Case.effects(self, state, frame, tolerances)
        state['A'], state['B'], state['C'] = E0.copy(), E2.copy(), E1.copy()
        state['h_span'] = np.array([E2, E0])


class SemisimpleCase(Case):
    """
    SemisimpleCase
    =====
    m1 = m2 = 0 with a and b nonzero; the Killing form diag(2ab, 2a, -2b) decides between
    su(2) (definite) and sl(2) (indefinite). Generators are left to the classifier, which
    needs the sl(2) standard basis for them.
    """

    def __init__(self):
        Case.__init__(self, 'Semisimple', 4, False)

    def preconditions_met(self, frame, tolerances=settings.DEFAULTS):
        return (is_zero(frame.m1, frame, tolerances) and is_zero(frame.m2, frame, tolerances)
                and not is_zero(frame.a, frame, tolerances) and not is_zero(frame.b, frame, tolerances))

    def effects(self, state, frame, tolerances=settings.DEFAULTS):
        Case.effects(self, state, frame, tolerances)
        killing = algebra_core.killing_form(frame.constants)
        state['killing'] = killing
        state['case_tag'] = 'Su2' if killing.is_definite(tolerances.zero) else 'Sl2Tilde'
        state['A'] = state['B'] = state['C'] = state['h_span'] = None
