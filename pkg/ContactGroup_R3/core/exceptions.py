#title           : exceptions.py
#description     : Error hierarchy of the contact group toolkit
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : raise exceptions.ContactViolation('alpha([u1,u2]) = 0')
#notes           : verdicts (pass/fail) are returned as reports, errors are raised when a precondition fails
#python_version  : >= 3.8
#==============================================================================


class ContactGroupError(Exception):
    """Base class of every error raised by ContactGroup_R3."""


class StructureError(ContactGroupError):
    """Malformed input: wrong shapes, non-antisymmetric brackets, singular bases, dependent plane vectors."""


class JacobiError(ContactGroupError):
    """The bracket violates the Jacobi identity."""


class ContactViolation(ContactGroupError):
    """The plane is not a contact plane (alpha([u1,u2]) vanishes)."""


class InconsistentContactData(ContactGroupError):
    """Internal consistency check failed, e.g. ad(Reeb) on the plane is not traceless."""


class NotContactDatum(ContactGroupError):
    """Canonical constants violate the constraints a*m1 = 0, b*m2 = 0."""


class NotSl2Error(ContactGroupError):
    """The Killing form does not have signature (2,1)."""


class UnsupportedCaseError(ContactGroupError):
    """The requested construction needs the hypothesis g not isomorphic to su(2)."""


class DegenerateChartError(ContactGroupError):
    """Chart generators are dependent or the last one leaves the contact plane."""


class StepResolutionError(ContactGroupError):
    """Adaptive refinement could not resolve a continuous branch."""


class StepSizeError(ContactGroupError):
    """Integrator step violates dt <= 1e-3 * T."""


class MalformedElementError(ContactGroupError):
    """A matrix does not belong to the model group."""


class UnknownPresetError(ContactGroupError):
    """No preset of that name in the catalog."""


class GridError(ContactGroupError):
    """Sampling grid is empty, unordered or has a degenerate box."""
