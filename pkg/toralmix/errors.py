"""
Error Hierarchy for Toral Mix

Every exception raised deliberately by the package derives from ``ToralMixError``.
Input that breaks a documented precondition (a singular matrix, mismatched
dimensions, a non-commuting pair handed to the commuting criterion) raises
``ContractViolation``. A runtime re-check of a mathematical claim that fails
raises ``VerificationError`` and should be treated as a bug report.

The command layer maps ``ContractViolation`` to exit status 3; malformed
payloads are reported separately through ``toralmix.forms.job.PayloadError``.
"""


class ToralMixError(Exception):
    """Base class for all package errors."""


class ContractViolation(ToralMixError, ValueError):
    """An input violates the precondition of the operation it was passed to."""


class VerificationError(ToralMixError, AssertionError):
    """An exact re-verification of a computed claim failed."""
