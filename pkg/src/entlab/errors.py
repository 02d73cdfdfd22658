"""Exception types raised by the library."""

from __future__ import annotations


class EntanglementLabError(Exception):
    """Base class for all library errors.

    ``deviation`` carries the measured magnitude of the violated invariant
    when one is available (e.g. how far a matrix is from Hermiticity).
    """

    def __init__(self, message: str, deviation: float | None = None):
        super().__init__(message)
        self.deviation = deviation


class NonHermitianInput(EntanglementLabError):
    """A linear-algebra routine received a matrix that is not Hermitian."""


class NotPositiveSemidefinite(EntanglementLabError):
    """A matrix square root was requested for an indefinite matrix."""


class NotHermitian(EntanglementLabError):
    """Density-matrix validation: input is not Hermitian."""


class TraceNotOne(EntanglementLabError):
    """Density-matrix validation: trace differs from one."""


class NotPSD(EntanglementLabError):
    """Density-matrix validation: input has a negative eigenvalue."""


class ParameterOutOfRange(EntanglementLabError):
    """A state-family parameter lies outside its admissible interval."""


class DomainError(EntanglementLabError):
    """A scalar function argument lies outside its domain."""


class BadIndices(EntanglementLabError):
    """Invalid (i, j) index pair for an elementary rotation."""


class ZeroDenominator(EntanglementLabError):
    """Relative difference undefined because the denominator vanishes."""


class SeparableInput(EntanglementLabError):
    """A pair comparison was requested for a separable state."""
