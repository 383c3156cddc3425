"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CslcolourError(Exception):
    """Base class for all package errors."""


class RankDeficient(CslcolourError):
    """An integer matrix expected to have full row rank does not."""


class Singular(CslcolourError):
    """A rational matrix expected to be invertible has determinant 0."""


class DimensionMismatch(CslcolourError):
    """Operands have incompatible dimensions."""


class NotASublattice(CslcolourError):
    """The first lattice is not contained in the second."""


class NotInParent(CslcolourError):
    """A point handed to a colouring does not belong to its parent lattice."""


class NotCoincidence(CslcolourError):
    """The map does not intersect the lattice with finite index both ways."""


class NotColourCoincidence(CslcolourError):
    """The map does not fix the zero colour, so no colour permutation exists."""


class ZeroElement(CslcolourError):
    """A ring element required to be nonzero is zero."""


class UnsupportedDimension(CslcolourError):
    """The requested operation is not available in this dimension."""


class ConfigError(CslcolourError):
    """A job configuration failed validation."""


class InternalInvariantViolation(CslcolourError):
    """A self-check that must always hold failed; indicates a bug."""
