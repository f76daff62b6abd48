"""Exception types shared across the package."""

from __future__ import annotations


class FibTowerError(Exception):
    """Base class for all fibtower errors."""


class BudgetExceeded(FibTowerError):
    """An exact computation was refused because an index exceeds its budget."""


class FactorBudgetExceeded(FibTowerError):
    """A composite cofactor resisted the budgeted factoring effort."""


class CapExceeded(FibTowerError):
    """Brute-force period search gave up before the cap."""


class PreconditionViolated(FibTowerError, ValueError):
    """A checker was called on arguments outside its stated hypothesis."""


class NoExponentError(FibTowerError):
    """No power of s makes j divide a*s^c (the minimal exponent does not exist)."""


class NoWitnessError(FibTowerError):
    """No prime witness exists; this would contradict a proved statement."""
