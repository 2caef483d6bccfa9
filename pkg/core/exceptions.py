# File: core/exceptions.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
"""
Error hierarchy shared by all sgcnn apps.

Management commands map these onto CommandError return codes:
budget/usage/input problems exit with 2, bound violations with 1.
"""

from __future__ import annotations


class SgcnnError(Exception):
    """Base class for every sgcnn failure."""

    returncode = 2


class BudgetExceeded(SgcnnError):
    """A requested size exceeds one of the configured desk budgets."""

    def __init__(self, dimension: str, value, limit):
        self.dimension = dimension
        self.value = value
        self.limit = limit
        super().__init__(f"{dimension}={value} exceeds desk budget {limit}")


class DimensionMismatch(SgcnnError):
    """Vector or point length does not match what the network/interpolant expects."""

    def __init__(self, expected: int, got: int, what: str = "input"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} dimension mismatch: expected {expected}, got {got}")


class MalformedNetwork(SgcnnError):
    """Serialized network failed validation."""


class FactorizationError(SgcnnError):
    """Filter symbol could not be factored within tolerance."""

    def __init__(self, degree: int, residual: float):
        self.degree = degree
        self.residual = residual
        super().__init__(
            f"filter factorization of degree {degree} failed: "
            f"relative reconstruction error {residual:.3e}"
        )


class QuadratureError(SgcnnError):
    """Adaptive quadrature did not settle between two refinements."""

    def __init__(self, estimate: float, previous: float):
        self.estimate = estimate
        self.previous = previous
        super().__init__(
            f"quadrature did not converge: {estimate!r} vs {previous!r}"
        )


class LayoutError(SgcnnError):
    """Gadget lane bookkeeping is inconsistent."""


class UnknownFunction(SgcnnError):
    """Test function name is not registered."""

    def __init__(self, name: str, known=()):
        self.name = name
        listed = ", ".join(sorted(known)) or "none"
        super().__init__(f"unknown test function '{name}' (registered: {listed})")


class BoundViolation(SgcnnError):
    """A certified inequality failed on measured data."""

    returncode = 1
