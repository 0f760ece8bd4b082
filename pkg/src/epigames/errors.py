"""Shared exception types for the toolkit."""


class DomainError(ValueError):
    """A computation was requested outside its mathematical domain."""


class ScenarioError(ValueError):
    """A scenario file is missing, malformed, or violates an invariant."""


class VerificationError(RuntimeError):
    """An analytic result disagrees with its brute-force cross-check."""
