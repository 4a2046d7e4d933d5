"""Exception hierarchy shared by every module and mapped to CLI exit codes."""

from __future__ import annotations


class PosetCodesError(Exception):
    """Base class for all library errors."""


class ValidationError(PosetCodesError, ValueError):
    """Malformed input: bad index, incomplete table, cyclic relation, ..."""


class DomainError(PosetCodesError, ValueError):
    """The operation is undefined for otherwise well-formed input."""


class BudgetExceeded(PosetCodesError, RuntimeError):
    """An exhaustive computation would exceed its configured limit."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds budget {limit}")


class ContractError(PosetCodesError, AssertionError):
    """A computed object failed a post-condition it is supposed to satisfy."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness: {witness})")
