"""Node budgets and size limits shared by all search routines."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_NODE_BUDGET = 10_000_000
BUDGET_ENV_VAR = "SECNUM_BUDGET"


class BudgetExhausted(RuntimeError):
    """A search ran out of nodes; the result is inconclusive, never 'none exists'."""


class LimitExceeded(RuntimeError):
    """An instance is larger than the configured enumeration or product cap."""


def default_node_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value


class Budget:
    """Mutable node counter; charge() raises BudgetExhausted when spent."""

    __slots__ = ("limit", "remaining")

    def __init__(self, nodes: int | None = None):
        if nodes is None:
            nodes = default_node_budget()
        if nodes <= 0:
            raise ValueError("budget must be positive")
        self.limit = nodes
        self.remaining = nodes

    def charge(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise BudgetExhausted(f"node budget of {self.limit} exhausted")

    @staticmethod
    def ensure(budget: "Budget | int | None") -> "Budget":
        if budget is None:
            return Budget()
        if isinstance(budget, int):
            return Budget(budget)
        return budget


@dataclass(frozen=True)
class Limits:
    """Caps that turn combinatorial blow-ups into loud errors."""

    opens_max_points: int = 10
    product_max_points: int = 4096

    def check_opens(self, n: int) -> None:
        if n > self.opens_max_points:
            raise LimitExceeded(
                f"open-set enumeration needs 2^{n} subsets; cap is "
                f"{self.opens_max_points} points (use iter_open_masks for lazy iteration)"
            )

    def check_product(self, size: int) -> None:
        if size > self.product_max_points:
            raise LimitExceeded(
                f"construction would have {size} points; cap is {self.product_max_points}"
            )


DEFAULT_LIMITS = Limits()


def ensure_limits(limits: Limits | None) -> Limits:
    return DEFAULT_LIMITS if limits is None else limits
