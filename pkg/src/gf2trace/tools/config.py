"""
config.py — Runtime knobs resolved from flags and the environment.

Every knob follows the same rule: an explicit value (usually a CLI flag)
wins, then the environment variable, then the built-in default.

  GF2TRACE_THREADS     worker processes for scans      (default: CPU count)
  GF2TRACE_FIELD_MAX   largest degree for field scans  (default: 24)
  GF2TRACE_ENUM_MAX    enumeration ceiling             (default: 26)
  GF2TRACE_SEED        seed for randomised checks      (default: 20240601)

Degrees 27–32 are only enumerated with the long-run flag; 32 is the hard
ceiling of the uint64 batch kernels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .report import FORMATS

_DEFAULT_FIELD_MAX = 24
_DEFAULT_ENUM_MAX = 26
_DEFAULT_SEED = 20240601

KERNEL_MAX_DEGREE = 32

METHODS = ("enumerate", "field", "analytic", "all")


class BudgetExceededError(RuntimeError):
    """A requested scan is larger than the configured budget."""


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from exc


def get_parallelism(explicit: int | None = None) -> int:
    """Return the worker count. Flag wins over GF2TRACE_THREADS over the CPU count."""
    value = explicit if explicit is not None else _env_int("GF2TRACE_THREADS")
    if value is None:
        value = os.cpu_count() or 1
    if value < 1:
        raise ValueError(f"parallelism must be at least 1, got {value}")
    return value


def get_field_max(explicit: int | None = None) -> int:
    """Return the largest degree n_counts may enumerate (2^n field elements)."""
    value = explicit if explicit is not None else _env_int("GF2TRACE_FIELD_MAX")
    if value is None:
        value = _DEFAULT_FIELD_MAX
    return min(value, KERNEL_MAX_DEGREE)


def get_enum_max(long_run: bool = False, explicit: int | None = None) -> int:
    """Return the largest degree classify_all may scan."""
    if long_run:
        return KERNEL_MAX_DEGREE
    value = explicit if explicit is not None else _env_int("GF2TRACE_ENUM_MAX")
    if value is None:
        value = _DEFAULT_ENUM_MAX
    return min(value, KERNEL_MAX_DEGREE)


def get_seed(explicit: int | None = None) -> int:
    """Return the seed for randomised checks; never time based."""
    value = explicit if explicit is not None else _env_int("GF2TRACE_SEED")
    return _DEFAULT_SEED if value is None else value


def assert_field_budget(n: int, field_max: int | None = None) -> None:
    """Raise BudgetExceededError with instructions if F_{2^n} is too large to scan."""
    limit = get_field_max(field_max)
    if n > limit:
        raise BudgetExceededError(
            f"degree {n} exceeds the field enumeration budget ({limit}).\n"
            "\n"
            f"  Scanning F_2^{n} touches {2**n - 1:,} elements.\n"
            f"  Raise the budget with --field-max {n} or GF2TRACE_FIELD_MAX={n}"
            f" (hard limit {KERNEL_MAX_DEGREE}).\n"
        )


def assert_enum_budget(n: int, long_run: bool = False, enum_max: int | None = None) -> None:
    """Raise BudgetExceededError with instructions if degree n is past the enumeration ceiling."""
    limit = get_enum_max(long_run, enum_max)
    if n > limit:
        hint = (
            "  Degrees 27-32 need --long-run (n=32 may take hours).\n"
            if n <= KERNEL_MAX_DEGREE
            else f"  The batch kernels stop at degree {KERNEL_MAX_DEGREE}.\n"
        )
        raise BudgetExceededError(
            f"degree {n} exceeds the enumeration ceiling ({limit}).\n\n{hint}"
        )


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings for one CLI invocation."""

    command: str
    n_min: int | None = None
    n_max: int | None = None
    method: str = "enumerate"
    output_format: str = "text"
    parallelism: int = 1
    long_run: bool = False
    field_max: int = _DEFAULT_FIELD_MAX
    seed: int = _DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if self.output_format not in FORMATS:
            raise ValueError(
                f"unknown format {self.output_format!r}; choose from {', '.join(FORMATS)}"
            )
        if self.n_min is not None and self.n_max is not None and self.n_min > self.n_max:
            raise ValueError(f"empty degree range {self.n_min}..{self.n_max}")
        if self.parallelism < 1:
            raise ValueError(f"parallelism must be at least 1, got {self.parallelism}")

    def degrees(self) -> range:
        if self.n_min is None or self.n_max is None:
            return range(0)
        return range(self.n_min, self.n_max + 1)
