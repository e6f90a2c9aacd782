"""Resource budgets shared by the orbit, character and branching code.

Defaults can be overridden with environment variables ``GOODFILT_ORBIT_BUDGET``,
``GOODFILT_DOMINANT_BUDGET``, ``GOODFILT_WEIGHT_BUDGET`` and
``GOODFILT_SCAN_BUDGET``, or temporarily with :func:`override`.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace

ENV_PREFIX = "GOODFILT_"


class BudgetError(RuntimeError):
    """A computation would exceed its configured budget."""


@dataclass(frozen=True)
class Budgets:
    orbit: int = 10**7          # size of a single W-orbit
    dominant: int = 10**6       # dominant weights under a highest weight
    weights: int = 5 * 10**6    # distinct weights iterated by Klimyk / branching
    scan: int = 60_000          # W-orbit size above which conjugacy primes use alcove reduction


def _from_env() -> Budgets:
    b = Budgets()
    kw = {}
    for name in ("orbit", "dominant", "weights", "scan"):
        val = os.environ.get(f"{ENV_PREFIX}{name.upper()}_BUDGET")
        if val:
            kw[name] = int(val)
    return replace(b, **kw)


_current = _from_env()


def budgets() -> Budgets:
    return _current


@contextmanager
def override(**kw):
    global _current
    old = _current
    _current = replace(old, **kw)
    try:
        yield _current
    finally:
        _current = old
