"""Deliberate sign faults for mutation testing of the verification suites.

``with mutate("exp-sign"):`` flips the sign convention of E[-zX] inside the
closed-form D_k; ``with mutate("nabla-sign"):`` drops the (-1)^n from the
nabla eigenvalue.  Never active outside a ``with`` block.
"""

from __future__ import annotations

import contextlib
import threading

KNOWN = ("exp-sign", "nabla-sign")

_state = threading.local()


def _active_set() -> set:
    s = getattr(_state, "active", None)
    if s is None:
        s = _state.active = set()
    return s


def active(name: str) -> bool:
    return name in _active_set()


def signature() -> tuple:
    """Hashable summary, used to key caches that depend on mutations."""
    return tuple(sorted(_active_set()))


@contextlib.contextmanager
def mutate(name: str):
    if name not in KNOWN:
        raise ValueError(f"unknown mutation {name!r}")
    s = _active_set()
    s.add(name)
    try:
        yield
    finally:
        s.discard(name)
