"""Size guards for the exponential code paths.

Two independent limits exist. ``max_size`` bounds the number of lattice
elements fed to brute-force oracles (which enumerate ``2**n`` subsets) and to
the generated topology of the free spatial frame. ``max_elements`` bounds the
size of lattices that constructors are willing to materialise (products,
Boolean lattices, gallery models).
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

from .errors import SizeGuard

DEFAULT_MAX_SIZE = 20
DEFAULT_MAX_ELEMENTS = 4096

_max_size: ContextVar[int] = ContextVar("max_size", default=DEFAULT_MAX_SIZE)
_max_elements: ContextVar[int] = ContextVar("max_elements", default=DEFAULT_MAX_ELEMENTS)


def max_size() -> int:
    return _max_size.get()


def max_elements() -> int:
    return _max_elements.get()


@contextmanager
def size_limit(n: int | None = None, *, elements: int | None = None):
    """Temporarily override the guards, e.g. ``with size_limit(24): ...``."""
    tokens = []
    if n is not None:
        tokens.append((_max_size, _max_size.set(n)))
    if elements is not None:
        tokens.append((_max_elements, _max_elements.set(elements)))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)


def guard_oracle(what: str, n: int) -> None:
    if n > max_size():
        raise SizeGuard(what, n, max_size())


def guard_elements(what: str, n: int) -> None:
    if n > max_elements():
        raise SizeGuard(what, n, max_elements())
