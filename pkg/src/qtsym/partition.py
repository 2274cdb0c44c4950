"""Integer partitions and the cell statistics used by the eigenoperators.

Partitions are plain tuples of weakly decreasing positive integers; ``()``
is the empty partition.  A cell ``(i, j)`` has column index ``i`` (the
exponent of q) and row index ``j`` (the exponent of t), both 0-based.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod

from .coeffring import ONE, ZERO, QtRational, monomial


def make(parts) -> tuple:
    """Validate and normalise ``parts`` into a partition tuple."""
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"parts must be positive: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return parts


def parse(text: str) -> tuple:
    """Parse ``"2,1"`` (an empty string is the empty partition)."""
    text = text.strip()
    if not text:
        return ()
    try:
        return make(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad partition {text!r}: {exc}") from None


def size(mu) -> int:
    return sum(mu)


@lru_cache(maxsize=None)
def conjugate(mu: tuple) -> tuple:
    if not mu:
        return ()
    return tuple(sum(1 for p in mu if p > i) for i in range(mu[0]))


def cells(mu) -> list:
    """Cells of ``mu`` in row-major order: (0,0), (1,0), ..., (0,1), ..."""
    return [(i, j) for j, row in enumerate(mu) for i in range(row)]


def contains(mu, cell) -> bool:
    i, j = cell
    return 0 <= j < len(mu) and 0 <= i < mu[j]


def arm_leg(mu, cell) -> tuple:
    if not contains(mu, cell):
        raise ValueError(f"cell {cell} is not in {mu}")
    i, j = cell
    return mu[j] - i - 1, conjugate(tuple(mu))[i] - j - 1


def n_stat(mu) -> int:
    """n(mu) = sum of row indices over cells."""
    return sum(j * row for j, row in enumerate(mu))


@lru_cache(maxsize=None)
def b_mu(mu: tuple) -> QtRational:
    acc = ZERO
    for i, j in cells(mu):
        acc = acc + monomial(i, j)
    return acc


@lru_cache(maxsize=None)
def pi_mu(mu: tuple) -> QtRational:
    # empty product for both () and (1,)
    acc = ONE
    for i, j in cells(mu):
        if (i, j) != (0, 0):
            acc = acc * (1 - monomial(i, j))
    return acc


@lru_cache(maxsize=None)
def nabla_eigenvalue(mu: tuple) -> QtRational:
    """(-1)^|mu| q^n(mu') t^n(mu)."""
    sign = -1 if size(mu) % 2 else 1
    return sign * monomial(n_stat(conjugate(mu)), n_stat(mu))


def enumerate_partitions(n: int) -> list:
    """All partitions of n in reverse-lexicographic order, largest first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n))


def _partitions(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    return tuple(enumerate_partitions(n))


def partitions_up_to(n: int) -> list:
    return [mu for k in range(n + 1) for mu in partitions_of(k)]


def dominates(lam, mu) -> bool:
    """True when lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


@lru_cache(maxsize=None)
def z_lambda(lam: tuple) -> int:
    """Size of the centraliser: prod_i i^{m_i} m_i!."""
    return prod(i ** m * factorial(m) for i, m in Counter(lam).items())


def sort_key(mu):
    """Key placing partitions by size, then in enumerate_partitions order."""
    return (size(mu), tuple(-p for p in mu))


def c_mu(mu) -> QtRational:
    """prod over cells of (1 - q^arm t^(leg+1)): the P -> J normalisation."""
    acc = ONE
    for c in cells(mu):
        a, l = arm_leg(mu, c)
        acc = acc * (1 - monomial(a, l + 1))
    return acc
