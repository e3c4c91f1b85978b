"""Integer partitions, their statistics and the hook polynomials.

Partitions are stored as weakly decreasing tuples of positive integers.
Boxes of a Young diagram are addressed ``(column, row)``, 1-based, French
convention: box ``(i, j)`` lies in row ``j`` and satisfies ``i <= parts[j-1]``.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .algebra import AlphaPolynomial

DEFAULT_MAX_SIZE = 12


class PartitionError(ValueError):
    pass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    >>> Partition([3, 1, 1]).conjugate()
    (3, 1, 1)
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> "Partition":
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,1,1"``; a lone ``"-"`` is the empty partition."""
        text = text.strip()
        if text == "-":
            return cls()
        try:
            parts = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise PartitionError(f"cannot parse partition {text!r}") from None
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "-"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicities(self) -> Counter:
        return Counter(self)


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return Partition._trusted(())
    return Partition._trusted(tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1)))


def oplus(lam: Sequence[int], mu: Sequence[int]) -> Partition:
    """Entry-wise sum, the shorter partition padded with zeros."""
    if len(lam) < len(mu):
        lam, mu = mu, lam
    return Partition._trusted(tuple(a + (mu[i] if i < len(mu) else 0) for i, a in enumerate(lam)))


def union(lam: Sequence[int], mu: Sequence[int]) -> Partition:
    return Partition._trusted(tuple(sorted(tuple(lam) + tuple(mu), reverse=True)))


def oplus_subset(lams: Sequence[Sequence[int]], subset: Iterable[int]) -> Partition:
    """``lambda^I``: the entry-wise sum of ``lams[i-1]`` for ``i`` in ``subset`` (1-based)."""
    result = Partition._trusted(())
    for i in subset:
        if not 1 <= i <= len(lams):
            raise IndexError(f"index {i} out of range 1..{len(lams)}")
        result = oplus(result, lams[i - 1])
    return result


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    if sum(lam) != sum(mu):
        raise PartitionError(f"dominance compares partitions of equal size, got {lam} and {mu}")
    a = b = 0
    for j in range(max(len(lam), len(mu))):
        a += lam[j] if j < len(lam) else 0
        b += mu[j] if j < len(mu) else 0
        if a > b:
            return False
    return True


def dominance_lt(lam: Sequence[int], mu: Sequence[int]) -> bool:
    return tuple(lam) != tuple(mu) and dominance_leq(lam, mu)


def boxes(lam: Sequence[int]):
    """Yield ``(column, row)`` for each box, row by row."""
    for j, part in enumerate(lam, start=1):
        for i in range(1, part + 1):
            yield i, j


def arm_leg(lam: Sequence[int], box: tuple[int, int]) -> tuple[int, int]:
    i, j = box
    if not (1 <= j <= len(lam) and 1 <= i <= lam[j - 1]):
        raise PartitionError(f"box {box} is outside the diagram of {tuple(lam)}")
    conj = conjugate(lam)
    return lam[j - 1] - i, conj[i - 1] - j


def z_stat(lam: Sequence[int]) -> int:
    return prod(i**m * factorial(m) for i, m in Counter(lam).items())


def b_stat(lam: Sequence[int]) -> int:
    return sum(comb(p, 2) for p in lam)


def _arm_legs(lam):
    conj = conjugate(lam)
    for i, j in boxes(lam):
        yield lam[j - 1] - i, conj[i - 1] - j


@lru_cache(maxsize=None)
def hook(lam: Partition) -> AlphaPolynomial:
    """Product over boxes of ``alpha*arm + leg + 1``."""
    return AlphaPolynomial.product(AlphaPolynomial((leg + 1, arm)) for arm, leg in _arm_legs(lam))


@lru_cache(maxsize=None)
def hook_prime(lam: Partition) -> AlphaPolynomial:
    """Product over boxes of ``alpha*arm + leg + alpha``."""
    return AlphaPolynomial.product(AlphaPolynomial((leg, arm + 1)) for arm, leg in _arm_legs(lam))


@lru_cache(maxsize=None)
def hook_dprime(lam: Partition) -> AlphaPolynomial:
    """As :func:`hook_prime`, restricted to boxes with nonzero leg."""
    return AlphaPolynomial.product(
        AlphaPolynomial((leg, arm + 1)) for arm, leg in _arm_legs(lam) if leg != 0
    )


def interleaved_arms(lams: Sequence[Sequence[int]], subset: Iterable[int]):
    """Boxes of ``lambda^I`` traced back to the summand they come from.

    The columns of ``lambda^I`` are the columns of the summands, sorted by
    decreasing length, equal lengths ordered by summand index. For a box ``b``
    of summand ``g`` in row ``j`` with column length ``h``, summand ``i``
    contributes to its arm the boxes of row ``j`` whose column is shorter than
    ``h`` (``i < g``), at most ``h`` (``i > g``), or the arm of ``b`` itself
    (``i = g``). Yields ``(g, box, box_in_sum, parts)`` with ``parts[i]`` that
    contribution.
    """
    idx = sorted(subset)
    conjs = {i: conjugate(lams[i - 1]) for i in idx}
    order = sorted(((-h, i, c) for i in idx for c, h in enumerate(conjs[i], start=1)))
    position = {(i, c): pos for pos, (_, i, c) in enumerate(order, start=1)}
    for g in idx:
        for c, j in boxes(lams[g - 1]):
            h = conjs[g][c - 1]
            parts = {}
            for i in idx:
                if i == g:
                    parts[i] = lams[g - 1][j - 1] - c
                elif i < g:
                    parts[i] = sum(1 for hh in conjs[i] if j <= hh < h)
                else:
                    parts[i] = sum(1 for hh in conjs[i] if j <= hh <= h)
            yield g, (c, j), (position[(g, c)], j), parts


def partitions_of(n: int, max_size: int = DEFAULT_MAX_SIZE) -> list[Partition]:
    """All partitions of ``n``, largest first in reverse-lexicographic order."""
    if n < 0:
        raise PartitionError("n must be nonnegative")
    if n > max_size:
        raise PartitionError(f"n={n} exceeds the configured bound {max_size}")
    return list(_partitions_of(n))


@lru_cache(maxsize=None)
def _partitions_of(n: int) -> tuple[Partition, ...]:
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(Partition._trusted(tuple(prefix)))
            return
        for p in range(min(remaining, largest), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def partitions_up_to(n: int, max_size: int = DEFAULT_MAX_SIZE) -> list[Partition]:
    return [lam for k in range(n + 1) for lam in partitions_of(k, max_size)]


def grevlex_key(lam: Sequence[int]):
    """Sort key matching :func:`partitions_of`: by size, then reverse-lex."""
    return (sum(lam), tuple(-p for p in lam))
