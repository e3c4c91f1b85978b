"""Set partitions of ``[r] = {1..r}`` under the refinement order."""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterable

MAX_GROUND = 12


class SetPartitionError(ValueError):
    pass


class SetPartition:
    """Blocks are frozensets; canonical order is by minimum element."""

    __slots__ = ("ground", "blocks")

    def __init__(self, blocks: Iterable[Iterable[int]], ground: int | None = None):
        blocks = [frozenset(b) for b in blocks]
        if any(not b for b in blocks):
            raise SetPartitionError("blocks must be non-empty")
        elements = [x for b in blocks for x in b]
        if len(elements) != len(set(elements)):
            raise SetPartitionError("blocks must be disjoint")
        if ground is None:
            ground = len(elements)
        if set(elements) != set(range(1, ground + 1)):
            raise SetPartitionError(f"blocks must cover [1..{ground}]")
        self.ground = ground
        self.blocks = tuple(sorted(blocks, key=min))

    @classmethod
    def _trusted(cls, blocks, ground):
        sp = object.__new__(cls)
        sp.ground = ground
        sp.blocks = tuple(sorted(blocks, key=min))
        return sp

    @classmethod
    def top(cls, r: int) -> "SetPartition":
        return cls._trusted([frozenset(range(1, r + 1))], r)

    @classmethod
    def bottom(cls, r: int) -> "SetPartition":
        return cls._trusted([frozenset([i]) for i in range(1, r + 1)], r)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.ground == other.ground and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.ground, self.blocks))

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks)
        return "{" + inner + "}"

    @property
    def rank(self) -> int:
        return self.ground - len(self.blocks)

    def _check(self, other: "SetPartition"):
        if self.ground != other.ground:
            raise SetPartitionError(f"ground sets differ: [{self.ground}] vs [{other.ground}]")

    def __le__(self, other: "SetPartition") -> bool:
        self._check(other)
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def __lt__(self, other: "SetPartition") -> bool:
        return self != other and self <= other

    def join(self, other: "SetPartition") -> "SetPartition":
        self._check(other)
        parent = list(range(self.ground + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in self.blocks + other.blocks:
            first, *rest = b
            for x in rest:
                parent[find(x)] = find(first)
        groups: dict[int, set] = {}
        for x in range(1, self.ground + 1):
            groups.setdefault(find(x), set()).add(x)
        return SetPartition._trusted([frozenset(g) for g in groups.values()], self.ground)

    __or__ = join

    def mobius_to_top(self) -> int:
        return mobius_to_top(self)


def set_partitions(elements: tuple) -> list[list[tuple]]:
    """All set partitions of an arbitrary finite tuple, blocks as tuples."""
    if not elements:
        return [[]]
    first, rest = elements[0], elements[1:]
    out = []
    for part in set_partitions(rest):
        out.append([(first,)] + part)
        for i in range(len(part)):
            out.append(part[:i] + [(first,) + part[i]] + part[i + 1:])
    return out


@lru_cache(maxsize=None)
def _enumerate(r: int) -> tuple[SetPartition, ...]:
    return tuple(
        SetPartition._trusted([frozenset(b) for b in sp], r) for sp in set_partitions(tuple(range(1, r + 1)))
    )


def enumerate_set_partitions(r: int) -> list[SetPartition]:
    if r < 0:
        raise SetPartitionError("r must be nonnegative")
    if r > MAX_GROUND:
        raise SetPartitionError(f"r={r} exceeds the bound {MAX_GROUND}")
    return list(_enumerate(r))


def mobius_to_top(pi) -> int:
    """Moebius function from ``pi`` to the one-block partition."""
    k = len(pi)
    return (-1) ** (k - 1) * factorial(k - 1)


@lru_cache(maxsize=None)
def block_partitions(subset: frozenset) -> tuple[tuple[tuple[frozenset, ...], int], ...]:
    """Set partitions of ``subset`` as ``(blocks, mobius_to_top)`` pairs, cached."""
    out = []
    for sp in set_partitions(tuple(sorted(subset))):
        blocks = tuple(frozenset(b) for b in sp)
        out.append((blocks, mobius_to_top(blocks)))
    return tuple(out)


def check_mobius(r: int) -> bool:
    """Summing the top Moebius values over the interval above ``pi`` gives 1 at the top, else 0."""
    parts = enumerate_set_partitions(r)
    top = SetPartition.top(r)
    for pi in parts:
        total = sum(mobius_to_top(s) for s in parts if pi <= s)
        if total != (1 if pi == top else 0):
            return False
    return True


def check_rank_join(r: int) -> bool:
    """``rk(pi v sigma) <= rk(pi) + rk(sigma)`` for all pairs."""
    parts = enumerate_set_partitions(r)
    return all((p | q).rank <= p.rank + q.rank for p in parts for q in parts)
