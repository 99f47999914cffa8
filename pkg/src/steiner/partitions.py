"""Partitions of a finite ordered universe.

This is the connectivity bookkeeping language of the decomposition DP: a
partial solution is summarized by how it groups the boundary vertices.
Blocks are bitmasks over the sorted universe (at most 62 elements), which
keeps the lattice join and the cut-matrix rows of the representative-set
machinery at a few word operations per block.
"""

from __future__ import annotations

from .graph import Subgraph, connected_components

MAX_UNIVERSE = 62


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Partition:
    """A partition of an ordered universe into disjoint covering blocks.

    ``universe`` is a sorted tuple of vertex ids and ``blocks`` a tuple of
    bitmasks over it, canonically ordered by smallest member.  Equality
    and hashing are structural.
    """

    __slots__ = ("universe", "blocks")

    def __init__(self, universe: tuple[int, ...], blocks):
        # Trusted fast path: callers must pass disjoint covering masks.
        self.universe = universe
        self.blocks = tuple(sorted((m for m in blocks if m), key=lambda m: m & -m))

    @classmethod
    def from_sets(cls, universe, groups) -> "Partition":
        uni = tuple(sorted(set(universe)))
        if len(uni) > MAX_UNIVERSE:
            raise ValueError(f"universe larger than {MAX_UNIVERSE} elements")
        pos = {v: i for i, v in enumerate(uni)}
        masks = []
        seen = 0
        for grp in groups:
            m = 0
            for v in grp:
                if v not in pos:
                    raise ValueError(f"element {v} outside the universe")
                m |= 1 << pos[v]
            if m & seen:
                raise ValueError("blocks overlap")
            seen |= m
            if m:
                masks.append(m)
        if seen != (1 << len(uni)) - 1:
            raise ValueError("blocks must cover the universe")
        return cls(uni, masks)

    @classmethod
    def singletons(cls, universe) -> "Partition":
        uni = tuple(sorted(set(universe)))
        return cls(uni, [1 << i for i in range(len(uni))])

    @classmethod
    def single_block(cls, universe) -> "Partition":
        uni = tuple(sorted(set(universe)))
        if not uni:
            return cls(uni, [])
        return cls(uni, [(1 << len(uni)) - 1])

    def as_sets(self) -> list[frozenset[int]]:
        uni = self.universe
        return [frozenset(uni[i] for i in _bits(m)) for m in self.blocks]

    def block_of(self, v: int) -> frozenset[int]:
        try:
            i = self.universe.index(v)
        except ValueError:
            raise ValueError(f"element {v} outside the universe") from None
        bit = 1 << i
        for m in self.blocks:
            if m & bit:
                return frozenset(self.universe[j] for j in _bits(m))
        raise AssertionError("partition does not cover its universe")

    def is_singleton(self, v: int) -> bool:
        """True iff ``v`` forms a block on its own."""
        bit = 1 << self.universe.index(v)
        return bit in self.blocks

    @property
    def key(self) -> tuple[int, ...]:
        """Canonical sort key among partitions of the same universe."""
        return self.blocks

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.universe == other.universe and self.blocks == other.blocks
        return NotImplemented

    def __hash__(self):
        return hash((self.universe, self.blocks))

    def __repr__(self):
        sets = "/".join(
            ",".join(str(v) for v in sorted(b)) for b in self.as_sets()
        )
        return f"Partition({sets or 'empty'})"


def _require_same_universe(p: Partition, q: Partition):
    if p.universe != q.universe:
        raise ValueError("partitions over different universes")


def join(p: Partition, q: Partition) -> Partition:
    """Finest partition coarser than both (lattice join), via union-find."""
    _require_same_universe(p, q)
    n = len(p.universe)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mask in p.blocks + q.blocks:
        it = _bits(mask)
        anchor = find(next(it))
        for i in it:
            parent[find(i)] = anchor
    groups: dict[int, int] = {}
    for i in range(n):
        r = find(i)
        groups[r] = groups.get(r, 0) | (1 << i)
    return Partition(p.universe, groups.values())


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``q`` lies inside some block of ``p``."""
    _require_same_universe(p, q)
    for qb in q.blocks:
        if not any(qb & pb == qb for pb in p.blocks):
            return False
    return True


def restrict(p: Partition, keep) -> Partition:
    """Partition of ``keep`` obtained by intersecting blocks and dropping empties."""
    keepset = frozenset(keep)
    if not keepset <= set(p.universe):
        raise ValueError("restriction set must be a subset of the universe")
    return Partition.from_sets(
        keepset, [set(b) & keepset for b in p.as_sets()]
    )


def project(f: Subgraph, vertices) -> Partition:
    """Partition of ``vertices`` by the connected components of subgraph ``f``.

    Vertices absent from ``f`` become singleton blocks.
    """
    uni = frozenset(vertices)
    if not uni <= f.parent.vertex_set:
        raise ValueError("projection set must be a subset of the parent graph")
    comp_id: dict[int, int] = {}
    for i, comp in enumerate(connected_components(f)):
        for v in comp:
            comp_id[v] = i
    groups: dict[object, set[int]] = {}
    for v in uni:
        key = comp_id.get(v, ("lone", v))
        groups.setdefault(key, set()).add(v)
    return Partition.from_sets(uni, groups.values())


def pair_partition(universe, u: int, v: int) -> Partition:
    """Partition of ``universe`` with u, v grouped and all others singleton."""
    uni = frozenset(universe)
    groups = [{u, v}] + [{x} for x in uni - {u, v}]
    return Partition.from_sets(uni, groups)


def add_singleton(p: Partition, v: int) -> Partition:
    """Extend the universe with a fresh element forming its own block."""
    if v in p.universe:
        raise ValueError(f"element {v} already in the universe")
    return Partition.from_sets(
        set(p.universe) | {v}, p.as_sets() + [frozenset([v])]
    )


def enumerate_partitions(universe):
    """Yield every partition of the universe in a fixed order."""
    uni = tuple(sorted(set(universe)))
    n = len(uni)
    if n == 0:
        yield Partition(uni, [])
        return

    blocks: list[list[int]] = []

    def rec(i):
        if i == n:
            yield Partition.from_sets(uni, [list(b) for b in blocks])
            return
        v = uni[i]
        for b in blocks:
            b.append(v)
            yield from rec(i + 1)
            b.pop()
        blocks.append([v])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)
