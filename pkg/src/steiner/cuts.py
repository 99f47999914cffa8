"""Minimum vertex multiway cuts at desk scale.

A multiway cut separates the terminals pairwise: removing it leaves at
most one terminal per component.  Since the cut may contain terminals,
dropping all terminals but one is always valid, so a cut of size |K|-1
always exists and bounds the exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, is_multiway_cut


@dataclass(frozen=True)
class MultiwayCut:
    vertices: frozenset[int]
    certified_minimum: bool


def minimum_multiway_cut(g: Graph, terminals, budget: int) -> MultiwayCut | None:
    """Smallest multiway cut within ``budget``, by iterative deepening.

    Candidate subsets of each size are tested in lexicographic order, so
    the first hit is the lexicographically smallest minimum cut.
    Returns None when no cut of size <= budget exists.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    terms = frozenset(terminals)
    if len(terms) <= 1:
        return MultiwayCut(frozenset(), True)
    verts = sorted(g.vertex_set)
    for size in range(budget + 1):
        for combo in combinations(verts, size):
            cut = frozenset(combo)
            if is_multiway_cut(g, terms, cut):
                return MultiwayCut(cut, True)
    return None


def default_multiway_cut(g: Graph, terminals) -> MultiwayCut:
    """All terminals except the largest one: always a valid cut of size |K|-1.

    Fallback when the exhaustive search exceeds its budget; not certified
    minimum.
    """
    terms = sorted(set(terminals))
    if len(terms) <= 1:
        return MultiwayCut(frozenset(), False)
    return MultiwayCut(frozenset(terms[:-1]), False)
