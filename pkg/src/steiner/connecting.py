"""Steiner tree solving driven by a vertex multiway cut.

The solver guesses which cut vertices the optimal tree uses and how the
tree attaches to them.  Each attachment pattern -- a *connecting system*
-- is a tree on the used cut vertices plus contracted helper vertices
whose neighborhoods record which cut subsets must be made reachable
through single components.  Fixing a pattern reduces the optimization to
a minimum-weight assignment between those subsets and component slots,
where the slot weights come from small Steiner subproblems solved with
Dreyfus-Wagner.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

from .cuts import MultiwayCut
from .exact import SteinerResult, dreyfus_wagner
from .graph import (
    INF,
    Graph,
    Subgraph,
    connected_components,
    edge_key,
    is_multiway_cut,
    minimum_spanning_tree,
    shortest_path,
)
from .matching import min_cost_assignment


@dataclass(frozen=True)
class ConnectingSystem:
    """How a tree can attach to a base vertex set.

    ``subsets`` are the neighborhoods of the contracted helper vertices
    (each a subset of the base of size >= 2), and ``base_edges`` the tree
    edges running directly between base vertices; those must be actual
    graph edges.
    """

    base: frozenset[int]
    subsets: tuple[frozenset[int], ...]
    base_edges: frozenset[tuple[int, int]]


def is_self_reachable(h: Subgraph, vertices) -> bool:
    """True iff all of ``vertices`` lies inside one component of ``h``."""
    vs = frozenset(vertices)
    if not vs:
        return True
    if not vs <= h.vertices:
        return False
    return any(vs <= comp for comp in connected_components(h))


def _labeled_tree_edges(seq, n):
    """Decode a Pruefer sequence over n labeled vertices into tree edges."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    edges = []
    for s in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, s))
        degree[leaf] = 0
        degree[s] -= 1
    u, v = (x for x in range(n) if degree[x] == 1)
    edges.append((u, v))
    return edges


def enumerate_connecting_systems(g: Graph, base):
    """Yield every distinct connecting system for ``base`` exactly once.

    Labeled trees on the base plus m helper vertices (m up to |base|-1)
    are enumerated through Pruefer sequences, filtered by the structural
    conditions, and deduplicated under helper relabeling.
    """
    base_sorted = sorted(set(base))
    if not base_sorted:
        raise ValueError("base must be non-empty")
    for v in base_sorted:
        if v not in g:
            raise ValueError(f"base vertex {v} not in graph")
    b = len(base_sorted)
    seen = set()
    for m in range(b):
        n = b + m
        helpers = set(range(b, n))
        for seq in product(range(n), repeat=max(0, n - 2)):
            # helper vertices need degree >= 2, i.e. an appearance in the
            # sequence; skipping early avoids most decodes
            if not helpers <= set(seq):
                continue
            edges = _labeled_tree_edges(seq, n)
            adj = [[] for _ in range(n)]
            for x, y in edges:
                adj[x].append(y)
                adj[y].append(x)
            ok = True
            subsets = []
            for helper in range(b, n):
                nbrs = adj[helper]
                if len(nbrs) < 2 or any(x >= b for x in nbrs):
                    ok = False
                    break
                subsets.append(frozenset(base_sorted[x] for x in nbrs))
            if not ok:
                continue
            base_edges = []
            for x, y in edges:
                if x < b and y < b:
                    u, v = base_sorted[x], base_sorted[y]
                    if not g.has_edge(u, v):
                        ok = False
                        break
                    base_edges.append(edge_key(u, v))
            if not ok:
                continue
            key = (frozenset(base_edges), frozenset(subsets))
            if key in seen:
                continue
            seen.add(key)
            yield ConnectingSystem(
                frozenset(base_sorted),
                tuple(sorted(subsets, key=sorted)),
                frozenset(base_edges),
            )


@dataclass(frozen=True)
class AssignmentWeights:
    """Cost matrix between a system's subsets and (component, slot) pairs.

    Slot (p, 0) means "connect the subset through component p picking up
    its terminal"; the weight nets out the terminal's plain shortest-path
    cost and can be negative.  Slots (p, j>0) connect the subset through
    component p without claiming the terminal.
    """

    rows: tuple[frozenset[int], ...]
    slots: tuple[tuple[int, int], ...]
    matrix: tuple[tuple[int | float, ...], ...]
    components: tuple[frozenset[int], ...]


def _cut_vertices(cut) -> frozenset[int]:
    if isinstance(cut, MultiwayCut):
        return cut.vertices
    return frozenset(cut)


def _component_graph(g: Graph, cutset, comp) -> Graph:
    vertices = set(comp)
    edges = []
    for u in sorted(comp):
        for v in g.neighbors(u):
            if v in comp:
                if u < v:
                    edges.append((u, v, g.weight(u, v)))
            elif v in cutset:
                vertices.add(v)
                edges.append((u, v, g.weight(u, v)))
    return Graph(vertices, edges)


def _component_steiner(g, cutset, comps, p, terms, memo) -> SteinerResult:
    """Memoized minimum Steiner tree inside component p plus its boundary."""
    key = (p, frozenset(terms))
    hit = memo.get(key)
    if hit is not None:
        return hit
    gp = _component_graph(g, cutset, comps[p])
    if not frozenset(terms) <= gp.vertex_set:
        res = SteinerResult(INF, g.empty_subgraph())
    else:
        local = dreyfus_wagner(gp, terms)
        if local.feasible:
            res = SteinerResult(
                local.cost, Subgraph(g, local.tree.vertices, local.tree.edges)
            )
        else:
            res = SteinerResult(INF, g.empty_subgraph())
    memo[key] = res
    return res


def build_weights(
    g: Graph, terminals, cut, base, system: ConnectingSystem, memo=None
) -> AssignmentWeights:
    """Assignment weights for one (used set, connecting system) pair.

    Components are taken with respect to the full cut; shortest paths to
    terminals are measured in the whole graph against the used set.
    """
    cutset = _cut_vertices(cut)
    basev = frozenset(base)
    terms = frozenset(terminals)
    if basev != system.base:
        raise ValueError("base does not match the system")
    if not terms & cutset <= basev:
        raise ValueError("used set must contain the cut terminals")
    if memo is None:
        memo = {}
    comps = connected_components(g.without(cutset))
    q = len(comps)
    m = len(system.subsets)
    comp_terminal = []
    sp_dist = []
    for comp in comps:
        inside = sorted(comp & terms)
        if len(inside) > 1:
            raise ValueError("input is not a multiway cut for the terminals")
        tp = inside[0] if inside else None
        comp_terminal.append(tp)
        if tp is None:
            sp_dist.append(None)
        else:
            found = shortest_path(g, basev, tp)
            sp_dist.append(None if found is None else found[1])
    slots = tuple((p, j) for p in range(q) for j in range(m + 1))
    matrix = []
    for subset in system.subsets:
        row = []
        for p, j in slots:
            if j == 0:
                if sp_dist[p] is None:
                    row.append(INF)
                else:
                    want = subset | {comp_terminal[p]}
                    best = _component_steiner(g, cutset, comps, p, want, memo)
                    row.append(best.cost - sp_dist[p])
            else:
                best = _component_steiner(g, cutset, comps, p, subset, memo)
                row.append(best.cost)
        matrix.append(tuple(row))
    return AssignmentWeights(
        system.subsets, slots, tuple(matrix), tuple(comps)
    )


def minimum_weight_matching(weights: AssignmentWeights):
    """Minimum-weight matching saturating all subsets, or None if impossible."""
    if not weights.rows:
        return (), 0
    matrix = [list(row) for row in weights.matrix]
    solved = min_cost_assignment(matrix)
    if solved is None:
        return None
    pairs, total = solved
    return tuple((i, weights.slots[j]) for i, j in pairs), total


def reconstruct_tree(
    g: Graph, terminals, cut, base, system: ConnectingSystem, matching, memo=None
) -> SteinerResult | None:
    """Assemble a Steiner tree from a finite matching.

    Unions the base tree edges, the matched component trees and shortest
    paths for the uncovered terminals, then returns a spanning tree of
    the component containing the used set and the terminals.  Returns
    None when some terminal cannot be attached in this iteration.
    """
    cutset = _cut_vertices(cut)
    basev = frozenset(base)
    terms = frozenset(terminals)
    if memo is None:
        memo = {}
    comps = connected_components(g.without(cutset))
    edges = set(system.base_edges)
    vertices = set(basev) | terms
    covered = set()
    for i, (p, j) in matching:
        subset = system.subsets[i]
        comp_terms = sorted(comps[p] & terms)
        if j == 0:
            if not comp_terms:
                raise ValueError("matching claims a terminal in a terminal-free component")
            want = subset | {comp_terms[0]}
            covered.add(p)
        else:
            want = subset
        piece = _component_steiner(g, cutset, comps, p, want, memo)
        if not piece.feasible:
            raise ValueError("matching uses an infeasible slot")
        edges |= piece.tree.edges
        vertices |= piece.tree.vertices
    for p, comp in enumerate(comps):
        inside = sorted(comp & terms)
        if not inside or p in covered:
            continue
        found = shortest_path(g, basev, inside[0])
        if found is None:
            return None
        path, _ = found
        edges |= path.edges
        vertices |= path.vertices
    assembled = Subgraph(g, frozenset(vertices), frozenset(edges))
    for comp in connected_components(assembled):
        if basev | terms <= comp:
            inner = Subgraph(
                g, comp, [e for e in edges if e[0] in comp and e[1] in comp]
            )
            tree = minimum_spanning_tree(inner)
            return SteinerResult(tree.cost, tree)
    return None


def solve_with_cut(g: Graph, terminals, cut, threads: int = 1) -> SteinerResult:
    """Optimal Steiner tree given a multiway cut for the terminals.

    Iterates over every used subset of the cut containing its terminals
    and every connecting system on it; each iteration contributes one
    reconstructed candidate and the minimum over all of them is optimal.
    """
    cutset = _cut_vertices(cut)
    terms = frozenset(terminals)
    if not terms <= g.vertex_set:
        raise ValueError("terminals must be graph vertices")
    if not is_multiway_cut(g, terms, cutset):
        raise ValueError("input vertex set is not a multiway cut for the terminals")
    if len(terms) <= 1:
        return SteinerResult(0, Subgraph(g, terms, frozenset()))
    if not any(terms <= comp for comp in connected_components(g)):
        return SteinerResult(INF, g.empty_subgraph())

    forced = terms & cutset
    optional = sorted(cutset - terms)
    memo: dict = {}
    tasks = []
    for size in range(len(optional) + 1):
        for combo in combinations(optional, size):
            basev = forced | frozenset(combo)
            if not basev:
                continue  # with >= 2 terminals any tree must meet the cut
            for system in enumerate_connecting_systems(g, basev):
                tasks.append((basev, system))

    def evaluate(task):
        basev, system = task
        weights = build_weights(g, terms, cutset, basev, system, memo)
        matched = minimum_weight_matching(weights)
        if matched is None:
            return None
        matching, _ = matched
        return reconstruct_tree(g, terms, cutset, basev, system, matching, memo)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, tasks))
    else:
        results = [evaluate(task) for task in tasks]

    best = SteinerResult(INF, g.empty_subgraph())
    for res in results:
        if res is not None and res.cost < best.cost:
            best = res
    return best
