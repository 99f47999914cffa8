"""Exact minimum-cost assignment on rectangular matrices.

Classic Hungarian algorithm with row/column potentials (rows <= columns,
every row gets matched).  Costs are Python integers, possibly negative;
``INF`` cells mark forbidden pairs.  Everything stays in exact integer
arithmetic so 2**62-scale weights survive unharmed -- the reason this is
hand-rolled instead of delegated to a float-based library routine.
"""

from __future__ import annotations

from .graph import INF


def min_cost_assignment(matrix):
    """Match every row to a distinct column at minimum total cost.

    ``matrix`` is a list of rows; entries are ints or INF.  Returns
    ``(pairs, total)`` with pairs as (row, col) tuples sorted by row, or
    None when no fully finite assignment exists (including rows > cols).
    """
    n = len(matrix)
    if n == 0:
        return (), 0
    m = len(matrix[0])
    if any(len(row) != m for row in matrix):
        raise ValueError("matrix rows must have equal length")
    if n > m:
        return None

    finite_sum = sum(abs(c) for row in matrix for c in row if c != INF)
    big = 4 * finite_sum + 7  # dominates any finite assignment
    cost = [[big if c == INF else c for c in row] for row in matrix]

    # Potentials u (rows) and v (columns), 1-based; p[j] = row matched to j.
    u = [0] * (n + 1)
    v = [0] * (m + 1)
    p = [0] * (m + 1)
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] != INF:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            p[j0] = p[way[j0]]
            j0 = way[j0]

    pairs = []
    total = 0
    for j in range(1, m + 1):
        if p[j]:
            i = p[j] - 1
            if matrix[i][j - 1] == INF:
                return None
            pairs.append((i, j - 1))
            total += matrix[i][j - 1]
    pairs.sort()
    return tuple(pairs), total
