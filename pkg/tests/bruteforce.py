"""Independent naive oracles used to freeze expected values in tests.

Everything here is deliberately written from scratch against the problem
statements (subset enumeration, walk matrices, plain DFS) and stays
independent of the library's algorithms, so the two sides can check each
other.
"""

from __future__ import annotations

import itertools

from hamdfvs.digraph import Digraph


def naive_validate(g: Digraph, seq, is_cycle: bool, hamiltonian: bool) -> bool:
    """Re-implementation of witness validation from the definitions."""
    seq = list(seq)
    if not seq:
        return False
    if len(set(seq)) != len(seq):
        return False
    if any(not (0 <= v < g.n) for v in seq):
        return False
    edges = list(zip(seq, seq[1:]))
    if is_cycle:
        edges.append((seq[-1], seq[0]))
    if any((u, v) not in g.edges for u, v in edges):
        return False
    if hamiltonian and len(seq) != g.n:
        return False
    return True


def has_cycle(g: Digraph, removed=frozenset()) -> bool:
    """DFS grey/black coloring."""
    color = {}

    def visit(v) -> bool:
        color[v] = 1
        for w in g.out_neighbors(v):
            if w in removed:
                continue
            c = color.get(w, 0)
            if c == 1:
                return True
            if c == 0 and visit(w):
                return True
        color[v] = 2
        return False

    return any(visit(v) for v in range(g.n) if v not in removed and color.get(v, 0) == 0)


def exhaustive_min_dfvs(g: Digraph):
    """Smallest feedback vertex set by trying all subsets, size ascending,
    lexicographic within a size."""
    for size in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if not has_cycle(g, frozenset(combo)):
                return frozenset(combo)
    raise AssertionError("unreachable: the full vertex set always works")


def all_simple_cycles(g: Digraph) -> list[tuple[int, ...]]:
    """Every simple directed cycle, canonicalized to start at its minimum
    vertex; enumeration by DFS from each minimal start."""
    out = []
    for s in range(g.n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in g.out_neighbors(v):
                if w == s and len(path) >= 2:
                    out.append(tuple(path))
                elif w > s and w not in path:
                    stack.append((w, path + [w]))
    return sorted(set(out))


def longest_simple_path(g: Digraph) -> int:
    """Maximum number of edges on a simple path, by full DFS enumeration."""
    best = 0 if g.n else -1
    for s in range(g.n):
        stack = [(s, {s}, 0)]
        while stack:
            v, seen, length = stack.pop()
            best = max(best, length)
            for w in g.out_neighbors(v):
                if w not in seen:
                    stack.append((w, seen | {w}, length + 1))
    return best


def walk_reachable(g: Digraph, removed: frozenset) -> list[list[bool]]:
    """reach[u][v]: a walk of length in [1, 2n] from u to v avoiding the
    removed vertices; boolean matrix powers."""
    n = g.n
    alive = [v not in removed for v in range(n)]
    m = [[alive[u] and alive[v] and g.has_edge(u, v) for v in range(n)] for u in range(n)]
    reach = [row[:] for row in m]
    power = [row[:] for row in m]
    for _ in range(2 * n - 1):
        power = [[any(power[u][w] and m[w][v] for w in range(n)) for v in range(n)]
                 for u in range(n)]
        for u in range(n):
            for v in range(n):
                reach[u][v] = reach[u][v] or power[u][v]
    return reach


def closed_walk_crossing(g: Digraph, guard: frozenset, inside, outside) -> bool:
    """Does some closed walk of g - guard contain a vertex from each side?"""
    reach = walk_reachable(g, guard)
    for a in inside:
        if a in guard:
            continue
        for b in outside:
            if b in guard:
                continue
            if reach[a][b] and reach[b][a]:
                return True
    return False


def mcc_by_subsets(inst) -> bool:
    """Multicolored clique decided by scanning all k-subsets of vertices."""
    k = inst.k
    g = inst.graph
    cls_of = {v: i for i, cls in enumerate(inst.classes) for v in cls}
    for combo in itertools.combinations(range(g.n), k):
        if {cls_of[v] for v in combo} != set(range(k)):
            continue
        if all(g.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
            return True
    return False
