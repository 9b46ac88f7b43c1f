"""Exact, exponential-time decision and search procedures used as ground
truth at desk scale.

Two engines back the Hamiltonicity solvers.  Graphs that fit the bitmask
budget go through a memoized subset search that returns the
lexicographically least witness.  Larger graphs go through a
propagation-driven backtracker: every vertex must pick exactly one
successor and one predecessor, choices with a single remaining candidate
are forced, partial paths may never close early, and the candidate graph
must stay strongly connected.  Gadget graphs are dominated by forced moves
(long in/out-degree-1 chains), which is exactly what the propagator eats.

Running out of budget is a first-class outcome (status ``"budget"``) so a
timeout can never masquerade as a "no".
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .digraph import (
    CliqueWitness,
    CycleWitness,
    Digraph,
    PathWitness,
    strongly_connected_components,
    topological_order,
)

YES = "yes"
NO = "no"
BUDGET = "budget"


@dataclass(frozen=True)
class SolverBudget:
    """Resource limits for one solver call.

    ``max_bitmask_vertices`` picks the engine (subset search up to that
    size, backtracker above); ``node_limit`` bounds search-state
    expansions; ``time_limit`` is wall-clock seconds.
    """

    max_bitmask_vertices: int = 24
    node_limit: int = 2_000_000
    time_limit: float = 60.0

    def __post_init__(self):
        if self.max_bitmask_vertices <= 0 or self.node_limit <= 0 or self.time_limit <= 0:
            raise ValueError("all budget fields must be positive")


DEFAULT_BUDGET = SolverBudget()


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver call: status in {"yes", "no", "budget"} plus a
    witness when the answer is yes (None for decision-style "no")."""

    status: str
    witness: Optional[Union[CycleWitness, PathWitness, CliqueWitness]] = None


class _BudgetExceeded(Exception):
    pass


class _Ticker:
    __slots__ = ("remaining", "deadline", "_beat")

    def __init__(self, budget: SolverBudget):
        self.remaining = budget.node_limit
        self.deadline = time.monotonic() + budget.time_limit
        self._beat = 0

    def tick(self, cost: int = 1):
        self.remaining -= cost
        if self.remaining < 0:
            raise _BudgetExceeded
        self._beat += 1
        if not (self._beat & 0x3FF) and time.monotonic() > self.deadline:
            raise _BudgetExceeded


def _quick_no_hamcycle(g: Digraph) -> bool:
    """Cheap necessary conditions: positive in/out degrees and a single
    strongly connected component spanning everything."""
    if g.n < 2:
        return True
    if any(g.out_degree(v) == 0 or g.in_degree(v) == 0 for v in range(g.n)):
        return True
    return len(strongly_connected_components(g)) != 1


# ---------------------------------------------------------------------------
# bitmask engine

def _hamcycle_bitmask(g: Digraph, ticker: _Ticker) -> Optional[list[int]]:
    """Lexicographically least Hamiltonian cycle starting at vertex 0.

    Greedy DFS trying successors in ascending order, with a shared
    memo of (visited-set, vertex) states known not to complete; the first
    cycle found is therefore the lexicographic minimum.
    """
    n = g.n
    full = (1 << n) - 1
    out = [g.out_neighbors(v) for v in range(n)]
    dead: set[tuple[int, int]] = set()
    path = [0]

    def extend(v: int, mask: int) -> bool:
        ticker.tick()
        if mask == full:
            return g.has_edge(v, 0)
        for w in out[v]:
            b = 1 << w
            if mask & b or (mask | b, w) in dead:
                continue
            path.append(w)
            if extend(w, mask | b):
                return True
            path.pop()
            dead.add((mask | b, w))
        return False

    return path if extend(0, 1) else None


def _hampath_bitmask(g: Digraph, ticker: _Ticker) -> Optional[list[int]]:
    """Lexicographically least Hamiltonian path (start vertices tried in
    ascending order; the dead-state memo is shareable across starts)."""
    n = g.n
    full = (1 << n) - 1
    out = [g.out_neighbors(v) for v in range(n)]
    dead: set[tuple[int, int]] = set()

    for s in range(n):
        path = [s]

        def extend(v: int, mask: int) -> bool:
            ticker.tick()
            if mask == full:
                return True
            for w in out[v]:
                b = 1 << w
                if mask & b or (mask | b, w) in dead:
                    continue
                path.append(w)
                if extend(w, mask | b):
                    return True
                path.pop()
                dead.add((mask | b, w))
            return False

        if extend(s, 1 << s):
            return path
    return None


# ---------------------------------------------------------------------------
# backtracking engine with forced-edge propagation

class _Dead(Exception):
    """Local contradiction in the constraint state."""


class _CPState:
    __slots__ = ("n", "succ", "pred", "outc", "inc", "start_of", "end_of",
                 "size", "complete")

    def __init__(self, g: Digraph):
        n = g.n
        self.n = n
        self.succ = [-1] * n
        self.pred = [-1] * n
        self.outc = [set(g.out_neighbors(v)) for v in range(n)]
        self.inc = [set(g.in_neighbors(v)) for v in range(n)]
        # path bookkeeping: start_of[e] is the start of the partial path
        # whose end is e; end_of[s]/size[s] are keyed by path starts
        self.start_of = list(range(n))
        self.end_of = list(range(n))
        self.size = [1] * n
        self.complete = False

    def copy(self) -> "_CPState":
        other = object.__new__(_CPState)
        other.n = self.n
        other.succ = self.succ[:]
        other.pred = self.pred[:]
        other.outc = [set(s) for s in self.outc]
        other.inc = [set(s) for s in self.inc]
        other.start_of = self.start_of[:]
        other.end_of = self.end_of[:]
        other.size = self.size[:]
        other.complete = self.complete
        return other


def _cp_drop_edge(st: _CPState, u: int, w: int, queue: deque):
    """Remove candidate edge (u,w); enqueue any forced singleton it creates."""
    if w not in st.outc[u]:
        return
    st.outc[u].discard(w)
    st.inc[w].discard(u)
    if st.succ[u] == -1:
        if not st.outc[u]:
            raise _Dead
        if len(st.outc[u]) == 1:
            queue.append((u, next(iter(st.outc[u]))))
    if st.pred[w] == -1:
        if not st.inc[w]:
            raise _Dead
        if len(st.inc[w]) == 1:
            queue.append((next(iter(st.inc[w])), w))


def _cp_commit(st: _CPState, u: int, w: int, queue: deque):
    """Select edge (u,w) into the cycle and propagate the consequences."""
    if st.succ[u] == w and st.pred[w] == u:
        return
    if st.succ[u] != -1 or st.pred[w] != -1 or w not in st.outc[u]:
        raise _Dead
    st.succ[u] = w
    st.pred[w] = u
    for w2 in sorted(st.outc[u]):
        if w2 != w:
            st.inc[w2].discard(u)
            if st.pred[w2] == -1:
                if not st.inc[w2]:
                    raise _Dead
                if len(st.inc[w2]) == 1:
                    queue.append((next(iter(st.inc[w2])), w2))
    st.outc[u] = {w}
    for u2 in sorted(st.inc[w]):
        if u2 != u:
            st.outc[u2].discard(w)
            if st.succ[u2] == -1:
                if not st.outc[u2]:
                    raise _Dead
                if len(st.outc[u2]) == 1:
                    queue.append((u2, next(iter(st.outc[u2]))))
    st.inc[w] = {u}
    # u was the end of its path, w the start of another (or the same) one
    s = st.start_of[u]
    if s == w:
        # closed a cycle: legal only if it spans all vertices
        if st.size[w] != st.n:
            raise _Dead
        st.complete = True
        return
    e = st.end_of[w]
    st.start_of[e] = s
    st.end_of[s] = e
    st.size[s] += st.size[w]
    if st.size[s] == st.n:
        # the merged path spans everything; only its closing edge remains
        if s in st.outc[e]:
            queue.append((e, s))
        else:
            raise _Dead
    else:
        _cp_drop_edge(st, e, s, queue)


def _cp_propagate(st: _CPState, forced: list[tuple[int, int]], ticker: _Ticker):
    """Run forced commits and singleton detection to a fixpoint."""
    queue: deque = deque(forced)
    while True:
        while queue:
            u, w = queue.popleft()
            ticker.tick()
            if st.succ[u] == w and st.pred[w] == u:
                continue
            if w not in st.outc[u]:
                # the queued forced edge got removed meanwhile
                if st.succ[u] == -1 and not st.outc[u]:
                    raise _Dead
                continue
            _cp_commit(st, u, w, queue)
            if st.complete:
                return
        moved = False
        for v in range(st.n):
            if st.succ[v] == -1:
                if not st.outc[v]:
                    raise _Dead
                if len(st.outc[v]) == 1:
                    queue.append((v, next(iter(st.outc[v]))))
                    moved = True
            if st.pred[v] == -1:
                if not st.inc[v]:
                    raise _Dead
                if len(st.inc[v]) == 1:
                    queue.append((next(iter(st.inc[v])), v))
                    moved = True
        if not moved:
            return


def _cp_single_scc(st: _CPState) -> bool:
    """The candidate digraph must keep all vertices in one SCC."""
    n = st.n
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    counter = 0
    comps = 0
    adj = [sorted(st.outc[v]) for v in range(n)]
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[list[int]] = [[root, 0]]
        while work:
            frame = work[-1]
            v, pi = frame
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            descended = False
            nbrs = adj[v]
            while pi < len(nbrs):
                w = nbrs[pi]
                pi += 1
                if index[w] == -1:
                    frame[1] = pi
                    work.append([w, 0])
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                comps += 1
                if comps > 1:
                    return False
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    if w == v:
                        break
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
    return comps == 1


def _hamcycle_backtrack(g: Digraph, ticker: _Ticker) -> Optional[list[int]]:
    st0 = _CPState(g)

    def extract(st: _CPState) -> list[int]:
        seq = [0]
        v = st.succ[0]
        while v != 0:
            seq.append(v)
            v = st.succ[v]
        return seq

    def search(st: _CPState) -> Optional[list[int]]:
        ticker.tick()
        if st.complete:
            return extract(st)
        if not _cp_single_scc(st):
            return None
        # branch on the most constrained undecided vertex, out side vs in side
        best = None  # (set size, side, vertex)
        for v in range(st.n):
            if st.succ[v] == -1:
                c = len(st.outc[v])
                if best is None or c < best[0]:
                    best = (c, 0, v)
            if st.pred[v] == -1:
                c = len(st.inc[v])
                if best is None or c < best[0]:
                    best = (c, 1, v)
        if best is None:
            # every choice made but no closing commit fired: inconsistent
            return None
        _, side, v = best
        options = sorted(st.outc[v]) if side == 0 else sorted(st.inc[v])
        for w in options:
            # refutation of an earlier option may have dropped this one
            if w not in (st.outc[v] if side == 0 else st.inc[v]):
                continue
            edge = (v, w) if side == 0 else (w, v)
            child = st.copy()
            try:
                _cp_propagate(child, [edge], ticker)
            except _Dead:
                pass
            else:
                res = search(child)
                if res is not None:
                    return res
            # refute the edge in the current state before the next option
            queue: deque = deque()
            try:
                _cp_drop_edge(st, edge[0], edge[1], queue)
                _cp_propagate(st, list(queue), ticker)
            except _Dead:
                return None
            if st.complete:
                return extract(st)
        return None

    try:
        _cp_propagate(st0, [], ticker)
    except _Dead:
        return None
    return search(st0)


# ---------------------------------------------------------------------------
# public solvers

def hamiltonian_cycle(g: Digraph, budget: SolverBudget = DEFAULT_BUDGET) -> SolveResult:
    """Hamiltonian cycle witness, deterministic.

    Subset search (lexicographically least witness) when n fits the bitmask
    budget, otherwise the propagation backtracker.
    """
    if _quick_no_hamcycle(g):
        return SolveResult(NO)
    ticker = _Ticker(budget)
    try:
        if g.n <= budget.max_bitmask_vertices:
            seq = _hamcycle_bitmask(g, ticker)
        else:
            seq = _hamcycle_backtrack(g, ticker)
    except _BudgetExceeded:
        return SolveResult(BUDGET)
    if seq is None:
        return SolveResult(NO)
    return SolveResult(YES, CycleWitness(tuple(seq)))


def hamiltonian_path(g: Digraph, budget: SolverBudget = DEFAULT_BUDGET) -> SolveResult:
    """Hamiltonian path witness (free endpoints), deterministic."""
    n = g.n
    if n == 0:
        return SolveResult(NO)
    if n == 1:
        return SolveResult(YES, PathWitness((0,)))
    ticker = _Ticker(budget)
    try:
        if n <= budget.max_bitmask_vertices:
            seq = _hampath_bitmask(g, ticker)
        else:
            # reduce to a cycle search: a virtual hub z with edges to and
            # from every vertex closes any Hamiltonian path into a cycle
            z = n
            edges = set(g.edges)
            for v in range(n):
                edges.add((z, v))
                edges.add((v, z))
            aug = Digraph(n + 1, edges)
            cyc = _hamcycle_backtrack(aug, ticker)
            if cyc is None:
                seq = None
            else:
                i = cyc.index(z)
                seq = cyc[i + 1:] + cyc[:i]
    except _BudgetExceeded:
        return SolveResult(BUDGET)
    if seq is None:
        return SolveResult(NO)
    return SolveResult(YES, PathWitness(tuple(seq)))


def _iter_bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def longest_path_exact(g: Digraph, budget: SolverBudget = DEFAULT_BUDGET) -> SolveResult:
    """A maximum-length simple path via subset dynamic programming over
    reachable (vertex-set, endpoint) states.  Requires n within the bitmask
    budget; the state table is sparse, so structured graphs stay small."""
    n = g.n
    if n > budget.max_bitmask_vertices:
        raise ValueError(f"longest_path_exact requires n <= {budget.max_bitmask_vertices}")
    if n == 0:
        return SolveResult(NO)
    ticker = _Ticker(budget)
    out = [g.out_neighbors(v) for v in range(n)]
    by_size: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    for v in range(n):
        by_size[1][1 << v] = by_size[1].get(1 << v, 0) | (1 << v)
    try:
        for size in range(1, n):
            layer = by_size[size]
            nxt = by_size[size + 1]
            for mask in sorted(layer):
                ends = layer[mask]
                for v in _iter_bits(ends):
                    for w in out[v]:
                        b = 1 << w
                        if mask & b:
                            continue
                        nm = mask | b
                        cur = nxt.get(nm, 0)
                        if not (cur & b):
                            nxt[nm] = cur | b
                            parent[(nm, w)] = (mask, v)
                            ticker.tick()
    except _BudgetExceeded:
        return SolveResult(BUDGET)
    best_size = max(s for s in range(1, n + 1) if by_size[s])
    mask = min(by_size[best_size])
    v = next(_iter_bits(by_size[best_size][mask]))
    seq = [v]
    while (mask, v) in parent:
        mask, v = parent[(mask, v)]
        seq.append(v)
    seq.reverse()
    return SolveResult(YES, PathWitness(tuple(seq)))


def longest_cycle_exact(g: Digraph, budget: SolverBudget = DEFAULT_BUDGET) -> SolveResult:
    """A maximum-length simple cycle, or "no" when the graph is acyclic.

    Subset DP where each state set's smallest vertex is the fixed start of
    the path, so every cycle is enumerated exactly once from its minimal
    rotation.
    """
    n = g.n
    if n > budget.max_bitmask_vertices:
        raise ValueError(f"longest_cycle_exact requires n <= {budget.max_bitmask_vertices}")
    if n == 0:
        return SolveResult(NO)
    ticker = _Ticker(budget)
    out = [g.out_neighbors(v) for v in range(n)]
    by_size: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    for v in range(n):
        by_size[1][1 << v] = 1 << v
    best: Optional[tuple[int, int, int]] = None  # (size, mask, closing endpoint)

    def consider(size: int, mask: int, v: int):
        nonlocal best
        if best is None or size > best[0] or (size == best[0] and (mask, v) < (best[1], best[2])):
            best = (size, mask, v)

    try:
        for size in range(1, n + 1):
            layer = by_size[size]
            for mask in sorted(layer):
                start = (mask & -mask).bit_length() - 1
                ends = layer[mask]
                for v in _iter_bits(ends):
                    if size >= 2 and g.has_edge(v, start):
                        consider(size, mask, v)
                    if size == n:
                        continue
                    for w in out[v]:
                        if w <= start:
                            continue
                        b = 1 << w
                        if mask & b:
                            continue
                        nm = mask | b
                        cur = by_size[size + 1].get(nm, 0)
                        if not (cur & b):
                            by_size[size + 1][nm] = cur | b
                            parent[(nm, w)] = (mask, v)
                            ticker.tick()
    except _BudgetExceeded:
        return SolveResult(BUDGET)
    if best is None:
        return SolveResult(NO)
    _, mask, v = best
    seq = [v]
    while (mask, v) in parent:
        mask, v = parent[(mask, v)]
        seq.append(v)
    seq.reverse()
    return SolveResult(YES, CycleWitness(tuple(seq)))


def dag_longest_path(g: Digraph) -> PathWitness:
    """Maximum-length path of a DAG by dynamic programming in topological
    order; rejects cyclic input."""
    order = topological_order(g)
    if order is None:
        raise ValueError("dag_longest_path requires an acyclic graph")
    if g.n == 0:
        raise ValueError("empty graph has no paths")
    dist = [0] * g.n
    par = [-1] * g.n
    for v in order:
        for w in g.out_neighbors(v):
            if dist[v] + 1 > dist[w] or (dist[v] + 1 == dist[w] and (par[w] == -1 or v < par[w])):
                dist[w] = dist[v] + 1
                par[w] = v
    end = min(v for v in range(g.n) if dist[v] == max(dist))
    seq = [end]
    while par[seq[-1]] != -1:
        seq.append(par[seq[-1]])
    seq.reverse()
    return PathWitness(tuple(seq))


# ---------------------------------------------------------------------------
# multicolored clique

def multicolored_clique_exact(instance, budget: SolverBudget = DEFAULT_BUDGET) -> SolveResult:
    """Enumerate the cartesian product of the color classes in lexicographic
    order and return the first pairwise-adjacent pick."""
    ticker = _Ticker(budget)
    g = instance.graph
    try:
        for combo in itertools.product(*instance.classes):
            ticker.tick()
            if all(g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
                return SolveResult(YES, CliqueWitness(tuple(combo)))
    except _BudgetExceeded:
        return SolveResult(BUDGET)
    return SolveResult(NO)
