"""Core directed-graph type and the polynomial-time primitives shared by
every reduction and checker in this package.

Vertices are dense integers ``0..n-1``.  Graphs are simple (no self-loops,
no parallel edges) and immutable after construction.  Adjacency is stored
in both directions and neighbors are always yielded in ascending id order,
so every traversal, solver trace, and serialized artifact is reproducible
byte for byte.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

Edge = tuple[int, int]


class InvalidWitnessError(ValueError):
    """A witness fails validation against its host graph."""


class StructuralViolationError(RuntimeError):
    """A verified witness reached a configuration the construction rules
    out; this indicates a bug in a builder, not bad user input."""


class Digraph:
    """Immutable simple digraph with optional per-vertex string labels.

    Labels are annotations for export/debugging; they do not take part in
    equality.  Two graphs are equal iff they have the same vertex count and
    edge set.
    """

    __slots__ = ("n", "_edges", "_out", "_in", "labels")

    def __init__(self, n: int, edges: Iterable[Edge] = (),
                 labels: Optional[Mapping[int, str]] = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        edge_set = frozenset((int(u), int(v)) for u, v in edges)
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_set:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            out[u].append(v)
            inn[v].append(u)
        self.n = n
        self._edges = edge_set
        self._out = tuple(tuple(sorted(ws)) for ws in out)
        self._in = tuple(tuple(sorted(us)) for us in inn)
        self.labels = dict(labels) if labels else {}
        for v in self.labels:
            if not (0 <= v < n):
                raise ValueError(f"label for unknown vertex {v}")

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Digraph)
                and self.n == other.n and self._edges == other._edges)

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class PathWitness:
    """Simple directed path given by its vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1


@dataclass(frozen=True)
class CycleWitness:
    """Simple directed cycle (wrap-around edge implied).

    Stored rotated so the smallest vertex id comes first; equality is
    therefore rotation-invariant.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.vertices)
        if seq:
            i = seq.index(min(seq))
            seq = seq[i:] + seq[:i]
        object.__setattr__(self, "vertices", seq)

    @property
    def length(self) -> int:
        """Number of edges (== number of vertices)."""
        return len(self.vertices)

    def edge_set(self) -> frozenset[Edge]:
        seq = self.vertices
        return frozenset((seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))


@dataclass(frozen=True)
class CliqueWitness:
    """Multicolored-clique certificate: one vertex per color class, ordered
    by class index.  Adjacency is checked by the consumers that know the
    host instance."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))


Witness = Union[CycleWitness, PathWitness]


@dataclass(frozen=True)
class WitnessCheck:
    """Boolean-like validation outcome carrying a machine-readable reason."""

    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_witness(g: Digraph, witness: Witness, hamiltonian: bool = False) -> WitnessCheck:
    """Check distinctness and edge existence; with ``hamiltonian`` also
    coverage of all vertices.  Never raises: failures come back as a
    falsy :class:`WitnessCheck` with a reason code."""
    seq = witness.vertices
    if not seq:
        return WitnessCheck(False, "empty")
    if any(not (0 <= v < g.n) for v in seq):
        return WitnessCheck(False, "unknown-vertex")
    if len(set(seq)) != len(seq):
        return WitnessCheck(False, "repeated-vertex")
    pairs = list(zip(seq, seq[1:]))
    if isinstance(witness, CycleWitness):
        pairs.append((seq[-1], seq[0]))
    for u, v in pairs:
        if not g.has_edge(u, v):
            return WitnessCheck(False, "missing-edge")
    if hamiltonian and len(seq) != g.n:
        return WitnessCheck(False, "not-spanning")
    return WitnessCheck(True)


def topological_order(g: Digraph, excluded: frozenset[int] = frozenset()) -> Optional[list[int]]:
    """Kahn's algorithm over the graph minus ``excluded``; smallest-id-first
    among ready vertices so the order is deterministic.  None if cyclic."""
    alive = [v for v in range(g.n) if v not in excluded]
    indeg = {v: 0 for v in alive}
    for v in alive:
        for w in g.out_neighbors(v):
            if w in indeg:
                indeg[w] += 1
    ready = [v for v in alive if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in g.out_neighbors(v):
            if w in indeg:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(ready, w)
    if len(order) != len(alive):
        return None
    return order


def is_acyclic(g: Digraph) -> bool:
    return topological_order(g) is not None


def shortest_cycle(g: Digraph, excluded: frozenset[int] = frozenset()) -> Optional[list[int]]:
    """A shortest directed cycle of ``g`` minus ``excluded``, or None.

    Per-source BFS looking for a return arc, O(n*m).  Two refinements keep
    the constant small on subdivision-heavy graphs: vertices that are
    interior to an in/out-degree-1 chain are skipped as sources (any cycle
    either contains a non-chain vertex or is an isolated chain-cycle, which
    a linear scan catches), and each BFS is depth-capped by the best cycle
    found so far.
    """
    n = g.n
    if n == 0:
        return None
    alive = bytearray(1 for _ in range(n))
    for v in excluded:
        alive[v] = 0
    out = [[w for w in g.out_neighbors(v) if alive[w]] if alive[v] else []
           for v in range(n)]
    outd = [len(ws) for ws in out]
    ind = [0] * n
    for v in range(n):
        for w in out[v]:
            ind[w] += 1

    best: Optional[list[int]] = None

    # isolated chain-cycles: every vertex has in/out degree exactly 1
    visited = bytearray(n)
    for v0 in range(n):
        if not alive[v0] or visited[v0] or outd[v0] != 1 or ind[v0] != 1:
            continue
        walk = [v0]
        pos = {v0: 0}
        visited[v0] = 1
        cur = v0
        while True:
            nxt = out[cur][0]
            if outd[nxt] != 1 or ind[nxt] != 1:
                break  # chain feeding a branch vertex; BFS will cover it
            if nxt in pos:
                cyc = walk[pos[nxt]:]
                if best is None or len(cyc) < len(best):
                    best = cyc
                break
            pos[nxt] = len(walk)
            walk.append(nxt)
            visited[nxt] = 1
            cur = nxt

    for s in range(n):
        if not alive[s] or (outd[s] == 1 and ind[s] == 1):
            continue
        if best is not None and len(best) == 2:
            break
        cap = len(best) if best is not None else None
        dist = {s: 0}
        par: dict[int, int] = {}
        q = deque([s])
        hit = None
        while q:
            u = q.popleft()
            du = dist[u]
            if cap is not None and du + 1 >= cap:
                break
            for w in out[u]:
                if w == s:
                    hit = u
                    break
                if w not in dist:
                    dist[w] = du + 1
                    par[w] = u
                    q.append(w)
            if hit is not None:
                break
        if hit is not None:
            cyc = [hit]
            while cyc[-1] != s:
                cyc.append(par[cyc[-1]])
            cyc.reverse()
            if best is None or len(cyc) < len(best):
                best = cyc
    return best


def girth(g: Digraph) -> Optional[int]:
    """Length of a shortest directed cycle; None when acyclic."""
    cyc = shortest_cycle(g)
    return None if cyc is None else len(cyc)


def strongly_connected_components(g: Digraph) -> list[tuple[int, ...]]:
    """Tarjan's algorithm, iterative.  Each component is sorted ascending
    and the component list is ordered by smallest member id."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0
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
            nbrs = g.out_neighbors(v)
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
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
    comps.sort(key=lambda c: c[0])
    return comps


def verify_dfvs(g: Digraph, vertices: Iterable[int]) -> bool:
    """True iff removing ``vertices`` leaves the graph acyclic."""
    xs = frozenset(int(v) for v in vertices)
    for v in xs:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} not in graph")
    return topological_order(g, excluded=xs) is not None


def find_min_dfvs(g: Digraph, budget: int) -> Optional[frozenset[int]]:
    """A minimum directed feedback vertex set if its size is at most
    ``budget``, else None.

    Bounded-depth branching with iterative deepening: find a shortest
    cycle, branch on deleting each of its vertices (ascending id), so the
    first set found at the minimal depth is deterministic.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")

    def search(removed: frozenset[int], quota: int) -> Optional[frozenset[int]]:
        cyc = shortest_cycle(g, excluded=removed)
        if cyc is None:
            return removed
        if quota == 0:
            return None
        for v in sorted(cyc):
            res = search(removed | {v}, quota - 1)
            if res is not None:
                return res
        return None

    for size in range(budget + 1):
        res = search(frozenset(), size)
        if res is not None:
            return res
    return None


def subdivide_edge(g: Digraph, edge: Edge) -> Digraph:
    """Replace edge (u,v) by u -> w -> v with the fresh vertex w = g.n."""
    u, v = edge
    if not g.has_edge(u, v):
        raise ValueError(f"edge ({u},{v}) not in graph")
    w = g.n
    edges = set(g.edges)
    edges.remove((u, v))
    edges.add((u, w))
    edges.add((w, v))
    return Digraph(g.n + 1, edges, labels=g.labels)


def subdivide_edges(g: Digraph, plan: Mapping[Edge, int]) -> tuple[Digraph, dict[Edge, tuple[int, ...]]]:
    """Subdivide each edge ``e`` of ``g`` into a path with ``plan[e]`` fresh
    interior vertices (missing entries mean 0).

    Fresh ids are assigned processing edges in sorted order, so the layout
    is a pure function of (g, plan).  Returns the host graph and, for every
    original edge, its replacement path including both endpoints.
    """
    for e, c in plan.items():
        if e not in g.edges:
            raise ValueError(f"plan mentions non-edge {e}")
        if c < 0:
            raise ValueError(f"negative expansion for {e}")
    edges: list[Edge] = []
    paths: dict[Edge, tuple[int, ...]] = {}
    nxt = g.n
    for u, v in g.sorted_edges():
        count = plan.get((u, v), 0)
        chain = [u] + list(range(nxt, nxt + count)) + [v]
        nxt += count
        edges.extend(zip(chain, chain[1:]))
        paths[(u, v)] = tuple(chain)
    return Digraph(nxt, edges, labels=g.labels), paths


# ---------------------------------------------------------------------------
# serialization

def canonical_dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace.  Used wherever bytes are
    hashed or compared across runs."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def graph_to_json(g: Digraph) -> dict:
    data: dict = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if g.labels:
        data["labels"] = {str(v): g.labels[v] for v in sorted(g.labels)}
    return data


def graph_from_json(data: dict) -> Digraph:
    labels = None
    if "labels" in data and data["labels"]:
        labels = {int(k): str(v) for k, v in data["labels"].items()}
    return Digraph(int(data["n"]), [tuple(e) for e in data["edges"]], labels=labels)


_DOT_PALETTE = (
    "lightblue", "lightgoldenrod", "lightpink", "palegreen", "plum",
    "lightsalmon", "lightcyan", "wheat", "thistle", "darkseagreen",
    "khaki", "lightsteelblue", "mistyrose", "honeydew", "lavender",
)


def graph_to_dot(g: Digraph, name: str = "G",
                 highlight: Iterable[int] = (),
                 witness: Optional[Witness] = None) -> str:
    """DOT export preserving edge direction.  Vertices are colored by the
    prefix of their label (text before the first '('), highlighted vertices
    get a bold red border, and witness edges are drawn red."""
    high = set(highlight)
    witness_edges: set[Edge] = set()
    if witness is not None:
        seq = witness.vertices
        witness_edges.update(zip(seq, seq[1:]))
        if isinstance(witness, CycleWitness) and seq:
            witness_edges.add((seq[-1], seq[0]))
    prefixes = sorted({lbl.split("(")[0] for lbl in g.labels.values()})
    color_of = {p: _DOT_PALETTE[i % len(_DOT_PALETTE)] for i, p in enumerate(prefixes)}
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(g.n):
        attrs = []
        lbl = g.labels.get(v)
        if lbl is not None:
            attrs.append(f'label="{v}:{lbl}"')
            attrs.append("style=filled")
            attrs.append(f"fillcolor={color_of[lbl.split('(')[0]]}")
        if v in high:
            attrs.append("color=red")
            attrs.append("penwidth=2")
        lines.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
    for u, v in g.sorted_edges():
        if (u, v) in witness_edges:
            lines.append(f"  {u} -> {v} [color=red, penwidth=2];")
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
