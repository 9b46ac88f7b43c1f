"""Cylindrical grids and walls, subdivisions with full provenance, segment
decomposition of the wall cycles, and the long-path extractor whose output
length is at least girth * k on any subdivision of the order-(2k+1) wall.

Conventions (0-based throughout):

* A grid of order m has cycles ``0..m-1`` (0 innermost) of ``2m`` vertices
  each, columns ``0..2m-1``; even columns run outward (cycle 0 towards
  cycle m-1), odd columns run inward.  Grid vertex ids are ``i*2m + j``.
* The wall splits every degree-4 grid vertex v into ``v_in -> v_out``; wall
  ids follow grid id order, entry before exit.
* Subdivision hosts keep wall ids and append interior vertices in sorted
  wall-edge order (see digraph.subdivide_edges), and record, for every wall
  edge, its replacement path.  Contracting the paths must reproduce the
  wall exactly; this is asserted on construction.
* A segment of cycle i is a minimal subpath whose endpoints carry the
  outward rungs towards cycle i+1 (for the outermost cycle, which has no
  outward rungs, segments are delimited by the vertices receiving rungs
  from below instead).  Interior-cycle segments of an unsubdivided wall
  have length 4, every cycle has one segment per outward column, and for
  cycles strictly between the first and last each segment has a unique
  internal vertex receiving a rung from below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .digraph import (
    CycleWitness,
    Digraph,
    Edge,
    PathWitness,
    StructuralViolationError,
    girth,
    graph_from_json,
    graph_to_json,
    subdivide_edges,
    validate_witness,
)
from . import oracles

__all__ = [
    "CylGrid",
    "CylWall",
    "WallSubdivision",
    "Segment",
    "EmbeddedWall",
    "CertificateError",
    "build_grid",
    "build_wall",
    "subdivide_wall",
    "decompose_segments",
    "shortest_segment",
    "extract_long_path",
    "winwin_longest_path",
    "WinWinOutcome",
]


class CertificateError(ValueError):
    """A claimed wall certificate fails verification."""


@dataclass(eq=False)
class CylGrid:
    """Order-m cylindrical grid with its coordinate map."""

    order: int
    graph: Digraph

    def vid(self, i: int, j: int) -> int:
        return i * (2 * self.order) + j % (2 * self.order)

    def coord(self, v: int) -> tuple[int, int]:
        return divmod(v, 2 * self.order)


@dataclass(eq=False)
class CylWall:
    """Order-m cylindrical wall: the grid with every degree-4 vertex split
    into an entry/exit pair, so all degrees are at most 3."""

    order: int
    graph: Digraph
    grid: CylGrid
    split: dict[int, tuple[int, int]]  # grid vid -> (entry, exit); unsplit ids map to themselves

    def in_id(self, i: int, j: int) -> int:
        g = self.grid.vid(i, j)
        s = self.split.get(g)
        return s[0] if s else self._plain[g]

    def out_id(self, i: int, j: int) -> int:
        g = self.grid.vid(i, j)
        s = self.split.get(g)
        return s[1] if s else self._plain[g]

    @property
    def _plain(self) -> dict[int, int]:
        return self.__dict__.setdefault("_plain_cache", self._build_plain())

    def _build_plain(self) -> dict[int, int]:
        mapping = {}
        nxt = 0
        for g in range(self.grid.graph.n):
            if g in self.split:
                nxt += 2
            else:
                mapping[g] = nxt
                nxt += 1
        return mapping

    def ring_vertices(self, i: int) -> list[int]:
        """Wall vertex ids of cycle i in cyclic order starting at column 0
        (entry before exit at split vertices)."""
        seq: list[int] = []
        for j in range(2 * self.order):
            g = self.grid.vid(i, j)
            s = self.split.get(g)
            if s:
                seq.extend(s)
            else:
                seq.append(self._plain[g])
        return seq

    def outward_columns(self) -> range:
        return range(0, 2 * self.order, 2)

    def up_rung(self, i: int, j: int) -> Edge:
        """Wall edge carrying the outward rung at even column j from cycle i
        to cycle i+1."""
        return (self.out_id(i, j), self.in_id(i + 1, j))


def build_grid(order: int) -> CylGrid:
    """k disjoint cycles of length 2k joined by alternating outward/inward
    column paths."""
    if order < 1:
        raise ValueError("grid order must be at least 1")
    m = order
    width = 2 * m
    edges: list[Edge] = []
    labels: dict[int, str] = {}
    for i in range(m):
        for j in range(width):
            labels[i * width + j] = f"ring{i}(c{j})"
            edges.append((i * width + j, i * width + (j + 1) % width))
    for j in range(0, width, 2):  # outward columns
        for i in range(m - 1):
            edges.append((i * width + j, (i + 1) * width + j))
    for j in range(1, width, 2):  # inward columns
        for i in range(m - 1):
            edges.append(((i + 1) * width + j, i * width + j))
    return CylGrid(order, Digraph(m * width, edges, labels=labels))


def build_wall(order: int) -> CylWall:
    """Split every degree-4 grid vertex into entry -> exit."""
    grid = build_grid(order)
    g = grid.graph
    split_sources = {v for v in range(g.n) if g.in_degree(v) + g.out_degree(v) == 4}
    split: dict[int, tuple[int, int]] = {}
    plain: dict[int, int] = {}
    labels: dict[int, str] = {}
    nxt = 0
    for v in range(g.n):
        if v in split_sources:
            split[v] = (nxt, nxt + 1)
            i, j = grid.coord(v)
            labels[nxt] = f"ring{i}(c{j},in)"
            labels[nxt + 1] = f"ring{i}(c{j},out)"
            nxt += 2
        else:
            plain[v] = nxt
            labels[nxt] = g.labels[v]
            nxt += 1

    def enter(v: int) -> int:
        return split[v][0] if v in split else plain[v]

    def leave(v: int) -> int:
        return split[v][1] if v in split else plain[v]

    edges = [(leave(u), enter(v)) for u, v in g.sorted_edges()]
    edges.extend(split.values())
    wall_graph = Digraph(nxt, edges, labels=labels)
    if any(wall_graph.in_degree(v) + wall_graph.out_degree(v) > 3 for v in range(nxt)):
        raise StructuralViolationError("wall has a vertex of degree above 3")
    return CylWall(order, wall_graph, grid, split)


@dataclass(eq=False)
class WallSubdivision:
    """Host graph plus, for every wall edge, the path that replaced it."""

    wall: CylWall
    graph: Digraph
    edge_paths: dict[Edge, tuple[int, ...]]

    def contracts_to_wall(self) -> bool:
        interior_total = sum(len(p) - 2 for p in self.edge_paths.values())
        if set(self.edge_paths) != self.wall.graph.edges:
            return False
        if self.graph.n != self.wall.graph.n + interior_total:
            return False
        rebuilt = {(p[0], p[-1]) for p in self.edge_paths.values()}
        covered = set()
        for p in self.edge_paths.values():
            covered.update(zip(p, p[1:]))
        return rebuilt == self.wall.graph.edges and covered == self.graph.edges

    def ring_host(self, i: int) -> list[int]:
        """Host vertices of cycle i in cyclic order starting at column 0."""
        ring = self.wall.ring_vertices(i)
        seq: list[int] = []
        for a, b in zip(ring, ring[1:] + ring[:1]):
            seq.extend(self.edge_paths[(a, b)][:-1])
        return seq

    def to_json(self) -> dict:
        return {
            "kind": "wall-subdivision",
            "order": self.wall.order,
            "graph": graph_to_json(self.graph),
            "edge_paths": {f"{u}->{v}": list(p) for (u, v), p in sorted(self.edge_paths.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "WallSubdivision":
        wall = build_wall(int(data["order"]))
        plan = {}
        for key, path in data["edge_paths"].items():
            u, v = key.split("->")
            plan[(int(u), int(v))] = len(path) - 2
        sub = subdivide_wall(wall, plan)
        if sub.graph != graph_from_json(data["graph"]):
            raise ValueError("stored subdivision does not match its plan")
        return sub


def subdivide_wall(w: CylWall, plan: Union[int, Mapping[Edge, int]]) -> WallSubdivision:
    """Expand each wall edge by ``plan[edge]`` interior vertices (or a
    uniform count when ``plan`` is an int)."""
    if isinstance(plan, int):
        plan = {e: plan for e in w.graph.edges}
    host, paths = subdivide_edges(w.graph, plan)
    sub = WallSubdivision(w, host, paths)
    if not sub.contracts_to_wall():
        raise StructuralViolationError("subdivision provenance fails to contract back")
    return sub


@dataclass(frozen=True)
class Segment:
    """One segment of a wall cycle inside a subdivision host.

    ``vertices`` is the host subpath including both delimiting endpoints;
    ``inward_entry`` is the unique internal vertex receiving a rung from the
    cycle below (None for the innermost and outermost cycles, whose
    segments carry the entry at an endpoint instead).
    """

    cycle_index: int
    vertices: tuple[int, ...]
    wall_edges: tuple[Edge, ...]
    start_column: int
    end_column: int
    inward_entry: Optional[int]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def _cyclic_slice(seq: Sequence[int], a: int, b: int) -> list[int]:
    """seq[a..b] inclusive, wrapping; a == b yields the single element."""
    if a <= b:
        return list(seq[a:b + 1])
    return list(seq[a:]) + list(seq[:b + 1])


def decompose_segments(sub: WallSubdivision, i: int) -> list[Segment]:
    """Partition cycle i of the host cyclically into its segments, ordered
    by starting column."""
    w = sub.wall
    m = w.order
    if m < 2:
        raise ValueError("segments need a wall of order at least 2")
    if not (0 <= i < m):
        raise ValueError(f"cycle index {i} out of range for order {m}")
    ring = w.ring_vertices(i)
    if i < m - 1:
        delims = [w.out_id(i, j) for j in w.outward_columns()]
    else:
        delims = [w.in_id(i, j) for j in w.outward_columns()]
    positions = [ring.index(d) for d in delims]
    cols = list(w.outward_columns())
    segments: list[Segment] = []
    for t in range(len(delims)):
        a = positions[t]
        b = positions[(t + 1) % len(delims)]
        wall_verts = _cyclic_slice(ring, a, b)
        wall_edges = tuple(zip(wall_verts, wall_verts[1:]))
        host: list[int] = []
        for e in wall_edges:
            host.extend(sub.edge_paths[e][:-1])
        host.append(wall_verts[-1])
        start_col = cols[t]
        end_col = cols[(t + 1) % len(cols)]
        entry = None
        if 0 < i < m - 1:
            landing = w.in_id(i, end_col)
            internal = set(host[1:-1])
            if landing not in internal:
                raise StructuralViolationError(
                    f"segment of cycle {i} misses its inward entry vertex")
            entry = landing
        segments.append(Segment(i, tuple(host), wall_edges, start_col, end_col, entry))
    return segments


def shortest_segment(sub: WallSubdivision, i: int) -> tuple[Segment, PathWitness]:
    """The minimum-length segment of cycle i (ties: smallest starting host
    vertex id) and its complement path, which carries the rest of the
    cycle's length."""
    segments = decompose_segments(sub, i)
    best = min(segments, key=lambda s: (s.length, s.vertices[0]))
    ring = sub.ring_host(i)
    start = ring.index(best.vertices[-1])
    end = ring.index(best.vertices[0])
    complement = PathWitness(tuple(_cyclic_slice(ring, start, end)))
    return best, complement


def extract_long_path(sub: WallSubdivision) -> PathWitness:
    """Concatenate, cycle by cycle, the complement of one short segment per
    outward-odd cycle, bridged through the even cycles by subdivided rungs.

    For a subdivision of the order-(2k+1) wall the result always has at
    least girth * k edges: there are k+1 contributing cycles and each
    contributes all but a 1/(number of segments) fraction of its length.
    """
    w = sub.wall
    m = w.order
    if m < 3 or m % 2 == 0:
        raise ValueError("long-path extraction needs an odd wall order >= 3")

    chosen: dict[int, tuple[Segment, PathWitness]] = {}
    for i in range(0, m, 2):
        chosen[i] = shortest_segment(sub, i)

    def s_in(i: int) -> int:
        seg, _ = chosen[i]
        if i == 0 or i == m - 1:
            return seg.vertices[-1]
        assert seg.inward_entry is not None
        return seg.inward_entry

    def ring_subpath(i: int, a: int, b: int) -> list[int]:
        ring = sub.ring_host(i)
        return _cyclic_slice(ring, ring.index(a), ring.index(b))

    pieces: list[list[int]] = []
    rungs: list[tuple[int, ...]] = []
    for i in range(m):
        if i % 2 == 0:
            seg, _ = chosen[i]
            piece = ring_subpath(i, s_in(i), seg.vertices[0])
            if i > 0:
                # rung landing on this cycle's entry vertex, from below
                col = seg.end_column
                rungs.append(sub.edge_paths[w.up_rung(i - 1, col)])
        else:
            below, _ = chosen[i - 1]
            above, _ = chosen[i + 1]
            enter_col = below.start_column
            exit_col = above.end_column
            piece = ring_subpath(i, w.in_id(i, enter_col), w.out_id(i, exit_col))
            rungs.append(sub.edge_paths[w.up_rung(i - 1, enter_col)])
        pieces.append(piece)

    seq: list[int] = list(pieces[0])
    for piece, rung in zip(pieces[1:], rungs):
        if rung[0] != seq[-1] or rung[-1] != piece[0]:
            raise StructuralViolationError("rung does not join consecutive cycle pieces")
        seq.extend(rung[1:])
        seq.extend(piece[1:])
    witness = PathWitness(tuple(seq))
    check = validate_witness(sub.graph, witness)
    if not check:
        raise StructuralViolationError(f"extracted path invalid: {check.reason}")
    return witness


# ---------------------------------------------------------------------------
# win-win driver

@dataclass(eq=False)
class EmbeddedWall:
    """A wall subdivision together with an injective vertex map into a host
    graph whose edge set contains the mapped subdivision."""

    subdivision: WallSubdivision
    vertex_map: tuple[int, ...]


def verify_embedded_wall(g: Digraph, emb: EmbeddedWall, expected_order: Optional[int] = None):
    sub = emb.subdivision
    if expected_order is not None and sub.wall.order != expected_order:
        raise CertificateError(
            f"certificate order {sub.wall.order}, expected {expected_order}")
    vm = emb.vertex_map
    if len(vm) != sub.graph.n:
        raise CertificateError("vertex map size mismatch")
    if len(set(vm)) != len(vm):
        raise CertificateError("vertex map is not injective")
    if any(not (0 <= v < g.n) for v in vm):
        raise CertificateError("vertex map leaves the host graph")
    for u, v in sub.graph.edges:
        if not g.has_edge(vm[u], vm[v]):
            raise CertificateError(f"mapped edge ({vm[u]},{vm[v]}) missing in host")


@dataclass(frozen=True)
class WinWinOutcome:
    status: str  # yes | no | budget
    witness: Optional[PathWitness]
    via: str     # wall-certificate | exact-oracle
    threshold: int


def winwin_longest_path(g: Digraph, k: int, certificate: Optional[EmbeddedWall] = None,
                        budget: oracles.SolverBudget = oracles.DEFAULT_BUDGET) -> WinWinOutcome:
    """Decide whether ``g`` has a path of at least girth*k edges.

    With a verified order-(2k+1) wall certificate the answer is always yes
    and comes with the extracted witness (the subdivision's girth is at
    least the host's, so the guarantee transfers).  Without one, fall back
    to the exact oracle, which bounds the usable graph size.
    """
    if k < 1:
        raise ValueError("k must be positive")
    base = girth(g)
    if base is None:
        raise ValueError("girth undefined: the graph is acyclic")
    threshold = base * k
    if certificate is not None:
        verify_embedded_wall(g, certificate, expected_order=2 * k + 1)
        raw = extract_long_path(certificate.subdivision)
        mapped = PathWitness(tuple(certificate.vertex_map[v] for v in raw.vertices))
        if mapped.length < threshold:
            raise StructuralViolationError(
                "certificate extraction fell short of the girth bound")
        check = validate_witness(g, mapped)
        if not check:
            raise CertificateError(f"mapped witness invalid: {check.reason}")
        return WinWinOutcome("yes", mapped, "wall-certificate", threshold)
    res = oracles.longest_path_exact(g, budget)
    if res.status == oracles.BUDGET:
        return WinWinOutcome("budget", None, "exact-oracle", threshold)
    assert res.witness is not None
    if res.witness.length >= threshold:
        return WinWinOutcome("yes", res.witness, "exact-oracle", threshold)
    return WinWinOutcome("no", None, "exact-oracle", threshold)
