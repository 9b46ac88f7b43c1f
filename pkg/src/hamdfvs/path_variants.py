"""Cycle/path transforms: vertex splitting for the cycle-to-path
equivalence, the long-path-in-girth-units instance built on top of the
split-vertex reduction, the feedback-vertex to feedback-arc rewrite, and
the additive-slack family that turns "path longer than girth plus k" into
n instances with multiplier two.

All transforms come with witness maps, not just decision equivalences.

Id layouts (all pure functions of the input):

* cycle-to-path: the exit vertex reuses the split vertex's id, the entry
  vertex is the fresh id ``n``; optional tail vertices follow.
* dfvs-to-dfas: the entry vertex of each split member reuses its id, exit
  vertices are appended in ascending member order.
* additive family: the replacement path's first vertex reuses ``v``'s id,
  its remaining vertices are appended, then the disjoint girth-pinning
  cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import (
    CycleWitness,
    Digraph,
    InvalidWitnessError,
    PathWitness,
    StructuralViolationError,
    girth,
    graph_from_json,
    graph_to_json,
    validate_witness,
)
from .reduction_girth import GirthInstance

__all__ = [
    "SplitVertexMap",
    "cycle_to_path_instance",
    "path_witness_from_cycle",
    "cycle_witness_from_path",
    "LongPathGirthInstance",
    "build_longest_path_above_girth_instance",
    "lift_to_long_path",
    "project_long_path",
    "dfvs_to_dfas",
    "lift_cycle_to_dfas",
    "project_cycle_from_dfas",
    "AdditiveInstance",
    "build_additive_instances",
    "lift_additive_path",
    "project_additive_path",
]


@dataclass(frozen=True)
class SplitVertexMap:
    """Bookkeeping for one split vertex: before any tail is appended, the
    exit vertex has no incoming edges and the entry vertex no outgoing
    ones."""

    removed: int
    v_in: int
    v_out: int
    tail: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"removed": self.removed, "in": self.v_in, "out": self.v_out,
                "tail": list(self.tail)}

    @classmethod
    def from_json(cls, data: dict) -> "SplitVertexMap":
        return cls(int(data["removed"]), int(data["in"]), int(data["out"]),
                   tuple(data.get("tail", ())))


def cycle_to_path_instance(g: Digraph, v: int) -> tuple[Digraph, SplitVertexMap]:
    """Split ``v`` so that Hamiltonian cycles of ``g`` correspond to
    Hamiltonian paths of the output (which must run from the exit vertex to
    the entry vertex)."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} not in graph")
    v_out, v_in = v, g.n
    labels = {u: lbl for u, lbl in g.labels.items() if u != v}
    labels[v_out] = f"split-out({v})"
    labels[v_in] = f"split-in({v})"
    edges = []
    for a, b in g.sorted_edges():
        if b == v:
            edges.append((a, v_in))
        elif a == v:
            edges.append((v_out, b))
        else:
            edges.append((a, b))
    return Digraph(g.n + 1, edges, labels=labels), SplitVertexMap(v, v_in, v_out)


def path_witness_from_cycle(split: SplitVertexMap, h: CycleWitness) -> PathWitness:
    """Rotate a Hamiltonian cycle of the source to start at the split vertex
    and reroute its endpoints through exit/entry."""
    seq = list(h.vertices)
    i = seq.index(split.removed)
    seq = seq[i:] + seq[:i]
    return PathWitness(tuple([split.v_out] + seq[1:] + [split.v_in]))


def cycle_witness_from_path(split: SplitVertexMap, p: PathWitness) -> CycleWitness:
    """Close a Hamiltonian path of the split graph back through the removed
    vertex; it must start at the exit vertex and end at the entry vertex."""
    seq = p.vertices
    if not seq or seq[0] != split.v_out or seq[-1] != split.v_in:
        raise InvalidWitnessError(
            "a Hamiltonian path of a split graph must run exit -> entry")
    return CycleWitness(tuple([split.removed] + list(seq[1:-1])))


@dataclass(eq=False)
class LongPathGirthInstance:
    """Long-path target built from a girth instance: split one untouched
    vertex, then hang a forced tail off the entry vertex so that a full
    Hamiltonian path has exactly girth*multiplier vertices.

    A path with at least ``girth * multiplier`` vertices (one less edge)
    exists iff the underlying source graph is Hamiltonian.
    """

    graph: Digraph
    source: GirthInstance
    multiplier: int  # k + 2
    split: SplitVertexMap

    @property
    def girth_value(self) -> int:
        return self.source.girth_value

    @property
    def required_path_vertices(self) -> int:
        return self.girth_value * self.multiplier

    @property
    def required_path_edges(self) -> int:
        return self.required_path_vertices - 1

    def to_json(self) -> dict:
        return {
            "kind": "hamdfvs-to-longpath-girth",
            "source": self.source.to_json(),
            "graph": graph_to_json(self.graph),
            "multiplier": self.multiplier,
            "split": self.split.to_json(),
            "girth": self.girth_value,
            "required_path_vertices": self.required_path_vertices,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LongPathGirthInstance":
        lp = build_longest_path_above_girth_instance(GirthInstance.from_json(data["source"]))
        if lp.graph != graph_from_json(data["graph"]):
            raise ValueError("stored long-path instance does not match its source")
        return lp


def build_longest_path_above_girth_instance(gi: GirthInstance) -> LongPathGirthInstance:
    """Pick the smallest-id vertex untouched by the splitting (so all the
    girth-pinning splice cycles survive), split it, and append a forced tail
    of girth-1 vertices to the entry vertex."""
    n = gi.source.graph.n
    untouched = [v for v in range(n) if v not in gi.split_map]
    if not untouched:
        raise ValueError("no vertex outside the feedback set to split")
    v = untouched[0]
    h, split = cycle_to_path_instance(gi.graph, v)
    tail = tuple(range(h.n, h.n + n - 1))
    edges = set(h.edges)
    chain = (split.v_in,) + tail
    edges.update(zip(chain, chain[1:]))
    out = Digraph(h.n + len(tail), edges, labels=h.labels)
    split = SplitVertexMap(split.removed, split.v_in, split.v_out, tail)

    if out.n != n * (gi.multiplier + 1):
        raise StructuralViolationError("long-path instance has wrong vertex count")
    if out.out_degree(tail[-1]) != 0:
        raise StructuralViolationError("tail end must have no outgoing edges")
    measured = girth(out)
    if measured != n:
        raise StructuralViolationError(f"long-path instance girth {measured}, expected {n}")
    return LongPathGirthInstance(out, gi, gi.multiplier + 1, split)


def lift_to_long_path(lp: LongPathGirthInstance, h: CycleWitness) -> PathWitness:
    """Map a Hamiltonian cycle of the girth graph to the full-length path:
    exit -> ... -> entry -> tail."""
    check = validate_witness(lp.source.graph, h, hamiltonian=True)
    if not check:
        raise InvalidWitnessError(f"witness invalid: {check.reason}")
    p = path_witness_from_cycle(lp.split, h)
    full = PathWitness(p.vertices + lp.split.tail)
    check = validate_witness(lp.graph, full, hamiltonian=True)
    if not check:
        raise StructuralViolationError(f"lifted path invalid: {check.reason}")
    return full


def project_long_path(lp: LongPathGirthInstance, p: PathWitness) -> CycleWitness:
    """Map a qualifying (hence Hamiltonian) path back to a Hamiltonian cycle
    of the girth graph."""
    check = validate_witness(lp.graph, p, hamiltonian=False)
    if not check:
        raise InvalidWitnessError(f"witness invalid: {check.reason}")
    if len(p.vertices) < lp.required_path_vertices:
        raise InvalidWitnessError("path too short to certify a yes answer")
    seq = p.vertices
    t = len(lp.split.tail)
    if tuple(seq[-t:]) != lp.split.tail or seq[-t - 1] != lp.split.v_in:
        raise StructuralViolationError("qualifying path must end with the forced tail")
    return cycle_witness_from_path(
        SplitVertexMap(lp.split.removed, lp.split.v_in, lp.split.v_out),
        PathWitness(seq[:-t]))


# ---------------------------------------------------------------------------
# feedback vertices to feedback arcs

def dfvs_to_dfas(g: Digraph, members) -> tuple[Digraph, dict[int, tuple[int, int]]]:
    """Split every vertex of ``members`` into entry -> exit joined by a new
    arc; removing those arcs is then as good as removing the vertices, and
    Hamiltonicity is preserved for any member set.

    Returns the rewritten graph and ``{v: (entry, exit)}``.
    """
    xs = sorted(set(int(v) for v in members))
    for v in xs:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} not in graph")
    if not xs:
        return g, {}
    split: dict[int, tuple[int, int]] = {}
    nxt = g.n
    labels = dict(g.labels)
    for v in xs:
        split[v] = (v, nxt)  # entry keeps v's id, exit is fresh
        labels[v] = f"in({v})"
        labels[nxt] = f"out({v})"
        nxt += 1
    edges = []
    for a, b in g.sorted_edges():
        if a in split:
            a = split[a][1]
        edges.append((a, b))
    for v_in, v_out in split.values():
        edges.append((v_in, v_out))
    return Digraph(nxt, edges, labels=labels), split


def lift_cycle_to_dfas(split: dict[int, tuple[int, int]], h: CycleWitness) -> CycleWitness:
    seq: list[int] = []
    for v in h.vertices:
        if v in split:
            seq.extend(split[v])
        else:
            seq.append(v)
    return CycleWitness(tuple(seq))


def project_cycle_from_dfas(split: dict[int, tuple[int, int]], h: CycleWitness) -> CycleWitness:
    """Contract every entry->exit pair (the entry vertex's only outgoing
    edge is the new arc, so the pair is always consecutive)."""
    exits = {v_out: v for v, (_, v_out) in split.items()}
    seq = []
    for u in h.vertices:
        if u in exits:
            continue
        seq.append(u)
    return CycleWitness(tuple(seq))


# ---------------------------------------------------------------------------
# additive slack above girth

@dataclass(eq=False)
class AdditiveInstance:
    """One member of the additive family: vertex ``vertex`` replaced by a
    path of girth-k edges, plus a disjoint cycle of length girth pinning the
    girth.  Asking for a path of 2*girth edges here is the same as asking
    for a path of girth+k edges through ``vertex`` in the original."""

    graph: Digraph
    vertex: int
    replacement: tuple[int, ...]  # path that stands in for the vertex
    pin_cycle: tuple[int, ...]
    girth_value: int

    @property
    def required_path_edges(self) -> int:
        return 2 * self.girth_value

    def to_json(self) -> dict:
        return {
            "kind": "additive-girth",
            "graph": graph_to_json(self.graph),
            "vertex": self.vertex,
            "replacement": list(self.replacement),
            "pin_cycle": list(self.pin_cycle),
            "girth": self.girth_value,
            "required_path_edges": self.required_path_edges,
        }


def build_additive_instances(g: Digraph, k: int) -> list[AdditiveInstance]:
    """One instance per vertex; the answer to "is there a path of girth+k
    edges" is yes iff at least one instance has a path of 2*girth edges.

    Requires 0 < k < girth; for k >= girth a plain bounded-length path
    search is the right tool and this transform refuses the input.
    """
    base_girth = girth(g)
    if base_girth is None:
        raise ValueError("additive family needs a graph with at least one cycle")
    if not (0 < k < base_girth):
        raise ValueError(f"need 0 < k < girth ({base_girth}); "
                         "larger slack is a plain bounded-length search")
    out: list[AdditiveInstance] = []
    rep_len = base_girth - k  # edges on the replacement path
    for v in range(g.n):
        nxt = g.n
        rep = [v] + list(range(nxt, nxt + rep_len))
        nxt += rep_len
        edges = []
        for a, b in g.sorted_edges():
            if a == v and b == v:
                continue
            if b == v:
                edges.append((a, rep[0]))
            elif a == v:
                edges.append((rep[-1], b))
            else:
                edges.append((a, b))
        edges.extend(zip(rep, rep[1:]))
        pin = list(range(nxt, nxt + base_girth))
        nxt += base_girth
        edges.extend(zip(pin, pin[1:]))
        edges.append((pin[-1], pin[0]))
        inst = AdditiveInstance(Digraph(nxt, edges), v, tuple(rep), tuple(pin), base_girth)
        measured = girth(inst.graph)
        if measured != base_girth:
            raise StructuralViolationError(
                f"additive instance for vertex {v} has girth {measured}, expected {base_girth}")
        out.append(inst)
    return out


def lift_additive_path(inst: AdditiveInstance, p: PathWitness) -> PathWitness:
    """Map a path through ``vertex`` (or avoiding it) into the instance."""
    seq: list[int] = []
    for u in p.vertices:
        if u == inst.vertex:
            seq.extend(inst.replacement)
        else:
            seq.append(u)
    lifted = PathWitness(tuple(seq))
    check = validate_witness(inst.graph, lifted)
    if not check:
        raise InvalidWitnessError(f"lifted path invalid: {check.reason}")
    return lifted


def project_additive_path(inst: AdditiveInstance, p: PathWitness) -> PathWitness:
    """Contract the replacement-path portion (possibly a partial run at
    either end of the path) back to the original vertex."""
    check = validate_witness(inst.graph, p)
    if not check:
        raise InvalidWitnessError(f"witness invalid: {check.reason}")
    rep = set(inst.replacement)
    pin = set(inst.pin_cycle)
    if set(p.vertices) <= rep:
        raise InvalidWitnessError("path lies entirely inside the replacement path")
    seq: list[int] = []
    emitted = False
    for u in p.vertices:
        if u in pin:
            raise InvalidWitnessError("path touches the disjoint pin cycle")
        if u in rep:
            if not emitted:
                seq.append(inst.vertex)
                emitted = True
        else:
            seq.append(u)
    projected = PathWitness(tuple(seq))
    check = validate_witness(_original_of(inst), projected)
    if not check:
        raise StructuralViolationError(f"projected path invalid: {check.reason}")
    return projected


def _original_of(inst: AdditiveInstance) -> Digraph:
    """Reconstruct the source graph of an additive instance (contract the
    replacement path, drop the pin cycle)."""
    n = inst.graph.n - len(inst.pin_cycle) - (len(inst.replacement) - 1)
    rep_interior = set(inst.replacement[1:])
    drop = rep_interior | set(inst.pin_cycle)
    last = inst.replacement[-1]
    edges = set()
    for a, b in inst.graph.edges:
        if a in drop and a != last:
            continue
        if b in drop:
            continue
        if a == last:
            a = inst.vertex
        edges.add((a, b))
    return Digraph(n, edges)
