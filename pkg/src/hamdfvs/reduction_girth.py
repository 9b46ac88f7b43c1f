"""Reduction from Hamiltonian Cycle with a known feedback vertex set to
finding a long cycle measured in girth units.

Every feedback vertex ``v`` is split into an entry vertex (which keeps v's
id and receives all of v's in-edges) and an exit vertex (fresh id, sources
all out-edges), joined by a long forced path plus a back edge from exit to
entry.  One designated feedback vertex gets a slightly longer path so the
output size is exactly n*(k+1); every splice cycle has length exactly n,
which pins the girth, and the source graph is Hamiltonian iff the output
has a cycle of length n*(k+1) = girth * (k+1).

Fresh ids are appended per feedback vertex in ascending order, interior
path vertices first and the exit vertex last, so the layout is a pure
function of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    CycleWitness,
    Digraph,
    InvalidWitnessError,
    StructuralViolationError,
    girth,
    graph_from_json,
    graph_to_json,
    validate_witness,
    verify_dfvs,
)
from . import oracles

__all__ = [
    "DfvsInstance",
    "GirthInstance",
    "Splice",
    "build_girth_instance",
    "lift_hamcycle",
    "project_hamcycle",
    "solve_small_dfvs_hamiltonicity",
]


@dataclass(frozen=True)
class DfvsInstance:
    """A digraph together with a verified feedback vertex set of size >= 2
    and one designated member (the one that gets the longer splice path;
    defaults to the smallest id)."""

    graph: Digraph
    dfvs: frozenset[int]
    special: int = -1

    def __post_init__(self):
        xs = frozenset(int(v) for v in self.dfvs)
        object.__setattr__(self, "dfvs", xs)
        if len(xs) < 2:
            raise ValueError("feedback set must have at least two vertices; "
                             "singleton cases are solved directly by the oracles")
        special = self.special if self.special >= 0 else min(xs)
        if special not in xs:
            raise ValueError("designated vertex must belong to the feedback set")
        object.__setattr__(self, "special", special)
        if not verify_dfvs(self.graph, xs):
            raise ValueError("removing the set does not make the graph acyclic")

    @property
    def k(self) -> int:
        return len(self.dfvs)

    def to_json(self) -> dict:
        return {
            "graph": graph_to_json(self.graph),
            "dfvs": sorted(self.dfvs),
            "special": self.special,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DfvsInstance":
        return cls(graph_from_json(data["graph"]), frozenset(data["dfvs"]),
                   int(data.get("special", -1)))


@dataclass(frozen=True)
class Splice:
    """Replacement bookkeeping for one split feedback vertex."""

    v_in: int
    v_out: int
    path: tuple[int, ...]  # v_in ... v_out inclusive


@dataclass(eq=False)
class GirthInstance:
    graph: Digraph
    source: DfvsInstance
    multiplier: int  # k + 1; the target cycle length is girth * multiplier
    split_map: dict[int, Splice]

    @property
    def girth_value(self) -> int:
        return self.source.graph.n

    @property
    def required_cycle_length(self) -> int:
        return self.girth_value * self.multiplier

    def to_json(self) -> dict:
        return {
            "kind": "hamdfvs-to-girth",
            "source": self.source.to_json(),
            "graph": graph_to_json(self.graph),
            "multiplier": self.multiplier,
            "split_map": {str(v): {"in": s.v_in, "out": s.v_out, "path": list(s.path)}
                          for v, s in sorted(self.split_map.items())},
            "girth": self.girth_value,
            "required_cycle_length": self.required_cycle_length,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GirthInstance":
        gi = build_girth_instance(DfvsInstance.from_json(data["source"]))
        if gi.graph != graph_from_json(data["graph"]):
            raise ValueError("stored girth instance does not match its source")
        return gi


def build_girth_instance(inst: DfvsInstance) -> GirthInstance:
    """Split every feedback vertex; assert the size and girth facts the
    reduction promises."""
    g, xs, x = inst.graph, inst.dfvs, inst.special
    n, k = g.n, inst.k
    split_map: dict[int, Splice] = {}
    nxt = n
    labels = dict(g.labels)
    for v in sorted(xs):
        path_len = n + k - 1 if v == x else n - 1  # edges on the splice path
        interior = list(range(nxt, nxt + path_len - 1))
        nxt += path_len - 1
        v_out = nxt
        nxt += 1
        split_map[v] = Splice(v, v_out, tuple([v] + interior + [v_out]))
        labels[v] = f"in({v})"
        labels[v_out] = f"out({v})"

    def head(u: int) -> int:  # where edges leaving u now start
        return split_map[u].v_out if u in split_map else u

    edges: list[tuple[int, int]] = []
    for u, w in g.sorted_edges():
        edges.append((head(u), w))  # edges into w keep targeting w == w_in
    for s in split_map.values():
        edges.extend(zip(s.path, s.path[1:]))
        edges.append((s.v_out, s.v_in))

    out = Digraph(nxt, edges, labels=labels)
    if out.n != n * (k + 1):
        raise StructuralViolationError("split graph has wrong vertex count")
    measured = girth(out)
    if measured != n:
        raise StructuralViolationError(f"split graph girth {measured}, expected {n}")
    return GirthInstance(out, inst, k + 1, split_map)


def lift_hamcycle(gi: GirthInstance, h: CycleWitness) -> CycleWitness:
    """Replace each feedback vertex on a source Hamiltonian cycle by its
    full splice path."""
    src = gi.source.graph
    check = validate_witness(src, h, hamiltonian=True)
    if not check:
        raise InvalidWitnessError(f"source witness invalid: {check.reason}")
    seq: list[int] = []
    for v in h.vertices:
        if v in gi.split_map:
            seq.extend(gi.split_map[v].path)
        else:
            seq.append(v)
    lifted = CycleWitness(tuple(seq))
    check = validate_witness(gi.graph, lifted, hamiltonian=True)
    if not check:
        raise StructuralViolationError(f"lifted witness invalid: {check.reason}")
    return lifted


def project_hamcycle(gi: GirthInstance, h: CycleWitness) -> CycleWitness:
    """Contract each splice path of a Hamiltonian cycle of the split graph
    back to its feedback vertex.

    The entry vertex of a splice has out-degree one, so a true Hamiltonian
    cycle traverses every splice contiguously; anything else is reported as
    a structural violation.
    """
    check = validate_witness(gi.graph, h, hamiltonian=True)
    if not check:
        raise InvalidWitnessError(f"witness invalid: {check.reason}")
    seq = h.vertices
    pos = {v: idx for idx, v in enumerate(seq)}
    m = len(seq)
    for s in gi.split_map.values():
        start = pos[s.v_in]
        for offset, expect in enumerate(s.path):
            if seq[(start + offset) % m] != expect:
                raise StructuralViolationError(
                    f"splice of {s.v_in} not traversed contiguously")
    interior = {u for s in gi.split_map.values() for u in s.path[1:]}
    projected = CycleWitness(tuple(v for v in seq if v not in interior))
    check = validate_witness(gi.source.graph, projected, hamiltonian=True)
    if not check:
        raise StructuralViolationError(f"projected witness invalid: {check.reason}")
    return projected


def solve_small_dfvs_hamiltonicity(g: Digraph, dfvs,
                                   budget: oracles.SolverBudget = oracles.DEFAULT_BUDGET,
                                   ) -> oracles.SolveResult:
    """Companion for inputs with a feedback set of size <= 1, which the
    reduction refuses: those are easy cases, answered here by the exact
    oracle directly."""
    xs = frozenset(dfvs)
    if len(xs) > 1:
        raise ValueError("use build_girth_instance for feedback sets of size >= 2")
    if not verify_dfvs(g, xs):
        raise ValueError("not a feedback vertex set")
    return oracles.hamiltonian_cycle(g, budget)
