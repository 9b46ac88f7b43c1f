"""Reduction from Multicolored Clique to Hamiltonian Cycle with a small
directed feedback vertex set, with witness maps in both directions and the
structural facts behind the backward map exposed as executable predicates.

Shape of the gadget for an instance with k color classes:

* For every class ``i`` a long "selector path" ``P_i``: one block of ``2k``
  vertices per candidate vertex ``v`` of the class, laid out as
  ``left, out(j0), in(j0), ..., out(j_{k-2}), in(j_{k-2}), right`` where the
  ``j``'s run over the other classes in ascending order.  Blocks are chained
  left to right in ascending vertex order.
* A "universal" vertex per class, joined in both directions to every block's
  left and right endpoint, lets a Hamiltonian cycle skip the interior of
  exactly one block: that block is the chosen vertex of the class.
* For every ordered class pair ``(i, j)`` a "choice cycle" of length
  ``2*|class i|`` whose out/in ports attach to the ``out(j)/in(j)`` slots of
  every block of class ``i``; covering the cycle forces the cycle to be
  entered exactly once, at the chosen block.
* Terminals ``S/T`` (per class) and ``Shat/That`` (per unordered pair), with
  all edges from ``T + That`` to ``S + Shat``, splice the per-class walks and
  the per-pair walks into one cycle.
* One edge ``out(j) -> in(i)`` per cross-class adjacency of the source graph
  encodes the adjacency matrix; it is the only way a Hamiltonian cycle can
  hop between selector paths, which is what certifies the chosen vertices
  are pairwise adjacent.

Vertex ids are assigned blocks first (class-major, block order, position),
then choice cycles (class-major, partner ascending), then universal
vertices, then S, T, Shat, That in lexicographic order, so witnesses are
reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .digraph import (
    CliqueWitness,
    CycleWitness,
    Digraph,
    InvalidWitnessError,
    StructuralViolationError,
    validate_witness,
    verify_dfvs,
)

__all__ = [
    "MccInstance",
    "CliqueWitness",
    "GadgetGraph",
    "NotACliqueError",
    "build_gadget",
    "clique_to_hamcycle",
    "hamcycle_to_clique",
    "check_structural_lemmas",
    "LemmaCheck",
    "LemmaReport",
    "gadget_vertex_count",
    "gadget_dfvs_size",
]


class NotACliqueError(ValueError):
    """The supposed clique misses a class or a cross adjacency."""


@dataclass(frozen=True)
class MccInstance:
    """Multicolored Clique instance: an undirected graph (stored as a
    symmetric digraph) plus an ordered partition of the vertices into
    color classes."""

    graph: Digraph
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        classes = tuple(tuple(sorted(cls)) for cls in self.classes)
        object.__setattr__(self, "classes", classes)
        seen: set[int] = set()
        for cls in classes:
            if not cls:
                raise ValueError("color classes must be nonempty")
            if seen.intersection(cls):
                raise ValueError("color classes must be disjoint")
            seen.update(cls)
        if seen != set(range(self.graph.n)):
            raise ValueError("color classes must cover all vertices")
        for u, v in self.graph.edges:
            if not self.graph.has_edge(v, u):
                raise ValueError("instance graph must be symmetric; use MccInstance.build")

    @property
    def k(self) -> int:
        return len(self.classes)

    def class_of(self, v: int) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise ValueError(f"vertex {v} in no class")

    @classmethod
    def build(cls, n: int, edges, classes) -> "MccInstance":
        """Symmetric-close the edge list on load (input may be oriented)."""
        sym = set()
        for u, v in edges:
            if u != v:
                sym.add((u, v))
                sym.add((v, u))
        return cls(Digraph(n, sym), tuple(tuple(c) for c in classes))

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted({(min(u, v), max(u, v)) for u, v in self.graph.edges})

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.undirected_edges()],
            "classes": [list(c) for c in self.classes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MccInstance":
        return cls.build(int(data["n"]), [tuple(e) for e in data["edges"]], data["classes"])


def gadget_vertex_count(k: int, sizes) -> int:
    """Independent count: blocks + choice cycles + universal + terminals."""
    return (sum(2 * k * s for s in sizes)
            + sum((k - 1) * 2 * s for s in sizes)
            + k + 2 * k + 2 * comb(k, 2))


def gadget_dfvs_size(k: int) -> int:
    return k * (k - 1) + 2 * k + comb(k, 2)


@dataclass(eq=False)
class GadgetLayout:
    """Id lookup tables for every named gadget vertex."""

    left: dict = field(default_factory=dict)       # (i, v) -> id
    right: dict = field(default_factory=dict)      # (i, v) -> id
    slot_out: dict = field(default_factory=dict)   # (i, v, j) -> id
    slot_in: dict = field(default_factory=dict)    # (i, v, j) -> id
    cyc_out: dict = field(default_factory=dict)    # (i, j, v) -> id
    cyc_in: dict = field(default_factory=dict)     # (i, j, v) -> id
    universal: dict = field(default_factory=dict)  # i -> id
    s: dict = field(default_factory=dict)          # i -> id
    t: dict = field(default_factory=dict)          # i -> id
    shat: dict = field(default_factory=dict)       # (i, j) i<j -> id
    that: dict = field(default_factory=dict)       # (i, j) i<j -> id

    def block_vertices(self, i: int, v: int, k: int, others) -> list[int]:
        seq = [self.left[(i, v)]]
        for j in others:
            seq.append(self.slot_out[(i, v, j)])
            seq.append(self.slot_in[(i, v, j)])
        seq.append(self.right[(i, v)])
        return seq


@dataclass(eq=False)
class GadgetGraph:
    """Reduction output: the gadget digraph, its canonical feedback vertex
    set, per-vertex roles, and the lookup tables the witness maps use."""

    graph: Digraph
    dfvs: frozenset[int]
    roles: dict[int, str]
    block_index: dict[tuple[int, int], tuple[int, int]]
    instance: MccInstance
    layout: GadgetLayout

    @property
    def k(self) -> int:
        return self.instance.k

    def others(self, i: int) -> list[int]:
        return [j for j in range(self.k) if j != i]

    def path_vertices(self, i: int) -> list[int]:
        """All vertices of selector path i in path order."""
        lay, k = self.layout, self.k
        seq: list[int] = []
        for v in self.instance.classes[i]:
            seq.extend(lay.block_vertices(i, v, k, self.others(i)))
        return seq

    def choice_cycle_vertices(self, i: int, j: int) -> list[int]:
        lay = self.layout
        seq: list[int] = []
        for v in self.instance.classes[i]:
            seq.append(lay.cyc_out[(i, j, v)])
            seq.append(lay.cyc_in[(i, j, v)])
        return seq

    def to_json(self) -> dict:
        from .digraph import graph_to_json

        return {
            "kind": "mcc-to-hamdfvs",
            "source": self.instance.to_json(),
            "graph": graph_to_json(self.graph),
            "dfvs": sorted(self.dfvs),
            "roles": {str(v): r for v, r in sorted(self.roles.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GadgetGraph":
        from .digraph import graph_from_json

        inst = MccInstance.from_json(data["source"])
        gg = build_gadget(inst)
        if gg.graph != graph_from_json(data["graph"]) or gg.dfvs != frozenset(data["dfvs"]):
            raise ValueError("stored gadget does not match its source instance")
        return gg


def build_gadget(inst: MccInstance) -> GadgetGraph:
    """Build the gadget; all size and acyclicity invariants are asserted."""
    k = inst.k
    if k < 2:
        raise ValueError("reduction needs at least two color classes")
    lay = GadgetLayout()
    roles: dict[int, str] = {}
    nxt = 0

    def fresh(role: str) -> int:
        nonlocal nxt
        roles[nxt] = role
        nxt += 1
        return nxt - 1

    others = {i: [j for j in range(k) if j != i] for i in range(k)}

    for i in range(k):
        for v in inst.classes[i]:
            lay.left[(i, v)] = fresh(f"path-left({i},{v})")
            for j in others[i]:
                lay.slot_out[(i, v, j)] = fresh(f"path-out({i},{v},{j})")
                lay.slot_in[(i, v, j)] = fresh(f"path-in({i},{v},{j})")
            lay.right[(i, v)] = fresh(f"path-right({i},{v})")
    for i in range(k):
        for j in others[i]:
            for v in inst.classes[i]:
                lay.cyc_out[(i, j, v)] = fresh(f"cycle-out({i},{j},{v})")
                lay.cyc_in[(i, j, v)] = fresh(f"cycle-in({i},{j},{v})")
    for i in range(k):
        lay.universal[i] = fresh(f"universal({i})")
    for i in range(k):
        lay.s[i] = fresh(f"S({i})")
    for i in range(k):
        lay.t[i] = fresh(f"T({i})")
    for i, j in itertools.combinations(range(k), 2):
        lay.shat[(i, j)] = fresh(f"Shat({i},{j})")
    for i, j in itertools.combinations(range(k), 2):
        lay.that[(i, j)] = fresh(f"That({i},{j})")

    edges: list[tuple[int, int]] = []

    for i in range(k):
        cls = inst.classes[i]
        blocks = [lay.block_vertices(i, v, k, others[i]) for v in cls]
        for blk in blocks:
            edges.extend(zip(blk, blk[1:]))
        for a, b in zip(blocks, blocks[1:]):
            edges.append((a[-1], b[0]))
        u = lay.universal[i]
        for v in cls:
            edges.append((u, lay.left[(i, v)]))
            edges.append((u, lay.right[(i, v)]))
            edges.append((lay.left[(i, v)], u))
            edges.append((lay.right[(i, v)], u))
        edges.append((lay.s[i], blocks[0][0]))
        edges.append((blocks[-1][-1], lay.t[i]))
        for j in others[i]:
            ring = []
            for v in cls:
                ring.append(lay.cyc_out[(i, j, v)])
                ring.append(lay.cyc_in[(i, j, v)])
            edges.extend(zip(ring, ring[1:]))
            edges.append((ring[-1], ring[0]))
            for v in cls:
                edges.append((lay.cyc_out[(i, j, v)], lay.slot_out[(i, v, j)]))
                edges.append((lay.slot_in[(i, v, j)], lay.cyc_in[(i, j, v)]))

    for i, j in itertools.combinations(range(k), 2):
        for v in inst.classes[i]:
            edges.append((lay.shat[(i, j)], lay.slot_in[(i, v, j)]))
        for v in inst.classes[j]:
            edges.append((lay.slot_out[(j, v, i)], lay.that[(i, j)]))

    t_side = [lay.t[i] for i in range(k)] + [lay.that[p] for p in sorted(lay.that)]
    s_side = [lay.s[i] for i in range(k)] + [lay.shat[p] for p in sorted(lay.shat)]
    for tv in t_side:
        for sv in s_side:
            edges.append((tv, sv))

    for u, v in inst.undirected_edges():
        i, j = inst.class_of(u), inst.class_of(v)
        if i == j:
            continue  # intra-class edges never matter for a multicolored clique
        if i > j:
            u, v, i, j = v, u, j, i
        edges.append((lay.slot_out[(i, u, j)], lay.slot_in[(j, v, i)]))

    graph = Digraph(nxt, edges, labels=roles)

    dfvs = set()
    for i in range(k):
        first = inst.classes[i][0]
        for j in others[i]:
            dfvs.add(lay.cyc_out[(i, j, first)])
        dfvs.add(lay.universal[i])
        dfvs.add(lay.t[i])
    dfvs.update(lay.that.values())
    dfvs = frozenset(dfvs)

    sizes = [len(c) for c in inst.classes]
    if graph.n != gadget_vertex_count(k, sizes):
        raise StructuralViolationError("gadget vertex count mismatch")
    if len(dfvs) != gadget_dfvs_size(k):
        raise StructuralViolationError("gadget feedback set size mismatch")
    if not verify_dfvs(graph, dfvs):
        raise StructuralViolationError("gadget minus its feedback set is not acyclic")

    block_index = {
        (i, v): (lay.left[(i, v)], lay.right[(i, v)])
        for i in range(k)
        for v in inst.classes[i]
    }
    return GadgetGraph(graph, dfvs, roles, block_index, inst, lay)


def _check_clique(inst: MccInstance, w: CliqueWitness):
    if len(w.vertices) != inst.k:
        raise NotACliqueError("need exactly one vertex per class")
    for i, v in enumerate(w.vertices):
        if v not in inst.classes[i]:
            raise NotACliqueError(f"vertex {v} is not in class {i}")
    for a, b in itertools.combinations(w.vertices, 2):
        if not inst.graph.has_edge(a, b):
            raise NotACliqueError(f"chosen vertices {a} and {b} are not adjacent")


def _ring_from(gg: GadgetGraph, i: int, j: int, v: int) -> list[int]:
    """Full traversal of choice cycle (i,j) entering at in-port of v and
    leaving at out-port of v (its cyclic predecessor)."""
    ring = gg.choice_cycle_vertices(i, j)
    start = ring.index(gg.layout.cyc_in[(i, j, v)])
    return ring[start:] + ring[:start]


def clique_to_hamcycle(gg: GadgetGraph, w: CliqueWitness) -> CycleWitness:
    """Constructive direction: turn a multicolored clique into the canonical
    Hamiltonian cycle of the gadget.

    Piece order is fixed: for each class i, the selector walk (skipping the
    chosen block's interior via the universal vertex), then for each j > i
    the pair walk through both choice cycles; pieces are stitched by the
    complete T+That -> S+Shat edges.
    """
    inst, lay, k = gg.instance, gg.layout, gg.k
    _check_clique(inst, w)
    chosen = dict(enumerate(w.vertices))

    pieces: list[list[int]] = []
    for i in range(k):
        v_i = chosen[i]
        walk = [lay.s[i]]
        for v in inst.classes[i]:
            blk = lay.block_vertices(i, v, k, gg.others(i))
            if v == v_i:
                walk.append(blk[0])
                walk.append(lay.universal[i])
                walk.append(blk[-1])
            else:
                walk.extend(blk)
        walk.append(lay.t[i])
        pieces.append(walk)
        for j in range(i + 1, k):
            v_j = chosen[j]
            hop = [lay.shat[(i, j)], lay.slot_in[(i, v_i, j)]]
            hop.extend(_ring_from(gg, i, j, v_i))
            hop.append(lay.slot_out[(i, v_i, j)])
            hop.append(lay.slot_in[(j, v_j, i)])
            hop.extend(_ring_from(gg, j, i, v_j))
            hop.append(lay.slot_out[(j, v_j, i)])
            hop.append(lay.that[(i, j)])
            pieces.append(hop)

    seq: list[int] = []
    for p in pieces:
        seq.extend(p)
    cycle = CycleWitness(tuple(seq))
    check = validate_witness(gg.graph, cycle, hamiltonian=True)
    if not check:
        raise StructuralViolationError(f"constructed cycle invalid: {check.reason}")
    return cycle


def _choice_ports_used(gg: GadgetGraph, ham_edges: frozenset, i: int, j: int):
    """For choice cycle (i,j): which block vertices' in/out port edges the
    cycle uses."""
    lay = gg.layout
    ins, outs = set(), set()
    for v in gg.instance.classes[i]:
        if (lay.slot_in[(i, v, j)], lay.cyc_in[(i, j, v)]) in ham_edges:
            ins.add(v)
        if (lay.cyc_out[(i, j, v)], lay.slot_out[(i, v, j)]) in ham_edges:
            outs.add(v)
    return ins, outs


def hamcycle_to_clique(gg: GadgetGraph, h: CycleWitness) -> CliqueWitness:
    """Backward direction: read the chosen block of every class off the
    choice-cycle boundary edges of a Hamiltonian cycle.

    Any ambiguity (a choice cycle entered twice, or through different
    blocks for different partners) cannot happen for a true Hamiltonian
    cycle and is reported as a structural violation.
    """
    check = validate_witness(gg.graph, h, hamiltonian=True)
    if not check:
        raise InvalidWitnessError(f"not a Hamiltonian cycle: {check.reason}")
    ham_edges = h.edge_set()
    chosen: list[int] = []
    for i in range(gg.k):
        winners: set[int] = set()
        for j in gg.others(i):
            ins, outs = _choice_ports_used(gg, ham_edges, i, j)
            if ins != outs:
                raise StructuralViolationError(
                    f"unpaired choice-cycle boundary for classes ({i},{j})")
            if len(ins) != 1:
                raise StructuralViolationError(
                    f"choice cycle ({i},{j}) entered {len(ins)} times")
            winners.update(ins)
        if len(winners) != 1:
            raise StructuralViolationError(
                f"class {i} selects different blocks for different partners")
        chosen.append(winners.pop())
    w = CliqueWitness(tuple(chosen))
    try:
        _check_clique(gg.instance, w)
    except NotACliqueError as exc:
        raise StructuralViolationError(f"extracted selection is not a clique: {exc}")
    return w


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    scope: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class LemmaReport:
    checks: tuple[LemmaCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[LemmaCheck]:
        return [c for c in self.checks if not c.passed]


def check_structural_lemmas(gg: GadgetGraph, h: CycleWitness) -> LemmaReport:
    """Evaluate, against a concrete Hamiltonian cycle, the structural facts
    the backward witness map relies on:

    * boundary-pairing: each choice cycle's boundary is hit in matched
      in/out pairs only;
    * block-all-or-none: a block either uses all its choice-cycle ports or
      none of them;
    * block-unique-choice: exactly one block per class uses its ports;
    * bypass-edge-unused: the chosen block's internal out(j)->in(j) edge is
      never traversed;
    * cross-edges-at-most-one: at most one adjacency edge between any two
      selector paths is traversed.
    """
    check = validate_witness(gg.graph, h, hamiltonian=True)
    if not check:
        raise InvalidWitnessError(f"not a Hamiltonian cycle: {check.reason}")
    inst, lay, k = gg.instance, gg.layout, gg.k
    ham_edges = h.edge_set()
    out: list[LemmaCheck] = []

    pairing_ok: dict[tuple[int, int], tuple[set, set]] = {}
    for i in range(k):
        for j in gg.others(i):
            ins, outs = _choice_ports_used(gg, ham_edges, i, j)
            pairing_ok[(i, j)] = (ins, outs)
            out.append(LemmaCheck(
                "boundary-pairing", f"i={i},j={j}", ins == outs,
                "" if ins == outs else f"in-ports {sorted(ins)} vs out-ports {sorted(outs)}"))

    per_class_choice: dict[int, Optional[int]] = {}
    for i in range(k):
        used_by_block: dict[int, set[int]] = {v: set() for v in inst.classes[i]}
        for j in gg.others(i):
            ins, outs = pairing_ok[(i, j)]
            for v in ins | outs:
                used_by_block[v].add(j)
        partial = [v for v, js in used_by_block.items() if js and js != set(gg.others(i))]
        out.append(LemmaCheck(
            "block-all-or-none", f"i={i}", not partial,
            "" if not partial else f"blocks with partial port usage: {sorted(partial)}"))
        active = sorted(v for v, js in used_by_block.items() if js)
        out.append(LemmaCheck(
            "block-unique-choice", f"i={i}", len(active) == 1,
            "" if len(active) == 1 else f"active blocks: {active}"))
        per_class_choice[i] = active[0] if len(active) == 1 else None

    for i in range(k):
        v = per_class_choice[i]
        if v is None:
            out.append(LemmaCheck("bypass-edge-unused", f"i={i}", False,
                                  "no unique block choice"))
            continue
        for j in gg.others(i):
            e = (lay.slot_out[(i, v, j)], lay.slot_in[(i, v, j)])
            out.append(LemmaCheck(
                "bypass-edge-unused", f"i={i},j={j}", e not in ham_edges,
                "" if e not in ham_edges else f"bypass edge {e} traversed"))

    path_sets = {i: set(gg.path_vertices(i)) for i in range(k)}
    for i, j in itertools.combinations(range(k), 2):
        cross = sum(1 for (a, b) in ham_edges
                    if (a in path_sets[i] and b in path_sets[j])
                    or (a in path_sets[j] and b in path_sets[i]))
        out.append(LemmaCheck(
            "cross-edges-at-most-one", f"i={i},j={j}", cross <= 1,
            "" if cross <= 1 else f"{cross} cross edges traversed"))

    return LemmaReport(tuple(out))
