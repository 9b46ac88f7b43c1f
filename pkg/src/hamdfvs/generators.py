"""Seeded instance generators for the property and acceptance suites.

All randomness comes from numpy's PCG64 bit generator seeded with the
spec's 64-bit seed, so identical GenSpec values produce byte-identical
instances on every platform.  Draw order is fixed and documented per
family; never reorder draws without bumping the family name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .digraph import CliqueWitness, Digraph, Edge
from .reduction_clique_dfvs import MccInstance
from .reduction_girth import DfvsInstance
from . import wall as wall_mod

__all__ = ["GenSpec", "FAMILIES", "gen_mcc", "gen_digraph_with_dfvs",
           "gen_subdivision_plan", "generate"]

FAMILIES = ("mcc-planted", "mcc-random", "digraph-with-dfvs", "wall-subdivision-plan")


@dataclass(frozen=True)
class GenSpec:
    """Instance-generation parameters.  Family-specific fields:

    mcc-planted / mcc-random: k, class_sizes, edge_prob (cross-class edge
    probability; the planted family additionally wires one clique).

    digraph-with-dfvs: n, dfvs_size, planted (lay a spanning cycle first),
    edge_prob (extra arcs).

    wall-subdivision-plan: wall_order, expand_min, expand_max.
    """

    seed: int
    family: str
    k: int = 2
    class_sizes: tuple[int, ...] = (2, 2)
    edge_prob: float = 0.5
    n: int = 6
    dfvs_size: int = 2
    planted: bool = True
    wall_order: int = 5
    expand_min: int = 0
    expand_max: int = 3

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not (0 <= self.seed < 2 ** 64):
            raise ValueError("seed must fit in 64 bits")
        object.__setattr__(self, "class_sizes", tuple(self.class_sizes))

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))

    def to_json(self) -> dict:
        return {
            "seed": self.seed, "family": self.family, "k": self.k,
            "class_sizes": list(self.class_sizes), "edge_prob": self.edge_prob,
            "n": self.n, "dfvs_size": self.dfvs_size, "planted": self.planted,
            "wall_order": self.wall_order,
            "expand_min": self.expand_min, "expand_max": self.expand_max,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GenSpec":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: (tuple(v) if k == "class_sizes" else v)
                      for k, v in data.items() if k in known})


def gen_mcc(spec: GenSpec) -> tuple[MccInstance, Optional[CliqueWitness]]:
    """Color classes are contiguous id ranges.  Planted family first draws
    one vertex per class and wires them into a clique, then both families
    sweep cross-class pairs in (class pair, id, id) order adding each with
    probability edge_prob."""
    if spec.family not in ("mcc-planted", "mcc-random"):
        raise ValueError(f"gen_mcc cannot build family {spec.family!r}")
    if spec.k < 2 or len(spec.class_sizes) != spec.k or any(s < 1 for s in spec.class_sizes):
        raise ValueError("need k >= 2 nonempty classes")
    rng = spec.rng()
    classes = []
    base = 0
    for size in spec.class_sizes:
        classes.append(tuple(range(base, base + size)))
        base += size
    n = base
    edges: set[tuple[int, int]] = set()
    plant: Optional[CliqueWitness] = None
    if spec.family == "mcc-planted":
        picks = [cls[int(rng.integers(len(cls)))] for cls in classes]
        for a in range(spec.k):
            for b in range(a + 1, spec.k):
                edges.add((picks[a], picks[b]))
        plant = CliqueWitness(tuple(picks))
    for a in range(spec.k):
        for b in range(a + 1, spec.k):
            for u in classes[a]:
                for v in classes[b]:
                    if (u, v) in edges:
                        continue
                    if rng.random() < spec.edge_prob:
                        edges.add((u, v))
    return MccInstance.build(n, edges, classes), plant


def gen_digraph_with_dfvs(spec: GenSpec) -> DfvsInstance:
    """The feedback set is the top ``dfvs_size`` ids; the remaining vertices
    form a DAG under a random permutation order, so the set is a feedback
    vertex set by construction.  The planted variant first lays a spanning
    cycle that alternates feedback vertices with increasing runs of DAG
    vertices, then both variants sprinkle extra arcs (forward-only inside
    the DAG part) with probability edge_prob."""
    if spec.family != "digraph-with-dfvs":
        raise ValueError(f"gen_digraph_with_dfvs cannot build family {spec.family!r}")
    n, k = spec.n, spec.dfvs_size
    if not (2 <= k <= n):
        raise ValueError("need n >= dfvs_size >= 2")
    rng = spec.rng()
    dag_part = list(range(n - k))
    xs = list(range(n - k, n))
    rank_order = [int(v) for v in rng.permutation(n - k)]
    rank = {v: r for r, v in enumerate(rank_order)}
    edges: set[Edge] = set()
    if spec.planted:
        run_of = [int(rng.integers(k)) for _ in dag_part]
        runs: list[list[int]] = [[] for _ in range(k)]
        for v in dag_part:
            runs[run_of[v]].append(v)
        for r in runs:
            r.sort(key=lambda v: rank[v])
        cycle: list[int] = []
        for idx, x in enumerate(xs):
            cycle.append(x)
            cycle.extend(runs[idx])
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            edges.add((a, b))
    for u in dag_part:
        for v in dag_part:
            if u != v and rank[u] < rank[v] and rng.random() < spec.edge_prob:
                edges.add((u, v))
    for x in xs:
        for v in range(n):
            if v != x:
                if rng.random() < spec.edge_prob:
                    edges.add((x, v))
                if v not in xs and rng.random() < spec.edge_prob:
                    edges.add((v, x))
    return DfvsInstance(Digraph(n, edges), frozenset(xs))


def gen_subdivision_plan(spec: GenSpec, order: Optional[int] = None) -> dict[Edge, int]:
    """Per-edge expansion counts drawn uniformly in [expand_min, expand_max]
    over the wall's sorted edge list."""
    if spec.family != "wall-subdivision-plan":
        raise ValueError(f"gen_subdivision_plan cannot build family {spec.family!r}")
    if spec.expand_min < 0 or spec.expand_max < spec.expand_min:
        raise ValueError("need 0 <= expand_min <= expand_max")
    rng = spec.rng()
    w = wall_mod.build_wall(order if order is not None else spec.wall_order)
    return {e: int(rng.integers(spec.expand_min, spec.expand_max + 1))
            for e in w.graph.sorted_edges()}


def generate(spec: GenSpec) -> tuple[object, dict]:
    """Family dispatch returning (instance, sidecar metadata)."""
    meta: dict = {"spec": spec.to_json()}
    if spec.family in ("mcc-planted", "mcc-random"):
        inst, plant = gen_mcc(spec)
        if plant is not None:
            meta["planted_clique"] = list(plant.vertices)
        return inst, meta
    if spec.family == "digraph-with-dfvs":
        inst = gen_digraph_with_dfvs(spec)
        meta["dfvs"] = sorted(inst.dfvs)
        meta["planted_hamiltonian"] = spec.planted
        return inst, meta
    plan = gen_subdivision_plan(spec)
    meta["wall_order"] = spec.wall_order
    return plan, meta
