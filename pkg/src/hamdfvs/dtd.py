"""Directed tree decompositions: the (arborescence, bags, guards) triple,
a validity verifier, and width computation.

A decomposition is valid when the bags partition the vertex set (empty bags
allowed) and, for every tree edge, deleting its guard set leaves no closed
directed walk that meets both the subtree side and the rest.  The closed
walk condition is decided through strongly connected components: a closed
walk through two vertices exists exactly when they share a component, so a
violation is a component of the guarded-deleted graph meeting both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, strongly_connected_components, topological_order

__all__ = [
    "DirectedTreeDecomposition",
    "DtdReport",
    "verify_dtd",
    "dtd_width",
    "trivial_dag_decomposition",
]


@dataclass(eq=False)
class DirectedTreeDecomposition:
    """Arborescence given by parent pointers, bag function ``beta`` and
    guard function ``gamma``; ``gamma[t]`` guards the tree edge from
    ``parent[t]`` to ``t``."""

    root: int
    parent: dict[int, int]
    beta: dict[int, frozenset[int]]
    gamma: dict[int, frozenset[int]]

    def __post_init__(self):
        self.beta = {int(t): frozenset(vs) for t, vs in self.beta.items()}
        self.gamma = {int(t): frozenset(vs) for t, vs in self.gamma.items()}
        self.parent = {int(c): int(p) for c, p in self.parent.items()}

    @property
    def nodes(self) -> list[int]:
        ids = {self.root} | set(self.parent) | set(self.parent.values()) | set(self.beta)
        return sorted(ids)

    def children(self, t: int) -> list[int]:
        return sorted(c for c, p in self.parent.items() if p == t)

    def check_tree(self) -> Optional[str]:
        """None when the parent structure is an arborescence on ``nodes``."""
        if self.root in self.parent:
            return "root must not have a parent"
        for t in self.nodes:
            if t != self.root and t not in self.parent:
                return f"node {t} unreachable: no parent"
        for t in self.parent:
            seen = {t}
            cur = t
            while cur != self.root:
                cur = self.parent.get(cur)
                if cur is None:
                    return f"node {t} has a dangling ancestor chain"
                if cur in seen:
                    return f"parent pointers contain a cycle through {cur}"
                seen.add(cur)
        return None

    def subtree_vertices(self, t: int) -> frozenset[int]:
        """Union of bags over the subtree rooted at t."""
        acc: set[int] = set()
        stack = [t]
        while stack:
            u = stack.pop()
            acc |= self.beta.get(u, frozenset())
            stack.extend(self.children(u))
        return frozenset(acc)

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "root": self.root,
            "parent": {str(c): p for c, p in sorted(self.parent.items())},
            "beta": {str(t): sorted(vs) for t, vs in sorted(self.beta.items())},
            "gamma": {str(t): sorted(vs) for t, vs in sorted(self.gamma.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "DirectedTreeDecomposition":
        return cls(
            root=int(data["root"]),
            parent={int(c): int(p) for c, p in data.get("parent", {}).items()},
            beta={int(t): frozenset(vs) for t, vs in data.get("beta", {}).items()},
            gamma={int(t): frozenset(vs) for t, vs in data.get("gamma", {}).items()},
        )


@dataclass(frozen=True)
class DtdReport:
    valid: bool
    violations: tuple[str, ...]


def verify_dtd(g: Digraph, d: DirectedTreeDecomposition) -> DtdReport:
    """Check the partition condition and the guarded closed-walk condition
    for every tree edge; all findings are collected into the report."""
    violations: list[str] = []
    tree_err = d.check_tree()
    if tree_err:
        return DtdReport(False, (tree_err,))

    assigned: dict[int, int] = {}
    for t in d.nodes:
        for v in d.beta.get(t, frozenset()):
            if not (0 <= v < g.n):
                violations.append(f"bag of node {t} mentions unknown vertex {v}")
            elif v in assigned:
                violations.append(f"vertex {v} appears in bags of {assigned[v]} and {t}")
            else:
                assigned[v] = t
    missing = sorted(set(range(g.n)) - set(assigned))
    if missing:
        violations.append(f"vertices not covered by any bag: {missing}")

    for t in sorted(d.parent):
        guard = d.gamma.get(t, frozenset())
        inside = d.subtree_vertices(t)
        outside = frozenset(range(g.n)) - inside
        survivors = [v for v in range(g.n) if v not in guard]
        index = {v: idx for idx, v in enumerate(survivors)}
        sub = Digraph(len(survivors),
                      [(index[u], index[v]) for u, v in g.edges
                       if u in index and v in index])
        for comp in strongly_connected_components(sub):
            verts = {survivors[c] for c in comp}
            if verts & inside and verts & outside:
                violations.append(
                    f"edge ({d.parent[t]}->{t}): closed walk crosses the cut "
                    f"through component {sorted(verts)}")
                break
    return DtdReport(not violations, tuple(violations))


def dtd_width(d: DirectedTreeDecomposition) -> int:
    """Max over nodes of |bag + incident guards| - 1."""
    tree_err = d.check_tree()
    if tree_err:
        raise ValueError(f"invalid decomposition: {tree_err}")
    worst = 0
    for t in d.nodes:
        spread = set(d.beta.get(t, frozenset()))
        if t in d.gamma and t in d.parent:
            spread |= d.gamma[t]
        for c in d.children(t):
            spread |= d.gamma.get(c, frozenset())
        worst = max(worst, len(spread))
    return worst - 1


def trivial_dag_decomposition(g: Digraph) -> DirectedTreeDecomposition:
    """Width-0 decomposition of a DAG: a topological chain of singleton
    bags with empty guards (a DAG has no closed walks at all)."""
    order = topological_order(g)
    if order is None:
        raise ValueError("graph has a cycle; no trivial decomposition")
    if not order:
        return DirectedTreeDecomposition(0, {}, {0: frozenset()}, {})
    parent = {t: t - 1 for t in range(1, len(order))}
    beta = {t: frozenset({v}) for t, v in enumerate(order)}
    gamma = {t: frozenset() for t in range(1, len(order))}
    return DirectedTreeDecomposition(0, parent, beta, gamma)
