"""Hypothesis strategies shared across the suite."""

from __future__ import annotations

from hypothesis import strategies as st

from hamdfvs.digraph import Digraph


@st.composite
def digraphs(draw, min_n: int = 0, max_n: int = 8, with_labels: bool = False):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    labels = None
    if with_labels and n:
        labels = {0: "tag(0)"}
    return Digraph(n, edges, labels=labels)


@st.composite
def dags(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Digraph(n, edges)


@st.composite
def digraphs_with_cycle(draw, max_n: int = 8):
    """A digraph guaranteed to contain at least one cycle."""
    n = draw(st.integers(min_value=2, max_value=max_n))
    cycle_len = draw(st.integers(min_value=2, max_value=n))
    edges = {(i, (i + 1) % cycle_len) for i in range(cycle_len)}
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges |= draw(st.sets(st.sampled_from(pairs)))
    return Digraph(n, edges)
