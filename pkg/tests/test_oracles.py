import itertools
import random

import pytest
from hypothesis import given, settings

from hamdfvs.digraph import CycleWitness, Digraph, PathWitness, girth, validate_witness
from hamdfvs.oracles import (
    BUDGET,
    NO,
    YES,
    SolverBudget,
    dag_longest_path,
    hamiltonian_cycle,
    hamiltonian_path,
    longest_cycle_exact,
    longest_path_exact,
    multicolored_clique_exact,
)
from hamdfvs.reduction_clique_dfvs import MccInstance

from bruteforce import all_simple_cycles, longest_simple_path, mcc_by_subsets
from strategies import digraphs

TRIANGLE = Digraph(3, [(0, 1), (1, 2), (2, 0)])
CHAIN4 = Digraph(4, [(0, 1), (1, 2), (2, 3)])

# forces the backtracking engine even on tiny graphs
TINY_BACKTRACK = SolverBudget(max_bitmask_vertices=1, node_limit=500_000, time_limit=30.0)


class TestHamiltonianCycle:
    def test_triangle(self):
        res = hamiltonian_cycle(TRIANGLE)
        assert res.status == YES and res.witness == CycleWitness((0, 1, 2))

    def test_path_graph_has_none(self):
        assert hamiltonian_cycle(CHAIN4).status == NO

    def test_empty_and_singleton(self):
        assert hamiltonian_cycle(Digraph(0)).status == NO
        assert hamiltonian_cycle(Digraph(1)).status == NO

    def test_lexicographically_least(self):
        # two Hamiltonian cycles: 0,1,2,3 and 0,2,1,3 — the solver must pick 0,1,...
        g = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 1), (1, 3)])
        res = hamiltonian_cycle(g)
        assert res.witness.vertices == (0, 1, 2, 3)

    def test_budget_exceeded_is_distinct(self):
        g = Digraph(12, [(u, v) for u in range(12) for v in range(12) if u != v])
        res = hamiltonian_cycle(g, SolverBudget(node_limit=5, time_limit=30.0))
        assert res.status == BUDGET and res.witness is None

    @given(digraphs(max_n=9))
    @settings(max_examples=80, deadline=None)
    def test_engines_agree(self, g):
        a = hamiltonian_cycle(g)
        b = hamiltonian_cycle(g, TINY_BACKTRACK)
        assert a.status == b.status
        for res in (a, b):
            if res.status == YES:
                assert validate_witness(g, res.witness, hamiltonian=True)


class TestHamiltonianPath:
    def test_single_edge(self):
        res = hamiltonian_path(Digraph(2, [(0, 1)]))
        assert res.status == YES and res.witness == PathWitness((0, 1))

    def test_isolated_pair(self):
        assert hamiltonian_path(Digraph(2)).status == NO

    def test_singleton(self):
        res = hamiltonian_path(Digraph(1))
        assert res.status == YES and res.witness.vertices == (0,)

    @given(digraphs(min_n=1, max_n=8))
    @settings(max_examples=80, deadline=None)
    def test_engines_agree(self, g):
        a = hamiltonian_path(g)
        b = hamiltonian_path(g, TINY_BACKTRACK)
        assert a.status == b.status
        if a.status == YES:
            assert validate_witness(g, a.witness, hamiltonian=True)
            assert validate_witness(g, b.witness, hamiltonian=True)


class TestLongestPath:
    def test_chain(self):
        res = longest_path_exact(CHAIN4)
        assert res.witness.length == 3

    def test_triangle(self):
        assert longest_path_exact(TRIANGLE).witness.length == 2

    def test_rejects_oversized(self):
        g = Digraph(30)
        with pytest.raises(ValueError):
            longest_path_exact(g)

    @given(digraphs(min_n=1, max_n=7))
    @settings(max_examples=60, deadline=None)
    def test_matches_enumeration(self, g):
        res = longest_path_exact(g)
        assert res.status == YES
        assert res.witness.length == longest_simple_path(g)
        assert validate_witness(g, res.witness)


class TestLongestCycle:
    def test_dag_has_none(self):
        assert longest_cycle_exact(CHAIN4).status == NO

    def test_figure_eight(self):
        g = Digraph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)])
        expected = max(len(c) for c in all_simple_cycles(g))
        res = longest_cycle_exact(g)
        assert expected == 4 and res.witness.length == 4

    @given(digraphs(max_n=7))
    @settings(max_examples=60, deadline=None)
    def test_matches_enumeration_and_girth_bound(self, g):
        res = longest_cycle_exact(g)
        cycles = all_simple_cycles(g)
        if not cycles:
            assert res.status == NO
        else:
            assert res.witness.length == max(len(c) for c in cycles)
            assert res.witness.length >= girth(g)
            assert validate_witness(g, res.witness)

    def test_equality_when_single_cycle(self):
        g = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])
        assert longest_cycle_exact(g).witness.length == girth(g) == 4


class TestDagLongestPath:
    def test_chain_full(self):
        assert dag_longest_path(CHAIN4).vertices == (0, 1, 2, 3)

    def test_antichain(self):
        assert dag_longest_path(Digraph(3)).length == 0

    def test_rejects_cycle(self):
        with pytest.raises(ValueError):
            dag_longest_path(TRIANGLE)

    def test_matches_exact_on_random_dags(self):
        rng = random.Random(11)
        for _ in range(25):
            n = rng.randint(1, 12)
            edges = {(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < 0.3}
            g = Digraph(n, edges)
            assert dag_longest_path(g).length == longest_path_exact(g).witness.length


class TestMulticoloredClique:
    def test_k1_any_vertex(self):
        inst = MccInstance.build(2, [], [(0, 1)])
        res = multicolored_clique_exact(inst)
        assert res.status == YES and res.witness.vertices == (0,)

    def test_no_cross_edges(self):
        inst = MccInstance.build(4, [], [(0, 1), (2, 3)])
        assert multicolored_clique_exact(inst).status == NO

    def test_planted_triple(self):
        inst = MccInstance.build(6, [(0, 2), (0, 4), (2, 4)], [(0, 1), (2, 3), (4, 5)])
        res = multicolored_clique_exact(inst)
        assert res.status == YES and res.witness.vertices == (0, 2, 4)

    def test_budget(self):
        inst = MccInstance.build(9, [], [(0, 1, 2), (3, 4, 5), (6, 7, 8)])
        assert multicolored_clique_exact(inst, SolverBudget(node_limit=2)).status == BUDGET

    def test_matches_subset_enumeration(self):
        rng = random.Random(5)
        for _ in range(40):
            sizes = [rng.randint(1, 3) for _ in range(rng.randint(2, 4))]
            n = sum(sizes)
            classes, base = [], 0
            for s in sizes:
                classes.append(tuple(range(base, base + s)))
                base += s
            edges = {(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < 0.5}
            inst = MccInstance.build(n, edges, classes)
            got = multicolored_clique_exact(inst)
            assert (got.status == YES) == mcc_by_subsets(inst)
            if got.status == YES:
                w = got.witness.vertices
                assert all(w[i] in classes[i] for i in range(len(classes)))
                assert all(inst.graph.has_edge(a, b)
                           for a, b in itertools.combinations(w, 2))


def test_any_witness_passes_validation_across_solvers():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 9)
        edges = {(u, v) for u in range(n) for v in range(n)
                 if u != v and rng.random() < 0.35}
        g = Digraph(n, edges)
        for solver in (hamiltonian_cycle, hamiltonian_path, longest_path_exact,
                       longest_cycle_exact):
            res = solver(g)
            if res.status == YES and res.witness is not None:
                assert validate_witness(g, res.witness)
