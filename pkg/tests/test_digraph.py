import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamdfvs.digraph import (
    CycleWitness,
    Digraph,
    PathWitness,
    canonical_dumps,
    find_min_dfvs,
    girth,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    is_acyclic,
    shortest_cycle,
    strongly_connected_components,
    subdivide_edge,
    subdivide_edges,
    topological_order,
    validate_witness,
    verify_dfvs,
)

from bruteforce import exhaustive_min_dfvs, naive_validate
from strategies import digraphs, digraphs_with_cycle

TRIANGLE = Digraph(3, [(0, 1), (1, 2), (2, 0)])
DAG5 = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)])


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Digraph(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Digraph(2, [(0, 5)])

    def test_duplicate_edges_collapse(self):
        g = Digraph(2, [(0, 1), (0, 1)])
        assert g.edge_count == 1

    def test_neighbors_ascending(self):
        g = Digraph(4, [(0, 3), (0, 1), (0, 2)])
        assert g.out_neighbors(0) == (1, 2, 3)
        assert g.in_neighbors(3) == (0,)

    def test_equality_ignores_labels(self):
        a = Digraph(2, [(0, 1)], labels={0: "x"})
        b = Digraph(2, [(0, 1)])
        assert a == b


class TestGirth:
    def test_triangle(self):
        assert girth(TRIANGLE) == 3

    def test_dag_has_none(self):
        assert girth(DAG5) is None

    def test_two_cycle(self):
        assert girth(Digraph(2, [(0, 1), (1, 0)])) == 2

    def test_disjoint_bare_cycles(self):
        g = Digraph(9, [(0, 1), (1, 2), (2, 0),
                        (3, 4), (4, 5), (5, 6), (6, 3), (7, 8), (8, 7)])
        assert girth(g) == 2

    def test_shortest_cycle_is_a_cycle(self):
        cyc = shortest_cycle(Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 0)]))
        assert cyc is not None and len(cyc) == 3
        assert naive_validate(Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 0)]),
                              cyc, is_cycle=True, hamiltonian=False)

    @given(digraphs_with_cycle(max_n=7))
    @settings(max_examples=60)
    def test_doubling_by_full_subdivision(self, g):
        plan = {e: 1 for e in g.edges}
        h, _ = subdivide_edges(g, plan)
        assert girth(h) == 2 * girth(g)


class TestAcyclicityAndDfvs:
    def test_empty_graph_acyclic(self):
        assert is_acyclic(Digraph(0))

    def test_two_cycle_not_acyclic(self):
        assert not is_acyclic(Digraph(2, [(0, 1), (1, 0)]))

    def test_verify_dfvs_triangle(self):
        for v in range(3):
            assert verify_dfvs(TRIANGLE, {v})
        assert not verify_dfvs(TRIANGLE, set())

    def test_verify_dfvs_rejects_foreign_vertex(self):
        with pytest.raises(ValueError):
            verify_dfvs(TRIANGLE, {7})

    @given(digraphs(max_n=7))
    @settings(max_examples=60)
    def test_full_set_always_works_and_empty_iff_acyclic(self, g):
        assert verify_dfvs(g, range(g.n))
        assert verify_dfvs(g, set()) == is_acyclic(g)

    def test_min_dfvs_triangle(self):
        assert find_min_dfvs(TRIANGLE, 1) == frozenset({0})

    def test_min_dfvs_dag_empty(self):
        assert find_min_dfvs(DAG5, 0) == frozenset()

    def test_min_dfvs_two_triangles(self):
        g = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        expected = exhaustive_min_dfvs(g)
        got = find_min_dfvs(g, 3)
        assert got is not None and len(got) == len(expected) == 2

    def test_min_dfvs_budget_too_small(self):
        g = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert find_min_dfvs(g, 1) is None

    @given(digraphs(max_n=6))
    @settings(max_examples=40, deadline=None)
    def test_min_dfvs_matches_exhaustive(self, g):
        expected = exhaustive_min_dfvs(g)
        got = find_min_dfvs(g, g.n)
        assert got is not None and len(got) == len(expected)
        assert verify_dfvs(g, got)


class TestScc:
    def test_triangle_single_component(self):
        assert strongly_connected_components(TRIANGLE) == [(0, 1, 2)]

    def test_dag_all_singletons(self):
        assert strongly_connected_components(DAG5) == [(v,) for v in range(5)]

    def test_cycle_plus_pendant(self):
        g = Digraph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
        assert strongly_connected_components(g) == [(0, 1, 2), (3,)]

    @given(digraphs(max_n=8))
    @settings(max_examples=60)
    def test_components_partition_vertices(self, g):
        comps = strongly_connected_components(g)
        flat = [v for comp in comps for v in comp]
        assert sorted(flat) == list(range(g.n))


class TestSubdivision:
    def test_single_edge(self):
        g = subdivide_edge(Digraph(2, [(0, 1)]), (0, 1))
        assert g.n == 3 and g.edges == frozenset({(0, 2), (2, 1)})

    def test_missing_edge_rejected(self):
        with pytest.raises(ValueError):
            subdivide_edge(TRIANGLE, (0, 2))

    def test_triangle_to_hexagon(self):
        g = TRIANGLE
        for e in g.sorted_edges():
            g = subdivide_edge(g, e)
        assert g.n == 6 and girth(g) == 6

    def test_plan_paths_cover_host(self):
        h, paths = subdivide_edges(TRIANGLE, {(0, 1): 2, (1, 2): 0})
        assert h.n == 5
        assert paths[(0, 1)] == (0, 3, 4, 1)
        assert paths[(1, 2)] == (1, 2)
        covered = set()
        for p in paths.values():
            covered.update(zip(p, p[1:]))
        assert covered == h.edges


class TestWitnesses:
    def test_cycle_rotation_invariance(self):
        assert CycleWitness((2, 0, 1)) == CycleWitness((0, 1, 2))

    def test_validate_cycle(self):
        assert validate_witness(TRIANGLE, CycleWitness((0, 1, 2)), hamiltonian=True)

    def test_repeat_rejected(self):
        chk = validate_witness(TRIANGLE, PathWitness((0, 1, 0)))
        assert not chk and chk.reason == "repeated-vertex"

    def test_missing_edge_rejected(self):
        chk = validate_witness(TRIANGLE, PathWitness((0, 2)))
        assert not chk and chk.reason == "missing-edge"

    def test_not_spanning(self):
        chk = validate_witness(TRIANGLE, PathWitness((0, 1)), hamiltonian=True)
        assert not chk and chk.reason == "not-spanning"

    @given(digraphs(max_n=7), st.lists(st.integers(min_value=0, max_value=8), max_size=8),
           st.booleans(), st.booleans())
    @settings(max_examples=120)
    def test_matches_naive_reimplementation(self, g, seq, as_cycle, ham):
        w = CycleWitness(tuple(seq)) if as_cycle else PathWitness(tuple(seq))
        # canonical rotation of CycleWitness does not change validity
        assert bool(validate_witness(g, w, hamiltonian=ham)) == \
            naive_validate(g, w.vertices, as_cycle, ham)


class TestSerialization:
    def test_json_round_trip(self):
        g = Digraph(3, [(0, 1), (2, 0)], labels={0: "start(0)"})
        back = graph_from_json(graph_to_json(g))
        assert back == g and back.labels == g.labels

    def test_canonical_bytes_stable(self):
        g = Digraph(3, [(2, 0), (0, 1)])
        h = Digraph(3, [(0, 1), (2, 0)])
        assert canonical_dumps(graph_to_json(g)) == canonical_dumps(graph_to_json(h))

    def test_dot_snapshot(self):
        g = Digraph(2, [(0, 1)], labels={0: "a(0)", 1: "b(1)"})
        dot = graph_to_dot(g, highlight=[1], witness=PathWitness((0, 1)))
        assert dot == (
            "digraph G {\n"
            "  rankdir=LR;\n"
            '  0 [label="0:a(0)", style=filled, fillcolor=lightblue];\n'
            '  1 [label="1:b(1)", style=filled, fillcolor=lightgoldenrod, color=red, penwidth=2];\n'
            "  0 -> 1 [color=red, penwidth=2];\n"
            "}\n"
        )


def test_topological_order_deterministic():
    g = Digraph(4, [(3, 1), (3, 2), (1, 0), (2, 0)])
    assert topological_order(g) == [3, 1, 2, 0]
