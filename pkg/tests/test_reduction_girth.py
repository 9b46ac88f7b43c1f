import random

import pytest

from hamdfvs.digraph import CycleWitness, Digraph, girth, validate_witness
from hamdfvs.generators import GenSpec, gen_digraph_with_dfvs
from hamdfvs.oracles import NO, YES, hamiltonian_cycle, longest_cycle_exact
from hamdfvs.reduction_girth import (
    DfvsInstance,
    GirthInstance,
    build_girth_instance,
    lift_hamcycle,
    project_hamcycle,
    solve_small_dfvs_hamiltonicity,
)

FIVE_CYCLE = Digraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def five_cycle_instance():
    return DfvsInstance(FIVE_CYCLE, frozenset({0, 1}))


class TestInstance:
    def test_rejects_singleton_set(self):
        with pytest.raises(ValueError):
            DfvsInstance(FIVE_CYCLE, frozenset({0}))

    def test_rejects_non_dfvs(self):
        g = Digraph(6, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)])
        with pytest.raises(ValueError):
            DfvsInstance(g, frozenset({0, 2}))

    def test_special_defaults_to_min(self):
        assert five_cycle_instance().special == 0

    def test_special_must_be_member(self):
        with pytest.raises(ValueError):
            DfvsInstance(FIVE_CYCLE, frozenset({0, 1}), special=3)


class TestBuild:
    def test_size_and_girth_n5_k2(self):
        gi = build_girth_instance(five_cycle_instance())
        assert gi.graph.n == 15  # n*(k+1)
        assert girth(gi.graph) == 5
        assert gi.required_cycle_length == 15

    def test_size_and_girth_n6_k3(self):
        g = Digraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 0)])
        gi = build_girth_instance(DfvsInstance(g, frozenset({0, 1, 2})))
        assert gi.graph.n == 24 and girth(gi.graph) == 6

    def test_splice_lengths(self):
        gi = build_girth_instance(five_cycle_instance())
        n, k = 5, 2
        for v, s in gi.split_map.items():
            expected = n + k - 1 if v == gi.source.special else n - 1
            assert len(s.path) - 1 == expected
            assert gi.graph.has_edge(s.v_out, s.v_in)

    def test_json_round_trip(self):
        gi = build_girth_instance(five_cycle_instance())
        assert GirthInstance.from_json(gi.to_json()).graph == gi.graph


class TestWitnessMaps:
    def test_lift_length_and_validity(self):
        gi = build_girth_instance(five_cycle_instance())
        src = hamiltonian_cycle(FIVE_CYCLE).witness
        lifted = lift_hamcycle(gi, src)
        assert lifted.length == 15
        assert validate_witness(gi.graph, lifted, hamiltonian=True)

    def test_identity_outside_split(self):
        gi = build_girth_instance(five_cycle_instance())
        src = hamiltonian_cycle(FIVE_CYCLE).witness
        lifted = set(lift_hamcycle(gi, src).vertices)
        for v in range(5):
            if v not in gi.split_map:
                assert v in lifted

    def test_project_lift_round_trip(self):
        gi = build_girth_instance(five_cycle_instance())
        src = hamiltonian_cycle(FIVE_CYCLE).witness
        assert project_hamcycle(gi, lift_hamcycle(gi, src)) == src

    def test_project_oracle_witness(self):
        gi = build_girth_instance(five_cycle_instance())
        res = hamiltonian_cycle(gi.graph)
        assert res.status == YES
        projected = project_hamcycle(gi, res.witness)
        assert validate_witness(FIVE_CYCLE, projected, hamiltonian=True)

    def test_tampered_witness_rejected(self):
        gi = build_girth_instance(five_cycle_instance())
        bad = CycleWitness(tuple(range(gi.graph.n)))
        with pytest.raises(Exception):
            project_hamcycle(gi, bad)


class TestEquivalence:
    def test_seeded_instances_agree(self):
        for seed in range(30):
            spec = GenSpec(seed=seed, family="digraph-with-dfvs",
                           n=5 + seed % 4, dfvs_size=2 + seed % 2,
                           planted=seed % 3 != 0, edge_prob=0.3)
            inst = gen_digraph_with_dfvs(spec)
            gi = build_girth_instance(inst)
            assert gi.graph.n == inst.graph.n * (inst.k + 1)
            assert girth(gi.graph) == inst.graph.n
            src = hamiltonian_cycle(inst.graph)
            tgt = hamiltonian_cycle(gi.graph)
            assert src.status in (YES, NO) and src.status == tgt.status

    def test_longest_cycle_hits_required_length_iff_yes(self):
        # bitmask-sized split graphs only (n*(k+1) <= 24)
        for seed in (0, 1, 2, 3):
            spec = GenSpec(seed=seed, family="digraph-with-dfvs", n=6,
                           dfvs_size=2, planted=seed % 2 == 0, edge_prob=0.25)
            inst = gen_digraph_with_dfvs(spec)
            gi = build_girth_instance(inst)
            assert gi.graph.n <= 24
            lc = longest_cycle_exact(gi.graph)
            src = hamiltonian_cycle(inst.graph)
            hit = lc.status == YES and lc.witness.length >= gi.required_cycle_length
            assert hit == (src.status == YES)

    def test_no_cycle_shorter_than_n(self):
        for seed in range(10):
            spec = GenSpec(seed=seed, family="digraph-with-dfvs", n=6,
                           dfvs_size=2, edge_prob=0.4)
            inst = gen_digraph_with_dfvs(spec)
            gi = build_girth_instance(inst)
            assert girth(gi.graph) == inst.graph.n


def test_small_dfvs_helper():
    tri = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert solve_small_dfvs_hamiltonicity(tri, {0}).status == YES
    with pytest.raises(ValueError):
        solve_small_dfvs_hamiltonicity(tri, {0, 1})
    with pytest.raises(ValueError):
        solve_small_dfvs_hamiltonicity(tri, set())
