import itertools
import random

import pytest

from hamdfvs.digraph import CliqueWitness, CycleWitness, StructuralViolationError, validate_witness, verify_dfvs
from hamdfvs.generators import GenSpec, gen_mcc
from hamdfvs.oracles import YES, hamiltonian_cycle, multicolored_clique_exact
from hamdfvs.reduction_clique_dfvs import (
    GadgetGraph,
    MccInstance,
    NotACliqueError,
    build_gadget,
    check_structural_lemmas,
    clique_to_hamcycle,
    gadget_dfvs_size,
    gadget_vertex_count,
    hamcycle_to_clique,
)


def toy(k=2, sizes=(1, 1), edges=()):
    classes, base = [], 0
    for s in sizes:
        classes.append(tuple(range(base, base + s)))
        base += s
    return MccInstance.build(base, edges, classes)


class TestInstance:
    def test_symmetric_closure(self):
        inst = toy(edges=[(0, 1)])
        assert inst.graph.has_edge(0, 1) and inst.graph.has_edge(1, 0)

    def test_rejects_overlapping_classes(self):
        with pytest.raises(ValueError):
            MccInstance.build(2, [], [(0, 1), (1,)])

    def test_rejects_uncovered_vertices(self):
        with pytest.raises(ValueError):
            MccInstance.build(3, [], [(0,), (1,)])

    def test_json_round_trip(self):
        inst = toy(k=3, sizes=(1, 2, 1), edges=[(0, 1), (0, 3)])
        assert MccInstance.from_json(inst.to_json()).graph == inst.graph


class TestBuildGadget:
    def test_rejects_single_class(self):
        with pytest.raises(ValueError):
            build_gadget(MccInstance.build(2, [], [(0, 1)]))

    def test_dfvs_size_formula_k3(self):
        inst = toy(k=3, sizes=(3, 3, 3))
        gg = build_gadget(inst)
        assert len(gg.dfvs) == 15 == gadget_dfvs_size(3)

    def test_vertex_count_k2_singletons(self):
        gg = build_gadget(toy(edges=[(0, 1)]))
        assert gg.graph.n == 20 == gadget_vertex_count(2, (1, 1))

    def test_dfvs_actually_acyclic(self):
        for sizes in [(1, 1), (2, 1), (2, 2), (1, 2, 2)]:
            k = len(sizes)
            inst = toy(k=k, sizes=sizes)
            gg = build_gadget(inst)
            assert verify_dfvs(gg.graph, gg.dfvs)

    def test_block_index_spans_2k_vertices(self):
        gg = build_gadget(toy(k=3, sizes=(2, 1, 1)))
        for (i, v), (lo, hi) in gg.block_index.items():
            assert hi - lo + 1 == 2 * gg.k

    def test_roles_cover_all_vertices(self):
        gg = build_gadget(toy(edges=[(0, 1)]))
        assert set(gg.roles) == set(range(gg.graph.n))

    def test_json_round_trip(self):
        gg = build_gadget(toy(edges=[(0, 1)]))
        back = GadgetGraph.from_json(gg.to_json())
        assert back.graph == gg.graph and back.dfvs == gg.dfvs


class TestWitnessMaps:
    def test_forward_then_back_is_identity(self):
        inst = toy(k=3, sizes=(2, 2, 2), edges=[(0, 2), (0, 4), (2, 4), (1, 3)])
        gg = build_gadget(inst)
        w = CliqueWitness((0, 2, 4))
        h = clique_to_hamcycle(gg, w)
        assert validate_witness(gg.graph, h, hamiltonian=True)
        assert hamcycle_to_clique(gg, h) == w

    def test_rejects_non_clique(self):
        gg = build_gadget(toy(edges=()))  # no cross edge at all
        with pytest.raises(NotACliqueError):
            clique_to_hamcycle(gg, CliqueWitness((0, 1)))

    def test_rejects_wrong_class_member(self):
        gg = build_gadget(toy(sizes=(2, 2), edges=[(0, 2)]))
        with pytest.raises(NotACliqueError):
            clique_to_hamcycle(gg, CliqueWitness((2, 0)))

    def test_backward_rejects_tampered_witness(self):
        inst = toy(edges=[(0, 1)])
        gg = build_gadget(inst)
        h = clique_to_hamcycle(gg, CliqueWitness((0, 1)))
        seq = list(h.vertices)
        seq[3], seq[7] = seq[7], seq[3]
        with pytest.raises(Exception):
            hamcycle_to_clique(gg, CycleWitness(tuple(seq)))

    def test_backward_on_oracle_witness(self):
        inst = toy(sizes=(2, 2), edges=[(1, 3)])
        gg = build_gadget(inst)
        res = hamiltonian_cycle(gg.graph)
        assert res.status == YES
        assert hamcycle_to_clique(gg, res.witness) == CliqueWitness((1, 3))


class TestStructuralPredicates:
    def test_constructed_witness_passes_all(self):
        inst = toy(k=3, sizes=(1, 2, 3),
                   edges=[(0, 1), (0, 3), (1, 3), (0, 2), (2, 4)])
        gg = build_gadget(inst)
        clique = multicolored_clique_exact(inst)
        assert clique.status == YES
        report = check_structural_lemmas(gg, clique_to_hamcycle(gg, clique.witness))
        assert report.all_passed

    def test_oracle_witnesses_pass_on_seeded_instances(self):
        passed = 0
        for seed in range(25):
            spec = GenSpec(seed=seed, family="mcc-planted", k=2,
                           class_sizes=(2, 2), edge_prob=0.4)
            inst, _ = gen_mcc(spec)
            gg = build_gadget(inst)
            res = hamiltonian_cycle(gg.graph)
            assert res.status == YES  # planted clique guarantees yes
            report = check_structural_lemmas(gg, res.witness)
            assert report.all_passed, report.failures()
            passed += 1
        assert passed == 25

    def test_rejects_non_hamiltonian_input(self):
        gg = build_gadget(toy(edges=[(0, 1)]))
        with pytest.raises(Exception):
            check_structural_lemmas(gg, CycleWitness((0, 1, 2)))


class TestEquivalence:
    def test_exhaustive_singletons(self):
        for has_edge in (False, True):
            inst = toy(edges=[(0, 1)] if has_edge else [])
            gg = build_gadget(inst)
            ham = hamiltonian_cycle(gg.graph)
            clique = multicolored_clique_exact(inst)
            assert ham.status == clique.status == (YES if has_edge else "no")

    def test_random_small_instances_agree(self):
        rng = random.Random(23)
        for _ in range(30):
            sizes = (rng.randint(1, 2), rng.randint(1, 2))
            classes = [tuple(range(sizes[0])), tuple(range(sizes[0], sum(sizes)))]
            edges = [(u, v) for u in classes[0] for v in classes[1]
                     if rng.random() < 0.4]
            inst = MccInstance.build(sum(sizes), edges, classes)
            gg = build_gadget(inst)
            assert hamiltonian_cycle(gg.graph).status == \
                multicolored_clique_exact(inst).status
