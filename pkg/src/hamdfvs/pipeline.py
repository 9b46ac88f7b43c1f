"""End-to-end round trips: generate an instance, push it through the
reductions, solve source and target with the exact oracles, map witnesses
both ways, and insist on agreement everywhere.

A disagreement raises :class:`RoundTripViolation` naming the first failing
predicate; running out of solver budget is reported in the result, never
as a failure.  Manifest lines contain only reproducible fields (digests,
verdicts, witnesses, budget state); wall-clock timing stays out of them so
reruns with the same seed are byte-identical.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import generators, oracles, path_variants, reduction_clique_dfvs, reduction_girth
from . import wall as wall_mod
from .digraph import canonical_dumps, girth, graph_to_json

__all__ = ["PipelineResult", "RoundTripViolation", "run_roundtrip", "run_many"]


class RoundTripViolation(AssertionError):
    """Source and target verdicts (or witness maps) disagree."""


def digest(obj: dict) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()


@dataclass
class PipelineResult:
    family: str
    seed: int
    instance_digest: str
    verdicts: dict[str, str] = field(default_factory=dict)
    witnesses: dict[str, list[int]] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    budget_status: str = "ok"
    elapsed: float = 0.0  # informational only; excluded from the manifest

    def manifest_entry(self) -> dict:
        return {
            "family": self.family,
            "seed": self.seed,
            "instance_digest": self.instance_digest,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "checks": self.checks,
            "budget_status": self.budget_status,
        }

    def manifest_line(self) -> str:
        return canonical_dumps(self.manifest_entry())

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _witness_list(w) -> list[int]:
    return list(w.vertices)


def _roundtrip_mcc(spec: generators.GenSpec, budget: oracles.SolverBudget,
                   res: PipelineResult):
    inst, _ = generators.gen_mcc(spec)
    res.instance_digest = digest(inst.to_json())
    gg = reduction_clique_dfvs.build_gadget(inst)
    clique_res = oracles.multicolored_clique_exact(inst, budget)
    ham_res = oracles.hamiltonian_cycle(gg.graph, budget)
    res.verdicts["clique"] = clique_res.status
    res.verdicts["hamcycle"] = ham_res.status
    if oracles.BUDGET in (clique_res.status, ham_res.status):
        res.budget_status = "exceeded"
    else:
        if clique_res.status != ham_res.status:
            diagnosis = ""
            if ham_res.status == oracles.YES:
                report = reduction_clique_dfvs.check_structural_lemmas(gg, ham_res.witness)
                bad = report.failures()
                if bad:
                    diagnosis = f"; first failing predicate: {bad[0].name}[{bad[0].scope}]"
            raise RoundTripViolation(
                f"clique verdict {clique_res.status} vs hamcycle {ham_res.status}{diagnosis}")
        res.checks["verdict-agreement"] = True
    if clique_res.status == oracles.YES:
        built = reduction_clique_dfvs.clique_to_hamcycle(gg, clique_res.witness)
        res.witnesses["constructed_hamcycle"] = _witness_list(built)
        back = reduction_clique_dfvs.hamcycle_to_clique(gg, built)
        if back != clique_res.witness:
            raise RoundTripViolation("witness round trip is not the identity")
        res.checks["witness-roundtrip-identity"] = True
    if ham_res.status == oracles.YES:
        report = reduction_clique_dfvs.check_structural_lemmas(gg, ham_res.witness)
        if not report.all_passed:
            bad = report.failures()[0]
            raise RoundTripViolation(f"predicate {bad.name}[{bad.scope}] failed: {bad.detail}")
        res.checks["structural-predicates"] = True
        extracted = reduction_clique_dfvs.hamcycle_to_clique(gg, ham_res.witness)
        res.witnesses["extracted_clique"] = _witness_list(extracted)
        res.witnesses["oracle_hamcycle"] = _witness_list(ham_res.witness)


def _roundtrip_dfvs(spec: generators.GenSpec, budget: oracles.SolverBudget,
                    res: PipelineResult):
    inst = generators.gen_digraph_with_dfvs(spec)
    res.instance_digest = digest(inst.to_json())
    gi = reduction_girth.build_girth_instance(inst)
    src = oracles.hamiltonian_cycle(inst.graph, budget)
    tgt = oracles.hamiltonian_cycle(gi.graph, budget)
    res.verdicts["source_hamcycle"] = src.status
    res.verdicts["girth_hamcycle"] = tgt.status
    if oracles.BUDGET in (src.status, tgt.status):
        res.budget_status = "exceeded"
    else:
        if src.status != tgt.status:
            raise RoundTripViolation(f"source {src.status} vs split graph {tgt.status}")
        res.checks["verdict-agreement"] = True
    if src.status == oracles.YES:
        lifted = reduction_girth.lift_hamcycle(gi, src.witness)
        back = reduction_girth.project_hamcycle(gi, lifted)
        if back != src.witness:
            raise RoundTripViolation("lift/project round trip is not the identity")
        res.checks["witness-roundtrip-identity"] = True
        res.witnesses["lifted_hamcycle"] = _witness_list(lifted)
    if tgt.status == oracles.YES:
        projected = reduction_girth.project_hamcycle(gi, tgt.witness)
        res.witnesses["projected_hamcycle"] = _witness_list(projected)
    # continue the chain into the long-path target when it stays oracle-sized
    if inst.graph.n > inst.k:
        lp = path_variants.build_longest_path_above_girth_instance(gi)
        if lp.graph.n <= budget.max_bitmask_vertices:
            lp_res = oracles.longest_path_exact(lp.graph, budget)
            if lp_res.status == oracles.BUDGET:
                res.budget_status = "exceeded"
                res.verdicts["long_path"] = lp_res.status
            else:
                verdict = (oracles.YES if lp_res.witness.length >= lp.required_path_edges
                           else oracles.NO)
                res.verdicts["long_path"] = verdict
                if src.status in (oracles.YES, oracles.NO) and verdict != src.status:
                    raise RoundTripViolation(
                        f"long-path verdict {verdict} vs source {src.status}")
                if src.status in (oracles.YES, oracles.NO):
                    res.checks["long-path-agreement"] = True
        else:
            res.verdicts["long_path"] = "skipped"


def _roundtrip_wall(spec: generators.GenSpec, budget: oracles.SolverBudget,
                    res: PipelineResult):
    plan = generators.gen_subdivision_plan(spec)
    w = wall_mod.build_wall(spec.wall_order)
    sub = wall_mod.subdivide_wall(w, plan)
    res.instance_digest = digest(sub.to_json())
    g = girth(sub.graph)
    k = (spec.wall_order - 1) // 2
    path = wall_mod.extract_long_path(sub)
    res.verdicts["extracted_length"] = str(path.length)
    res.verdicts["girth"] = str(g)
    if path.length < g * k:
        raise RoundTripViolation(
            f"extracted path length {path.length} below girth*k = {g * k}")
    res.checks["length-at-least-girth-times-k"] = True
    res.witnesses["long_path"] = _witness_list(path)


def run_roundtrip(spec: generators.GenSpec,
                  budget: oracles.SolverBudget = oracles.DEFAULT_BUDGET) -> PipelineResult:
    """Run the chain appropriate to the spec's family and return the
    reproducible result record."""
    res = PipelineResult(spec.family, spec.seed, instance_digest="")
    started = time.monotonic()
    if spec.family in ("mcc-planted", "mcc-random"):
        _roundtrip_mcc(spec, budget, res)
    elif spec.family == "digraph-with-dfvs":
        _roundtrip_dfvs(spec, budget, res)
    elif spec.family == "wall-subdivision-plan":
        _roundtrip_wall(spec, budget, res)
    else:
        raise ValueError(f"no round trip for family {spec.family!r}")
    res.elapsed = time.monotonic() - started
    return res


def _run_one(args) -> PipelineResult:
    spec_json, budget = args
    return run_roundtrip(generators.GenSpec.from_json(spec_json), budget)


def run_many(specs: list[generators.GenSpec],
             budget: oracles.SolverBudget = oracles.DEFAULT_BUDGET,
             jobs: int = 1) -> list[PipelineResult]:
    """Run independent round trips, optionally in parallel; results are
    merged in (digest, family, seed) order so the manifest is stable no
    matter the scheduling."""
    if jobs <= 1 or len(specs) <= 1:
        results = [run_roundtrip(s, budget) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, [(s.to_json(), budget) for s in specs]))
    results.sort(key=lambda r: (r.instance_digest, r.family, r.seed))
    return results


def export_graph(g, fmt: str, highlight=(), witness=None) -> str:
    """Canonical JSON or DOT text for a digraph."""
    from .digraph import graph_to_dot

    if fmt == "json":
        return canonical_dumps(graph_to_json(g)) + "\n"
    if fmt == "dot":
        return graph_to_dot(g, highlight=highlight, witness=witness)
    raise ValueError(f"unknown export format {fmt!r}")
