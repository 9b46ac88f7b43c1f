"""Command-line entry point: generation, reductions, exact solving,
witness mapping, verification, wall tooling, tree-decomposition checks,
and reproducible round-trip pipelines.

Exit codes: 0 success / yes, 1 failure or a "no" answer where one was
queried, 2 solver budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import dtd as dtd_mod
from . import generators, oracles, path_variants, pipeline, reduction_clique_dfvs, reduction_girth
from . import wall as wall_mod
from .digraph import (
    CliqueWitness,
    CycleWitness,
    PathWitness,
    canonical_dumps,
    girth,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    validate_witness,
    verify_dfvs,
)


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _write_text(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_json(path: Optional[str], data: dict):
    _write_text(path, canonical_dumps(data) + "\n")


def _witness_to_json(w) -> dict:
    kind = {CycleWitness: "cycle", PathWitness: "path", CliqueWitness: "clique"}[type(w)]
    return {"type": kind, "vertices": list(w.vertices)}


def _witness_from_json(data: dict):
    kinds = {"cycle": CycleWitness, "path": PathWitness, "clique": CliqueWitness}
    return kinds[data["type"]](tuple(data["vertices"]))


def _budget_from_args(args) -> oracles.SolverBudget:
    return oracles.SolverBudget(
        max_bitmask_vertices=args.max_bitmask,
        node_limit=args.budget_nodes,
        time_limit=args.budget_seconds,
    )


def _add_budget_flags(p: argparse.ArgumentParser):
    p.add_argument("--budget-nodes", type=int, default=oracles.DEFAULT_BUDGET.node_limit)
    p.add_argument("--budget-seconds", type=float, default=oracles.DEFAULT_BUDGET.time_limit)
    p.add_argument("--max-bitmask", type=int,
                   default=oracles.DEFAULT_BUDGET.max_bitmask_vertices)


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _parse_seeds(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi)))
    return _parse_ints(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    spec = generators.GenSpec(
        seed=args.seed, family=args.family, k=args.k,
        class_sizes=tuple(_parse_ints(args.class_sizes)),
        edge_prob=args.edge_prob, n=args.n, dfvs_size=args.dfvs_size,
        planted=not args.no_plant, wall_order=args.wall_order,
        expand_min=args.expand[0], expand_max=args.expand[1],
    )
    inst, meta = generators.generate(spec)
    if spec.family in ("mcc-planted", "mcc-random"):
        payload = inst.to_json()
    elif spec.family == "digraph-with-dfvs":
        payload = inst.to_json()
    else:
        payload = {"kind": "wall-subdivision-plan", "order": spec.wall_order,
                   "plan": {f"{u}->{v}": c for (u, v), c in sorted(inst.items())}}
    _write_json(args.output, payload)
    if args.meta:
        _write_json(args.meta, meta)
    return 0


def cmd_reduce(args) -> int:
    data = _read_json(args.input)
    if args.transform == "mcc-to-hamdfvs":
        gg = reduction_clique_dfvs.build_gadget(reduction_clique_dfvs.MccInstance.from_json(data))
        _write_json(args.output, gg.to_json())
    elif args.transform == "hamdfvs-to-girth":
        gi = reduction_girth.build_girth_instance(reduction_girth.DfvsInstance.from_json(data))
        _write_json(args.output, gi.to_json())
    elif args.transform == "hamdfvs-to-longpath-girth":
        gi = reduction_girth.build_girth_instance(reduction_girth.DfvsInstance.from_json(data))
        lp = path_variants.build_longest_path_above_girth_instance(gi)
        _write_json(args.output, lp.to_json())
    elif args.transform == "cycle-to-path":
        g = graph_from_json(data)
        out, split = path_variants.cycle_to_path_instance(g, args.vertex)
        _write_json(args.output, {
            "kind": "cycle-to-path", "source": graph_to_json(g),
            "graph": graph_to_json(out), "split": split.to_json(),
        })
    elif args.transform == "dfvs-to-dfas":
        g = graph_from_json(data)
        members = _parse_ints(args.set)
        out, split = path_variants.dfvs_to_dfas(g, members)
        _write_json(args.output, {
            "kind": "dfvs-to-dfas", "source": graph_to_json(g),
            "graph": graph_to_json(out),
            "split": {str(v): list(pair) for v, pair in sorted(split.items())},
            "new_arcs": [list(pair) for _, pair in sorted(split.items())],
        })
    elif args.transform == "additive-girth":
        g = graph_from_json(data)
        instances = path_variants.build_additive_instances(g, args.slack)
        _write_json(args.output, {
            "kind": "additive-girth", "source": graph_to_json(g), "slack": args.slack,
            "girth": instances[0].girth_value if instances else None,
            "instances": [inst.to_json() for inst in instances],
        })
    else:
        raise ValueError(f"unknown transform {args.transform}")
    return 0


def cmd_solve(args) -> int:
    budget = _budget_from_args(args)
    data = _read_json(args.input)
    if args.problem == "mcc":
        inst = reduction_clique_dfvs.MccInstance.from_json(data)
        res = oracles.multicolored_clique_exact(inst, budget)
    else:
        g = graph_from_json(data)
        solver = {
            "hamcycle": oracles.hamiltonian_cycle,
            "hampath": oracles.hamiltonian_path,
            "longpath": oracles.longest_path_exact,
            "longcycle": oracles.longest_cycle_exact,
        }[args.problem]
        res = solver(g, budget)
    payload = {"status": res.status,
               "witness": list(res.witness.vertices) if res.witness else None}
    _write_json(args.output, payload)
    return {"yes": 0, "no": 1, "budget": 2}[res.status]


def cmd_witness_map(args) -> int:
    art = _read_json(args.artifact)
    w = _witness_from_json(_read_json(args.witness))
    kind = art.get("kind")
    forward = args.direction == "forward"
    if kind == "mcc-to-hamdfvs":
        gg = reduction_clique_dfvs.GadgetGraph.from_json(art)
        out = (reduction_clique_dfvs.clique_to_hamcycle(gg, w) if forward
               else reduction_clique_dfvs.hamcycle_to_clique(gg, w))
    elif kind == "hamdfvs-to-girth":
        gi = reduction_girth.GirthInstance.from_json(art)
        out = (reduction_girth.lift_hamcycle(gi, w) if forward
               else reduction_girth.project_hamcycle(gi, w))
    elif kind == "hamdfvs-to-longpath-girth":
        lp = path_variants.LongPathGirthInstance.from_json(art)
        out = (path_variants.lift_to_long_path(lp, w) if forward
               else path_variants.project_long_path(lp, w))
    elif kind == "cycle-to-path":
        split = path_variants.SplitVertexMap.from_json(art["split"])
        out = (path_variants.path_witness_from_cycle(split, w) if forward
               else path_variants.cycle_witness_from_path(split, w))
    elif kind == "dfvs-to-dfas":
        split = {int(v): tuple(pair) for v, pair in art["split"].items()}
        out = (path_variants.lift_cycle_to_dfas(split, w) if forward
               else path_variants.project_cycle_from_dfas(split, w))
    else:
        raise ValueError(f"artifact kind {kind!r} has no witness map")
    _write_json(args.output, _witness_to_json(out))
    return 0


def cmd_verify(args) -> int:
    data = _read_json(args.input)
    g = graph_from_json(data.get("graph", data))
    if args.what == "witness":
        w = _witness_from_json(_read_json(args.witness))
        check = validate_witness(g, w, hamiltonian=args.hamiltonian)
        _write_json(args.output, {"ok": check.ok, "reason": check.reason})
        return 0 if check.ok else 1
    if args.what == "dfvs":
        members = _parse_ints(args.set) if args.set else data.get("dfvs", [])
        ok = verify_dfvs(g, members)
        _write_json(args.output, {"ok": ok})
        return 0 if ok else 1
    raise ValueError(args.what)


def cmd_wall(args) -> int:
    if args.wall_cmd == "build":
        w = wall_mod.build_wall(args.order)
        if args.subdivide:
            seed, lo, hi = (int(x) for x in args.subdivide.split(","))
            spec = generators.GenSpec(seed=seed, family="wall-subdivision-plan",
                                      wall_order=args.order, expand_min=lo, expand_max=hi)
            plan = generators.gen_subdivision_plan(spec)
        else:
            plan = 0
        sub = wall_mod.subdivide_wall(w, plan)
        _write_json(args.output, sub.to_json())
        if args.dot:
            _write_text(args.dot, graph_to_dot(sub.graph))
        return 0
    if args.wall_cmd == "extract-path":
        sub = wall_mod.WallSubdivision.from_json(_read_json(args.input))
        path = wall_mod.extract_long_path(sub)
        g = girth(sub.graph)
        k = (sub.wall.order - 1) // 2
        _write_json(args.output, {
            "witness": _witness_to_json(path),
            "girth": g,
            "length": path.length,
            "required": g * k,
        })
        return 0 if path.length >= g * k else 1
    raise ValueError(args.wall_cmd)


def cmd_dtd(args) -> int:
    g = graph_from_json(_read_json(args.graph))
    d = dtd_mod.DirectedTreeDecomposition.from_json(_read_json(args.decomposition))
    if args.dtd_cmd == "verify":
        report = dtd_mod.verify_dtd(g, d)
        _write_json(args.output, {"valid": report.valid,
                                  "violations": list(report.violations)})
        return 0 if report.valid else 1
    if args.dtd_cmd == "width":
        _write_json(args.output, {"width": dtd_mod.dtd_width(d)})
        return 0
    raise ValueError(args.dtd_cmd)


def cmd_roundtrip(args) -> int:
    budget = _budget_from_args(args)
    specs = [generators.GenSpec(
        seed=s, family=args.family, k=args.k,
        class_sizes=tuple(_parse_ints(args.class_sizes)),
        edge_prob=args.edge_prob, n=args.n, dfvs_size=args.dfvs_size,
        planted=not args.no_plant, wall_order=args.wall_order,
        expand_min=args.expand[0], expand_max=args.expand[1],
    ) for s in _parse_seeds(args.seeds)]
    try:
        results = pipeline.run_many(specs, budget, jobs=args.jobs)
    except pipeline.RoundTripViolation as exc:
        print(f"round-trip violation: {exc}", file=sys.stderr)
        return 1
    lines = "".join(r.manifest_line() + "\n" for r in results)
    _write_text(args.manifest, lines)
    total = sum(r.elapsed for r in results)
    print(f"{len(results)} round trips, {total:.2f}s solver time", file=sys.stderr)
    if any(r.budget_status == "exceeded" for r in results):
        return 2
    return 0


def cmd_export(args) -> int:
    data = _read_json(args.input)
    g = graph_from_json(data.get("graph", data))
    highlight = data.get("dfvs", [])
    witness = None
    if args.witness:
        witness = _witness_from_json(_read_json(args.witness))
    _write_text(args.output, pipeline.export_graph(g, args.format,
                                                   highlight=highlight, witness=witness))
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hamdfvs", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_gen_flags(p):
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--class-sizes", default="2,2")
        p.add_argument("--edge-prob", type=float, default=0.5)
        p.add_argument("--n", type=int, default=6)
        p.add_argument("--dfvs-size", type=int, default=2)
        p.add_argument("--no-plant", action="store_true")
        p.add_argument("--wall-order", type=int, default=5)
        p.add_argument("--expand", type=int, nargs=2, default=(0, 3),
                       metavar=("MIN", "MAX"))

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("family", choices=generators.FAMILIES)
    p.add_argument("--seed", type=int, required=True)
    add_gen_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--meta", help="sidecar metadata file")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("reduce", help="apply a reduction")
    p.add_argument("transform", choices=[
        "mcc-to-hamdfvs", "hamdfvs-to-girth", "hamdfvs-to-longpath-girth",
        "cycle-to-path", "dfvs-to-dfas", "additive-girth"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--vertex", type=int, default=0, help="cycle-to-path split vertex")
    p.add_argument("--set", default="", help="dfvs-to-dfas member list, e.g. 0,3")
    p.add_argument("--slack", type=int, default=1, help="additive-girth slack k")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("solve", help="run an exact oracle")
    p.add_argument("--problem", required=True,
                   choices=["hamcycle", "hampath", "longpath", "longcycle", "mcc"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    _add_budget_flags(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("witness", help="witness utilities")
    wsub = p.add_subparsers(dest="witness_cmd", required=True)
    wp = wsub.add_parser("map", help="map a witness across a reduction artifact")
    wp.add_argument("--artifact", required=True)
    wp.add_argument("--witness", required=True)
    wp.add_argument("--direction", choices=["forward", "backward"], required=True)
    wp.add_argument("-o", "--output")
    wp.set_defaults(fn=cmd_witness_map)

    p = sub.add_parser("verify", help="check witnesses and feedback sets")
    p.add_argument("what", choices=["witness", "dfvs"])
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--witness")
    p.add_argument("--hamiltonian", action="store_true")
    p.add_argument("--set", default="")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("wall", help="cylindrical wall tooling")
    wsub = p.add_subparsers(dest="wall_cmd", required=True)
    wp = wsub.add_parser("build")
    wp.add_argument("--order", type=int, required=True)
    wp.add_argument("--subdivide", help="SEED,MIN,MAX expansion plan")
    wp.add_argument("-o", "--output")
    wp.add_argument("--dot")
    wp.set_defaults(fn=cmd_wall)
    wp = wsub.add_parser("extract-path")
    wp.add_argument("-i", "--input", required=True)
    wp.add_argument("-o", "--output")
    wp.set_defaults(fn=cmd_wall)

    p = sub.add_parser("dtd", help="directed tree decompositions")
    dsub = p.add_subparsers(dest="dtd_cmd", required=True)
    for name in ("verify", "width"):
        dp = dsub.add_parser(name)
        dp.add_argument("--graph", required=True)
        dp.add_argument("--decomposition", required=True)
        dp.add_argument("-o", "--output")
        dp.set_defaults(fn=cmd_dtd)

    p = sub.add_parser("roundtrip", help="generate, reduce, solve, compare")
    p.add_argument("--family", choices=generators.FAMILIES, required=True)
    p.add_argument("--seeds", default="0:10", help="range lo:hi or comma list")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--manifest", help="JSON-lines output (default stdout)")
    add_gen_flags(p)
    _add_budget_flags(p)
    p.set_defaults(fn=cmd_roundtrip)

    p = sub.add_parser("export", help="canonical JSON / DOT export")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--witness", help="overlay witness file (DOT)")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_export)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
