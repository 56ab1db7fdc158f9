"""Command line entry point: ``mixedorient <command> ...``.

Exit codes: 0 success, 1 a verified property does not hold (``verify``),
2 usage or input error, 3 contract violation (a diagnostic dump is written).
"""
from __future__ import annotations

import argparse
import csv
import os
import sys

from . import corpus
from .cycles import eta
from .driver import CSV_COLUMNS, orient_full, orientin, verify_orientation
from .generate import gen_valid
from .graph import (
    GraphError,
    bfs,
    parse_plan,
    radius_center,
    read_graph,
    serialize_graph,
    serialize_plan,
    write_graph,
)
from .oracle import DEFAULT_CAP, brute_oriented_radius, hunt_counterexample
from .orientout import ContractViolation, orientout

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CONTRACT = 0, 1, 2, 3


def _fmt(x) -> str:
    return "unreachable" if x == float("inf") else str(int(x))


def _emit_plan(plan, path):
    text = serialize_plan(plan)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        print(f"plan written to {path}")
    else:
        sys.stdout.write(text)


def cmd_radius(args):
    g = read_graph(args.graph)
    rad, centers = radius_center(g)
    print(f"radius {_fmt(rad)}, centers {{{','.join(map(str, sorted(centers)))}}}")
    print(f"eta {_fmt(eta(g))}")
    return EXIT_OK


def _dump_stages(directory, res):
    os.makedirs(directory, exist_ok=True)
    stages = [(0, res.state0.graph, res.state0.summary()), (1, res.state1.graph, res.state1.summary()),
              (2, res.stage2.g2, ""), (3, res.stage2.g3, "")]
    for k, graph, note in stages:
        comments = [f"stage {k}"] + ([note] if note else [])
        write_graph(os.path.join(directory, f"stage{k}.g"), graph, comments)
    write_graph(os.path.join(directory, "H.g"), res.h,
                ["stage H", f"vertices {sorted(res.vertices)}"])


def _cmd_orient_around(args, fn, out_label, in_label, out_bound, in_bound):
    g = read_graph(args.graph)
    res = fn(g, args.root, args.r)
    d_from = bfs(res.h, args.root)
    d_to = bfs(res.h, args.root, backward=True)
    far_from = max(d_from[v] for v in res.vertices)
    far_to = max(d_to[v] for v in res.vertices)
    r = res.r
    print(f"H has {len(res.vertices)} vertices; r={r}")
    print(f"max d({args.root},v)={_fmt(far_from)} <= {out_bound(r)} [{out_label}]")
    print(f"max d(v,{args.root})={_fmt(far_to)} <= {in_bound(r)} [{in_label}]")
    if args.dump_stages:
        _dump_stages(args.dump_stages, res)
    _emit_plan(res.plan, args.out)
    return EXIT_OK


def cmd_orientout(args):
    return _cmd_orient_around(args, orientout, "2r", "4r-1", lambda r: 2 * r, lambda r: 4 * r - 1)


def cmd_orientin(args):
    return _cmd_orient_around(args, orientin, "4r-1", "2r", lambda r: 4 * r - 1, lambda r: 2 * r)


def _write_report_csv(path, reports):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rep in reports:
            writer.writerow(rep.row())


def _print_report(rep):
    print(f"strongly connected: {'yes' if rep.strongly_connected else 'no'}")
    print(f"oriented radius {_fmt(rep.oriented_radius)} (input radius {_fmt(rep.r)}, eta {_fmt(rep.eta)})")
    print(f"bound 1.5r^2+r+1 = {rep.bound_f:g}: {'within' if rep.within_f else 'EXCEEDED'}")
    print(f"bound 1.5*r*eta = {rep.bound_eta:g}: {'within' if rep.within_eta else 'EXCEEDED'}")


def cmd_orient(args):
    g = read_graph(args.graph)
    plan, rep = orient_full(g, timing=args.timing)
    _print_report(rep)
    print(f"iterations {rep.iterations}")
    if args.report:
        _write_report_csv(args.report, [rep])
    _emit_plan(plan, args.out)
    return EXIT_OK


def cmd_verify(args):
    g = read_graph(args.graph)
    with open(args.plan) as fh:
        plan = parse_plan(fh.read())
    rep = verify_orientation(g, plan)
    _print_report(rep)
    return EXIT_OK if rep.strongly_connected else EXIT_FAILED


def cmd_brute(args):
    g = read_graph(args.graph)
    rad, plan = brute_oriented_radius(g, cap=args.cap)
    print(f"oriented radius {_fmt(rad)}")
    if plan is not None and args.out:
        _emit_plan(plan, args.out)
    return EXIT_OK


def cmd_gen(args):
    g = gen_valid(args.n, args.extra, args.dir_frac, args.seed)
    comment = f"gen_valid n={args.n} extra={args.extra} dir_frac={args.dir_frac} seed={args.seed}"
    if args.out:
        write_graph(args.out, g, [comment])
        print(f"graph written to {args.out}")
    else:
        sys.stdout.write(serialize_graph(g, [comment]))
    return EXIT_OK


def cmd_hunt(args):
    results = hunt_counterexample(args.max_n, args.max_edges, exhaustive=args.exhaustive,
                                  strict=not args.lenient)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "index.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "edges", "root", "original_obs", "corrected_obs", "file"])
        for k, res in enumerate(results):
            name = f"hunt{k:04d}.g"
            write_graph(os.path.join(args.out, name), res.graph, [
                f"root {res.root}",
                f"X_in {sorted(res.x_in)} X_out {sorted(res.x_out)} X_conf {sorted(res.x_conf)}",
            ])
            writer.writerow([res.graph.n, len(res.graph.edges), res.root,
                             int(res.original_obs_holds), int(res.corrected_obs_holds), name])
    print(f"{len(results)} conflicted states without an in-neighbour witness; written to {args.out}")
    return EXIT_OK


def cmd_report(args):
    seeds = range(args.start, args.start + args.seeds)
    rows = corpus.run_corpus(seeds, max_n=args.max_n, timing=args.timing, workers=args.workers)
    with open(args.out, "w", newline="") as fh:
        fh.write(corpus.report_csv(rows))
    repros = corpus.write_reproducers(rows, args.repro_dir, max_n=args.max_n)
    summary = corpus.summarize(rows)
    print(f"{summary['instances']} instances written to {args.out}")
    print(f"strongly connected: {summary['strongly_connected']:.3f}")
    print(f"within 1.5r^2+r+1: {summary['within_f']:.3f}")
    print(f"within 1.5*r*eta: {summary['within_eta']:.3f}")
    print(f"{len(repros)} reproducer files in {args.repro_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedorient", description=__doc__.splitlines()[0])
    parser.add_argument("--dump-dir", default=".", help="where contract-violation dumps go")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="radius, centers and eta of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_radius)

    for name, func in (("orientout", cmd_orientout), ("orientin", cmd_orientin)):
        p = sub.add_parser(name, help=f"run {name} around a root")
        p.add_argument("graph")
        p.add_argument("--root", type=int, required=True)
        p.add_argument("--r", type=int, default=None, help="eccentricity bound (default: e(root))")
        p.add_argument("--dump-stages", metavar="DIR")
        p.add_argument("--out", help="plan file (default: stdout)")
        p.set_defaults(func=func)

    p = sub.add_parser("orient", help="orient the whole graph")
    p.add_argument("graph")
    p.add_argument("--out", help="plan file (default: stdout)")
    p.add_argument("--report", help="CSV report file")
    p.add_argument("--timing", action="store_true", help="fill the seconds column")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("verify", help="check a total orientation plan")
    p.add_argument("graph")
    p.add_argument("plan")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brute", help="exact oriented radius by enumeration")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", help="write the witnessing plan here")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("gen", help="generate a valid random input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--extra", type=int, default=0)
    p.add_argument("--dir-frac", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("hunt", help="search small graphs for conflicts without an in-neighbour witness")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-edges", type=int, default=12)
    p.add_argument("--out", default="hunts")
    p.add_argument("--exhaustive", action="store_true", help="scan every level, not just the first hit")
    p.add_argument("--lenient", action="store_true", help="record corrected-check failures instead of aborting")
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("report", help="orient a seeded corpus and write the CSV report")
    p.add_argument("--seeds", type=int, default=1000, help="number of instances")
    p.add_argument("--start", type=int, default=1, help="first seed")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--out", default="report.csv")
    p.add_argument("--repro-dir", default="reproducers")
    p.add_argument("--timing", action="store_true", help="fill the seconds column")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_report)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ContractViolation as exc:
        os.makedirs(args.dump_dir, exist_ok=True)
        path = os.path.join(args.dump_dir, f"violation-{args.command}.txt")
        with open(path, "w") as fh:
            fh.write(exc.dump())
        print(f"contract violation: {exc}\ndiagnostic dump: {path}", file=sys.stderr)
        return EXIT_CONTRACT
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
