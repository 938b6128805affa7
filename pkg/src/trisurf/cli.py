"""Command-line front end: argument parsing, deterministic seeding, and
single-document JSON reporting for every subcommand.

Exit codes: 0 when a verdict was computed, 2 on input errors, 3 when a
pipeline stage fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .admissible import AdmissParams, count_nonadmissible
from .cycles import TopCycleCert, recognize_topological_cycle
from .errors import InputError, NotATopCycle, StageFailure, TrisurfError
from .extremal import gluing_bound_check, lower_bound_generate
from .hypercore import (
    Hypergraph3,
    load_graph,
    load_hypergraph,
    serialize_hypergraph,
)
from .pipeline import build_torus, find_surface_genus_g, orientable_target
from .rainbow import (
    build_link_of_edges,
    diverse_subgraph,
    find_rainbow_cycle,
    hom_cycle,
    rainbow_to_topcycle,
    sidorenko_check,
    three_partition,
)
from .surface import SurfaceClass, Verdict, classify_surface, skeleton_counts

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STAGE = 3


def _cert_json(cert: TopCycleCert) -> dict:
    return {
        "r": cert.r,
        "kind": cert.kind,
        "torus_like": cert.torus_like,
        "ordering": [list(e) for e in cert.ordering],
        "epsilons": list(cert.epsilons),
    }


def _load(path: str) -> Hypergraph3:
    try:
        with open(path, "r", encoding="utf-8") as stream:
            return load_hypergraph(stream)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _parse_target(text: str) -> SurfaceClass:
    if text == "sphere":
        return orientable_target(0)
    if text == "torus":
        return orientable_target(1)
    if text.startswith("genus:"):
        return orientable_target(int(text.split(":", 1)[1]))
    if text.startswith("crosscaps:"):
        k = int(text.split(":", 1)[1])
        return SurfaceClass(verdict=Verdict.NON_ORIENTABLE, cross_caps=k, chi=2 - k)
    raise InputError(f"unknown target {text!r}")


# --- subcommand handlers -----------------------------------------------------


def _cmd_classify(args) -> tuple[dict, int]:
    h = _load(args.file)
    verdict = classify_surface(h)
    counts = skeleton_counts(h)
    return {
        "verdict": verdict.verdict.value,
        "g": verdict.genus,
        "cross_caps": verdict.cross_caps,
        "chi": verdict.chi if verdict.chi is not None else counts.v - counts.e + counts.f,
        "v": counts.v,
        "e": counts.e,
        "f": counts.f,
        "reason": verdict.reason,
    }, EXIT_OK


def _cmd_topcycle(args) -> tuple[dict, int]:
    h = _load(args.file)
    try:
        cert = recognize_topological_cycle(h)
    except NotATopCycle as exc:
        return {"found": False, "reason": exc.reason}, EXIT_OK
    doc = {"found": True, "reason": None}
    doc.update(_cert_json(cert))
    return doc, EXIT_OK


def _cmd_admissible(args) -> tuple[dict, int]:
    try:
        with open(args.file, "r", encoding="utf-8") as stream:
            g = load_graph(stream)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc}")
    params = AdmissParams(p=args.p, eps=args.eps, k=args.k, r=args.r)
    mode = "mc" if args.mc else "exact"
    report = count_nonadmissible(
        g, params, mode=mode, trials=args.trials, seed=args.seed
    )
    return report.to_json_dict(), EXIT_OK


def _cmd_rainbow(args) -> tuple[dict, int]:
    h = _load(args.file)
    witness, sub = three_partition(h, seed=args.seed)
    link = build_link_of_edges(sub, witness)
    diverse = diverse_subgraph(link)
    cycle = find_rainbow_cycle(diverse, link.natural_coloring(), args.max_len)
    if cycle is None:
        return {"found": False, "cycle": None, "topcycle": None}, EXIT_OK
    cert, _ = rainbow_to_topcycle(sub, witness, link, cycle)
    return {
        "found": True,
        "cycle": [list(link.payloads[i]) for i in cycle],
        "topcycle": _cert_json(cert),
    }, EXIT_OK


def _cmd_find_torus(args) -> tuple[dict, int]:
    h = _load(args.file)
    params = AdmissParams(p=args.p, eps=args.eps, k=args.k, r=args.r)
    try:
        torus, cert = build_torus(
            h,
            params,
            max_cycle_len=args.max_cycle_len,
            seed=args.seed,
            retries=args.retries,
            skip_F=args.skip_F,
        )
    except StageFailure as exc:
        return {
            "status": "failure",
            "stage": exc.stage,
            "diagnostics": exc.diagnostics,
            "torus": None,
            "cycle": None,
        }, EXIT_STAGE
    return {
        "status": "success",
        "stage": None,
        "diagnostics": None,
        "torus": [list(e) for e in torus.sorted_edges()],
        "cycle": _cert_json(cert),
    }, EXIT_OK


def _cmd_find_genus(args) -> tuple[dict, int]:
    h = _load(args.file)
    params = AdmissParams(p=args.p, eps=args.eps, k=args.k, r=args.r)
    kwargs = {}
    if args.g == 1:
        kwargs = {"max_cycle_len": args.max_cycle_len, "skip_F": args.skip_F}
    try:
        surface = find_surface_genus_g(
            h,
            args.g,
            params,
            seed=args.seed,
            retries=args.retries,
            v_max=args.vmax,
            **kwargs,
        )
    except StageFailure as exc:
        return {
            "status": "failure",
            "stage": exc.stage,
            "diagnostics": exc.diagnostics,
            "genus": args.g,
            "surface": None,
        }, EXIT_STAGE
    return {
        "status": "success",
        "stage": None,
        "diagnostics": None,
        "genus": args.g,
        "surface": [list(e) for e in surface.sorted_edges()],
    }, EXIT_OK


def _cmd_lower_bound(args) -> tuple[dict, int]:
    target = _parse_target(args.target)
    h, report = lower_bound_generate(
        args.n, target, args.c0, args.vmax, seed=args.seed
    )
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as stream:
                stream.write(serialize_hypergraph(h))
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}")
    return report.to_json_dict(), EXIT_OK


def _cmd_glue_check(args) -> tuple[dict, int]:
    family_a = [_load(path) for path in args.family_a]
    family_b = [_load(path) for path in args.family_b]
    rows = gluing_bound_check(args.n_max, family_a, family_b)
    return {
        "rows": [
            {
                "n": r.n,
                "ex_a": r.ex_a,
                "ex_b": r.ex_b,
                "ex_glued": r.ex_glued,
                "bound": r.bound,
                "ok": r.ok,
            }
            for r in rows
        ],
        "all_ok": all(r.ok for r in rows),
    }, EXIT_OK


def _cmd_hom(args) -> tuple[dict, int]:
    try:
        with open(args.file, "r", encoding="utf-8") as stream:
            g = load_graph(stream)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc}")
    value = hom_cycle(g, args.length)
    holds, _, bound = sidorenko_check(g, args.length // 2)
    return {
        "length": args.length,
        "hom": value,
        "sidorenko_holds": holds,
        "sidorenko_bound": bound,
    }, EXIT_OK


# --- argument parsing --------------------------------------------------------


def _add_admiss_flags(p: argparse.ArgumentParser, with_r: bool = True) -> None:
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    if with_r:
        p.add_argument("--r", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trisurf",
        description="Triangulated surfaces inside 3-uniform hypergraphs.",
    )
    parser.add_argument(
        "--threads", type=int, default=1, help="worker cap for parallel stages"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a closed-surface complex")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("topcycle", help="recognize a topological cycle")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_topcycle)

    p = sub.add_parser("admissible", help="per-edge admissibility report")
    p.add_argument("file")
    _add_admiss_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=True)
    group.add_argument("--mc", action="store_true")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_admissible)

    p = sub.add_parser("rainbow", help="rainbow cycle in the edge-link graph")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=_cmd_rainbow)

    p = sub.add_parser("find-torus", help="run the torus-building pipeline")
    p.add_argument("file")
    p.add_argument("--max-cycle-len", type=int, required=True)
    _add_admiss_flags(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--skip-F", dest="skip_F", action="store_true")
    p.set_defaults(handler=_cmd_find_torus)

    p = sub.add_parser("find-genus", help="orientable genus-g sub-triangulation")
    p.add_argument("file")
    p.add_argument("--g", type=int, required=True)
    _add_admiss_flags(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--retries", type=int, default=64)
    p.add_argument("--vmax", type=int, default=10)
    p.add_argument("--max-cycle-len", type=int, default=8)
    p.add_argument("--skip-F", dest="skip_F", action="store_true")
    p.set_defaults(handler=_cmd_find_genus)

    p = sub.add_parser("lower-bound", help="probabilistic-deletion generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c0", type=float, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--vmax", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_lower_bound)

    p = sub.add_parser("glue-check", help="shared-edge gluing extremal table")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--family-a", nargs="+", required=True)
    p.add_argument("--family-b", nargs="+", required=True)
    p.set_defaults(handler=_cmd_glue_check)

    p = sub.add_parser("hom", help="closed-walk homomorphism count")
    p.add_argument("file")
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(handler=_cmd_hom)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        doc, code = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StageFailure as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except TrisurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return code


def main() -> None:
    sys.exit(dispatch())
