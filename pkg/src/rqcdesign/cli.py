"""Command-line interface: lattice inspection, candidate evaluation,
exhaustive search, and entropy verification, all emitting structured JSON
documents with an embedded run manifest."""

from __future__ import annotations

import argparse
import os
import sys

from .documents import (
    attach_manifest,
    circuit_document,
    dumps_document,
    entropy_document,
    entropy_table,
    evaluation_document,
    lattice_document,
    make_manifest,
    parse_coords,
    pattern_from_fields,
    spec_from_fields,
)
from .errors import CapacityExceededError, RqcError
from .fidelity import NoiseModel, circuit_fidelity
from .lattice import bipartition_from_path, build_dual, build_lattice, make_cut_path
from .patterns import assemble_circuit
from .search import SearchConfig, evaluate_candidate, search
from .sfa import PathSearchConfig
from .verify import GateModel, entropy_profile

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_INTERNAL = 4


def _add_lattice_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", default="grid", choices=["grid", "window", "mask"])
    p.add_argument("--width", type=int, default=0)
    p.add_argument("--height", type=int, default=0)
    p.add_argument("--xsize", type=int, default=0)
    p.add_argument("--ysize", type=int, default=0)
    p.add_argument("--sites", default="", help="mask mode: '(u,v) (u,v) ...'")
    p.add_argument("--defects", default="", help="broken qubits: '(2,2) (3,4)'")


def _add_threshold_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--estar", type=int, default=None, help="max cut-path edges")
    p.add_argument(
        "--nstar",
        type=int,
        default=None,
        help="max side imbalance (negative disables the filter)",
    )
    p.add_argument(
        "--maxside",
        type=int,
        default=None,
        help="max qubits on one side (negative disables)",
    )


def _add_pattern_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", default="", help="F1-row bits, e.g. 111111111")
    p.add_argument("--c", default="", help="F2-row bits, e.g. 000000000")
    p.add_argument("--swap", type=int, default=0, choices=[0, 1])


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", default="json", choices=["json", "table"])
    p.add_argument("--output", default=None, help="write the document to a file")


def _lattice_from_args(args) -> tuple:
    spec = spec_from_fields(
        mode=args.mode,
        width=args.width,
        height=args.height,
        xsize=args.xsize,
        ysize=args.ysize,
        sites=args.sites,
        defects=args.defects,
    )
    lattice = build_lattice(spec)
    return lattice, build_dual(lattice)


def _path_cfg_from_args(args) -> PathSearchConfig:
    kwargs = {}
    if args.estar is not None:
        kwargs["e_star"] = args.estar
    if args.nstar is not None:
        kwargs["n_star"] = None if args.nstar < 0 else args.nstar
    if args.maxside is not None:
        kwargs["max_side"] = None if args.maxside < 0 else args.maxside
    return PathSearchConfig(**kwargs)


def _emit(args, doc: dict, table: str) -> None:
    text = table if args.format == "table" else dumps_document(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config_echo(args, skip=("func", "format", "output")) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def cmd_lattice(args) -> int:
    lattice, dual = _lattice_from_args(args)
    doc = lattice_document(lattice, dual)
    doc = attach_manifest(doc, make_manifest("lattice", _config_echo(args)))
    summary = doc["lattice"]
    table = "\n".join(
        [
            f"mode:     {summary['mode']}",
            f"qubits:   {summary['n_qubits']}",
            f"bonds:    {summary['n_bonds']}",
            f"m (F1 rows): {summary['m']}",
            f"n (F2 rows): {summary['n']}",
            f"defects:  {summary['defects']}",
            f"dual sites: {doc['dual']['n_sites']} "
            f"({doc['dual']['n_interior']} interior)",
        ]
    )
    _emit(args, doc, table)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    lattice, dual = _lattice_from_args(args)
    code = pattern_from_fields(args.a, args.c, args.swap)
    cfg = _path_cfg_from_args(args)
    result = evaluate_candidate(lattice, code, args.depth, cfg)
    fidelity = None
    if args.e1 is not None or args.e2 is not None or args.er is not None:
        noise = NoiseModel(args.e1 or 0.0, args.e2 or 0.0, args.er or 0.0)
        circuit = assemble_circuit(lattice, code, result.sequence)
        fidelity = circuit_fidelity(circuit, noise)
    doc = evaluation_document(lattice, result, fidelity)
    if args.circuit:
        doc["circuit"] = circuit_document(
            assemble_circuit(lattice, code, result.sequence)
        )
    doc = attach_manifest(doc, make_manifest("evaluate", _config_echo(args)))
    bd = doc["breakdown"]
    lines = [
        f"pattern:  {code.text()}",
        f"letters:  {doc['letters']}",
        f"log2 cost: {bd['log2_cost']:.4f}",
        f"counters: n_c={bd['n_c']} n_wedge={bd['n_wedge']} n_DCD={bd['n_DCD']} "
        f"n_st={bd['n_st']} n_end={bd['n_end']} n1={bd['n1']} n2={bd['n2']}",
        f"best cut: {doc['best_path']['sites']} (E={doc['best_path']['E']})",
    ]
    if doc.get("tail"):
        lines.append(f"tail:     {doc['tail']}")
    if fidelity is not None:
        lines.append(f"F = {doc['fidelity']['F']:.6g}   Ns = {doc['fidelity']['Ns']}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_search(args) -> int:
    lattice, _ = _lattice_from_args(args)
    cfg = SearchConfig(
        depth=args.depth,
        paths=_path_cfg_from_args(args),
        top_k=args.topk,
        threads=args.threads,
        include_baseline=args.baseline,
    )
    report = search(lattice, cfg)
    doc = report.to_doc()
    doc = attach_manifest(doc, make_manifest("search", _config_echo(args)))
    lines = [
        f"candidates: {doc['total_candidates']}",
        f"paths:      {doc['paths_considered']}",
        "rank  log2_cost  sym  pattern",
    ]
    for entry in doc["top"]:
        pat = entry["pattern"]
        lines.append(
            f"{entry['rank']:>4}  {entry['log2_cost']:>9.4f}  {entry['symmetry']:>3}"
            f"  A={pat['a']} C={pat['c']} swap={pat['swap']}"
        )
    if doc["baseline"]:
        lines.append(
            f"baseline rank {doc['baseline']['rank']} at "
            f"log2_cost {doc['baseline']['log2_cost']:.4f}"
        )
    if doc["tail"]:
        lines.append(f"tail chosen: {doc['tail']['chosen']}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _profile_for(lattice, paths_cfg, dual, code, depth, cut, seed, model, cap):
    result = evaluate_candidate(lattice, code, depth, paths_cfg)
    circuit = assemble_circuit(lattice, code, result.sequence)
    if cut == "auto":
        path = result.best_path
    else:
        path = make_cut_path(dual, parse_coords(cut))
    bip = bipartition_from_path(lattice, path)
    return entropy_profile(circuit, bip, seed=seed, model=model, cap=cap)


def cmd_entropy(args) -> int:
    lattice, dual = _lattice_from_args(args)
    cfg = _path_cfg_from_args(args)
    model = GateModel(theta=args.theta, phi=args.phi, single_qubit=args.gateset)
    code = pattern_from_fields(args.a, args.c, args.swap)
    profiles = [
        _profile_for(
            lattice, cfg, dual, code, args.depth, args.cut, args.seed, model, args.cap
        )
    ]
    if args.a2 or args.c2:
        code2 = pattern_from_fields(args.a2, args.c2, args.swap2)
        profiles.append(
            _profile_for(
                lattice, cfg, dual, code2, args.depth, args.cut, args.seed, model,
                args.cap,
            )
        )
    doc = entropy_document(profiles)
    doc = attach_manifest(
        doc, make_manifest("entropy", _config_echo(args), seed=args.seed)
    )
    table = "\n\n".join(entropy_table(p) for p in profiles)
    _emit(args, doc, table)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rqc",
        description="Design classically hard random quantum circuits for "
        "planar processors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="build a lattice and report its geometry")
    _add_lattice_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("evaluate", help="score one pattern at a given depth")
    _add_lattice_args(p)
    _add_pattern_args(p)
    _add_threshold_args(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--e1", type=float, default=None, help="single-qubit gate error")
    p.add_argument("--e2", type=float, default=None, help="two-qubit gate error")
    p.add_argument("--er", type=float, default=None, help="readout error per qubit")
    p.add_argument("--circuit", action="store_true",
                   help="embed the full per-cycle gate list in the document")
    _add_output_args(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("search", help="rank every pattern by simulation cost")
    _add_lattice_args(p)
    _add_threshold_args(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--topk", type=int, default=10)
    p.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("RQC_THREADS", "1")),
        help="worker processes (env RQC_THREADS)",
    )
    p.add_argument("--baseline", action="store_true",
                   help="also score and rank the all-1s/all-0s reference pattern")
    _add_output_args(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("entropy", help="entanglement entropy profile across a cut")
    _add_lattice_args(p)
    _add_pattern_args(p)
    _add_threshold_args(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cut", default="auto", help="'auto' or dual sites '(2,-1) (2,0) ...'")
    p.add_argument("--cap", type=int, default=20, help="max simulated qubits")
    p.add_argument("--gateset", default="haar", choices=["haar", "discrete"])
    p.add_argument("--theta", type=float, default=GateModel().theta)
    p.add_argument("--phi", type=float, default=GateModel().phi)
    p.add_argument("--a2", default="", help="second pattern for comparison")
    p.add_argument("--c2", default="")
    p.add_argument("--swap2", type=int, default=0, choices=[0, 1])
    _add_output_args(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("serve", help="run the HTTP design service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except RqcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001 - report and exit 4
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
