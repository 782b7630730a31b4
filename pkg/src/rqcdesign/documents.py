"""Structured output documents and input parsing shared by the CLI and the
HTTP service.  Field names follow the cost-formula symbols (n_c, n_wedge,
n_DCD, n_st, n_end, n1, n2, log2_cost, F, Ns) so results read the same
everywhere."""

from __future__ import annotations

import hashlib
import json
import re
from datetime import datetime, timezone

from . import __version__
from .errors import InvalidSpec
from .fidelity import FidelityEstimate
from .lattice import DualGraph, Lattice, LatticeSpec, to_drawing
from .patterns import CircuitLayout, PatternCode, parse_bits
from .search import EvaluationResult, breakdown_doc, lattice_summary, path_doc
from .verify import EntropyProfile

_COORD_RE = re.compile(r"\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?")


def parse_coords(text: str) -> tuple[tuple[int, int], ...]:
    """Coordinate pairs from text like '(2,2) (3,4)' or '2,2;3,4'."""
    if not text or not text.strip():
        return ()
    out = tuple((int(a), int(b)) for a, b in _COORD_RE.findall(text))
    if not out:
        raise InvalidSpec(f"no coordinate pairs found in {text!r}")
    return out


def spec_from_fields(
    mode: str,
    width: int = 0,
    height: int = 0,
    xsize: int = 0,
    ysize: int = 0,
    sites: str | tuple = (),
    defects: str | tuple = (),
) -> LatticeSpec:
    if isinstance(sites, str):
        sites = parse_coords(sites) if sites else ()
    else:
        sites = tuple(tuple(s) for s in sites)
    if isinstance(defects, str):
        defects = parse_coords(defects) if defects else ()
    else:
        defects = tuple(tuple(d) for d in defects)
    return LatticeSpec(
        mode=mode,
        width=width,
        height=height,
        xsize=xsize,
        ysize=ysize,
        sites=sites,
        defects=defects,
    )


def pattern_from_fields(a: str, c: str, swap: int) -> PatternCode:
    return PatternCode(parse_bits(a), parse_bits(c), int(swap))


def make_manifest(command: str, config: dict, seed: int | None = None) -> dict:
    return {
        "tool": "rqcdesign",
        "version": __version__,
        "command": command,
        "config": config,
        "seed": seed,
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }


def attach_manifest(doc: dict, manifest: dict) -> dict:
    """Embed the manifest plus a digest of the deterministic document body
    (wall-time fields excluded, like timestamps)."""
    body = {k: v for k, v in doc.items() if k != "execution"}
    encoded = json.dumps(body, sort_keys=True, ensure_ascii=False)
    manifest = dict(manifest)
    manifest["output_digest"] = "sha256:" + hashlib.sha256(encoded.encode()).hexdigest()
    return {"manifest": manifest, **doc}


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False)


def lattice_document(lattice: Lattice, dual: DualGraph) -> dict:
    """Full lattice description: qubits in both coordinate frames, bonds with
    family/row/offset metadata, and the dual-graph summary."""
    qubits = []
    for qid, (u, v) in enumerate(lattice.coords):
        x, y = to_drawing((u, v))
        qubits.append({"id": qid, "u": u, "v": v, "x": x, "y": y})
    bonds = [
        {
            "id": b.id,
            "family": b.family,
            "row": b.row,
            "offset": b.offset,
            "parity": b.parity,
            "a": b.a,
            "b": b.b,
        }
        for b in lattice.bonds
    ]
    dual_sites = [
        {"u": u, "v": v, "boundary": (u, v) in dual.boundary}
        for (u, v) in dual.sites
    ]
    return {
        "lattice": lattice_summary(lattice),
        "qubits": qubits,
        "bonds": bonds,
        "rows_f1": list(lattice.rows_f1),
        "rows_f2": list(lattice.rows_f2),
        "dual": {
            "n_sites": len(dual.sites),
            "n_boundary": len(dual.boundary),
            "n_interior": len(dual.interior),
            "sites": dual_sites,
        },
    }


def fidelity_doc(est: FidelityEstimate) -> dict:
    return {
        "F": est.f,
        "log2_F": est.log2_f,
        "Ns": est.n_samples,
        "counts": {
            "G1": est.counts.n_1q,
            "G2": est.counts.n_2q,
            "Q": est.counts.n_qubits,
        },
    }


def evaluation_document(
    lattice: Lattice,
    result: EvaluationResult,
    fidelity: FidelityEstimate | None,
) -> dict:
    doc = {
        "lattice": lattice_summary(lattice),
        "pattern": {
            "a": "".join(str(b) for b in result.code.a_bits),
            "c": "".join(str(b) for b in result.code.c_bits),
            "swap": result.code.order_swap,
        },
        "depth": result.sequence.depth,
        "letters": result.sequence.letters,
        "tail": result.sequence.tail or None,
        "breakdown": breakdown_doc(result.breakdown),
        "best_path": path_doc(result.best_path),
        "fidelity": fidelity_doc(fidelity) if fidelity is not None else None,
    }
    if result.tail_words is not None:
        doc["tail_words"] = [
            {"word": w, "log2_cost": c} for w, c in result.tail_words
        ]
    return doc


def circuit_document(circuit: CircuitLayout) -> dict:
    lattice = circuit.lattice
    cycles = []
    for bids in circuit.cycles:
        gates = []
        for bid in bids:
            bond = lattice.bonds[bid]
            gates.append(
                {
                    "bond": bid,
                    "a": list(lattice.coords[bond.a]),
                    "b": list(lattice.coords[bond.b]),
                }
            )
        cycles.append(gates)
    return {
        "lattice": lattice_summary(lattice),
        "pattern": {
            "a": "".join(str(b) for b in circuit.code.a_bits),
            "c": "".join(str(b) for b in circuit.code.c_bits),
            "swap": circuit.code.order_swap,
            "text": circuit.code.text(),
        },
        "letters": circuit.sequence.letters,
        "depth": circuit.depth,
        "cycles": cycles,
    }


def entropy_document(profiles: list[EntropyProfile]) -> dict:
    return {
        "profiles": [
            {
                "pattern": p.pattern,
                "letters": p.letters,
                "seed": p.seed,
                "n1": p.n1,
                "n2": p.n2,
                "rows": [
                    {"cycle": t, "entropy_bits": s} for t, s in enumerate(p.entropies)
                ],
            }
            for p in profiles
        ]
    }


def entropy_table(profile: EntropyProfile) -> str:
    lines = ["cycle\tentropy_bits"]
    for t, s in enumerate(profile.entropies):
        lines.append(f"{t}\t{s:.6f}")
    return "\n".join(lines)
