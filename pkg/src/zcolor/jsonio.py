"""JSON encoding for colorings, lattices, spectra, and move traces.

Integers outside the 53-bit safe range serialize as strings so output
survives lossy JSON readers; the decoder accepts both forms.  All
documents carry a schema version.
"""

from __future__ import annotations

import json
from typing import Any

from .coloring import Coloring, DiffSpectrum
from .moves import (
    Move,
    MoveTrace,
    R1Insert,
    R1Remove,
    R2Insert,
    R2Remove,
    R3,
    Stage,
)

SCHEMA_VERSION = 1
_SAFE = 2 ** 53 - 1


def encode_int(n: int) -> Any:
    return n if -_SAFE <= n <= _SAFE else str(n)


def decode_int(v: Any) -> int:
    return int(v)


def coloring_to_json(gamma: Coloring) -> dict:
    return {str(e): encode_int(c) for e, c in sorted(gamma.items())}


def coloring_from_json(obj: dict) -> Coloring:
    return {int(e): decode_int(c) for e, c in obj.items()}


def lattice_to_json(lattice) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "rank": lattice.rank,
        "basis": [coloring_to_json(v) for v in lattice.edge_vectors()],
    }


def spectrum_to_json(spec: DiffSpectrum, gamma: Coloring) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "diffs": {str(c): d for c, d in sorted(spec.diffs.items())},
        "histogram": {str(d): n for d, n in sorted(spec.histogram.items())},
        "d_m": spec.d_m,
        "palette": [encode_int(v) for v in sorted(set(gamma.values()))],
    }


def _move_to_json(move: Move) -> dict:
    if isinstance(move, R1Insert):
        return {"kind": "R1+", "edge": move.edge, "sign": move.sign,
                "over_first": move.over_first}
    if isinstance(move, R1Remove):
        return {"kind": "R1-", "crossing": move.cid}
    if isinstance(move, R2Insert):
        out = {"kind": "R2+", "push": move.push_edge, "across": move.across_edge,
               "over": move.push_over, "lean_forward": move.lean_forward}
        if move.corner is not None:
            out["corner"] = list(move.corner)
        return out
    if isinstance(move, R2Remove):
        return {"kind": "R2-", "crossings": [move.cid1, move.cid2]}
    if isinstance(move, R3):
        return {"kind": "R3", "crossings": list(move.cids)}
    raise TypeError(f"unknown move {move!r}")


def _move_from_json(obj: dict) -> Move:
    kind = obj["kind"]
    if kind == "R1+":
        return R1Insert(edge=obj["edge"], sign=obj["sign"],
                        over_first=obj.get("over_first", False))
    if kind == "R1-":
        return R1Remove(cid=obj["crossing"])
    if kind == "R2+":
        corner = obj.get("corner")
        return R2Insert(push_edge=obj["push"], across_edge=obj["across"],
                        push_over=obj["over"],
                        corner=tuple(corner) if corner else None,
                        lean_forward=obj.get("lean_forward", True))
    if kind == "R2-":
        a, b = obj["crossings"]
        return R2Remove(cid1=a, cid2=b)
    if kind == "R3":
        return R3(cids=tuple(obj["crossings"]))
    raise ValueError(f"unknown move kind {kind!r}")


def trace_to_json(trace: MoveTrace) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "stages": [
            {
                "moves": [dict(_move_to_json(mv), disk=disk)
                          for mv, disk in stage.moves],
                "disks": {str(k): sorted(v) for k, v in stage.disks.items()},
            }
            for stage in trace.stages
        ],
    }


def trace_from_json(obj: dict) -> MoveTrace:
    stages = []
    for st in obj["stages"]:
        moves = tuple((_move_from_json(m), m["disk"]) for m in st["moves"])
        disks = {int(k): frozenset(v) for k, v in st["disks"].items()}
        stages.append(Stage(moves=moves, disks=disks))
    return MoveTrace(stages=tuple(stages))


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
