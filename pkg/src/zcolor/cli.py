"""Command-line interface: one command per operation, JSON on stdout.

Exit codes: 0 success, 1 domain error (reported as structured JSON on
stdout), 2 usage or input-syntax error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra, cabling, coloring, diagram, jsonio, parallel_coloring, rewrite
from .diagram import Diagram, DiagramError, PDSyntaxError


class UsageError(Exception):
    pass


def _load_diagram(path: str) -> Diagram:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}")
    return diagram.parse_pd(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        raise UsageError(f"{path}: invalid JSON ({err})")


def _emit(doc: dict, pretty: bool) -> None:
    doc.setdefault("schema_version", jsonio.SCHEMA_VERSION)
    sys.stdout.write(jsonio.dumps(doc, pretty=pretty) + "\n")


def cmd_validate(args) -> int:
    d = _load_diagram(args.pd)
    diags = diagram.validate(d)
    _emit({
        "valid": not diags,
        "diagnostics": diags,
        "crossings": len(d.crossings),
        "components": d.num_components,
        "free_loops": d.free_loops,
    }, args.pretty)
    return 0


def cmd_invariants(args) -> int:
    d = _load_diagram(args.pd)
    colorable, _ = algebra.is_z_colorable(d)
    _emit({
        "writhe": diagram.writhe(d),
        "determinant": jsonio.encode_int(algebra.determinant(d)),
        "components": d.num_components,
        "z_colorable": colorable,
    }, args.pretty)
    return 0


def cmd_colorability(args) -> int:
    d = _load_diagram(args.pd)
    colorable, witness = algebra.is_z_colorable(d)
    lat = algebra.diagram_lattice(d)
    doc = {"z_colorable": colorable,
           "kernel_rank": lat.rank,
           "lattice": jsonio.lattice_to_json(lat)}
    if witness is not None:
        doc["witness"] = jsonio.coloring_to_json(witness)
    _emit(doc, args.pretty)
    return 0


def cmd_fox_count(args) -> int:
    d = _load_diagram(args.pd)
    _emit({"n": args.n,
           "count": jsonio.encode_int(algebra.fox_coloring_count(d, args.n))},
          args.pretty)
    return 0


def cmd_cable(args) -> int:
    d = _load_diagram(args.pd)
    if args.two_parallel_untwisted:
        out = cabling.two_parallel_untwisted(d)
    else:
        if not args.spec:
            raise UsageError("cable needs --spec or --two-parallel-untwisted")
        mult = tuple(int(t) for t in args.spec.split(","))
        out = cabling.parallel(d, cabling.CableSpec(multiplicities=mult))
    _emit({"pd": diagram.serialize_pd(out),
           "crossings": len(out.crossings),
           "components": out.num_components}, args.pretty)
    return 0


def cmd_color_parallel(args) -> int:
    d = _load_diagram(args.pd)
    mult = tuple(int(t) for t in args.spec.split(","))
    if mult == (2,):
        cabled, gamma = parallel_coloring.color_two_parallel(d)
        targets = [4, -1]
    else:
        cabled = cabling.parallel(d, cabling.CableSpec(multiplicities=mult))
        gamma = parallel_coloring.color_even_parallel(cabled)
        targets = [3]
    # verbatim serialization keeps arc labels and crossing ids stable so the
    # emitted traces replay against the emitted pd
    doc = {
        "pd": diagram.serialize_pd_raw(cabled),
        "coloring": jsonio.coloring_to_json(gamma),
        "palette": [jsonio.encode_int(v) for v in sorted(set(gamma.values()))],
    }
    if args.reduce:
        traces = []
        cur_d, cur_g = cabled, gamma
        for target in targets:
            if target not in set(cur_g.values()):
                continue
            cur_d, cur_g, trace = parallel_coloring.delete_color_moves(
                cur_d, cur_g, target)
            traces.append(jsonio.trace_to_json(trace))
        doc["reduced_pd"] = diagram.serialize_pd_raw(cur_d)
        doc["reduced_coloring"] = jsonio.coloring_to_json(cur_g)
        doc["palette"] = [jsonio.encode_int(v) for v in sorted(set(cur_g.values()))]
        doc["traces"] = traces
    _emit(doc, args.pretty)
    return 0


def cmd_simplify_coloring(args) -> int:
    d = _load_diagram(args.pd)
    gamma = jsonio.coloring_from_json(_load_json(args.coloring))
    out_d, out_g, trace = rewrite.to_simple_coloring(d, gamma)
    _emit({
        "pd": diagram.serialize_pd(out_d),
        "coloring": jsonio.coloring_to_json(out_g),
        "trace": jsonio.trace_to_json(trace),
        "simple": list(coloring.is_simple(out_d, out_g)),
    }, args.pretty)
    return 0


def cmd_minimize(args) -> int:
    d = _load_diagram(args.pd)
    lat = algebra.diagram_lattice(d)
    best = coloring.minimize_palette_on_diagram(d, lat, args.bound)
    values, size = coloring.palette(best)
    _emit({
        "coloring": jsonio.coloring_to_json(best),
        "palette": [jsonio.encode_int(v) for v in sorted(values)],
        "palette_size": size,
        "bound": args.bound,
    }, args.pretty)
    return 0


def cmd_verify(args) -> int:
    d = _load_diagram(args.pd)
    gamma = jsonio.coloring_from_json(_load_json(args.coloring))
    ok = coloring.verify_coloring(d, gamma)
    doc = {"valid": ok}
    if ok:
        spec = coloring.diff_spectrum(d, gamma)
        doc.update(jsonio.spectrum_to_json(spec, gamma))
    _emit(doc, args.pretty)
    return 0


def cmd_replay(args) -> int:
    from .moves import replay_trace, verify_local_equivalence

    d = _load_diagram(args.pd)
    trace = jsonio.trace_from_json(_load_json(args.trace))
    result = replay_trace(d, trace)
    doc = {"pd": diagram.serialize_pd(result)}
    if args.check:
        target = _load_diagram(args.check)
        report = verify_local_equivalence(d, target, trace)
        doc["equivalent"] = report.ok
        doc["reasons"] = list(report.reasons)
    _emit(doc, args.pretty)
    return 0


def cmd_corpus(args) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise UsageError(f"no such corpus directory: {args.dir}")
    report = []
    failures = 0
    for pd_file in sorted(root.glob("*.pd")):
        entry = {"file": pd_file.name}
        try:
            d = diagram.parse_pd(pd_file.read_text())
            colorable, _ = algebra.is_z_colorable(d)
            got = {
                "writhe": diagram.writhe(d),
                "determinant": algebra.determinant(d),
                "components": d.num_components,
                "z_colorable": colorable,
            }
            entry["invariants"] = {k: jsonio.encode_int(v) if isinstance(v, int) else v
                                   for k, v in got.items()}
            sidecar = pd_file.with_suffix(".expected.json")
            if sidecar.exists():
                expected = json.loads(sidecar.read_text())
                mismatches = {
                    k: {"expected": expected[k], "got": got[k]}
                    for k in expected if got.get(k) != expected[k]
                }
                if mismatches:
                    entry["mismatches"] = mismatches
                    failures += 1
            entry["ok"] = "mismatches" not in entry
        except (DiagramError, PDSyntaxError) as err:
            entry["ok"] = False
            entry["error"] = str(err)
            failures += 1
        report.append(entry)
    _emit({"entries": report, "failures": failures}, args.pretty)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zcolor",
        description="Integer colorings of link diagrams: colorability, "
                    "cabling, palette reduction.")
    ap.add_argument("--pretty", action="store_true",
                    help="indent the JSON output (cosmetic only)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a PD file's invariants")
    p.add_argument("pd")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="writhe, determinant, colorability")
    p.add_argument("pd")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("colorability", help="kernel rank and witness coloring")
    p.add_argument("pd")
    p.set_defaults(func=cmd_colorability)

    p = sub.add_parser("fox-count", help="count colorings mod n")
    p.add_argument("pd")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_fox_count)

    p = sub.add_parser("cable", help="build a parallel of the diagram")
    p.add_argument("pd")
    p.add_argument("--spec", help="comma-separated multiplicities, e.g. 3,2")
    p.add_argument("--two-parallel-untwisted", action="store_true")
    p.set_defaults(func=cmd_cable)

    p = sub.add_parser("color-parallel", help="color an even parallel or a 2-parallel")
    p.add_argument("pd")
    p.add_argument("--spec", required=True)
    p.add_argument("--reduce", action="store_true",
                   help="delete extreme colors by verified local moves")
    p.set_defaults(func=cmd_color_parallel)

    p = sub.add_parser("simplify-coloring", help="rewrite to a simple coloring")
    p.add_argument("pd")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_simplify_coloring)

    p = sub.add_parser("minimize", help="bounded palette minimization")
    p.add_argument("pd")
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("verify", help="verify a coloring and report its spectrum")
    p.add_argument("pd")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="replay a move trace")
    p.add_argument("pd")
    p.add_argument("trace")
    p.add_argument("--check", help="target PD file for equivalence verification")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("corpus", help="run the invariants over a corpus directory")
    p.add_argument("dir")
    p.set_defaults(func=cmd_corpus)
    return ap


DOMAIN_ERRORS = (
    DiagramError,
    algebra.DiagramError,
    cabling.CableError,
    coloring.ColoringError,
    parallel_coloring.ConstructionError,
    parallel_coloring.NoApplicableMoveError,
    rewrite.RewriteError,
)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as err:
        sys.stdout.write(jsonio.dumps(
            {"error": {"type": "usage", "message": str(err)},
             "schema_version": jsonio.SCHEMA_VERSION}) + "\n")
        return 2
    except PDSyntaxError as err:
        sys.stdout.write(jsonio.dumps(
            {"error": {"type": "syntax", "message": str(err),
                       "line": err.line, "column": err.column},
             "schema_version": jsonio.SCHEMA_VERSION}) + "\n")
        return 2
    except DOMAIN_ERRORS as err:
        sys.stdout.write(jsonio.dumps(
            {"error": {"type": type(err).__name__, "message": str(err)},
             "schema_version": jsonio.SCHEMA_VERSION}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
