"""Command-line interface.

Every command reads an instance JSON file and writes JSON to stdout.  Exit
status is 0 on success, 1 for domain outcomes (empty or unbounded hull,
failed comparison, unmet preconditions such as a reducible family for
``decompose``) and 2 for usage errors, including unreadable or invalid
instance files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import feasibility, gallery, hull, oracle, reduction, render, transforms
from .errors import InstanceError, IntervalHullError
from .model import Tolerances, load_instance

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _tol(args) -> Tolerances:
    return Tolerances(args.tol_dedup, args.tol_geom, args.tol_feas)


def _load(args):
    return load_instance(args.instance, _tol(args))


def cmd_check(args) -> int:
    inst = _load(args)
    report = feasibility.check(inst)
    _emit(report.to_json())
    return EXIT_OK if report.nonempty and report.bounded else EXIT_DOMAIN


def _hull(args, inst):
    return hull.co_hull(inst, _tol(args), edge_cap=args.edge_cap, seed=args.seed)


def cmd_hull(args) -> int:
    inst = _load(args)
    poly = _hull(args, inst)
    out = poly.to_json()
    out["bounds"] = hull.hull_bounds(inst.family, _tol(args))
    _emit(out)
    return EXIT_DOMAIN if poly.is_empty else EXIT_OK


def cmd_reduce(args) -> int:
    tol = _tol(args)
    inst = _load(args)
    fam = feasibility.bound_family(inst.family)
    reduced = inst.with_family(reduction.hat(fam, tol))
    out = reduced.to_dict()
    out["flags"] = {
        "irreducible": reduction.is_irreducible(fam, tol),
        "wide": reduction.is_wide(fam, tol),
        "minimality": reduction.minimality_status(inst, tol).value,
    }
    _emit(out)
    return EXIT_OK


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def cmd_transform(args) -> int:
    tol = _tol(args)
    inst = _load(args)
    if args.homothety is not None:
        vals = args.homothety
        if len(vals) != inst.d + 1:
            raise _UsageError(f"--homothety needs {inst.d} centre coordinates and a ratio")
        out = transforms.homothety_pullback(inst, vals[:-1], vals[-1], tol)
    else:
        try:
            matrix = json.loads(args.affine)
            offset = json.loads(args.offset) if args.offset else None
        except json.JSONDecodeError as exc:
            raise _UsageError(f"--affine/--offset must be JSON arrays: {exc}") from None
        try:
            out = transforms.apply_affine(inst, matrix, offset, tol)
        except ValueError as exc:
            if isinstance(exc, IntervalHullError):
                raise
            raise _UsageError(str(exc)) from None
    _emit(out.to_dict())
    return EXIT_OK


def cmd_decompose(args) -> int:
    inst = _load(args)
    _emit(transforms.decompose(inst, _tol(args)).to_json())
    return EXIT_OK


def cmd_compare(args) -> int:
    inst = _load(args)
    poly = _hull(args, inst)
    report = oracle.compare_hulls(poly, inst, args.resolution, _tol(args))
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_DOMAIN


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_render(args) -> int:
    inst = _load(args)
    poly = _hull(args, inst)
    text = render.svg(inst, poly) if args.format == "svg" else render.obj(poly, _tol(args))
    if args.out:
        _write(args.out, text)
        _emit({"written": args.out, "format": args.format, "vertices": poly.count})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gallery(args) -> int:
    tol = _tol(args)
    ids = gallery.gallery_ids() if args.id == "all" else [args.id]
    unknown = [i for i in ids if i not in gallery.GALLERY]
    if unknown:
        raise _UsageError(f"unknown gallery id {unknown[0]!r}; choose from {', '.join(gallery.gallery_ids())}")
    if args.render:
        os.makedirs(args.render, exist_ok=True)
    results = []
    for gid in ids:
        entry = gallery.GALLERY[gid]
        poly = hull.co_hull(entry.instance, tol, edge_cap=args.edge_cap, seed=args.seed)
        failures = gallery.verify_entry(entry, poly)
        results.append({
            "id": gid,
            "count": poly.count,
            "dim": poly.dim,
            "expected_count": entry.expected.vertex_count,
            "regularity": entry.expected.regularity,
            "notes": entry.expected.notes,
            "corrected_coordinates": entry.corrected,
            "passed": not failures,
            "failures": failures,
        })
        if args.render:
            if poly.dim == 2 and entry.instance.d == 2:
                _write(os.path.join(args.render, f"{gid}.svg"), render.svg(entry.instance, poly))
            elif poly.dim == 3:
                _write(os.path.join(args.render, f"{gid}.obj"), render.obj(poly, tol, gid))
    failed = [r["id"] for r in results if not r["passed"]]
    _emit({"entries": results, "failed": failed})
    return EXIT_DOMAIN if failed else EXIT_OK


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-dedup", type=float, default=Tolerances.eps_dedup,
                        help="relative deduplication tolerance (default %(default)s)")
    common.add_argument("--tol-geom", type=float, default=Tolerances.eps_geom,
                        help="rank/containment tolerance (default %(default)s)")
    common.add_argument("--tol-feas", type=float, default=Tolerances.eps_feas,
                        help="LP feasibility slack (default %(default)s)")
    common.add_argument("--edge-cap", type=int, default=hull.EDGE_CAP,
                        help="maximum number of non-singleton intervals (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised shortcuts")
    common.add_argument("--resolution", type=int, default=15, help="grid resolution for compare")

    parser = argparse.ArgumentParser(prog="intervalhull", description="Convex interval hulls of finite point sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, instance=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if instance:
            p.add_argument("instance", help="instance JSON file")
        p.set_defaults(func=func, subparser=p)
        return p

    add("check", cmd_check, "nonemptiness and boundedness report")
    add("hull", cmd_hull, "vertices of the hull")
    add("reduce", cmd_reduce, "tightened interval family and flags")
    p = add("transform", cmd_transform, "homothety or affine image of an instance")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--homothety", type=_floats, metavar="V1,...,VD,DELTA")
    group.add_argument("--affine", metavar="JSON_MATRIX")
    p.add_argument("--offset", metavar="JSON_VECTOR")
    add("decompose", cmd_decompose, "outer/inner homothet decomposition")
    add("compare", cmd_compare, "check the hull against a brute-force grid")
    p = add("render", cmd_render, "draw the hull as SVG or OBJ")
    p.add_argument("--format", choices=["svg", "obj"], default="svg")
    p.add_argument("--out", help="output path (default: stdout)")
    p = add("gallery", cmd_gallery, "run the built-in gallery", instance=False)
    p.add_argument("--id", default="all", help="entry id such as fig12, or 'all'")
    p.add_argument("--render", metavar="DIR", help="write one SVG/OBJ file per entry into DIR")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        args.subparser.error(str(exc))
    except (OSError, InstanceError) as exc:
        # unreadable or invalid input is a usage problem, not a geometric outcome
        print(f"intervalhull {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntervalHullError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser"]
