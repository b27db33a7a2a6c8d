"""Command-line surface: every operation over JSON files.

One subcommand per task; a single JSON document on stdout; human-readable
notes on stderr under ``-v``. Exit status 0 on success, 1 on domain errors
(with a structured JSON error object on stdout), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import approx as approx_mod
from . import jsonio
from .correspondences import DEFAULT_BUDGET, gh_brute, gh_exact
from .errors import GHKitError
from .geodesics import blended_space, geodesic_point, geodesic_spec
from .spaces import FiniteMetricSpace, epsilon_net, is_isometric

__all__ = ["run", "main"]


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true",
                        help="human-readable summary on stderr")

    parser = argparse.ArgumentParser(
        prog="ghkit",
        description="Exact Gromov-Hausdorff distances, geodesics and nets "
                    "for finite metric spaces given as JSON distance matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check the metric axioms of a space file")
    p.add_argument("space", help="space JSON file")

    p = sub.add_parser("dist", parents=[common],
                       help="Gromov-Hausdorff distance between two spaces")
    p.add_argument("x", help="first space JSON file")
    p.add_argument("y", help="second space JSON file")
    p.add_argument("--brute", action="store_true",
                   help="force the enumeration oracle (n*m <= 25)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="node budget for the branch-and-bound solver")

    p = sub.add_parser("geodesic", parents=[common],
                       help="sample the geodesic between two spaces")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--t", action="append", type=float, required=True,
                   dest="ts", metavar="T", help="parameter in [0, d]; repeatable")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("midpoint", parents=[common],
                       help="canonical midpoint of two spaces")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("net", parents=[common],
                       help="greedy epsilon-net with radius certificate")
    p.add_argument("space")
    p.add_argument("--epsilon", type=float, required=True)

    p = sub.add_parser("isometric", parents=[common],
                       help="exact isometry test between two spaces")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--budget", type=int, default=1_000_000)

    p = sub.add_parser("approx", parents=[common],
                       help="net/midpoint pipeline between two sampled spaces")
    p.add_argument("--a-kind", required=True, choices=["circle", "interval", "euclidean"])
    p.add_argument("--a-res", required=True, type=int, help="sample count for side A")
    p.add_argument("--a-length", type=float, default=1.0, help="interval length (side A)")
    p.add_argument("--a-points", help="JSON file with {\"points\": [[...], ...]} (euclidean)")
    p.add_argument("--b-kind", required=True, choices=["circle", "interval", "euclidean"])
    p.add_argument("--b-res", required=True, type=int)
    p.add_argument("--b-length", type=float, default=1.0)
    p.add_argument("--b-points")
    p.add_argument("--n", action="append", type=int, required=True, dest="ns",
                   metavar="N", help="net resolution 1/n; repeatable")
    p.add_argument("--eps", action="append", type=float, dest="epsilons", metavar="EPS",
                   help="epsilon for the net-size checks; repeatable (default 0.5 and 1.0)")
    p.add_argument("--max-net-points", type=int, default=None,
                   help="truncate greedy net selection at this many points")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    return parser


def _read_json(path: str):
    if not os.path.isfile(path):
        raise _UsageError(f"file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON in {path}: {exc}") from exc


def _load_space(path: str) -> FiniteMetricSpace:
    return jsonio.space_from_dict(_read_json(path))


def _emit(payload: dict) -> None:
    sys.stdout.write(jsonio.dumps(payload) + "\n")


def _note(args, message: str) -> None:
    if getattr(args, "verbose", False):
        sys.stderr.write(message + "\n")


def _cmd_validate(args) -> dict:
    space = _load_space(args.space)
    _note(args, f"{args.space}: valid metric on {space.n} points, diameter {space.diameter()}")
    return {"valid": True, "points": space.n, "diameter": space.diameter(),
            "labels": list(space.labels)}


def _cmd_dist(args) -> dict:
    x, y = _load_space(args.x), _load_space(args.y)
    result = gh_brute(x, y) if args.brute else gh_exact(x, y, args.budget)
    _note(args, f"d_GH = {result.distance} "
                f"({'certified' if result.certified else 'bracketed'}, "
                f"{result.nodes_explored} nodes)")
    return result.to_dict()


def _cmd_geodesic(args) -> dict:
    x, y = _load_space(args.x), _load_space(args.y)
    spec = geodesic_spec(x, y, args.budget)
    points = []
    for t in args.ts:
        point = geodesic_point(spec, t)
        space = point if isinstance(point, FiniteMetricSpace) else point.as_metric_space()
        points.append({"t": t, "space": jsonio.space_to_dict(space)})
    _note(args, f"d = {spec.d}; sampled {len(points)} point(s) along the geodesic")
    return {"distance": spec.d, "correspondence": spec.r.to_json(), "points": points}


def _cmd_midpoint(args) -> dict:
    x, y = _load_space(args.x), _load_space(args.y)
    spec = geodesic_spec(x, y, args.budget)
    midpoint = blended_space(spec.r, x, y, 0.5).as_metric_space()
    _note(args, f"midpoint has {midpoint.n} points; d = {spec.d}")
    return {"distance": spec.d, "correspondence": spec.r.to_json(),
            "space": jsonio.space_to_dict(midpoint)}


def _cmd_net(args) -> dict:
    space = _load_space(args.space)
    report = epsilon_net(space, args.epsilon)
    _note(args, f"net of {report.size} point(s), radius {report.radius}")
    return {"net": list(report.net), "epsilon": report.epsilon,
            "radius": report.radius, "size": report.size}


def _cmd_isometric(args) -> dict:
    x, y = _load_space(args.x), _load_space(args.y)
    result = is_isometric(x, y, args.budget)
    _note(args, "isometric" if result.isometric else f"not isometric: {result.reason}")
    return {"isometric": result.isometric,
            "mapping": list(result.mapping) if result.mapping is not None else None,
            "nodes": result.nodes}


def _sampled_side(args, side: str) -> approx_mod.SampledSpace:
    kind = getattr(args, f"{side}_kind")
    res = getattr(args, f"{side}_res")
    if kind == "euclidean":
        path = getattr(args, f"{side}_points")
        if not path:
            raise _UsageError(f"--{side}-points is required for --{side}-kind euclidean")
        doc = _read_json(path)
        if not isinstance(doc, dict) or "points" not in doc:
            raise ValueError(f'{path}: expected an object with a "points" key')
        return approx_mod.sample_space(kind, res, points=doc["points"])
    return approx_mod.sample_space(kind, res, length=getattr(args, f"{side}_length"))


def _cmd_approx(args) -> dict:
    a = _sampled_side(args, "a")
    b = _sampled_side(args, "b")
    epsilons = args.epsilons if args.epsilons else [0.5, 1.0]
    steps = approx_mod.midpoint_sequence(
        a, b, args.ns,
        epsilons=epsilons,
        max_net_points=args.max_net_points,
        budget=args.budget,
    )
    _note(args, f"{len(steps)} stage(s); midpoints certified: "
                f"{all(s.midpoint_certified for s in steps)}")
    return {
        "a": {"kind": a.kind, "resolution": a.resolution, "diameter": a.space.diameter()},
        "b": {"kind": b.kind, "resolution": b.resolution, "diameter": b.space.diameter()},
        "epsilons": list(epsilons),
        "steps": [s.to_dict() for s in steps],
    }


_HANDLERS = {
    "validate": _cmd_validate,
    "dist": _cmd_dist,
    "geodesic": _cmd_geodesic,
    "midpoint": _cmd_midpoint,
    "net": _cmd_net,
    "isometric": _cmd_isometric,
    "approx": _cmd_approx,
}


def run(argv: list[str]) -> int:
    """Parse and dispatch; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _emit(_HANDLERS[args.command](args))
        return 0
    except _UsageError as exc:
        sys.stderr.write(f"ghkit {args.command}: {exc}\n")
        return 2
    except GHKitError as exc:
        _emit(exc.payload())
        _note(args, f"error: {exc}")
        return 1
    except ValueError as exc:
        _emit({"error": "InvalidInput", "message": str(exc)})
        _note(args, f"error: {exc}")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
