"""Command-line front end.

Every drawing-producing command re-counts its own output with the crossing
counter and exits nonzero if the drawing misses its claimed guarantees.
Exit codes: 0 ok, 1 internal error, 2 validation failure, 3 bound
violation, 4 input too large.  Errors go to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .approx3 import draw_approx_pw3
from .approxw import bounds_for, layout_maximal_pww, pww_box
from .decomposition import (
    AlternatingDecomposition,
    PathDecomposition,
    TooLarge,
    compute_pathwidth_exact,
    extract_clusters,
    to_alternating,
    validate_decomposition,
)
from .drawing import Drawing, check_anchor_edges, check_edges_match, check_grid_bounds, count_crossings, render_svg
from .exact import cr_exact, grid_box, layout_exact, slope_violations
from .gadget import PartitionInstance, build_gadget, check_instance, draw_from_partition
from .generate import random_maximal, random_subgraph
from .graph import Graph
from .oracle import partition_bruteforce, rectilinear_cr_bruteforce

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_BOUND, EXIT_TOO_LARGE = 0, 1, 2, 3, 4


class BoundViolation(RuntimeError):
    """A produced drawing fails its own certificate."""


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj: Any) -> None:
    sys.stdout.write(_dump(obj) + "\n")


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def load_graph(path: str) -> Graph:
    """Graph JSON, or any object with a "graph" member (e.g. `gen` output)."""
    d = _read(path)
    if "graph" in d and "n" not in d:
        d = d["graph"]
    return Graph.from_json(d)


def load_decomposition(path: str) -> PathDecomposition:
    d = _read(path)
    if "decomposition" in d and "bags" not in d:
        d = d["decomposition"]
    return PathDecomposition.from_json(d)


def load_alternating(graph: Graph, path: str) -> AlternatingDecomposition:
    """Alternating decomposition; plain decompositions are normalized first."""
    pd = load_decomposition(path)
    validate_decomposition(graph, pd)
    if isinstance(pd, AlternatingDecomposition):
        return pd
    return to_alternating(graph, pd)


def _frac_json(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _save_drawing(args: argparse.Namespace, drawing: Drawing, report=None, colors=None) -> None:
    _write(getattr(args, "draw", None), drawing.dumps() + "\n")
    _write(getattr(args, "svg", None), render_svg(drawing, report, colors))


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise BoundViolation(message)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_pathwidth(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    w, pd = compute_pathwidth_exact(g)
    _emit({"width": w, "decomposition": pd.to_json()})


def cmd_alternating(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    pd = load_decomposition(args.decomposition)
    prefer = [int(t) for t in args.prefer.split(",")] if args.prefer else None
    ad = to_alternating(g, pd, prefer_old=prefer)
    _emit(ad.to_json())


def cmd_clusters(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    ad = load_alternating(g, args.decomposition)
    _emit({"clusters": [c.to_json() for c in extract_clusters(ad)]})


def cmd_cr_exact(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    ad = load_alternating(g, args.decomposition)
    value = cr_exact(g, ad)
    if args.draw or args.svg:
        lay = layout_exact(g, ad)
        d = lay.drawing
        d.claimed_crossings = value
        rep = count_crossings(d, g)
        _require(rep.is_good, f"drawing is not good: {rep.violation_counts()}")
        _require(rep.total == value, f"drawing has {rep.total} crossings, formula gives {value}")
        _require(check_grid_bounds(d, grid_box(g.n)), "drawing leaves the grid box")
        if g.n > 4:
            _require(check_anchor_edges(d, extract_clusters(ad), rep), "an anchor edge is crossed")
            _require(not slope_violations(d, lay.groups), "slope invariant violated")
        colors = {v: {"T": "#c33", "L": "#393", "R": "#36c"}[gr] for v, gr in lay.groups.items()}
        _save_drawing(args, d, rep, colors)
    sys.stdout.write(f"{value}\n")


def cmd_approx3(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    pd = load_decomposition(args.decomposition)
    res = draw_approx_pw3(g, pd)
    rep = count_crossings(res.drawing, g)
    _require(rep.is_good, f"drawing is not good: {rep.violation_counts()}")
    _require(rep.total == res.crossings, "crossing count mismatch")
    _require(res.crossings <= 2 * res.lower_bound, f"{res.crossings} crossings exceed twice the lower bound")
    _save_drawing(args, res.drawing, rep)
    _emit({"certificate": res.certificate(), "drawing": res.drawing.to_json()})


def cmd_draw_pww(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    ad = load_alternating(g, args.decomposition)
    lay = layout_maximal_pww(g, ad)
    bounds = bounds_for(ad)
    rep = count_crossings(lay.drawing, g)
    _require(rep.is_good, f"drawing is not good: {rep.violation_counts()}")
    _require(rep.total <= lay.counted, "geometric crossings exceed the counted value")
    _require(lay.counted <= bounds.upper, f"{lay.counted} crossings exceed the upper bound {bounds.upper}")
    _require(check_grid_bounds(lay.drawing, pww_box(g.n, ad.width), open_interval=False), "drawing leaves the box")
    if bounds.lower:
        _require(Fraction(lay.counted) / bounds.lower <= bounds.ratio_guarantee, "ratio guarantee violated")
    _save_drawing(args, lay.drawing, rep)
    _emit({"bounds": bounds.to_json(lay.counted), "crossings": rep.total, "drawing": lay.drawing.to_json()})


def cmd_verify(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    d = Drawing.from_json(_read(args.drawing))
    check_edges_match(d, g)
    rep = count_crossings(d, g, weighted=args.weighted)
    out = rep.to_json()
    failures = []
    if not rep.is_good:
        failures.append("not a good drawing")
    if args.grid:
        gx, gy = (int(t) for t in args.grid.split(","))
        xs = [p[0] for p in d.positions] + [b[0] for e in d.edges for b in d.bends.get(e, ())]
        ys = [p[1] for p in d.positions] + [b[1] for e in d.edges for b in d.bends.get(e, ())]
        box = (min(xs), min(xs) + gx, min(ys), min(ys) + gy)
        out["grid_ok"] = check_grid_bounds(d, box, open_interval=False)
        if not out["grid_ok"]:
            failures.append("grid bound")
    if args.anchors:
        ad = load_alternating(g, args.anchors)
        out["anchors_uncrossed"] = check_anchor_edges(d, extract_clusters(ad), rep)
        if not out["anchors_uncrossed"]:
            failures.append("anchor edge crossed")
    _emit(out)
    if failures:
        raise ValidationFailure("; ".join(failures))
    if d.claimed_crossings is not None:
        total = rep.weighted_total if args.weighted else rep.total
        _require(total == d.claimed_crossings, f"claimed {d.claimed_crossings} crossings, counted {total}")


class ValidationFailure(ValueError):
    pass


def cmd_oracle(args: argparse.Namespace) -> None:
    g = load_graph(args.graph)
    value, witness = rectilinear_cr_bruteforce(g, args.grid_side)
    rep = count_crossings(witness, g)
    _require(rep.total == value and rep.is_good, "witness does not reproduce the value")
    _save_drawing(args, witness, rep)
    _emit({"value": value, "grid_side": args.grid_side, "witness": witness.to_json()})


def cmd_gadget(args: argparse.Namespace) -> None:
    inst = PartitionInstance.parse(args.instance)
    verdict = check_instance(inst)
    out: dict[str, Any] = {"verdict": verdict}
    if inst.total % 2 == 0:
        gadget = build_gadget(inst)
        out["gadget"] = gadget.to_json()
        yes, J = partition_bruteforce(list(inst.a))
        if yes and J is not None:
            d = draw_from_partition(gadget, J)
            rep = count_crossings(d, gadget.graph, weighted=True)
            d.claimed_crossings = rep.weighted_total
            _require(rep.is_good and rep.weighted_total == gadget.threshold, "witness misses the threshold")
            out["wcr"] = rep.weighted_total
            out["drawing"] = d.to_json()
            _save_drawing(args, d, rep)
    _require(verdict["ok"], "gadget check failed")
    _emit(out)


def cmd_gen(args: argparse.Namespace) -> None:
    if not args.maximal and args.keep is None:
        raise ValidationFailure("choose --maximal or --keep p")
    inst = random_maximal(args.n, args.width, args.seed)
    g = inst.graph
    if args.keep is not None:
        g = random_subgraph(inst, args.keep, args.seed)
    out = {"graph": g.to_json(), "decomposition": inst.decomposition.to_json()}
    _write(args.graph_out, _dump(g.to_json()) + "\n")
    _write(args.decomposition_out, _dump(inst.decomposition.to_json()) + "\n")
    _emit(out)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pwcross", description="Crossing numbers of bounded-pathwidth graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pathwidth", help="exact pathwidth and a decomposition (n <= 20)")
    s.add_argument("graph")
    s.set_defaults(func=cmd_pathwidth)

    s = sub.add_parser("alternating", help="normalize a decomposition")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.add_argument("--prefer", help="comma-separated vertices to make oldest")
    s.set_defaults(func=cmd_alternating)

    s = sub.add_parser("clusters", help="cluster table of a width-w decomposition")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.set_defaults(func=cmd_clusters)

    s = sub.add_parser("cr-exact", help="crossing number of a maximal pathwidth-3 graph")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.add_argument("--draw", help="write the optimal drawing JSON here")
    s.add_argument("--svg", help="write an SVG rendering here")
    s.set_defaults(func=cmd_cr_exact)

    s = sub.add_parser("approx3", help="2-approximate drawing of a pathwidth-3 graph")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.add_argument("--draw")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_approx3)

    s = sub.add_parser("draw-pww", help="poly-line drawing of a maximal pathwidth-w graph")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.add_argument("--draw")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_draw_pww)

    s = sub.add_parser("verify", help="count crossings of a drawing")
    s.add_argument("graph")
    s.add_argument("drawing")
    s.add_argument("--weighted", action="store_true")
    s.add_argument("--grid", help="X,Y: integer points within an X by Y box")
    s.add_argument("--anchors", help="decomposition whose anchor edges must stay uncrossed")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="brute-force rectilinear crossing number on a grid")
    s.add_argument("graph")
    s.add_argument("--grid-side", type=int, default=5)
    s.add_argument("--draw")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gadget", help="weighted hardness gadget for a Partition instance")
    s.add_argument("instance", help="comma-separated positive integers")
    s.add_argument("--draw")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("gen", help="random instance with its decomposition")
    s.add_argument("--maximal", action="store_true")
    s.add_argument("--keep", type=float, help="keep each edge with this probability (connected result)")
    s.add_argument("--width", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--graph-out")
    s.add_argument("--decomposition-out")
    s.set_defaults(func=cmd_gen)
    return p


def _error(code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except TooLarge as exc:
        return _error(EXIT_TOO_LARGE, exc)
    except BoundViolation as exc:
        return _error(EXIT_BOUND, exc)
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        return _error(EXIT_INVALID, exc)
    except Exception as exc:  # noqa: BLE001
        return _error(EXIT_INTERNAL, exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
