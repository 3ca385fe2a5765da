"""Batch command line and SVG rendering.

Subcommands: analyze, flexes, prestress, solve, deform, epscheck,
verify-ideals, plot.  Each writes a JSON report (byte-stable for a fixed
seed and input) and optionally an SVG; exit codes are 0 for success, 1 for
domain errors, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from xml.etree import ElementTree as ET

import numpy as np

from .continuation import (DEFAULT_PATH_BUDGET, MultiPoly, PolySystem,
                           deform_framework, epsilon_rigidity_check,
                           solve_total_degree)
from .framework import (FIXTURE_NAMES, FrameworkError, build_constraints,
                        evaluate_members, load_fixture, load_framework)
from .ideals import (adjacent_minors, adjacent_minor_primes,
                     slingshot_displayed_minor, slingshot_equations,
                     slingshot_member_constraints, slingshot_minors,
                     slingshot_primes)
from .prestress import prestress_certificate, self_stress_basis
from .rigidity import (RANK_REL_TOL, nullspace_decomposition, pin_moving_frame,
                       rigid_motion_basis, rigidity_report)
from .symbolic import RationalPoly, verify_containment

#: member stroke colors by kind
MEMBER_COLORS = {"bar": "#333333", "cable": "#1f77b4", "strut": "#d62728"}

#: one color per displacement basis vector, cycled
ARROW_COLORS = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                "#66a61e", "#e6ab02", "#a6761d", "#666666")

#: isometric projection for d = 3, viewing along (1, 1, 1)/sqrt(3)
ISOMETRIC = np.array([
    [1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0), 0.0],
    [1.0 / np.sqrt(6.0), 1.0 / np.sqrt(6.0), -2.0 / np.sqrt(6.0)],
])


@dataclass(frozen=True)
class RenderSpec:
    """How to draw a scene: 2 x d projection (None picks identity for
    d <= 2 and the fixed isometric map for d = 3) plus styling."""

    projection: np.ndarray | None = None
    member_colors: dict = field(default_factory=lambda: dict(MEMBER_COLORS))
    arrow_colors: tuple = ARROW_COLORS
    arrow_scale: float = 1.0
    width: float = 640.0
    height: float = 480.0
    margin: float = 48.0
    node_radius: float = 4.0

    def __post_init__(self):
        if not self.arrow_scale > 0:
            raise ValueError("arrow scale must be positive")

    def projection_for(self, d: int) -> np.ndarray:
        if self.projection is not None:
            proj = np.asarray(self.projection, dtype=float)
            if proj.shape != (2, d):
                raise ValueError(f"projection must be 2x{d}")
            return proj
        if d == 1:
            return np.array([[1.0], [0.0]])
        if d == 2:
            return np.eye(2)
        if d == 3:
            return ISOMETRIC
        raise ValueError(f"dimension {d} scene needs an explicit projection")


@dataclass(frozen=True)
class Scene:
    """What to draw: node coordinates, members, and optionally a matrix of
    displacement vectors (n*d rows, one column per vector) or a set of
    complex root trajectories."""

    nodes: np.ndarray
    members: tuple = ()
    displacements: np.ndarray | None = None
    trajectories: tuple = ()


def _canvas_map(points, spec: RenderSpec):
    """Affine map from scene coordinates to SVG pixels (y flipped)."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        lo, hi = np.zeros(2), np.ones(2)
    else:
        lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    scale = min((spec.width - 2 * spec.margin) / span[0],
                (spec.height - 2 * spec.margin) / span[1])
    mid = 0.5 * (lo + hi)

    def to_px(p):
        x = spec.width / 2 + (p[0] - mid[0]) * scale
        y = spec.height / 2 - (p[1] - mid[1]) * scale
        return float(x), float(y)

    return to_px


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(scene: Scene, spec: RenderSpec | None = None) -> str:
    """Draw a scene as an SVG document string.

    Nodes become circles, members lines styled by kind, each displacement
    basis vector one group of arrows (zero-length arrows omitted), and each
    trajectory a polyline through the complex plane.
    """
    spec = spec or RenderSpec()
    nodes = np.asarray(scene.nodes, dtype=float)
    n = nodes.shape[0]
    d = nodes.shape[1] if nodes.ndim == 2 and n else 2
    proj = spec.projection_for(d) if n else np.eye(2)
    flat = nodes @ proj.T if n else np.zeros((0, 2))

    disp2d = None
    if scene.displacements is not None and n:
        vecs = np.asarray(scene.displacements, dtype=float)
        if vecs.ndim == 1:
            vecs = vecs[:, None]
        if vecs.shape[0] != n * d:
            raise ValueError(f"displacement field must have {n * d} rows")
        # per vector: (n, 2) projected arrows
        disp2d = [vecs[:, k].reshape(n, d) @ proj.T * spec.arrow_scale
                  for k in range(vecs.shape[1])]

    extent = [flat]
    if disp2d:
        extent.extend(flat + v for v in disp2d)
    for path in scene.trajectories:
        zs = np.asarray(path, dtype=complex).reshape(-1)
        extent.append(np.column_stack([zs.real, zs.imag]))
    to_px = _canvas_map(np.concatenate(extent) if extent else np.zeros((0, 2)),
                        spec)

    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": _fmt(spec.width), "height": _fmt(spec.height),
        "viewBox": f"0 0 {_fmt(spec.width)} {_fmt(spec.height)}",
    })
    ET.SubElement(root, "rect", {"width": "100%", "height": "100%",
                                 "fill": "#ffffff"})

    for path in scene.trajectories:
        zs = np.asarray(path, dtype=complex).reshape(-1)
        pts = " ".join("%s,%s" % tuple(map(_fmt, to_px((z.real, z.imag))))
                       for z in zs)
        ET.SubElement(root, "polyline", {
            "class": "trajectory", "points": pts, "fill": "none",
            "stroke": "#555555", "stroke-width": "1",
        })

    for (i, j, kind) in scene.members:
        x1, y1 = to_px(flat[i - 1])
        x2, y2 = to_px(flat[j - 1])
        ET.SubElement(root, "line", {
            "class": f"member {kind}",
            "x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2),
            "stroke": spec.member_colors.get(kind, "#333333"),
            "stroke-width": "2",
            "stroke-dasharray": "6,3" if kind == "strut" else "none",
        })

    if disp2d:
        for k, vec in enumerate(disp2d):
            color = spec.arrow_colors[k % len(spec.arrow_colors)]
            group = ET.SubElement(root, "g", {"class": "arrows",
                                              "data-vector": str(k),
                                              "stroke": color})
            for i in range(n):
                if np.linalg.norm(vec[i]) <= 1e-12:
                    continue
                x1, y1 = to_px(flat[i])
                x2, y2 = to_px(flat[i] + vec[i])
                head = _arrow_head(x1, y1, x2, y2)
                ET.SubElement(group, "path", {
                    "class": "arrow", "fill": "none", "stroke-width": "1.5",
                    "d": f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)} {head}",
                })

    for i in range(n):
        x, y = to_px(flat[i])
        ET.SubElement(root, "circle", {
            "class": "node", "cx": _fmt(x), "cy": _fmt(y),
            "r": _fmt(spec.node_radius), "fill": "#000000",
        })

    return ET.tostring(root, encoding="unicode")


def _arrow_head(x1, y1, x2, y2, size=6.0):
    v = np.array([x2 - x1, y2 - y1])
    norm = np.linalg.norm(v)
    if norm <= 1e-12:
        return ""
    u = v / norm
    left = np.array([x2, y2]) - size * u + size * 0.5 * np.array([-u[1], u[0]])
    right = np.array([x2, y2]) - size * u - size * 0.5 * np.array([-u[1], u[0]])
    return (f"M {_fmt(left[0])} {_fmt(left[1])} L {_fmt(x2)} {_fmt(y2)} "
            f"L {_fmt(right[0])} {_fmt(right[1])}")


# ---------------------------------------------------------------------------
# subcommand pipelines


@dataclass
class CommandOutput:
    stem: str
    payload: dict
    svg: str | None = None
    ok: bool = True
    summary: str = ""


def _load_input(text: str):
    path = Path(text)
    if path.exists():
        graph, p, sys_ = load_framework(path)
        return graph, p, sys_, path.stem
    if text in FIXTURE_NAMES:
        graph, p, sys_ = load_fixture(text)
        return graph, p, sys_, text
    raise FrameworkError(f"no framework file or fixture named {text!r}")


def _scene(graph, p, displacements=None) -> Scene:
    return Scene(nodes=p.coords, members=graph.members,
                 displacements=displacements)


def _pinned(graph, p, sys_):
    pp = pin_moving_frame(p)
    return pp, build_constraints(graph, pp, rest_sq_lengths=sys_.rest_sq_lengths)


def _partition_kinds(graph, sys_):
    """Member kinds for prestress sign checks; a tensegrity_partition block
    in the input metadata overrides the stored kinds."""
    block = sys_.metadata.get("tensegrity_partition")
    if not isinstance(block, dict):
        return None
    lookup = {}
    for kind in ("bar", "cable", "strut"):
        for pair in block.get(kind + "s", ()):
            lookup[tuple(pair)] = kind
    if not lookup:
        return None
    return tuple(lookup.get((i, j), kind) for (i, j, kind) in graph.members)


def _cmd_analyze(args) -> CommandOutput:
    graph, p, sys_, stem = _load_input(args.framework)
    report = rigidity_report(sys_, p, tol_rel=args.tol, seed=args.seed)
    residuals, feasible = evaluate_members(sys_, p)
    payload = {
        "input": stem,
        "nodes": graph.n, "dimension": graph.d, "members": graph.m,
        **report.to_json_dict(),
        "member_residual_max": float(np.max(np.abs(residuals))),
        "all_members_feasible": bool(np.all(feasible)),
    }
    svg = render_svg(_scene(graph, p)) if args.svg else None
    return CommandOutput(stem, payload, svg,
                         summary=f"verdict: {report.verdict}")


def _cmd_flexes(args) -> CommandOutput:
    graph, p, sys_, stem = _load_input(args.framework)
    dec = nullspace_decomposition(sys_, p, tol_rel=args.tol)
    payload = {
        "input": stem,
        "rigid_motion_dim": int(dec.rigid_motions.shape[1]),
        "flex_dim": int(dec.flexes.shape[1]),
        "corank": dec.corank,
        "tolerance": dec.tol,
        "rigid_motions": dec.rigid_motions.T.tolist(),
        "flexes": dec.flexes.T.tolist(),
    }
    svg = None
    if args.svg:
        basis = np.hstack([dec.rigid_motions, dec.flexes])
        svg = render_svg(_scene(graph, p, basis if basis.size else None))
    return CommandOutput(stem, payload, svg,
                         summary=f"flexes: {dec.flexes.shape[1]}")


def _cmd_prestress(args) -> CommandOutput:
    graph, p, sys_, stem = _load_input(args.framework)
    partition = _partition_kinds(graph, sys_)
    cert = prestress_certificate(sys_, p, partition=partition,
                                 tol_rel=args.tol, seed=args.seed)
    basis = self_stress_basis(sys_, p, tol_rel=args.tol)
    payload = {
        "input": stem,
        "self_stress_dim": len(basis),
        "partition": list(partition) if partition else None,
        **cert.to_json_dict(),
    }
    return CommandOutput(stem, payload, summary=f"verdict: {cert.verdict}")


def _read_system(path: Path):
    doc = json.loads(path.read_text())
    names = tuple(doc["variables"])
    polys = []
    for text in doc["equations"]:
        rp = RationalPoly.parse(text, names)
        polys.append(MultiPoly(len(names), {e: complex(float(c), 0.0)
                                            for e, c in rp.terms.items()}))
    return names, PolySystem(polys)


def _cmd_solve(args) -> CommandOutput:
    path = Path(args.system)
    names, system = _read_system(path)
    results = solve_total_degree(system, seed=args.seed,
                                 budget=args.budget, record=args.svg)
    payload = {
        "input": path.stem,
        "variables": list(names),
        "degrees": system.degrees,
        "paths": len(results),
        "results": [{
            "status": r.status,
            "residual": float(r.residual),
            "max_imag": float(r.max_imag),
            "steps": r.steps,
            "point_re": r.endpoint.real.tolist(),
            "point_im": r.endpoint.imag.tolist(),
        } for r in results],
    }
    svg = None
    if args.svg:
        paths = tuple(np.array([x[0] for _, x in r.trajectory])
                      for r in results if r.trajectory)
        svg = render_svg(Scene(nodes=np.zeros((0, 2)), trajectories=paths))
    converged = sum(r.status == "converged" for r in results)
    return CommandOutput(path.stem, payload,
                         svg, summary=f"converged {converged}/{len(results)}")


def _cmd_deform(args) -> CommandOutput:
    graph, p, sys_, stem = _load_input(args.framework)
    pp, sysp = _pinned(graph, p, sys_)
    steps = deform_framework(sysp, pp, direction="flex",
                             epsilon=args.epsilon, steps=args.steps,
                             seed=args.seed)
    payload = {
        "input": stem,
        "epsilon": args.epsilon,
        "requested_steps": args.steps,
        "steps": [{
            "status": s.result.status,
            "real_within_tau": bool(s.real),
            "member_residual": float(s.member_residual),
            "max_imag": float(s.result.max_imag),
            "point_re": s.point.real.tolist(),
            "point_im": s.point.imag.tolist(),
        } for s in steps],
    }
    svg = None
    if args.svg and steps:
        delta = steps[-1].point.real - pp.coords
        svg = render_svg(_scene(graph, pp, delta.reshape(-1, 1)))
    last = steps[-1].result.status if steps else "none"
    return CommandOutput(stem, payload, svg, summary=f"last status: {last}")


def _cmd_epscheck(args) -> CommandOutput:
    graph, p, sys_, stem = _load_input(args.framework)
    pp, sysp = _pinned(graph, p, sys_)
    out = epsilon_rigidity_check(sysp, pp, epsilon=args.epsilon,
                                 seed=args.seed, budget=args.budget)
    payload = {"input": stem, "epsilon": args.epsilon, **out.to_json_dict()}
    return CommandOutput(stem, payload, summary=f"verdict: {out.verdict}")


def _containment_rows(gens, primes):
    rows = []
    ok = True
    for k, prime in enumerate(primes, start=1):
        rep = verify_containment(gens, prime)
        ok &= rep.contained
        worst = rep.worst_remainder
        rows.append({"prime": k, "contained": rep.contained,
                     "worst_remainder": str(worst) if worst else None})
    return rows, ok


def _cmd_verify_ideals(args) -> CommandOutput:
    adj_rows, adj_ok = _containment_rows(adjacent_minors(),
                                         adjacent_minor_primes())
    minors = slingshot_minors()
    nonzero = [m for m in minors if not m.is_zero()]
    shown = slingshot_displayed_minor()
    found = any(m == shown or m == -shown for m in nonzero)
    eqs = slingshot_member_constraints() + nonzero
    sling_rows, sling_ok = _containment_rows(eqs, slingshot_primes())
    payload = {
        "adjacent_minors": {"generators": 4, "containment": adj_rows},
        "slingshot": {
            "minor_count": len(minors),
            "nonzero_minors": len(nonzero),
            "distinct_nonzero": len(set(nonzero)),
            "displayed_minor_found": bool(found),
            "equation_count": len(eqs),
            "containment": sling_rows,
        },
    }
    ok = adj_ok and sling_ok and found and len(eqs) == 102
    return CommandOutput("reference", payload, ok=ok,
                         summary="all containments hold" if ok
                         else "containment FAILED")


def _cmd_plot(args) -> CommandOutput:
    graph, p, sys_, stem = _load_input(args.framework)
    dec = nullspace_decomposition(sys_, p, tol_rel=args.tol)
    disp = dec.flexes if dec.flexes.size else None
    svg = render_svg(_scene(graph, p, disp))
    payload = {"input": stem, "nodes": graph.n, "members": graph.m,
               "flex_arrows": int(0 if disp is None else disp.shape[1])}
    return CommandOutput(stem, payload, svg,
                         summary=f"{graph.n} nodes, {graph.m} members")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensegrity",
        description="rigidity analysis of bar and tensegrity frameworks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, framework=True, epsilon=None, budget=False, steps=False):
        if framework:
            sp.add_argument("framework",
                            help="framework JSON file or fixture name")
        sp.add_argument("--seed", type=int, default=0, help="RNG seed")
        sp.add_argument("--tol", type=float, default=RANK_REL_TOL,
                        help="relative rank tolerance")
        if epsilon is not None:
            sp.add_argument("--epsilon", type=float, default=epsilon,
                            help="offset / ball radius")
        if steps:
            sp.add_argument("--steps", type=int, default=3,
                            help="number of hyperplane pushes")
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_PATH_BUDGET,
                            help="maximum number of tracked paths")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--svg", action="store_true",
                        help="also write an SVG rendering")

    sp = sub.add_parser("analyze", help="ranks, coranks, rigidity verdict")
    common(sp)
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("flexes", help="rigid motions and flex basis")
    common(sp)
    sp.set_defaults(func=_cmd_flexes)

    sp = sub.add_parser("prestress", help="prestress rigidity certificate")
    common(sp)
    sp.set_defaults(func=_cmd_prestress)

    sp = sub.add_parser("solve", help="solve a polynomial system")
    sp.add_argument("system", help="JSON file with variables and equations")
    common(sp, framework=False, budget=True)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("deform", help="hyperplane deformation walk")
    common(sp, epsilon=0.05, steps=True)
    sp.set_defaults(func=_cmd_deform)

    sp = sub.add_parser("epscheck", help="epsilon-local rigidity search")
    common(sp, epsilon=0.1, budget=True)
    sp.set_defaults(func=_cmd_epscheck)

    sp = sub.add_parser("verify-ideals",
                        help="check the reference ideal containments")
    common(sp, framework=False)
    sp.set_defaults(func=_cmd_verify_ideals)

    sp = sub.add_parser("plot", help="render a framework to SVG")
    common(sp)
    sp.set_defaults(func=_cmd_plot)
    return parser


def run_command(argv) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else (0 if code is None else 2)

    try:
        out = args.func(args)
    except (ValueError, OSError, KeyError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / f"{out.stem}_{args.command}.json"
    report_path.write_text(
        json.dumps(out.payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {report_path}")
    if args.command == "plot" or (args.svg and out.svg is not None):
        svg_path = out_dir / f"{out.stem}_{args.command}.svg"
        svg_path.write_text(out.svg)
        print(f"wrote {svg_path}")
    if out.summary:
        print(out.summary)
    return 0 if out.ok else 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
