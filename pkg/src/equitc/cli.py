"""Command-line entry point: ``plan``, ``verify``, ``cuplen``, ``bounds`` and ``export``.

Exit status is 0 on success, 1 when a check or certificate fails (the JSON
report is still written) and 2 on usage errors.  ``EQUITC_SEED`` overrides
``--seed``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import catalog, figures
from .cohomology import certificates as certs
from .cohomology.algebra import F2, diagonal_pullback
from .cohomology.linalg import kernel_of_maps
from .cohomology.rings import (
    action_map, effectual_pullback, orbital_pullback, parse_preset, quotient_pullback, twisted_diagonals,
)
from .errors import BadParams, BudgetExceeded, EquitcError
from .planners import (
    plan_euclidean_symmetrized, plan_sphere_antipodal_effective, plan_sphere_reflection_effective,
    plan_sphere_standard, plan_torus_effectual, radial_data,
)
from .spaces import ObstacleSet, TorusPoint, dumps, multipath_record, torus_strata
from .verifier import ADAPTERS, default_obstacles, make_adapter, run_checks

SPACE_ACTIONS = {
    "sphere": ("antipodal", "reflection", "standard"),
    "torus": ("antipodal",),
    "euclid": ("symmetric",),
}
ADAPTER_FOR = {
    ("sphere", "antipodal"): "sphere-antipodal",
    ("sphere", "reflection"): "sphere-reflection",
    ("sphere", "standard"): "sphere-standard",
    ("torus", "antipodal"): "torus-effectual",
    ("euclid", "symmetric"): "euclid",
}


class UsageError(Exception):
    pass


def _seed(args) -> int:
    env = os.environ.get("EQUITC_SEED")
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"EQUITC_SEED must be an integer, got {env!r}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _tolerance(text: str) -> float:
    v = float(text)
    if not 0 < v <= 1e-3:
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1e-3]")
    return v


def _load_json(path: str, flag: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"{flag}: cannot read JSON from {path}: {e}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- plan / export ---------------------------------------------------------------

def _torus_point(p) -> TorusPoint:
    p = [float(c) for c in p]
    if len(p) == 2:
        return TorusPoint.from_angles(*p)
    if len(p) == 4:
        return TorusPoint.from_vec(p)
    raise UsageError("--points: torus points are [theta_h, theta_v] or 4-vectors")


def _plan(args, seed: int):
    """Run the requested planner; return (record, svg-or-None)."""
    space, action = args.space, args.action
    if action is None:
        action = SPACE_ACTIONS[space][0]
    if action not in SPACE_ACTIONS[space]:
        raise UsageError(f"--action: {action!r} is not available on {space}; "
                         f"choose from {', '.join(SPACE_ACTIONS[space])}")
    rng = np.random.default_rng(seed)
    obs = None
    if space == "euclid":
        m = args.m or 3
        if args.obstacles:
            obs = ObstacleSet(np.asarray(_load_json(args.obstacles, "--obstacles"), dtype=float), args.tolerance)
        else:
            obs = default_obstacles(m, args.r, seed)
    if args.points:
        raw = _load_json(args.points, "--points")
        if not isinstance(raw, list) or not raw:
            raise UsageError("--points must hold a non-empty JSON list of points")
        if args.n is not None and len(raw) != args.n:
            raise UsageError(f"--n {args.n} disagrees with the {len(raw)} points in --points")
        pts = [_torus_point(p) for p in raw] if space == "torus" else np.asarray(raw, dtype=float)
    else:
        adapter = make_adapter(ADAPTER_FOR[space, action], n=args.n or 2, m=args.m,
                               **({"obstacles": obs} if obs is not None else {}))
        inp = adapter.random_input(rng)
        pts = [inp[0], *inp[1]] if space == "torus" else np.asarray(inp, dtype=float)

    char = None
    if space == "sphere":
        fn = {"antipodal": plan_sphere_antipodal_effective, "reflection": plan_sphere_reflection_effective,
              "standard": plan_sphere_standard}[action]
        dom, mp = fn(pts, args.tolerance)
        inputs = pts
    elif space == "torus":
        if len(pts) < 2:
            raise UsageError("--points: the torus planner needs x and at least one target")
        dom, ct, mp = plan_torus_effectual(pts[0], pts[1:], args.tolerance)
        char = ct.as_list()
        inputs = [p.vec() for p in pts]
    else:
        dom, mp = plan_euclidean_symmetrized(pts, obs, args.tolerance)
        inputs = pts
    rec = multipath_record(mp, space=space, action=action, inputs=inputs, domain=str(dom),
                           samples=args.samples, char_tuple=char)
    if space == "torus":
        svg = figures.torus_svg(rec, torus_strata(pts[0], args.tolerance))
    elif space == "euclid":
        svg = figures.euclid_svg(rec, obs, radial_data(obs))
    else:
        svg = None
    return rec, svg


def _csv(rec: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    dim = len(rec["paths"][0]["samples"][0]) - 1
    w.writerow(["path", "t", *[f"c{i}" for i in range(dim)]])
    for k, p in enumerate(rec["paths"]):
        for row in p["samples"]:
            w.writerow([k, *(repr(float(v)) for v in row)])
    return buf.getvalue()


def cmd_plan(args) -> int:
    rec, svg = _plan(args, _seed(args))
    if args.format == "svg":
        if svg is None:
            raise UsageError("--format svg is available for torus and euclid only")
        _emit(svg, args.out)
    elif args.format == "csv":
        _emit(_csv(rec), args.out)
    else:
        _emit(dumps(rec) + "\n", args.out)
    return 0


def cmd_export(args) -> int:
    if args.space == "sphere":
        raise UsageError("--space: export draws torus and euclid scenes only")
    _, svg = _plan(args, _seed(args))
    _emit(svg, args.out)
    return 0


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    checks = args.checks or (["instability"] if args.planner == "farber" else ["section", "partition"])
    report = run_checks(args.planner, checks, samples=args.samples, seed=_seed(args), n=args.n,
                        m=args.m, bases=args.bases)
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    sys.stdout.write(text if not args.report else json.dumps({"passed": report["passed"]}) + "\n")
    return 0 if report["passed"] else 1


# -- cuplen ----------------------------------------------------------------------

def _space_of(preset: str) -> str:
    return "sphere" if preset.startswith("sphere") else "surface"


def _cuplen_targets(args):
    ring = parse_preset(args.ring)
    param = int(re.findall(r"\d+", args.ring)[-1])
    space = _space_of(args.ring)
    if args.map == "diagonal":
        return [diagonal_pullback(ring, args.n)]
    if args.action is None:
        raise UsageError(f"--action is required for --map {args.map}")
    if args.map == "effective":
        return twisted_diagonals(ring, action_map(space, args.action, ring.coeffs, param), args.n)
    pi = quotient_pullback(space, args.action, param)
    if args.map == "effectual":
        return [effectual_pullback(pi.codomain, pi.domain, pi, args.n)]
    return [orbital_pullback(pi.codomain, pi.domain, pi, args.n)]


def cmd_cuplen(args) -> int:
    if args.builtin:
        builder = certs.BUILTIN[args.builtin]
        cert = builder(args.param, args.n) if args.param is not None else builder(args.n)
        targets, factors = list(cert.targets), cert.factors
    else:
        if not args.ring:
            raise UsageError("--ring is required unless --builtin is given")
        targets = _cuplen_targets(args)
        factors = ()
        if args.certificate:
            exprs = _load_json(args.certificate, "--certificate")
            if not isinstance(exprs, list) or not all(isinstance(e, str) for e in exprs):
                raise UsageError("--certificate must hold a JSON list of factor expressions")
            dom = targets[0].domain
            factors = tuple(dom.parse(e) for e in exprs)
            cert = certs.Certificate("cli", tuple(targets), factors, labels=tuple(exprs))
        else:
            cert = None
    ok = True
    out: dict = {"map": targets[0].name, "domain": targets[0].domain.name}
    if cert is not None:
        rep = certs.verify_certificate(cert)
        out.update(rep.to_dict())
        ok = rep.passed
    if args.oracle == "on":
        if targets[0].domain.coeffs != F2:
            raise UsageError("--oracle on needs F2 coefficients")
        try:
            out["oracle"] = certs.max_cuplength_bruteforce(kernel_of_maps(targets), extra=factors)
        except BudgetExceeded as e:
            out["oracle"] = None
            out["oracle_error"] = str(e)
            ok = False
    _emit(json.dumps(out, sort_keys=True, indent=1) + "\n", args.out)
    return 0 if ok else 1


# -- bounds ----------------------------------------------------------------------

def _records_markdown(groups) -> str:
    lines = ["| space | action | n | invariant | value | δ | sources |", "|---|---|---|---|---|---|---|"]
    for recs in groups:
        for r in recs:
            lines.append(f"| {r.space} | {r.action} | {r.n} | {r.invariant} | {r.cell()} | "
                         f"{'yes' if r.delta_unresolved else ''} | {'; '.join(r.sources)} |")
    return "\n".join(lines)


def cmd_bounds(args) -> int:
    if args.all:
        if args.format == "json":
            _emit(json.dumps(catalog.table_json(args.n), sort_keys=True, indent=1) + "\n", args.out)
        else:
            text = catalog.markdown_table() + "\n"
            if args.n is not None:
                text += "\n" + _records_markdown(catalog.all_rows(args.n)) + "\n"
            _emit(text, args.out)
        return 0
    if not (args.space and args.action and args.n):
        raise UsageError("give --space, --action and --n, or --all")
    recs = catalog.theorem_table(args.space, args.action, args.n, args.param)
    chain = catalog.check_chain(recs)
    if args.format == "json":
        payload = {"records": [r.to_dict() for r in recs], "chain": chain.to_dict()}
        _emit(json.dumps(payload, sort_keys=True, indent=1) + "\n", args.out)
    else:
        _emit(_records_markdown([recs]) + "\n", args.out)
    return 0 if chain.passed else 1


# -- parser ----------------------------------------------------------------------

def _add_plan_flags(p: argparse.ArgumentParser, formats: bool):
    p.add_argument("--space", required=True, choices=sorted(SPACE_ACTIONS))
    p.add_argument("--action", choices=sorted({a for v in SPACE_ACTIONS.values() for a in v}))
    p.add_argument("--n", type=_positive, help="number of components (random input when --points is absent)")
    p.add_argument("--m", type=_positive, help="dimension of the sphere or of R^m")
    p.add_argument("--r", type=_positive, default=2, help="number of random obstacles when --obstacles is absent")
    p.add_argument("--points", help="JSON list of input points")
    p.add_argument("--obstacles", help="JSON list of obstacle points")
    p.add_argument("--samples", type=_positive, default=256, help="samples per path")
    p.add_argument("--out")
    if formats:
        p.add_argument("--format", choices=("json", "csv", "svg"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equitc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=_tolerance, default=1e-9)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", parents=[common], help="run a planner and write the multipath")
    _add_plan_flags(p, formats=True)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("export", parents=[common], help="SVG figure of a torus or Euclidean plan")
    _add_plan_flags(p, formats=False)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[common], help="numerical checks of a planner")
    p.add_argument("--planner", required=True, choices=sorted(ADAPTERS) + ["farber"])
    p.add_argument("--checks", nargs="+", choices=("section", "partition", "continuity", "instability"))
    p.add_argument("--samples", type=_positive, default=1000)
    p.add_argument("--bases", type=_positive, default=100, help="base points per domain for continuity")
    p.add_argument("--n", type=_positive, default=3)
    p.add_argument("--m", type=_positive)
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cuplen", parents=[common], help="check a zero-divisor certificate")
    p.add_argument("--ring", help="preset such as sphere(2), surface_F2(1), rp_F2(3)")
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--map", choices=("diagonal", "effective", "effectual", "orbital"), default="diagonal")
    p.add_argument("--action", choices=("antipodal", "reflection", "rotation"))
    p.add_argument("--certificate", help="JSON list of factor expressions such as \"a_{1,1} + a_{1,2}\"")
    p.add_argument("--builtin", choices=sorted(certs.BUILTIN), help="use a stored certificate instead")
    p.add_argument("--param", type=int, help="m, g or l for --builtin")
    p.add_argument("--oracle", choices=("on", "off"), default="off")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cuplen)

    p = sub.add_parser("bounds", parents=[common], help="table values with their sources")
    p.add_argument("--space", choices=("sphere", "surface", "torus"))
    p.add_argument("--action", choices=("antipodal", "reflection", "rotation"))
    p.add_argument("--n", type=int)
    p.add_argument("--param", type=int, help="m for spheres, genus g for surfaces")
    p.add_argument("--all", action="store_true")
    p.add_argument("--format", choices=("json", "markdown"), default="markdown")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except (BadParams, KeyError, ValueError, EquitcError) as e:
        print(f"equitc {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
