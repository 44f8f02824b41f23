"""Command-line front end.

Commands: ``verify all|fu|composition|coeff|properness|factorization``,
``invariants``, ``distinguish``, ``sweep``, ``sample``, ``eval``.  Exit code
0 means every requested check passed, 1 means at least one failed, 2 means
a usage or configuration problem.  All randomness is seeded (default 42,
overridable with the BSDKIT_SEED environment variable or ``--seed``); with
``--no-timestamp`` a repeated invocation is byte-identical.
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from . import verify
from .autgroups import aut_from_json, aut_to_json, act, check_membership
from .domains import classify_point, generic_norm, parse_spec, sample_point
from .errors import BsdkitError, ParameterError
from .invariants import distinguish, invariant_spectrum
from .polymaps import catalog, eval_map, polymap_from_json, polymap_to_json
from .verify import run_all, summarize

USAGE_EXIT = 2
FAIL_EXIT = 1


def _default_seed() -> int:
    return int(os.environ.get("BSDKIT_SEED", "42"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsdkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--no-timestamp", action="store_true")

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("what", choices=("all", "fu", "composition", "coeff", "properness", "factorization"))
    p.add_argument("--domain", type=str, default=None)
    p.add_argument("--map-a", type=str, default=None)
    p.add_argument("--map-file", type=str, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--dims", type=str, default=None)
    common(p)

    p = sub.add_parser("invariants", help="per-degree singular spectra of a map")
    p.add_argument("--map-a", type=str, default=None)
    p.add_argument("--map-file", type=str, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--dims", type=str, default=None)
    common(p)

    p = sub.add_parser("distinguish", help="compare the invariant spectra of two maps")
    p.add_argument("--map-a", type=str, required=True)
    p.add_argument("--map-b", type=str, required=True)
    p.add_argument("--dims", type=str, default=None)
    common(p)

    p = sub.add_parser("sweep", help="pairwise spectral distance matrix over a parameter grid")
    p.add_argument("--family", choices=("f_t", "g_t", "G_t", "h_t"), required=True)
    p.add_argument("--grid", type=str, required=True, help="lo:hi:step")
    p.add_argument("--dims", type=str, default=None)
    common(p)

    p = sub.add_parser("sample", help="sample a domain point")
    p.add_argument("--domain", type=str, required=True)
    p.add_argument("--region", choices=("interior", "boundary"), default="interior")
    common(p)

    p = sub.add_parser("eval", help="evaluate a map at a sampled point, or act an element on it")
    p.add_argument("--map-a", type=str, default=None)
    p.add_argument("--map-file", type=str, default=None)
    p.add_argument("--aut-file", type=str, default=None)
    p.add_argument("--domain", type=str, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--dims", type=str, default=None)
    common(p)
    return parser


def _parse_dims(text):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParameterError(f"malformed --dims {text!r}") from None


def _resolve_map(selector, dims=None, t=None, theta=None, map_file=None):
    """Map selector grammar: name[:param] with --dims/--t/--theta flags."""
    if map_file:
        with open(map_file) as fh:
            return polymap_from_json(json.load(fh))
    if selector is None:
        raise ParameterError("a map selector (--map-a/--map-b) or --map-file is required")
    name, _, param = selector.partition(":")
    dims = _parse_dims(dims) if isinstance(dims, str) else dims
    params = {}
    if name == "standard":
        d = dims or (_ints(param) if param else None)
        if not d or len(d) != 4:
            raise ParameterError("standard needs --dims r,s,r2,s2")
        params = dict(zip(("r", "s", "r2", "s2"), d))
    elif name in ("whitney-ball", "whitney_ball"):
        n = (dims or _ints(param))[0] if (dims or param) else None
        if n is None:
            raise ParameterError("whitney-ball needs a dimension, e.g. whitney-ball:2")
        params = {"n": n}
        name = "whitney-ball"
    elif name == "dangelo":
        n = dims[0] if dims else (_ints(param)[0] if param else None)
        if n is None or theta is None:
            raise ParameterError("dangelo needs a dimension and --theta")
        params = {"n": n, "theta": theta}
    elif name in ("gen-whitney", "gen_whitney"):
        d = dims or (_ints(param) if param else None)
        if not d or len(d) != 2:
            raise ParameterError("gen-whitney needs --dims r,s")
        params = dict(zip(("r", "s"), d))
        name = "gen-whitney"
    elif name in ("f-sec4", "g-sec4", "f_sec4", "g_sec4"):
        name = name.replace("_", "-")
    elif name in ("f_t", "g_t", "h_t"):
        tval = float(param) if param else t
        if tval is None:
            raise ParameterError(f"{name} needs a parameter, e.g. {name}:0.5")
        params = {"t": tval}
    elif name == "G_t":
        tval = float(param) if param else t
        if tval is None or not dims or len(dims) != 2:
            raise ParameterError("G_t needs a parameter and --dims r,s")
        params = {"r": dims[0], "s": dims[1], "t": tval}
    else:
        raise ParameterError(f"unknown map id {name!r}")
    return catalog(name, **params)


def _ints(text):
    return tuple(int(x) for x in text.split(","))


def _matrix_json(m: np.ndarray):
    return [[float(v.real), float(v.imag)] for v in np.asarray(m).ravel()]


def _emit(payload: dict, args) -> None:
    if not args.no_timestamp:
        payload["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _write(text, args.out)


def _write(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reports_payload(reports) -> dict:
    return {"reports": [r.to_dict() for r in reports], "summary": summarize(reports)}


def _reports_csv(reports) -> str:
    lines = ["check_id,specs,samples,seed,max_residual,tolerance,pass"]
    for r in reports:
        d = r.to_dict()
        lines.append(",".join([
            d["check_id"], ";".join(d["specs"]), str(d["samples"]), str(d["seed"]),
            f"{d['max_residual']:.17g}", f"{d['tolerance']:.17g}", str(d["pass"]).lower(),
        ]))
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    samples = args.samples
    reports = []
    if args.what == "all":
        reports = run_all(seed=seed)
    elif args.what == "fu":
        specs = [args.domain] if args.domain else ["I:2,2", "I:2,3", "II:3", "III:2", "IV:3"]
        for text in specs:
            reports.append(verify.check_F_U_lemma(
                parse_spec(text), n_samples=samples or 200, seed=seed,
                tol=args.tol if args.tol is not None else 1e-9))
    elif args.what == "composition":
        reports.append(verify.check_composition_rule(
            catalog("standard", r=1, s=3, r2=1, s2=5), catalog("whitney-ball", n=2),
            n_samples=samples or 100, seed=seed,
            tol=args.tol if args.tol is not None else 1e-8))
    elif args.what == "coeff":
        spec = parse_spec(args.domain or "I:2,2")
        for i, j in verify._coefficient_indices(spec):
            reports.append(verify.check_coefficient_lemma(
                spec, i, j, n_bases=samples or 20, seed=seed,
                tol=args.tol if args.tol is not None else 1e-6))
    elif args.what == "properness":
        f = _resolve_map(args.map_a, dims=_parse_dims(args.dims), t=args.t,
                         theta=args.theta, map_file=args.map_file)
        reports.append(verify.check_properness(
            f, n_samples=samples or 500, seed=seed,
            tol=args.tol if args.tol is not None else 1e-7))
    elif args.what == "factorization":
        f = _resolve_map(args.map_a, dims=_parse_dims(args.dims), t=args.t,
                         theta=args.theta, map_file=args.map_file)
        report, _ = verify.check_factorization(
            f, grid_size=samples, seed=seed,
            tol=args.tol if args.tol is not None else 1e-7)
        reports.append(report)
    if args.format == "csv":
        _write(_reports_csv(reports), args.out)
    else:
        _emit(_reports_payload(reports), args)
    return 0 if all(r.passed for r in reports) else FAIL_EXIT


def _spectrum_payload(f) -> dict:
    spectra = invariant_spectrum(f)
    return {"degrees": {str(d): [float(v) for v in vals] for d, vals in spectra.items()}}


def _cmd_invariants(args) -> int:
    f = _resolve_map(args.map_a, dims=_parse_dims(args.dims), t=args.t,
                     theta=args.theta, map_file=args.map_file)
    payload = _spectrum_payload(f)
    payload["source"] = str(f.source)
    payload["target"] = str(f.target)
    _emit(payload, args)
    return 0


def _cmd_distinguish(args) -> int:
    dims = _parse_dims(args.dims)
    fa = _resolve_map(args.map_a, dims=dims)
    fb = _resolve_map(args.map_b, dims=dims)
    result = distinguish(fa, fb, tol=args.tol if args.tol is not None else 1e-8)
    _emit({
        "verdict": result.verdict,
        "max_distance": result.max_distance,
        "distances": {str(d): float(v) for d, v in result.distances.items()},
    }, args)
    return 0


def _parse_grid(text: str):
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ParameterError(f"malformed --grid {text!r}, want lo:hi:step") from None
    if step <= 0 or hi < lo:
        raise ParameterError(f"bad grid range {text!r}")
    count = int(round((hi - lo) / step))
    grid = [lo + k * step for k in range(count + 1)]
    return [t for t in grid if t <= hi + 1e-12]


def _cmd_sweep(args) -> int:
    grid = _parse_grid(args.grid)
    if any(t < 0.0 or t > 1.0 for t in grid):
        raise ParameterError("sweep grid must lie in [0, 1]")
    dims = _parse_dims(args.dims)
    maps = [verify._family_map(args.family, t, dims) for t in grid]
    n = len(grid)
    matrix = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            d = distinguish(maps[a], maps[b]).max_distance
            matrix[a, b] = matrix[b, a] = d
    header = "t," + ",".join(f"{t:.17g}" for t in grid)
    lines = [header]
    for a in range(n):
        lines.append(f"{grid[a]:.17g}," + ",".join(f"{matrix[a, b]:.17g}" for b in range(n)))
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sample(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    spec = parse_spec(args.domain)
    p = sample_point(spec, args.region, seed)
    cls = classify_point(p)
    _emit({
        "spec": str(spec),
        "region": cls.region,
        "margin": cls.margin,
        "generic_norm": generic_norm(p),
        "value": _matrix_json(p.value),
    }, args)
    return 0


def _cmd_eval(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    payload = {}
    if args.aut_file:
        with open(args.aut_file) as fh:
            element = aut_from_json(json.load(fh))
        p = sample_point(element.spec, "interior", seed)
        membership = check_membership(element)
        image = act(element, p)
        payload.update({
            "element": aut_to_json(element),
            "membership_residual": membership.max_residual,
            "membership_pass": membership.passed,
            "point": _matrix_json(p.value),
            "image": _matrix_json(image.value),
        })
    else:
        f = _resolve_map(args.map_a, dims=_parse_dims(args.dims), t=args.t,
                         theta=args.theta, map_file=args.map_file)
        p = sample_point(f.source, "interior", seed)
        image = eval_map(f, p)
        payload.update({
            "map": polymap_to_json(f),
            "point": _matrix_json(p.value),
            "image": _matrix_json(image.value),
            "image_classification": classify_point(image).region,
        })
    _emit(payload, args)
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "invariants": _cmd_invariants,
    "distinguish": _cmd_distinguish,
    "sweep": _cmd_sweep,
    "sample": _cmd_sample,
    "eval": _cmd_eval,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except BsdkitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_EXIT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
