"""Command-line front end.

    dualcheeger spectrum --family infinite_path --omega "canonical 5"
    dualcheeger isoperimetry --graph g.json --omega "0 1 2 3"
    dualcheeger compare --family homogeneous_tree --x0 root --radius 4
    dualcheeger sweep --family ladder_ex2 --mode exhaustion --n-max 30
    dualcheeger verify --seed 0

Exit codes: 0 success, 2 verification violation, 3 input error, 4 cap
exceeded without a heuristic fallback.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import asymptotics as A
from .errors import CapExceeded, ConvergenceError, HypothesisError, InputError
from .families import FAMILIES, _coord_json, make_family
from .graph import Region, WeightedGraph, ball
from .halfline import comparison_bounds, finite_graph_bounds
from .isoperimetry import CHEEGER_CAP, DUAL_CAP, MAXCUT_CAP, Inequality, cheeger, dual_cheeger, verify_cheeger_pair
from .spectral import MAX_SIZE, dirichlet_spectrum
from .suite import run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 2, 3, 4
HARD_CAPS = {"cheeger": CHEEGER_CAP, "dual": DUAL_CAP, "maxcut": MAXCUT_CAP, "eigen": MAX_SIZE}


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: dict
    omega: str | None
    caps: dict
    seed: int
    options: dict

    def to_json(self) -> dict:
        return {
            "command": self.command, "source": self.source, "omega": self.omega,
            "caps": self.caps, "seed": self.seed, "options": self.options,
        }


# parsing helpers --------------------------------------------------------------


def _literal(text: str):
    """JSON literal with lists turned into tuples; bare words stay strings."""
    try:
        v = json.loads(text)
    except json.JSONDecodeError:
        return text
    return _tuplify(v)


def _tuplify(v):
    if isinstance(v, list):
        return tuple(_tuplify(x) for x in v)
    return v


def parse_params(items: list[str]) -> dict:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise InputError(f"--params expects K=V, got {item!r}")
        out[key] = _literal(val)
    return out


def parse_caps(text: str | None) -> dict:
    caps = dict(HARD_CAPS)
    if not text:
        return caps
    for item in text.replace(",", " ").split():
        key, sep, val = item.partition("=")
        if key not in HARD_CAPS or not sep:
            raise InputError(f"unknown cap {item!r}; known caps: {sorted(HARD_CAPS)}")
        try:
            v = int(val)
        except ValueError:
            raise InputError(f"cap {key} must be an integer") from None
        if not 0 < v <= HARD_CAPS[key]:
            raise InputError(f"cap {key}={v} outside 1..{HARD_CAPS[key]}")
        caps[key] = v
    return caps


def load_graph(path: str) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return WeightedGraph.from_json(text)


@dataclass(frozen=True)
class Target:
    ambient: object
    omega: tuple
    family: object = None

    def coords(self):
        if isinstance(self.ambient, Region):
            return [_coord_json(self.ambient.coords[i]) for i in self.omega]
        return list(self.omega)


def _x0(fam, text):
    return fam.root if text in (None, "root") else _literal(text)


def resolve(args) -> Target:
    """Ambient graph and omega ids from --graph/--family and --omega."""
    spec = (args.omega or "").strip()
    head, _, rest = spec.partition(" ")
    if args.graph:
        g = load_graph(args.graph)
        if not spec:
            return Target(g, g.vertices)
        if head == "ball":
            x0, r = _two(rest)
            return Target(g, ball(g, int(x0), int(r)))
        if head == "canonical":
            raise InputError("canonical exhaustion sets need --family")
        return Target(g, _id_list(spec))
    fam = make_family(args.family, **parse_params(args.params))
    if not spec or head == "canonical":
        n = int(rest) if spec else fam.min_n + 4
        region, ids = fam.omega(n)
        return Target(region, ids, fam)
    if head == "ball":
        x0, r = _two(rest)
        x0 = _x0(fam, x0)
        r = int(r)
        region = fam.explore(fam.depth(x0) + r + 1)
        return Target(region, ball(region, region.id(x0), r), fam)
    coords = _literal(spec.removeprefix("ids").strip())
    if not isinstance(coords, tuple):
        raise InputError(f"family omega must be a JSON list of coordinates, got {spec!r}")
    region = fam.induced(list(coords))
    return Target(region, tuple(range(region.graph.n)), fam)


def _id_list(spec: str) -> tuple:
    body = spec.removeprefix("ids").strip()
    try:
        ids = json.loads(body) if body.startswith("[") else [int(t) for t in body.replace(",", " ").split()]
    except (json.JSONDecodeError, ValueError):
        raise InputError(f"cannot parse omega {spec!r}") from None
    if not ids or not all(isinstance(x, int) for x in ids):
        raise InputError(f"cannot parse omega {spec!r}")
    return tuple(sorted(set(ids)))


def _two(text: str):
    # x0 may itself be a JSON list containing spaces: take the radius from the end
    text = text.strip()
    x0, _, r = text.rpartition(" ")
    if not x0 or not r:
        raise InputError("ball omega needs 'ball X0 R'")
    try:
        return x0.strip(), int(r)
    except ValueError:
        raise InputError(f"ball radius must be an integer, got {r!r}") from None


def _n_or_cap(size: int, caps: dict):
    if size > caps["eigen"]:
        raise CapExceeded(f"#omega = {size} exceeds the eigensolver cap {caps['eigen']}")


# commands -----------------------------------------------------------------------


def cmd_spectrum(args, caps) -> tuple[dict, bool, str | None]:
    t = resolve(args)
    _n_or_cap(len(t.omega), caps)
    res = dirichlet_spectrum(t.ambient, t.omega, method=args.method)
    body = res.to_json()
    body["omega_coords"] = t.coords()
    ok = res.residual <= 1e-9 * max(1, len(t.omega))
    body["residual_ok"] = ok
    rows = [["index", "eigenvalue"]] + [[i + 1, repr(float(v))] for i, v in enumerate(res.eigenvalues)]
    return body, ok, _rows_csv(rows)


def cmd_isoperimetry(args, caps) -> tuple[dict, bool, str | None]:
    t = resolve(args)
    n = len(t.omega)
    _n_or_cap(n, caps)
    if n <= caps["cheeger"] and n <= caps["dual"]:
        rep = verify_cheeger_pair(t.ambient, t.omega, (caps["cheeger"], caps["dual"]))
        body = rep.to_json()
        body["margins"] = {k: q.margin for k, q in rep.inequalities.items()}
        body["omega_coords"] = t.coords()
        return body, rep.ok, None
    if not args.heuristic:
        raise CapExceeded(f"#omega = {n} exceeds the enumeration caps; pass --heuristic for one-sided estimates")
    hr = cheeger(t.ambient, t.omega, caps["cheeger"])
    hbr = dual_cheeger(t.ambient, t.omega, caps["dual"])
    res = dirichlet_spectrum(t.ambient, t.omega)
    # only inequalities whose direction survives one-sided estimates
    ineq = {"cheeger_upper": Inequality(res.lambda1, hr.value)}
    if hbr.side in ("lower", "exact"):
        ineq["twice_hbar_le_lambdamax"] = Inequality(2 * hbr.value, res.lambdamax)
    body = {
        "h": hr.value, "h_side": hr.side, "witness_h": hr.witness_json(),
        "hbar": hbr.value, "hbar_side": hbr.side, "witness_hbar": hbr.witness_json(),
        "lambda1": res.lambda1, "lambdamax": res.lambdamax, "heuristic": True,
        "inequalities": {k: v.to_json() for k, v in ineq.items()},
        "omega_coords": t.coords(),
    }
    return body, all(q.ok for q in ineq.values()), None


def cmd_compare(args, caps) -> tuple[dict, bool, str | None]:
    if args.m is not None:
        if not args.graph:
            raise InputError("--m (finite-graph bounds) needs --graph")
        rep = finite_graph_bounds(load_graph(args.graph), args.m)
        return rep.to_json(), rep.ok, None
    if args.radius is None:
        raise InputError("compare needs --radius")
    r = args.radius
    if args.graph:
        g = load_graph(args.graph)
        x0 = int(args.x0 or 0)
        rep = comparison_bounds(g, x0, r, eigen_cap=caps["eigen"])
    else:
        fam = make_family(args.family, **parse_params(args.params))
        c0 = _x0(fam, args.x0)
        # odd circuits through the ball need distances up to 2r + 1
        region = fam.explore(fam.depth(c0) + 2 * r + 1)
        rep = comparison_bounds(region, region.id(c0), r, eigen_cap=caps["eigen"])
    return rep.to_json(), rep.ok, None


def cmd_sweep(args, caps) -> tuple[dict, bool, str | None]:
    if not args.family:
        raise InputError("sweep needs --family")
    fam = make_family(args.family, **parse_params(args.params))
    if args.mode == "exhaustion":
        rep = A.exhaustion_limits(fam, args.n_max, caps=(caps["cheeger"], caps["dual"]), isoperimetry=not args.spectral_only)
        bad = A.sidedness_violations(rep)
        body = rep.to_json()
        body["bounds"] = A.spectrum_bounds_from_isoperimetry(rep).to_json()
        body["sidedness_violations"] = bad
        return body, not bad and all(rep.monotone.values()), rep.to_csv()
    if args.mode == "infinity":
        rep = A.infinity_constants(fam, args.k_max, args.probe_size)
        return rep.to_json(), True, rep.to_csv()
    if args.mode == "trace":
        rep = A.trace_bound_check(fam, args.K, args.size)
        return rep.to_json(), rep.ok, None
    if args.mode == "growth":
        rep = A.volume_growth_check(fam, args.r_max, args.eps0, args.certificate)
        return rep.to_json(), not rep.claim.startswith("violation"), None
    raise InputError(f"unknown sweep mode {args.mode!r}")


def cmd_verify(args, caps) -> tuple[dict, bool, str | None]:
    checks = run_suite(args.seed)
    body = {"checks": [c.to_json() for c in checks], "passed": sum(c.ok for c in checks), "total": len(checks)}
    rows = [["name", "ok", "cases", "worst_margin"]] + [[c.name, c.ok, c.cases, c.worst] for c in checks]
    return body, all(c.ok for c in checks), _rows_csv(rows)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "isoperimetry": cmd_isoperimetry,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


# output --------------------------------------------------------------------------


def _clean(v):
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, np.ndarray):
        return _clean(v.tolist())
    return v


def _flatten(v, prefix=""):
    if isinstance(v, dict):
        for k in sorted(v):
            yield from _flatten(v[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(v, list) and v and any(isinstance(x, (dict, list)) for x in v):
        for i, x in enumerate(v):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(v, sort_keys=True)


def _rows_csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def render(payload: dict, fmt: str, table_csv: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    flat = list(_flatten(payload))
    if fmt == "csv":
        return table_csv if table_csv is not None else _rows_csv([["key", "value"]] + [list(r) for r in flat])
    width = max((len(k) for k, _ in flat), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in flat)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualcheeger", description="Dirichlet spectra and (dual) Cheeger constants of graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, source=True):
        if source:
            src = sp.add_mutually_exclusive_group()
            src.add_argument("--graph", help="graph JSON file")
            src.add_argument("--family", choices=sorted(FAMILIES), help="built-in family")
            sp.add_argument("--params", nargs="*", default=[], metavar="K=V", help="family parameters")
            sp.add_argument("--omega", help="'0 1 2' | '[coords...]' | 'ball X0 R' | 'canonical N'")
        sp.add_argument("--caps", help="e.g. cheeger=16,dual=10,eigen=500")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv", "table"), default="json")

    sp = sub.add_parser("spectrum", help="Dirichlet spectrum of omega")
    common(sp)
    sp.add_argument("--method", choices=("jacobi", "lapack"), default="jacobi")
    sp = sub.add_parser("isoperimetry", help="h, hbar and the inequality suite")
    common(sp)
    sp.add_argument("--heuristic", action="store_true", help="allow one-sided estimates above the caps")
    sp = sub.add_parser("compare", help="half-line comparison bounds on a ball")
    common(sp)
    sp.add_argument("--x0", help="centre (vertex id or family coordinate; default root)")
    sp.add_argument("--radius", type=int)
    sp.add_argument("--m", type=int, help="finite-graph bounds with m balls instead")
    sp = sub.add_parser("sweep", help="exhaustion and at-infinity estimation")
    common(sp)
    sp.add_argument("--mode", choices=("exhaustion", "infinity", "trace", "growth"), default="exhaustion")
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--spectral-only", action="store_true")
    sp.add_argument("--k-max", type=int, default=6)
    sp.add_argument("--probe-size", type=int, default=12)
    sp.add_argument("--K", type=int, default=3)
    sp.add_argument("--size", type=int, default=5)
    sp.add_argument("--r-max", type=int, default=10)
    sp.add_argument("--eps0", type=float, default=0.1)
    sp.add_argument("--certificate", type=float)
    sp = sub.add_parser("verify", help="seeded acceptance battery")
    common(sp, source=False)
    return p


def _config(args, caps) -> RunConfig:
    skip = {"command", "graph", "family", "params", "omega", "caps", "seed", "out", "format"}
    options = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    if getattr(args, "graph", None):
        source = {"graph": args.graph}
    elif getattr(args, "family", None):
        source = {"family": args.family, "params": _clean(parse_params(args.params))}
    else:
        source = {}
    return RunConfig(args.command, source, getattr(args, "omega", None), caps, args.seed, options)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    needs_source = args.command in ("spectrum", "isoperimetry", "compare")
    try:
        if needs_source and not (args.graph or args.family):
            raise InputError("give --graph or --family")
        caps = parse_caps(args.caps)
        cfg = _config(args, caps)
        body, ok, table = COMMANDS[args.command](args, caps)
        code = EXIT_OK if ok else EXIT_VIOLATION
    except CapExceeded as exc:
        return _fail(args, "cap_exceeded", exc, EXIT_CAP)
    except (InputError, HypothesisError) as exc:
        return _fail(args, "input_error", exc, EXIT_INPUT)
    except ConvergenceError as exc:
        return _fail(args, "convergence", exc, EXIT_VIOLATION)
    payload = _clean({"config": cfg.to_json(), "result": body, "ok": ok})
    _emit(args, render(payload, args.format, table))
    return code


def _fail(args, kind, exc, code) -> int:
    payload = {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}, "exit_code": code}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
