"""Command-line front end.

Rationals cross this boundary as ``num/den`` strings, never floats.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from .channel import ChannelParams, other
from .equilibrium import (
    ClassBounds, best_deviation, deviation_ceiling, is_ne_rate_pair, ne_split_search, scheme_aggregates,
)
from .plotting import panels_svg, region_svg
from .polytope import Region2, as_rational, format_rational
from .regions import (
    box_region, capacity_region, inclusion_report, nash_bounds, ne_region, ne_region_constructive,
)
from .schemes import (
    FIGURE2_PARAMS, InvalidSchemeError, Scheme, figure2_schemes, floor_scheme, run_and_verify, zero_scheme,
)


class CliError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _eta(args) -> Fraction:
    if args.eta is None:
        raise CliError("--eta is required (no default)")
    if args.eta <= 0:
        raise CliError("eta must be positive")
    return args.eta


def _params(args) -> ChannelParams:
    missing = [f"--{k}" for k in ("n11", "n22", "n12", "n21") if getattr(args, k) is None]
    if missing:
        raise CliError("missing " + " ".join(missing))
    try:
        return ChannelParams(args.n11, args.n22, args.n12, args.n21, args.fb11, args.fb22)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _regions_csv(regions: dict[str, Region2]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["region", "r1", "r2"])
    for name, r in regions.items():
        for x, y in r.vertices:
            w.writerow([name, format_rational(x), format_rational(y)])
    return buf.getvalue()


def _emit(args, text: str, suffix: str | None = None):
    """Write to ``--out`` (or a sibling with ``suffix``) or to stdout."""
    if args.out:
        path = Path(args.out)
        if suffix:
            path = path.with_suffix(suffix)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    elif suffix is None:
        sys.stdout.write(text)


def _write_regions(args, p: ChannelParams, eta, regions: dict[str, Region2], extra=None):
    doc = {"params": p.to_json(), "q": p.q, "eta": format_rational(eta),
           "regions": {k: r.to_json() for k, r in regions.items()}}
    if extra:
        doc.update(extra)
    fmt = args.format
    if fmt == "json":
        _emit(args, _dump_json(doc))
    elif fmt == "csv":
        _emit(args, _regions_csv(regions))
    else:
        cap = regions.get("C") or capacity_region(p)
        nash = regions.get("N_eta") or regions.get("B_eta")
        pts = [tuple(as_rational(v) for v in pt) for pt in (args.point or [])]
        _emit(args, region_svg(cap, nash, pts, title=f"{p}  eta={format_rational(eta)}"))
        # delimited companions next to the figure
        _emit(args, _regions_csv(regions), ".csv")
        _emit(args, _dump_json(doc), ".json")


def cmd_region(args) -> int:
    p, eta = _params(args), _eta(args)
    regions = {"C": capacity_region(p), "B_eta": box_region(p, eta), "N_eta": ne_region(p, eta)}
    _write_regions(args, p, eta, regions, {"bounds": nash_bounds(p, eta).to_json()})
    return 0


def cmd_box(args) -> int:
    p, eta = _params(args), _eta(args)
    _write_regions(args, p, eta, {"B_eta": box_region(p, eta)}, {"bounds": nash_bounds(p, eta).to_json()})
    return 0


def cmd_ne(args) -> int:
    p, eta = _params(args), _eta(args)
    regions = {"C": capacity_region(p), "N_eta": ne_region(p, eta)}
    if args.constructive:
        regions["N_eta_constructive"] = ne_region_constructive(p, eta)
    _write_regions(args, p, eta, regions)
    return 0


def _rate_pair(args):
    if args.r1 is None or args.r2 is None:
        raise CliError("--r1 and --r2 are required")
    if args.r1 < 0 or args.r2 < 0:
        raise CliError("rates must be nonnegative")
    return (args.r1, args.r2)


def _load_pair(args, p: ChannelParams) -> tuple[Scheme, Scheme]:
    builtin = getattr(args, "builtin", None)
    if builtin:
        if builtin == "floor":
            return floor_scheme(p, 1), floor_scheme(p, 2)
        if builtin == "zero":
            return zero_scheme(p, 1), zero_scheme(p, 2)
        return figure2_schemes((3, 4) if builtin == "fig2-34" else (5, 4))
    pair = []
    for i, path in ((1, args.scheme1), (2, args.scheme2)):
        if path is None:
            pair.append(floor_scheme(p, i))
            continue
        try:
            pair.append(Scheme.load(path))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CliError(f"cannot load scheme {path}: {exc}") from exc
    return pair[0], pair[1]


def cmd_ne_check(args) -> int:
    p, eta = _params(args), _eta(args)
    r = _rate_pair(args)
    witness = ne_split_search(p, eta, r)
    doc = {
        "params": p.to_json(),
        "eta": format_rational(eta),
        "rate_pair": [format_rational(v) for v in r],
        "in_ne_region": is_ne_rate_pair(p, eta, r),
        "bounds": nash_bounds(p, eta).to_json(),
        "witness_split": witness.to_json() if witness else None,
        "oracle": None,
    }
    if args.oracle:
        s1, s2 = _load_pair(args, p)
        bounds = ClassBounds(max_pattern=args.max_pattern, relay_lag_max=args.relay_lag_max)
        entries = []
        for fixed in (s2, s1):
            i = other(fixed.user)
            res = best_deviation(p, fixed, bounds, eta, seed=args.seed)
            rc, rr = scheme_aggregates(p, fixed)
            ceiling = deviation_ceiling(p, i, rc, rr, eta)
            entries.append({"user": i, "against": fixed.name or f"scheme{fixed.user}",
                            "class": bounds.to_json(), "best_rate": format_rational(res.best),
                            "ceiling": format_rational(ceiling), "within_ceiling": res.best <= ceiling,
                            "certificate": "eta-NE within class"})
        doc["oracle"] = entries
    _emit(args, _dump_json(doc))
    return 0


def cmd_ne_split(args) -> int:
    p, eta = _params(args), _eta(args)
    r = _rate_pair(args)
    w = ne_split_search(p, eta, r)
    doc = {"params": p.to_json(), "eta": format_rational(eta), "rate_pair": [format_rational(v) for v in r],
           "witness_split": w.to_json() if w else None}
    _emit(args, _dump_json(doc))
    return 0 if w else 1


def cmd_simulate(args) -> int:
    p = _params(args)
    s1, s2 = _load_pair(args, p)
    try:
        rep = run_and_verify(p, s1, s2, trials=args.trials, seed=args.seed,
                             exhaustive=False if args.sampled else None)
    except InvalidSchemeError as exc:
        raise CliError("invalid scheme: " + "; ".join(exc.problems)) from exc
    doc = {"params": p.to_json(), "seed": args.seed, "report": rep.to_json()}
    _emit(args, _dump_json(doc))
    return 0 if rep.zero_error else 1


def cmd_check_inclusions(args) -> int:
    eta = _eta(args)
    if args.sweep is not None:
        ok, bad = 0, []
        for t in itertools.product(range(args.sweep + 1), repeat=6):
            if inclusion_report(ChannelParams(*t), eta).holds:
                ok += 1
            else:
                bad.append(t)
        print(f"checked {ok + len(bad)} tuples, {len(bad)} violations")
        for t in bad[:20]:
            print("violation:", t)
        return 0 if not bad else 1
    p = _params(args)
    rep = inclusion_report(p, eta)
    a, b, c = rep.vertex_counts()
    print(f"vertices: no-feedback {a}, actual {b}, perfect-feedback {c}")
    print("inclusion chain holds" if rep.holds else "inclusion chain VIOLATED")
    return 0 if rep.holds else 1


FIGURE2_PANELS = (("a", 0, 0), ("b", 5, 0), ("c", 6, 0), ("d", 7, 0), ("e", 0, 5), ("f", 0, 6))


def cmd_verify_figure2(args) -> int:
    eta = _eta(args)
    base = (7, 6, 4, 4)
    p0 = ChannelParams(*base, 0, 0)
    n0 = ne_region(p0, eta)
    checks = {}
    checks["collapse_fb_le_4"] = all(ne_region(ChannelParams(*base, a, b), eta).equals(n0)
                                     for a in range(5) for b in range(5))
    checks["enlarged_fb11_gt_4"] = all(ne_region(ChannelParams(*base, a, b), eta).strictly_contains(n0)
                                       for a in (5, 6, 7) for b in range(5))
    nf = ne_region(FIGURE2_PARAMS, eta)
    checks["reference_points"] = nf.contains_point((3, 4)) and nf.contains_point((5, 4))
    schemes = {}
    for target in ((3, 4), (5, 4)):
        s1, s2 = figure2_schemes(target)
        rep = run_and_verify(FIGURE2_PARAMS, s1, s2, trials=args.trials, seed=args.seed)
        schemes[f"{target[0]},{target[1]}"] = rep.to_json()
        checks[f"scheme_{target[0]}_{target[1]}"] = rep.zero_error and rep.rates == target
    panels, rows = [], {}
    for tag, a, b in FIGURE2_PANELS:
        p = ChannelParams(*base, a, b)
        c, n = capacity_region(p), ne_region(p, eta)
        pts = [(3, 4), (5, 4)] if (a, b) == (5, 0) else []
        panels.append((f"({tag}) fb11={a}, fb22={b}", c, n, pts))
        rows[f"{tag}:C"] = c
        rows[f"{tag}:N_eta"] = n
    doc = {"eta": format_rational(eta), "checks": checks, "schemes": schemes,
           "panels": {k: r.to_json() for k, r in rows.items()}}
    out = Path(args.out or "figure2")
    out.mkdir(parents=True, exist_ok=True)
    (out / "figure2.svg").write_text(panels_svg(panels))
    (out / "figure2.csv").write_text(_regions_csv(rows))
    (out / "figure2.json").write_text(_dump_json(doc))
    for k, v in checks.items():
        print(f"{'PASS' if v else 'FAIL'} {k}")
    return 0 if all(checks.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nashregion", description="eta-Nash regions of the two-user "
                                 "linear deterministic interference channel with noisy feedback")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, params=True, eta=True):
        if params:
            for k in ("n11", "n22", "n12", "n21"):
                sp.add_argument(f"--{k}", type=int)
            sp.add_argument("--fb11", type=int, default=0)
            sp.add_argument("--fb22", type=int, default=0)
        if eta:
            sp.add_argument("--eta", type=_rational, help="exact positive rational, e.g. 1/100")
        sp.add_argument("--out", help="output file (directory for verify-figure2)")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    def formats(sp):
        sp.add_argument("--format", choices=("json", "csv", "svg"), default="json")
        sp.add_argument("--point", nargs=2, action="append", metavar=("R1", "R2"),
                        help="mark a rate pair on the SVG")
        return sp

    def rates(sp):
        sp.add_argument("--r1", type=_rational)
        sp.add_argument("--r2", type=_rational)

    def schemes(sp):
        sp.add_argument("--scheme1")
        sp.add_argument("--scheme2")
        sp.add_argument("--builtin", choices=("floor", "zero", "fig2-34", "fig2-54"))
        sp.add_argument("--trials", type=int, default=64)

    formats(common(sub.add_parser("region", help="C, B_eta and N_eta"))).set_defaults(func=cmd_region)
    formats(common(sub.add_parser("box", help="the box B_eta"))).set_defaults(func=cmd_box)
    sp = common(sub.add_parser("ne", help="N_eta"))
    formats(sp)
    sp.add_argument("--constructive", action="store_true", help="also build the aggregate-level region")
    sp.set_defaults(func=cmd_ne)
    sp = common(sub.add_parser("ne-check", help="membership, witness split, optional deviation oracle"))
    rates(sp)
    schemes(sp)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--max-pattern", type=int, default=1)
    sp.add_argument("--relay-lag-max", type=int, default=1)
    sp.set_defaults(func=cmd_ne_check)
    sp = common(sub.add_parser("ne-split", help="witness rate split"))
    rates(sp)
    sp.set_defaults(func=cmd_ne_split)
    sp = common(sub.add_parser("simulate", help="run and verify a scheme pair"), eta=False)
    schemes(sp)
    sp.add_argument("--sampled", action="store_true", help="never enumerate exhaustively")
    sp.set_defaults(func=cmd_simulate)
    sp = common(sub.add_parser("check-inclusions", help="no-feedback ⊆ actual ⊆ perfect-feedback"))
    sp.add_argument("--sweep", type=int, metavar="M", help="check every tuple in {0..M}^6")
    sp.set_defaults(func=cmd_check_inclusions)
    sp = common(sub.add_parser("verify-figure2", help="reproduce the (7,6,4,4) panels"), params=False)
    sp.add_argument("--trials", type=int, default=64)
    sp.set_defaults(func=cmd_verify_figure2)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
