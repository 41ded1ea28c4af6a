"""Command-line front end.

Every subcommand reads JSON body descriptions, runs one operation, prints a
human-readable result, and (when --out is given) writes ``<out>.csv`` plus a
``<out>.manifest.json`` recording the subcommand, inputs, and every numeric
parameter.  Data files are deterministic: identical manifests reproduce
byte-identical CSVs regardless of --threads.

Exit codes: 0 success; ``compare`` uses 0 equal-within-tolerance, 10
distinct, 11 inconclusive; 2 malformed JSON or flags; 3 precondition
violations (the violated condition is named on stderr).

Rationals cross this boundary as "p/q" strings, never floats; floats are
printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .bodies import Body, body_from_json
from .errors import EhrtomoError
from .lattice import count, count_profile
from .projections import (
    DirectionSample,
    brightness_facet_sum,
    brightness_hull,
    hausdorff_distance,
    spherical_area,
)
from .pseudopyramid import ppyr_record, ppyr_volume_exact, ppyr_volume_montecarlo
from .rational import format_rat, parse_rat, primitive_integer_vector
from .tomography import (
    DISTINCT,
    EQUAL,
    INCONCLUSIVE,
    compare_bodies,
    ehrhart_equality_probe,
    ppyr_limit_brightness,
    spherical_limit_table,
)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_rat_list(text: str) -> list[Fraction]:
    return [parse_rat(tok) for tok in text.split(",") if tok.strip()]


def _parse_direction(text: str) -> DirectionSample:
    comps = _parse_rat_list(text)
    return DirectionSample.from_primitive(primitive_integer_vector(comps))


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _load_body(path: str) -> Body:
    return body_from_json(Path(path).read_text())


def _write_outputs(
    args: argparse.Namespace,
    header: Sequence[str],
    rows: Sequence[Sequence[str]],
    started: float,
    extra_files: dict[str, dict] | None = None,
) -> None:
    if not args.out:
        return
    out = Path(args.out)
    with open(f"{out}.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in {"func", "out", "command"} and v is not None
    }
    inputs = {
        k: params.pop(k) for k in ("body", "a", "b") if k in params
    }
    manifest = {
        "subcommand": args.command,
        "inputs": inputs,
        "params": params,
        "version": __version__,
        "duration_seconds": time.monotonic() - started,
    }
    with open(f"{out}.manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for suffix, payload in (extra_files or {}).items():
        with open(f"{out}.{suffix}", "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _cmd_count(args, started) -> int:
    body = _load_body(args.body)
    w = _parse_rat_list(args.translate) if args.translate else None
    s = parse_rat(args.dilate) if args.dilate else Fraction(1)
    n = count(body, w, s)
    print(n)
    wtxt = " ".join(format_rat(c) for c in (w or []))
    _write_outputs(args, ["s", "w", "count"], [[format_rat(s), wtxt, str(n)]], started)
    return 0


def _cmd_profile(args, started) -> int:
    body = _load_body(args.body)
    w = _parse_rat_list(args.translate) if args.translate else None
    profile = count_profile(body, w, _parse_rat_list(args.s_schedule))
    rows = [[format_rat(s), str(c)] for s, c in profile.rows]
    for r in rows:
        print(",".join(r))
    _write_outputs(args, ["s", "count"], rows, started)
    return 0


def _cmd_ppyr_volume(args, started) -> int:
    body = _load_body(args.body)
    if args.mode == "exact":
        vol = ppyr_volume_exact(body)
        print(format_rat(vol))
        row = [args.mode, format_rat(vol), _fmt(float(vol)), "0"]
    else:
        est, err = ppyr_volume_montecarlo(body, args.samples, args.seed)
        print(_fmt(est))
        row = [args.mode, "", _fmt(est), _fmt(err)]
    _write_outputs(args, ["mode", "volume_exact", "estimate", "stderr"], [row], started)
    return 0


def _cmd_radii(args, started) -> int:
    rec = ppyr_record(_load_body(args.body))
    print(f"R={_fmt(rec.outer_radius)} r={_fmt(rec.inner_radius)}")
    row = [
        format_rat(rec.outer_radius_sq),
        format_rat(rec.inner_radius_sq),
        _fmt(rec.outer_radius),
        _fmt(rec.inner_radius),
        str(rec.origin_interior).lower(),
    ]
    _write_outputs(
        args,
        ["outer_radius_sq", "inner_radius_sq", "outer_radius", "inner_radius", "origin_interior"],
        [row],
        started,
    )
    return 0


def _cmd_brightness(args, started) -> int:
    body = _load_body(args.body)
    ds = _parse_direction(args.dir)
    value = (
        brightness_facet_sum(body, ds)
        if args.method == "facet-sum"
        else brightness_hull(body, ds)
    )
    print(_fmt(value))
    _write_outputs(
        args,
        ["method", "direction", "value"],
        [[args.method, args.dir, _fmt(value)]],
        started,
    )
    return 0


def _cmd_sphere_area(args, started) -> int:
    body = _load_body(args.body)
    result = spherical_area(
        body, args.method, samples=args.samples, seed=args.seed, tol=args.tol
    )
    if args.method == "montecarlo":
        value, err = result
    else:
        value, err = result, 0.0
    print(_fmt(value))
    _write_outputs(
        args,
        ["method", "value", "stderr"],
        [[args.method, _fmt(value), _fmt(err)]],
        started,
    )
    return 0


def _cmd_hausdorff(args, started) -> int:
    dist = hausdorff_distance(_load_body(args.a), _load_body(args.b))
    print(_fmt(dist))
    _write_outputs(args, ["distance"], [[_fmt(dist)]], started)
    return 0


def _table_rows(table) -> list[list[str]]:
    rows = []
    for r in table.rows:
        rows.append(
            [
                _fmt(r.mu),
                _fmt(r.estimate),
                _fmt(r.reference),
                _fmt(r.abs_error),
                _fmt(r.sandwich_lo) if r.sandwich_lo is not None else "",
                _fmt(r.sandwich_hi) if r.sandwich_hi is not None else "",
            ]
        )
    return rows


_TABLE_HEADER = ["mu", "estimate", "reference", "abs_error", "sandwich_lo", "sandwich_hi"]


def _cmd_converge_sphere(args, started) -> int:
    table = spherical_limit_table(
        _load_body(args.body),
        _parse_direction(args.dir),
        _parse_float_list(args.mu_schedule),
        method=args.method,
        samples=args.samples,
        seed=args.seed,
    )
    rows = _table_rows(table)
    for r in rows:
        print(",".join(r))
    _write_outputs(args, _TABLE_HEADER, rows, started)
    return 0


def _cmd_converge_ppyr(args, started) -> int:
    table = ppyr_limit_brightness(
        _load_body(args.body),
        _parse_direction(args.dir),
        _parse_float_list(args.mu_schedule),
        samples=args.samples,
        seed=args.seed,
    )
    rows = _table_rows(table)
    for r in rows:
        print(",".join(r))
    _write_outputs(args, _TABLE_HEADER, rows, started)
    return 0


def _cmd_compare(args, started) -> int:
    verdict = compare_bodies(
        _load_body(args.a),
        _load_body(args.b),
        h=args.height,
        mu_max=args.mu_max,
        tol=args.tol,
        samples=args.samples,
        seed=args.seed,
    )
    rows = [
        [
            " ".join(str(c) for c in r.direction.primitive),
            _fmt(r.brightness_a),
            _fmt(r.brightness_b),
            _fmt(r.gap),
            _fmt(r.tolerance),
        ]
        for r in verdict.rows
    ]
    summary = {
        "verdict": verdict.verdict,
        "witness": list(verdict.witness.primitive) if verdict.witness else None,
        "gap": verdict.gap,
        "tolerance": verdict.tolerance,
        "note": verdict.note,
    }
    if verdict.witness:
        print(
            f"{verdict.verdict}: witness direction "
            f"{verdict.witness.primitive} gap {_fmt(verdict.gap)}"
        )
    else:
        print(f"{verdict.verdict}: max gap {_fmt(verdict.gap)}")
    print(verdict.note)
    _write_outputs(
        args,
        ["direction", "brightness_a", "brightness_b", "gap", "tolerance"],
        rows,
        started,
        extra_files={"summary.json": summary},
    )
    return {EQUAL: 0, DISTINCT: 10, INCONCLUSIVE: 11}[verdict.verdict]


def _cmd_probe(args, started) -> int:
    mismatch = ehrhart_equality_probe(
        _load_body(args.a),
        _load_body(args.b),
        h=args.height,
        s_list=_parse_rat_list(args.s_schedule),
    )
    if mismatch is None:
        print("none")
        rows = [["", "", "", ""]]
    else:
        print(
            f"mismatch at w={mismatch.w} s={format_rat(mismatch.s)}: "
            f"{mismatch.count_a} vs {mismatch.count_b}"
        )
        rows = [
            [
                " ".join(str(c) for c in mismatch.w),
                format_rat(mismatch.s),
                str(mismatch.count_a),
                str(mismatch.count_b),
            ]
        ]
    _write_outputs(args, ["w", "s", "count_a", "count_b"], rows, started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ehrtomo",
        description="Lattice-point counts, pseudopyramid volumes, and "
        "brightness comparisons for convex bodies.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, body_flags: Sequence[str]) -> None:
        for flag in body_flags:
            p.add_argument(f"--{flag}", required=True, help=f"{flag} JSON body path")
        p.add_argument("--out", help="output prefix: writes <out>.csv and <out>.manifest.json")
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker cap (recorded in the manifest; results are "
            "deterministic and identical for any value)",
        )

    p = sub.add_parser(
        "count",
        help="integer points of s*(K+w)",
        epilog="CSV columns: s,w,count (rationals as p/q; w space-separated)",
    )
    common(p, ["body"])
    p.add_argument("--translate", help="integer vector w, e.g. '3,7'")
    p.add_argument("--dilate", help="rational dilation s as 'p/q'")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser(
        "profile",
        help="counts over a schedule of dilations",
        epilog="CSV columns: s,count (one row per dilation, sorted by s)",
    )
    common(p, ["body"])
    p.add_argument("--translate", help="integer vector w")
    p.add_argument("--s-schedule", required=True, help="rationals, e.g. '1/2,1,3/2'")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser(
        "ppyr-volume",
        help="volume of the pseudopyramid of K",
        epilog="CSV columns: mode,volume_exact,estimate,stderr (single row)",
    )
    common(p, ["body"])
    p.add_argument("--mode", choices=["exact", "montecarlo"], default="exact")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_ppyr_volume)

    p = sub.add_parser(
        "radii",
        help="outer/inner radii of the pseudopyramid",
        epilog="CSV columns: outer_radius_sq,inner_radius_sq,outer_radius,"
        "inner_radius,origin_interior (single row; squares are exact p/q)",
    )
    common(p, ["body"])
    p.set_defaults(func=_cmd_radii)

    p = sub.add_parser(
        "brightness",
        help="orthogonal shadow area in a direction",
        epilog="CSV columns: method,direction,value",
    )
    common(p, ["body"])
    p.add_argument("--dir", required=True, help="direction, e.g. '0,1'")
    p.add_argument("--method", choices=["hull", "facet-sum"], default="hull")
    p.set_defaults(func=_cmd_brightness)

    p = sub.add_parser(
        "sphere-area",
        help="area of the radial shadow on the unit sphere",
        epilog="CSV columns: method,value,stderr (stderr is 0 except montecarlo)",
    )
    common(p, ["body"])
    p.add_argument(
        "--method", choices=["exact", "quadrature", "montecarlo"], default="exact"
    )
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-3)
    p.set_defaults(func=_cmd_sphere_area)

    p = sub.add_parser(
        "hausdorff",
        help="Hausdorff distance between two bodies",
        epilog="CSV columns: distance",
    )
    common(p, ["a", "b"])
    p.set_defaults(func=_cmd_hausdorff)

    p = sub.add_parser(
        "converge-sphere",
        help="mu^(d-1) * sphere-shadow area vs brightness",
        epilog="CSV columns: mu,estimate,reference,abs_error,sandwich_lo,"
        "sandwich_hi (sandwich columns empty for this table)",
    )
    common(p, ["body"])
    p.add_argument("--dir", required=True)
    p.add_argument("--mu-schedule", required=True, help="increasing floats '8,16,32'")
    p.add_argument("--method", choices=["exact", "quadrature", "montecarlo"], default="exact")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_converge_sphere)

    p = sub.add_parser(
        "converge-ppyr",
        help="d * ppyr volume / mu vs brightness",
        epilog="CSV columns: mu,estimate,reference,abs_error,sandwich_lo,"
        "sandwich_hi (the recorded two-sided enclosure of the estimate)",
    )
    common(p, ["body"])
    p.add_argument("--dir", required=True)
    p.add_argument("--mu-schedule", required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_converge_ppyr)

    p = sub.add_parser(
        "compare",
        help="brightness comparison over rational directions",
        epilog="CSV columns: direction,brightness_a,brightness_b,gap,tolerance; "
        "a verdict summary is written to <out>.summary.json. "
        "Exit codes: 0 equal-within-tolerance, 10 distinct, 11 inconclusive.",
    )
    common(p, ["a", "b"])
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--mu-max", type=float, default=64.0)
    p.add_argument("--tol", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser(
        "probe",
        help="search for an exact count disagreement",
        epilog="CSV columns: w,s,count_a,count_b (all empty when no mismatch)",
    )
    common(p, ["a", "b"])
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--s-schedule", required=True, help="rationals, e.g. '1/4,1/2,1'")
    p.set_defaults(func=_cmd_probe)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    started = time.monotonic()
    try:
        return args.func(args, started)
    except EhrtomoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
