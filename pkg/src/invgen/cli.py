"""Command-line interface.

Exit codes: 0 success or certificate, 1 usage or input error, 2 inconclusive
or unsupported range.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass

from . import __version__
from .atlas import (DEFAULT_MAX_DEGREE, STRETCH_MAX_DEGREE, SolvableAtlas, atlas_load,
                    load_or_build)
from .cycletype import condition_stats
from .errors import CapabilityError, DomainError, InvgenError, ParseError
from .galois import Certificate, IntPolynomial, certify_nonsolvable
from .invariable import ALTERNATING, SYMMETRIC, estimate_mean_N, exact_p2, round_half_away

log = logging.getLogger("invgen")

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    degrees: range | None = None
    trials: int = 10_000
    seed: int = 1
    budget: int = 10
    atlas_path: str | None = None
    fmt: str = "csv"
    stretch: bool = False

    def __post_init__(self):
        if self.degrees is not None and len(self.degrees) == 0:
            raise UsageError("degree range is empty")
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.fmt not in ("csv", "json"):
            raise UsageError("--format must be csv or json")


def parse_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return range(int(a), int(b) + 1)
        n = int(text)
        return range(n, n + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None


def get_atlas(max_degree: int, cfg: RunConfig) -> SolvableAtlas:
    if max_degree > STRETCH_MAX_DEGREE:
        raise CapabilityError(
            f"degree {max_degree} is beyond the supported ceiling {STRETCH_MAX_DEGREE}")
    if cfg.atlas_path:
        atlas = atlas_load(cfg.atlas_path)
        atlas.row(max_degree)
        return atlas
    # degrees above the default ceiling need the GL(4,2)/GL(2,5) data
    stretch = cfg.stretch or max_degree > DEFAULT_MAX_DEGREE
    if stretch and not cfg.stretch:
        log.info("degree %d requested: building the stretch atlas", max_degree)
    ceiling = STRETCH_MAX_DEGREE if stretch else DEFAULT_MAX_DEGREE
    return load_or_build(ceiling, stretch=stretch)


def _emit(rows: list[dict], fields: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
        return
    w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)


# -- subcommands ----------------------------------------------------------------


def table_rows(degrees: range, atlas: SolvableAtlas, group: str = SYMMETRIC) -> list[dict]:
    rows = []
    for n in degrees:
        p = exact_p2(n, group, atlas)
        gap = 1 / (1 - p)
        rows.append({
            "n": n,
            "p_num": p.numerator,
            "p_den": p.denominator,
            "p_rounded": str(round_half_away(p)),
            "inv_gap": f"{float(gap):.10f}",
        })
    return rows


def cmd_table(cfg: RunConfig, group: str, out) -> int:
    atlas = get_atlas(max(cfg.degrees), cfg)
    rows = table_rows(cfg.degrees, atlas, group)
    if cfg.fmt == "json":
        for r in rows:
            r["group"] = group
            r["model"] = ("both permutations uniform on A_n" if group == ALTERNATING
                          else "both permutations uniform on S_n")
    _emit(rows, ["n", "p_num", "p_den", "p_rounded", "inv_gap"], cfg.fmt, out)
    return EXIT_OK


def cmd_certify(cfg: RunConfig, poly_text: str, seed: int | None, transcript: bool,
                out, err) -> int:
    try:
        f = IntPolynomial.parse(poly_text)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    atlas = get_atlas(max(f.degree, 1), cfg) if f.degree > 4 else None
    try:
        result = certify_nonsolvable(f, cfg.budget, atlas, seed=seed)
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    out.write(result.to_json() + "\n")
    if transcript and isinstance(result, Certificate):
        err.write(result.transcript() + "\n")
    return EXIT_OK if isinstance(result, Certificate) else EXIT_INCONCLUSIVE


def cmd_estimate(cfg: RunConfig, n: int, out) -> int:
    atlas = get_atlas(n, cfg) if n > 4 else None
    if n <= 4:
        raise DomainError(f"n={n}: all subgroups solvable for n <= 4")
    stats = estimate_mean_N(n, cfg.trials, cfg.seed, atlas)
    exact = exact_p2(n, SYMMETRIC, atlas)
    row = stats.as_dict()
    row["exact_p2"] = float(exact)
    if cfg.fmt == "json":
        out.write(json.dumps(row, sort_keys=True) + "\n")
    else:
        flat = {k: v for k, v in row.items() if k != "histogram"}
        flat["histogram"] = ";".join(f"{k}:{v}" for k, v in stats.histogram.items())
        _emit([flat], list(flat), "csv", out)
    return EXIT_OK


def cmd_stats(cfg: RunConfig, n: int, out) -> int:
    st = condition_stats(n, cfg.trials, cfg.seed).as_dict()
    if cfg.fmt == "json":
        out.write(json.dumps(st, sort_keys=True) + "\n")
    else:
        st["window_primes"] = " ".join(map(str, st["window_primes"]))
        st["mersenne_primes"] = " ".join(map(str, st["mersenne_primes"]))
        _emit([st], list(st), "csv", out)
    return EXIT_OK


def cmd_atlas(cfg: RunConfig, out) -> int:
    top = max(cfg.degrees)
    atlas = get_atlas(top, cfg)
    rows = []
    for n in cfg.degrees:
        row = atlas.row(n)
        rows.append({"n": n, "sets": len(row), "largest": max(len(s) for s in row),
                     "provenance": " ".join(sorted({s.provenance for s in row}))})
    _emit(rows, ["n", "sets", "largest", "provenance"], cfg.fmt, out)
    return EXIT_OK


# -- argument handling ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atlas", dest="atlas_path", default=None,
                        help="atlas file (default: $INVGEN_ATLAS or an auto-built cache)")
    common.add_argument("--format", dest="fmt", default="csv", choices=["csv", "json"])
    common.add_argument("--stretch", action="store_true",
                        help="enable degrees 16..25 (GL(4,2) and GL(2,5) enumeration)")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--trials", type=int, default=10_000)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="invgen", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    t = sub.add_parser("table", parents=[common], help="exact P(N_n = 2) per degree")
    t.add_argument("--range", dest="range", default="5..15")
    t.add_argument("--group", choices=[SYMMETRIC, ALTERNATING], default=SYMMETRIC)

    c = sub.add_parser("certify", parents=[common], help="certify a nonsolvable Galois group")
    c.add_argument("poly", help="expression such as 'x^5 - x - 1' or ascending coefficients")
    c.add_argument("--budget", type=int, default=10, help="number of usable primes to try")
    c.add_argument("--random-primes", action="store_true",
                   help="scan primes in a seeded random order instead of increasing order")
    c.add_argument("--transcript", action="store_true",
                   help="write a human-readable proof transcript to stderr")

    e = sub.add_parser("estimate", parents=[common], help="Monte Carlo estimate of E(N_n)")
    e.add_argument("n", type=int)

    s = sub.add_parser("stats", parents=[common], help="cycle-condition frequencies in S_n")
    s.add_argument("n", type=int)

    a = sub.add_parser("atlas", parents=[common], help="build or inspect the solvable atlas")
    a.add_argument("--range", dest="range", default="1..15")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=err)
    try:
        degrees = parse_range(args.range) if hasattr(args, "range") else None
        cfg = RunConfig(args.subcommand, degrees, args.trials, args.seed,
                        getattr(args, "budget", 10), args.atlas_path, args.fmt, args.stretch)
        if cfg.degrees is not None and min(cfg.degrees) < 1:
            raise UsageError("degrees must be positive")
        if args.subcommand == "table":
            return cmd_table(cfg, args.group, out)
        if args.subcommand == "certify":
            seed = args.seed if args.random_primes else None
            return cmd_certify(cfg, args.poly, seed, args.transcript, out, err)
        if args.subcommand == "estimate":
            return cmd_estimate(cfg, args.n, out)
        if args.subcommand == "stats":
            return cmd_stats(cfg, args.n, out)
        if args.subcommand == "atlas":
            return cmd_atlas(cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_INPUT
    except CapabilityError as exc:
        err.write(f"unsupported: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (DomainError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (InvgenError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
