"""Command-line front end.

Subcommands: check, enumerate, crosscheck, render, bgx.  Exit codes:
0 ok, 1 property failure, 2 parse/validation error, 3 cap exceeded,
4 unsupported geometry.  Enumeration output is byte-deterministic for a
fixed configuration, independent of the worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import audit
from .alcove import AlcoveProfile
from .criterion import (
    Verdict,
    bgx_cordial,
    decide_nonempty,
    oracle_nonempty,
)
from .errors import CapExceeded, NotationError, UnsupportedGeometry
from .iwahori import (
    AffineElement,
    KottwitzClass,
    affine_sigma_support,
    enumerate_affine,
    kottwitz,
)
from .notation import (
    format_affine,
    format_finite,
    format_fraction,
    parse_affine,
    parse_finite,
    parse_int_vector,
    parse_kappa,
    parse_sigma,
    parse_system,
)
from .render import render_svg

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_GEOMETRY = 4

ENUM_CAP_DEFAULT = 500_000


@dataclass(frozen=True)
class RunConfig:
    system: str
    sigma: str = "id"
    length_bound: int = 6
    kappa_b: str = "zero"  # integer vector "[...]", "zero", or "match-x"
    format: str = "json"  # json | csv | svg
    out: str | None = None
    jobs: int = 1
    cap: int = ENUM_CAP_DEFAULT
    seed: int = 0


def read_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise NotationError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def config_from_sources(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if getattr(args, "config", None):
        raw = read_config_file(args.config)
        for key in ("system", "sigma", "kappa_b", "format", "out"):
            if key in raw:
                values[key] = raw[key]
        for key in ("length_bound", "jobs", "cap", "seed"):
            if key in raw:
                values[key] = int(raw[key])
    for key in ("system", "sigma", "kappa_b", "format", "out",
                "length_bound", "jobs", "cap", "seed"):
        override = getattr(args, key, None)
        if override is not None:
            values[key] = override
    if "system" not in values:
        raise NotationError("a root system is required (--system or config file)")
    config = RunConfig(**values)
    if config.length_bound < 0:
        raise NotationError("length bound must be nonnegative")
    if config.jobs < 1:
        raise NotationError("jobs must be at least 1")
    return config


def build_context(config: RunConfig):
    system = parse_system(config.system)
    sigma = parse_sigma(system, config.sigma)
    if config.kappa_b == "match-x":
        kappa = None
    elif config.kappa_b == "zero":
        kappa = KottwitzClass.zero(system)
    else:
        kappa = parse_kappa(system, config.kappa_b)
    return system, sigma, kappa


# -- serialization helpers ---------------------------------------------------------


def _indices_1based(indices) -> list[int]:
    return sorted(i + 1 for i in indices)


def _kappa_str(kappa: KottwitzClass) -> str:
    return ";".join(format_fraction(c) for c in kappa.rep)


def _witnesses_json(witnesses: dict) -> dict:
    out = {}
    for key, value in witnesses.items():
        if key in ("r", "w"):
            out[key] = format_finite(value)
        elif key == "j" or key == "j_rx":
            out[key] = _indices_1based(value)
        elif key == "checked_r":
            out[key] = [format_finite(r) for r in value]
        elif key in ("kappa_x", "kappa_b"):
            out[key] = _kappa_str(value)
        elif key == "affine_support":
            out[key] = list(value)
        else:
            out[key] = value
    return out


def profile_json(profile: AlcoveProfile) -> dict:
    return {
        "x": format_affine(profile.x),
        "v": format_finite(profile.v),
        "mu": list(profile.mu),
        "w": format_finite(profile.w),
        "eta": format_finite(profile.eta),
        "phi_x": [list(a) for a in sorted(profile.phi_x)],
        "W_x": [format_finite(r) for r in sorted(profile.w_x, key=lambda u: u.sort_key())],
        "shrunken": profile.shrunken,
        "strips": [list(a) for a in profile.strips],
    }


def verdict_json(system, sigma_text: str, x: AffineElement, kappa_b: KottwitzClass,
                 verdict: Verdict, profile: AlcoveProfile) -> dict:
    return {
        "document": "verdict",
        "system": system.type_label,
        "sigma": sigma_text,
        "x": format_affine(x),
        "kappa_b": _kappa_str(kappa_b),
        "nonempty": verdict.nonempty,
        "rule": verdict.rule,
        "witnesses": _witnesses_json(verdict.witnesses),
        "profile": profile_json(profile),
    }


# -- enumerate ---------------------------------------------------------------------

ENUM_COLUMNS = [
    "x", "length", "kappa", "kappa_b", "affine_support_full",
    "v", "mu", "w", "eta", "shrunken", "strips", "phi_x", "wx_size",
    "nonempty", "rule", "witness", "oracle_applicable", "oracle_nonempty",
    "oracle_witness", "agree",
]


def _witness_brief(verdict: Verdict) -> str:
    w = verdict.witnesses
    if "r" in w:
        return f"r={format_finite(w['r'])};J={','.join(map(str, _indices_1based(w['j_rx'])))}"
    if "j" in w:
        return f"J={','.join(map(str, _indices_1based(w['j'])))};w={format_finite(w['w'])}"
    return ""


def _row_for_element(system, sigma, kappa_b: KottwitzClass | None,
                     x: AffineElement) -> dict:
    profile = AlcoveProfile.build(x, sigma)
    kappa_x = kottwitz(x)
    target = kappa_x if kappa_b is None else kappa_b
    verdict = decide_nonempty(x, target, sigma, profile)
    support_full = affine_sigma_support(x, sigma).full
    kappa_match = kappa_x.coinvariant(sigma) == target.coinvariant(sigma)
    oracle_applicable = support_full and kappa_match
    if oracle_applicable:
        oracle = oracle_nonempty(x, target, sigma, profile)
        oracle_nonempty_val: bool | None = oracle.nonempty
        oracle_witness = _witness_brief(oracle)
        agree: bool | None = oracle.nonempty == verdict.nonempty
    else:
        oracle_nonempty_val = None
        oracle_witness = ""
        agree = None
    return {
        "x": format_affine(x),
        "length": x.length,
        "kappa": _kappa_str(kappa_x),
        "kappa_b": _kappa_str(target),
        "affine_support_full": support_full,
        "v": format_finite(profile.v),
        "mu": ",".join(map(str, profile.mu)),
        "w": format_finite(profile.w),
        "eta": format_finite(profile.eta),
        "shrunken": profile.shrunken,
        "strips": ";".join(",".join(map(str, a)) for a in profile.strips),
        "phi_x": ";".join(",".join(map(str, a)) for a in sorted(profile.phi_x)),
        "wx_size": len(profile.w_x),
        "nonempty": verdict.nonempty,
        "rule": verdict.rule,
        "witness": _witness_brief(verdict),
        "oracle_applicable": oracle_applicable,
        "oracle_nonempty": oracle_nonempty_val,
        "oracle_witness": oracle_witness,
        "agree": agree,
        "_sort": [x.length, list(x.translation),
                  [list(r) for r in x.finite.images]],
    }


def _worker_rows(payload) -> list[dict]:
    config_dict, notations = payload
    config = RunConfig(**config_dict)
    system, sigma, kappa = build_context(config)
    return [
        _row_for_element(system, sigma, kappa, parse_affine(system, text))
        for text in notations
    ]


def enumerate_rows(config: RunConfig) -> list[dict]:
    system, sigma, kappa = build_context(config)
    notations = [
        format_affine(x)
        for x in enumerate_affine(system, config.length_bound, cap=config.cap)
    ]
    if config.jobs == 1 or len(notations) < 2 * config.jobs:
        rows = _worker_rows((config.__dict__, notations))
    else:
        chunk = (len(notations) + config.jobs - 1) // config.jobs
        payloads = [
            (dict(config.__dict__), notations[i:i + chunk])
            for i in range(0, len(notations), chunk)
        ]
        rows = []
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for part in pool.map(_worker_rows, payloads):
                rows.extend(part)
    rows.sort(key=lambda row: row["_sort"])
    for row in rows:
        del row["_sort"]
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(ENUM_COLUMNS)
    for row in rows:
        writer.writerow(["" if row[c] is None else row[c] for c in ENUM_COLUMNS])
    return buffer.getvalue()


def _dump_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------


def cmd_check(args) -> int:
    config = config_from_sources(args)
    system, sigma, kappa = build_context(config)
    x = parse_affine(system, args.element)
    if kappa is None:
        kappa = kottwitz(x)
    profile = AlcoveProfile.build(x, sigma)
    verdict = decide_nonempty(x, kappa, sigma, profile)
    document = verdict_json(system, config.sigma, x, kappa, verdict, profile)
    _emit(_dump_json(document), config.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    config = config_from_sources(args)
    rows = enumerate_rows(config)
    if config.format == "csv":
        _emit(rows_to_csv(rows), config.out)
    else:
        document = {
            "document": "enumeration",
            "system": config.system,
            "sigma": config.sigma,
            "length_bound": config.length_bound,
            "kappa_b": config.kappa_b,
            "rows": rows,
        }
        _emit(_dump_json(document), config.out)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    config = config_from_sources(args)
    system, sigma, _ = build_context(config)
    results = audit.run_battery(system, sigma, config.length_bound, config.seed)
    failures = [r for r in results if not r.passed and not r.informational]
    document = {
        "document": "crosscheck",
        "system": config.system,
        "sigma": config.sigma,
        "length_bound": config.length_bound,
        "results": [
            {
                "check": r.check_id,
                "passed": r.passed,
                "informational": r.informational,
                "detail": r.detail,
                "counterexample": r.counterexample,
            }
            for r in results
        ],
        "failures": len(failures),
    }
    _emit(_dump_json(document), config.out)
    return EXIT_PROPERTY_FAILURE if failures else EXIT_OK


def cmd_render(args) -> int:
    config = config_from_sources(args)
    system, sigma, kappa = build_context(config)
    if kappa is None:
        raise NotationError("render needs a fixed class (--kappa-b vector), not match-x")
    svg = render_svg(system, sigma, kappa, config.length_bound, enum_cap=config.cap)
    _emit(svg, config.out)
    return EXIT_OK


def cmd_bgx(args) -> int:
    config = config_from_sources(args)
    system, sigma, _ = build_context(config)
    v = parse_finite(system, args.v)
    mu = parse_int_vector(args.mu, system.rank)
    if not system.is_dominant(mu):
        raise NotationError(f"mu = {list(mu)} is not dominant")
    report = bgx_cordial(v, mu, sigma)
    document = {
        "document": "bgx",
        "system": config.system,
        "sigma": config.sigma,
        "v": format_finite(v),
        "mu": list(mu),
        "x": format_affine(report.x),
        "w_x_formula": [format_finite(r)
                        for r in sorted(report.w_x_formula, key=lambda u: u.sort_key())],
        "w_x_alcove": [format_finite(r)
                       for r in sorted(report.w_x_alcove, key=lambda u: u.sort_key())],
        "support_tests": [
            {"r": format_finite(r), "support": _indices_1based(j), "full": ok}
            for r, j, ok in report.support_tests
        ],
        "all_full": report.all_full,
        "mu_central": report.mu_central,
        "conclusion": report.conclusion,
        "points": None if report.points is None else [
            {
                "newton": [format_fraction(c) for c in p.newton_dominant],
                "kappa": [format_fraction(c) for c in p.kappa_coinv],
            }
            for p in report.points
        ],
        "cap_stable": report.cap_stable,
    }
    _emit(_dump_json(document), config.out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file; flags override")
    parser.add_argument("--system", help="root-system descriptor, e.g. A2 or A2+A2")
    parser.add_argument("--sigma", help='diagram action: "id" or cycles like "(1 3)"')
    parser.add_argument("--length-bound", dest="length_bound", type=int)
    parser.add_argument("--kappa-b", dest="kappa_b",
                        help='basic-class designator: "[c1,...,cn]", "zero" or "match-x"')
    parser.add_argument("--format", choices=["json", "csv", "svg"])
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--jobs", type=int, help="worker processes for enumeration")
    parser.add_argument("--cap", type=int, help="enumeration size cap")
    parser.add_argument("--seed", type=int, help="seed for randomized checks")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adlv",
        description="Exact nonemptiness checks for single affine Deligne-Lusztig "
                    "varieties at Iwahori level (basic case).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="decide one element")
    p_check.add_argument("element", help='element notation, e.g. "t[1,0] s1 s2"')
    _add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_enum = sub.add_parser("enumerate", help="decide all elements up to a length bound")
    _add_common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_cross = sub.add_parser("crosscheck", help="run the property-check battery")
    _add_common(p_cross)
    p_cross.set_defaults(func=cmd_crosscheck)

    p_render = sub.add_parser("render", help="rank-2 apartment picture (SVG)")
    _add_common(p_render)
    p_render.set_defaults(func=cmd_render)

    p_bgx = sub.add_parser("bgx", help="class-set report for v t^mu")
    p_bgx.add_argument("v", help='finite element, e.g. "s1 s2 s1"')
    p_bgx.add_argument("mu", help="dominant coweight vector, e.g. [1,0]")
    _add_common(p_bgx)
    p_bgx.set_defaults(func=cmd_bgx)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UnsupportedGeometry as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
