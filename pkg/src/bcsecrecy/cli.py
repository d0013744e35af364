"""Command-line front end.

Subcommands: encode, decode, verify, region, frontier, gap, fme.  Options
may be preloaded from a TOML file (one table per subcommand) with explicit
flags taking precedence.  All file outputs are written atomically and all
reports carry a ``schema`` version field.

Exit codes:
  0  success
  1  verification failure (a swept code missed zero error / zero leakage)
  2  usage or configuration error
  3  unreadable input, malformed document, or infeasible code
  4  enumeration or alphabet budget exceeded
  5  channel-ordering hypothesis violated
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

try:  # stdlib on 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from . import dmbc, fme, gaussian, ldbc, leakage
from .errors import (
    AlphabetBudgetError,
    EnumerationBudgetError,
    GeometryError,
    HypothesisError,
    InfeasibleCodeError,
    InputShapeError,
    SchemaError,
    SecrecyToolkitError,
    UnsupportedShapeError,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_BUDGET = 4
EXIT_HYPOTHESIS = 5

DETERMINISTIC_PRESETS = {
    "fig2a": ldbc.DeterministicChannelParams(5, 3, 2),  # 0 < n2-ne <= ne
    "fig2b": ldbc.DeterministicChannelParams(5, 4, 1),  # n2-ne > ne
}

_GAUSSIAN_PRESET_KINDS = {
    "fig5a": ("noSecrecy", "joint", "capacity"),
    "fig5b": ("noSecrecy", "joint", "capacity"),
    "fig5c": ("noSecrecy", "joint", "inner", "looseOuter"),
    "fig5d": ("noSecrecy", "joint", "inner", "looseOuter"),
}

REGION_EVALUATORS = {
    "primitive": dmbc.region_primitive,
    "superposition": dmbc.region_superposition,
    "superposition_lessnoisy": dmbc.region_superposition_lessnoisy,
    "deterministic": dmbc.region_deterministic_capacity,
    "upper": dmbc.region_upper_bound,
    "capacity_comparable": dmbc.region_capacity_comparable,
    "marton_individual": dmbc.region_marton_individual,
    "marton_joint": dmbc.region_marton_joint,
    "joint_lessnoisy": dmbc.region_joint_lessnoisy,
    "ekrem": dmbc.region_ekrem_comparison,
}

# Channel-ordering hypotheses each formula relies on.  They are not
# machine-checkable for arbitrary channels (quantified over all auxiliary
# inputs), so the caller asserts them and the report records that.
REGION_HYPOTHESES = {
    "superposition_lessnoisy": ("Y1 less noisy than Y2",),
    "deterministic": (
        "Y1 less noisy than Y2",
        "Y2 a deterministic function of X",
        "Z degraded w.r.t. Y2",
    ),
    "upper": ("Y2 degraded w.r.t. Y1", "Y2 less noisy than Z"),
    "capacity_comparable": (
        "Y2 degraded w.r.t. Y1",
        "Y2 less noisy than Z",
        "I(U;Z) <= I(U;Y2) <= 2 I(U;Z) for every admissible U",
    ),
    "joint_lessnoisy": ("Y1 less noisy than Y2",),
}


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        _atomic_write(out, text)


def _json_default(value):
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"not JSON serializable: {value!r}")


def _report(doc: dict, out: str | None) -> None:
    doc = {"schema": SCHEMA_VERSION, **doc}
    _emit(json.dumps(doc, indent=2, default=_json_default), out)


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _load_code(args) -> ldbc.CodeInstance:
    if args.code:
        doc = _load_document(args.code)
        return ldbc.code_from_dict(doc)
    missing = [k for k in ("n1", "n2", "ne", "r1", "r2") if getattr(args, k) is None]
    if missing:
        raise SchemaError(f"pass --code or all of --n1/--n2/--ne/--r1/--r2 (missing {missing})")
    params = ldbc.DeterministicChannelParams(args.n1, args.n2, args.ne)
    return ldbc.CodeInstance(params, args.r1, args.r2, args.pad)


def _load_document(path: str) -> dict:
    with open(path, "rb") as fh:
        blob = fh.read()
    if path.endswith(".toml"):
        return tomllib.loads(blob.decode("utf-8"))
    return json.loads(blob.decode("utf-8"))


# ---------------------------------------------------------------- commands


def cmd_encode(args) -> int:
    code = _load_code(args)
    import random as _random

    rng = _random.Random(args.seed)
    random_bits = ldbc.bits_from_str(args.random_bits) if args.random_bits else None
    x = ldbc.encode(
        ldbc.bits_from_str(args.m1 or ""),
        ldbc.bits_from_str(args.m2 or ""),
        code,
        random_bits=random_bits,
        rng=rng,
    )
    _report({"code": ldbc.code_to_dict(code), "x": ldbc.bits_to_str(x)}, args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = _load_code(args)
    doc: dict = {"code": ldbc.code_to_dict(code)}
    if args.y1 is None and args.y2 is None:
        raise SchemaError("pass --y1 and/or --y2")
    if args.y1 is not None:
        doc["m1"] = ldbc.bits_to_str(ldbc.decode_rx1(ldbc.bits_from_str(args.y1), code))
    if args.y2 is not None:
        doc["m2"] = ldbc.bits_to_str(ldbc.decode_rx2(ldbc.bits_from_str(args.y2), code))
    _report(doc, args.out)
    return EXIT_OK


def _verify_targets(args):
    if args.max_n1 is not None:
        for n1 in range(args.max_n1 + 1):
            for n2 in range(n1 + 1):
                for ne in range(args.max_n1 + 1):
                    params = ldbc.DeterministicChannelParams(n1, n2, ne)
                    for r1 in range(n1 + 1):
                        for r2 in range(n2 + 1):
                            if ldbc.individual_region_membership(r1, r2, params):
                                yield params, r1, r2
        return
    if args.n1 is None and args.n2 is None and args.ne is None:
        return
    if None in (args.n1, args.n2, args.ne):
        raise SchemaError("pass --max-n1, or all of --n1/--n2/--ne")
    params = ldbc.DeterministicChannelParams(args.n1, args.n2, args.ne)
    if args.r1 is not None and args.r2 is not None:
        yield params, args.r1, args.r2
    else:
        for r1 in range(args.n1 + 1):
            for r2 in range(args.n2 + 1):
                if ldbc.individual_region_membership(r1, r2, params):
                    yield params, r1, r2


def cmd_verify(args) -> int:
    pads = ("random", "zero") if args.pad == "both" else (args.pad,)
    results = []
    all_ok = True
    for params, r1, r2 in _verify_targets(args):
        for pad in pads:
            code = ldbc.CodeInstance(params, r1, r2, pad)
            try:
                rep = leakage.verify_code(code, args.budget_bits)
            except EnumerationBudgetError as exc:
                raise EnumerationBudgetError(
                    f"{exc} at (n1={params.n1}, n2={params.n2}, ne={params.ne}, "
                    f"r1={r1}, r2={r2})"
                ) from exc
            ok = (
                rep["pe1"] == 0
                and rep["pe2"] == 0
                and rep["leak1_zero"]
                and rep["leak2_zero"]
            )
            all_ok = all_ok and ok
            results.append(
                {
                    "n1": params.n1,
                    "n2": params.n2,
                    "ne": params.ne,
                    "r1": r1,
                    "r2": r2,
                    "pad": pad,
                    "ok": ok,
                    **rep,
                }
            )
    _report({"all_ok": all_ok, "count": len(results), "results": results}, args.out)
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def cmd_region(args) -> int:
    doc = _load_document(args.dist)
    dist = dmbc.JointDistribution.from_json(doc)
    terms = dmbc.info_terms(dist)
    if args.kind not in REGION_EVALUATORS:
        raise SchemaError(
            f"unknown region kind {args.kind!r}; choose from {sorted(REGION_EVALUATORS)}"
        )
    region = REGION_EVALUATORS[args.kind](terms)
    _report(
        {
            "kind": args.kind,
            "hypotheses_asserted_by_caller": list(REGION_HYPOTHESES.get(args.kind, ())),
            "halfplanes": [
                {"a": a, "b": b, "c": c} for a, b, c in region.half_planes
            ],
            "side_conditions": [
                {"description": sc.description, "satisfied": sc.satisfied, "slack": sc.slack}
                for sc in region.side_conditions
            ],
            "certified": region.certified,
            "terms": terms.as_dict(),
        },
        args.out,
    )
    return EXIT_OK


def _gaussian_params(args) -> gaussian.GaussianBcParams:
    if args.preset:
        if args.preset not in gaussian.GAUSSIAN_PRESETS:
            raise ValueError(
                f"unknown preset {args.preset!r}; choose from "
                f"{sorted(gaussian.GAUSSIAN_PRESETS) + sorted(DETERMINISTIC_PRESETS)}"
            )
        return gaussian.GAUSSIAN_PRESETS[args.preset]
    missing = [k for k in ("power", "s1", "s2", "se") if getattr(args, k) is None]
    if missing:
        raise SchemaError(f"pass --preset or all of --power/--s1/--s2/--se (missing {missing})")
    return gaussian.GaussianBcParams(
        Fraction(args.power), Fraction(args.s1), Fraction(args.s2), Fraction(args.se)
    )


def _sweep_csv(params, kind, grid) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "r1_bound", "r2_bound", "sum_bound"])
    for alpha in gaussian.uniform_grid(grid):
        pt = gaussian.sweep_point(params, kind, alpha)
        writer.writerow([_fmt(pt.alpha), _fmt(pt.r1_bound), _fmt(pt.r2_bound), _fmt(pt.sum_bound)])
    return buf.getvalue()


def _frontier_csv(frontier) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r1", "r2"])
    for r1, r2 in frontier.points:
        writer.writerow([_fmt(r1), _fmt(r2)])
    return buf.getvalue()


def _polygon_csv(polygons: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["region", "r1", "r2"])
    for name, vertices in polygons.items():
        for r1, r2 in vertices:
            writer.writerow([name, _fmt(r1), _fmt(r2)])
    return buf.getvalue()


def _svg_plot(curves, title: str) -> str:
    """Polyline plot of labelled (r1, r2) curves; axes in bits."""
    width, height, margin = 560, 440, 56
    xs = [p[0] for _, pts in curves for p in pts] or [1.0]
    ys = [p[1] for _, pts in curves for p in pts] or [1.0]
    x_max = max(max(xs), 1e-9) * 1.05
    y_max = max(max(ys), 1e-9) * 1.05
    sx = lambda v: margin + (width - 2 * margin) * v / x_max
    sy = lambda v: height - margin - (height - 2 * margin) * v / y_max
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{margin}" y2="{margin}" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="12">R1 (bits)</text>',
        f'<text x="16" y="{height / 2:.0f}" font-size="12" '
        f'transform="rotate(-90 16 {height / 2:.0f})" text-anchor="middle">R2 (bits)</text>',
    ]
    for i, (label, pts) in enumerate(curves):
        color = colors[i % len(colors)]
        coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in pts)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>'
        )
        parts.append(
            f'<text x="{width - margin + 4}" y="{margin + 16 * i}" font-size="11" '
            f'fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def cmd_frontier(args) -> int:
    if args.preset in DETERMINISTIC_PRESETS:
        params = DETERMINISTIC_PRESETS[args.preset]
        polygons = ldbc.deterministic_region_polygons(params)
        base = args.out_prefix or args.preset
        _atomic_write(f"{base}_polygons.csv", _polygon_csv(polygons))
        written = [f"{base}_polygons.csv"]
        if args.svg:
            curves = [(name, pts + pts[:1]) for name, pts in polygons.items()]
            _atomic_write(f"{base}.svg", _svg_plot(curves, args.preset))
            written.append(f"{base}.svg")
        _report({"preset": args.preset, "written": written, "polygons": polygons}, args.out)
        return EXIT_OK

    params = _gaussian_params(args)
    if args.kinds:
        kinds = tuple(args.kinds.split(","))
    elif args.preset:
        kinds = _GAUSSIAN_PRESET_KINDS[args.preset]
    else:
        kinds = ("noSecrecy", "joint", "inner", "looseOuter")
    base = args.out_prefix or args.preset or "frontier"
    written = []
    curves = []
    for kind in kinds:
        frontier = gaussian.trace_frontier(params, kind, args.grid)
        sweep_path = f"{base}_{kind}_sweep.csv"
        frontier_path = f"{base}_{kind}_frontier.csv"
        _atomic_write(sweep_path, _sweep_csv(params, kind, args.grid))
        _atomic_write(frontier_path, _frontier_csv(frontier))
        written.extend([sweep_path, frontier_path])
        curves.append((kind, [(0.0, frontier.max_r2())] + list(frontier.points) + [(frontier.max_r1(), 0.0)]))
    if args.svg:
        svg_path = f"{base}.svg"
        _atomic_write(svg_path, _svg_plot(curves, base))
        written.append(svg_path)
    _report(
        {
            "params": {
                "power": params.power, "s1": params.s1, "s2": params.s2, "se": params.se,
            },
            "kinds": list(kinds),
            "grid": args.grid,
            "written": written,
        },
        args.out,
    )
    return EXIT_OK


def cmd_gap(args) -> int:
    params = _gaussian_params(args)
    grid = gaussian.uniform_grid(args.grid)
    detail = gaussian.gap_scan_detail(params, grid)
    _report(
        {
            "params": {
                "power": params.power, "s1": params.s1, "s2": params.s2, "se": params.se,
            },
            "grid": args.grid,
            "max_gap_bits": detail["max_gap_bits"],
            "max_gap_where_binding": detail["max_gap_where_binding"],
            "alpha0": gaussian.alpha0(params),
            "capacity_condition": gaussian.capacity_condition(params),
        },
        args.out,
    )
    return EXIT_OK


def cmd_fme(args) -> int:
    system = fme.load_system(args.system)
    raw_params = _load_document(args.params)
    params = {k: Fraction(str(v)) for k, v in raw_params.items()}
    numeric = system.instantiate(params)
    keep = tuple(args.keep.split(","))
    order = args.order.split(",") if args.order else None
    projected = fme.project_to_rates(numeric, keep=keep, order=order)
    _report(
        {
            "variables": list(projected.variables),
            "halfplanes": [
                {"coeffs": dict(lhs), "rhs": rhs} for lhs, rhs in projected.rows
            ],
            "infeasible": projected.trivially_infeasible,
        },
        args.out,
    )
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _build_parser(config: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcsecrecy",
        description="Broadcast-channel secrecy toolkit: codes, leakage oracles, "
        "rate regions, Gaussian frontiers, and exact polytope projection.",
    )
    parser.add_argument("--config", help="TOML file with per-command option tables")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, configure):
        p = sub.add_parser(name)
        p.add_argument("--config", help=argparse.SUPPRESS)
        p.add_argument("--out", help="output path for the JSON report (default stdout)")
        configure(p)
        p.set_defaults(func=func)
        p.set_defaults(**config.get(name, {}))
        return p

    def code_opts(p):
        p.add_argument("--code", help="JSON/TOML code description")
        for flag in ("n1", "n2", "ne", "r1", "r2"):
            p.add_argument(f"--{flag}", type=int)
        p.add_argument("--pad", choices=("random", "zero"), default="random")

    def p_encode(p):
        code_opts(p)
        p.add_argument("--m1", default="")
        p.add_argument("--m2", default="")
        p.add_argument("--random-bits", dest="random_bits")
        p.add_argument("--seed", type=int, default=0)

    def p_decode(p):
        code_opts(p)
        p.add_argument("--y1")
        p.add_argument("--y2")

    def p_verify(p):
        p.add_argument("--max-n1", dest="max_n1", type=int)
        for flag in ("n1", "n2", "ne", "r1", "r2"):
            p.add_argument(f"--{flag}", type=int)
        p.add_argument("--pad", choices=("random", "zero", "both"), default="both")
        p.add_argument("--budget-bits", dest="budget_bits", type=int,
                       default=leakage.DEFAULT_BUDGET_BITS)

    def p_region(p):
        p.add_argument("--dist", required=True, help="distribution JSON document")
        p.add_argument("--kind", default="marton_individual",
                       choices=sorted(REGION_EVALUATORS))

    def gaussian_opts(p):
        p.add_argument("--preset")
        for flag in ("power", "s1", "s2", "se"):
            p.add_argument(f"--{flag}")
        p.add_argument("--grid", type=int, default=1024)

    def p_frontier(p):
        gaussian_opts(p)
        p.add_argument("--kinds", help="comma list from "
                       f"{','.join(gaussian.FRONTIER_KINDS)}")
        p.add_argument("--out-prefix", dest="out_prefix")
        p.add_argument("--svg", action="store_true")

    def p_gap(p):
        gaussian_opts(p)
        p.set_defaults(grid=1000)

    def p_fme(p):
        p.add_argument("--system", required=True, help="constraint file (.ineq)")
        p.add_argument("--params", required=True, help="JSON name -> rational")
        p.add_argument("--keep", default="R1,R2")
        p.add_argument("--order", help="comma list elimination order")

    add("encode", cmd_encode, p_encode)
    add("decode", cmd_decode, p_decode)
    add("verify", cmd_verify, p_verify)
    add("region", cmd_region, p_region)
    add("frontier", cmd_frontier, p_frontier)
    add("gap", cmd_gap, p_gap)
    add("fme", cmd_fme, p_fme)
    return parser


def _preload_config(argv) -> dict:
    if "--config" in argv:
        path = argv[argv.index("--config") + 1]
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    return {}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = _preload_config(argv)
    except (OSError, IndexError, tomllib.TOMLDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = _build_parser(config)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EnumerationBudgetError, AlphabetBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (SchemaError, InputShapeError, InfeasibleCodeError, GeometryError,
            UnsupportedShapeError, SecrecyToolkitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
