"""Command-line interface.

Every successful command prints exactly one JSON document on stdout::

    {"command": ..., "inputs": ..., "result": ..., "warnings": [...]}

Floats are written with 17 significant digits so identical invocations give
byte-identical output.  Exit status: 0 success, 1 internal failure, 2 usage or
domain error (diagnostic on stderr).

Polynomials use the constant-first wire format, e.g. ``1,1,0,-1,-1,-1,-1,-1,0,1,1``.
A wire string starting with ``-`` is accepted as a positional argument or an
option value without any quoting tricks.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import bounds
from .classify import classify
from .errors import DomainError, LehmerError
from .geodesic import displacement_from_trace, displacement_from_u_polynomial
from .measure import DEFAULT_TOL, MeasureResult, jensen_measure, mahler_measure
from .polynomial import parse, strip_cyclotomic_factors
from .search import (
    SearchSpec,
    _checkpointed_job,
    checkpoint_resume,
    family_size,
    finalize,
    merge_records,
    shard_checkpoint_path,
)

_WIRE_WITH_COMMA = re.compile(r"-\d+(,\s*[+-]?\d+)+\Z")


# ---------------------------------------------------------------------------
# JSON with fixed float formatting


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    if hasattr(obj, "value"):  # enum
        return dumps(obj.value)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command: str, inputs: dict, result, warnings=()) -> str:
    return dumps(
        {"command": command, "inputs": inputs, "result": result, "warnings": list(warnings)}
    )


def _measure_payload(m: MeasureResult) -> dict:
    out = {
        "value": m.value,
        "error_radius": m.error_radius,
        "method": m.method.value,
        "log_mahler": m.log_value,
        "log_error": m.log_error,
    }
    if m.root_moduli is not None:
        out["root_moduli"] = list(m.root_moduli)
    return out


def _constants(args) -> bounds.BoundConstants:
    return bounds.BoundConstants(
        c1=args.c1, c2=args.c2, c3=args.c3, c_agg=args.c_agg, c_n=args.cn, dim_n=args.dim_n
    )


# ---------------------------------------------------------------------------
# Commands


def cmd_measure(args):
    p = parse(args.poly)
    inputs = {"poly": p.to_wire(), "tol": args.tol, "method": args.method}
    warnings = []
    result: dict = {}
    roots = jensen = None
    if args.method in ("roots", "both"):
        roots = mahler_measure(p, args.tol)
        result["roots"] = _measure_payload(roots)
        if p.is_monic() and strip_cyclotomic_factors(p)[0].degree == 0:
            result["roots"]["cyclotomic_fast_path"] = True
            warnings.append("cyclotomic product: measure is exactly 1 (fast path)")
    if args.method in ("jensen", "both"):
        inputs["samples"] = args.samples
        jensen = jensen_measure(p, args.samples)
        result["jensen"] = _measure_payload(jensen)
    if roots and jensen:
        delta = abs(roots.value - jensen.value)
        result["agreement_delta"] = delta
        result["within_radii"] = delta <= roots.error_radius + jensen.error_radius
    primary = roots or jensen
    result = {"value": primary.value, "error_radius": primary.error_radius, **result}
    if not p.is_monic():
        warnings.append("non-monic input: |leading coefficient| included in the measure")
    return envelope("measure", inputs, result, warnings)


def cmd_classify(args):
    p = parse(args.poly)
    c = classify(p)
    result = {"kind": c.kind.value, "dominant_root": c.dominant_root, "certificate": c.certificate}
    warnings = [] if c.kind.value == "CyclotomicProduct" else ["irreducibility not verified"]
    return envelope("classify", {"poly": p.to_wire()}, result, warnings)


def cmd_geodesic(args):
    if (args.trace_poly is None) == (args.u_poly is None):
        raise DomainError("give exactly one of --trace-poly or --u-poly")
    inputs = {"tol": args.tol}
    if args.trace_poly is not None:
        q = parse(args.trace_poly)
        inputs["trace_poly"] = q.to_wire()
        d = displacement_from_trace(q, args.tol)
    else:
        p = parse(args.u_poly)
        inputs["u_poly"] = p.to_wire()
        d = displacement_from_u_polynomial(p, args.tol)
    result = {
        "u_polynomial": d.u_polynomial.to_wire(),
        "measure": _measure_payload(d.measure),
        "length_dim2": d.length_dim2,
        "length_dim3": d.length_dim3,
    }
    warnings = ["curvature -1 normalization; lifted polynomial may be reducible"]
    return envelope("geodesic", inputs, result, warnings)


def cmd_bound(args):
    k = _constants(args)
    inputs = {"kind": args.kind, "constants": k.as_dict()}
    warnings = []
    result: dict = {}
    if args.kind == "dobrowolski":
        _need(args, "d")
        inputs["d"] = args.d
        v = bounds.dobrowolski_lower_bound(args.d, k)
        result["log_measure_lower_bound"] = v
        result["vacuous"] = v <= 0
        if v <= 0:
            warnings.append("vacuous bound (value <= 0)")
    elif args.kind == "field-degree":
        _need(args, "d")
        inputs["d"] = args.d
        result["field_degree_lower_bound"] = bounds.field_degree_lower_bound(args.d)
    elif args.kind == "degree-volume":
        _need(args, "vol")
        inputs["vol"] = args.vol
        result["field_degree_upper_bound"] = bounds.degree_volume_upper_bound(args.vol, k)
    elif args.kind == "systole-volume":
        _need(args, "vol")
        inputs["vol"] = args.vol
        result["systole_lower_bound"] = bounds.systole_volume_lower_bound(args.vol, k)
        result["form"] = bounds.composed_form(k)
        result["min_admissible_volume"] = bounds.min_admissible_volume(k)
        if args.vol < bounds.monotone_volume_threshold(k):
            warnings.append("volume below the regime where the bound decreases with volume")
    else:
        _need(args, "systole")
        inputs["systole"] = args.systole
        result["volume_lower_bound"] = bounds.theorem1b_volume_lower_bound(args.systole, k)
    warnings.append("constants are configuration placeholders, not literature values")
    return envelope("bound", inputs, {"value": next(iter(result.values())), **result}, warnings)


def _need(args, name):
    if getattr(args, name) is None:
        raise DomainError(f"--{name.replace('_', '-')} is required for bound {args.kind}")


def cmd_compare_growth(args):
    k = _constants(args)
    rows = bounds.growth_table(args.vol_min, args.vol_max, args.steps, k)
    inputs = {
        "vol_min": args.vol_min,
        "vol_max": args.vol_max,
        "steps": args.steps,
        "constants": k.as_dict(),
        "out": args.out,
    }
    warnings = ["constants are configuration placeholders, not literature values"]
    if args.vol_min < bounds.monotone_volume_threshold(k):
        warnings.append("vol_min below the regime where the arithmetic bound decreases")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(bounds.growth_table_csv(rows))
    result = {
        "header": list(bounds.CSV_HEADER),
        "rows": [list(r) for r in rows],
        "form": bounds.composed_form(k),
    }
    return envelope("compare-growth", inputs, result, warnings)


def _resume_shard_count(base: str, requested) -> int:
    if requested is not None:
        return requested
    if os.path.isfile(base):
        return 1
    folder = os.path.dirname(base) or "."
    stem = os.path.basename(base)
    pat = re.compile(re.escape(stem) + r"\.0-of-(\d+)\Z")
    for name in os.listdir(folder):
        m = pat.match(name)
        if m:
            return int(m.group(1))
    raise DomainError(f"no checkpoint found at {base}")


def cmd_search(args):
    t0 = time.perf_counter()
    if args.resume is not None:
        shards = _resume_shard_count(args.resume, args.shards)
        file_spec, *_ = checkpoint_resume(shard_checkpoint_path(args.resume, 0, shards))
        if args.degree is not None:
            requested = SearchSpec(
                args.degree,
                args.coeff_bound,
                args.reciprocal_only,
                args.tol if args.tol is not None else file_spec.tol,
                0,
                shards,
                args.target,
            )
            checkpoint_resume(shard_checkpoint_path(args.resume, 0, shards), expected=requested)
        base = file_spec.shard(0, 1)
    else:
        if args.degree is None:
            raise DomainError("--degree is required unless --resume is given")
        shards = args.shards or 1
        base = SearchSpec(
            args.degree,
            args.coeff_bound,
            args.reciprocal_only,
            args.tol if args.tol is not None else DEFAULT_TOL,
            target=args.target,
        )
    jobs = []
    for i in range(shards):
        spec = base.shard(i, shards)
        rs = shard_checkpoint_path(args.resume, i, shards) if args.resume else None
        ck = shard_checkpoint_path(args.checkpoint, i, shards) if args.checkpoint else rs
        jobs.append((spec, ck, rs, args.stop_after, args.checkpoint_every))
    if args.workers > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            outcomes = list(pool.map(_checkpointed_job, jobs))
    else:
        outcomes = [_checkpointed_job(j) for j in jobs]
    record = merge_records([r for r, _ in outcomes])
    complete = all(c for _, c in outcomes)
    if complete:
        record = finalize(record)
    inputs = {**base.as_dict(), "shards": shards}
    result = {
        "complete": complete,
        "family_size": family_size(base),
        "scanned": record.scanned,
        "skipped_cyclotomic": record.skipped_cyclotomic,
        "skipped_pruned": record.skipped_pruned,
        "best_polynomial": None,
    }
    warnings = []
    if record.best_polynomial is not None:
        result["best_polynomial"] = record.best_polynomial.to_wire()
        result["best_polynomial_text"] = str(record.best_polynomial)
        m = record.best_measure
        result["best_measure"] = {
            "value": m.value,
            "error_radius": m.error_radius,
            "method": m.method.value,
        }
    if not complete:
        warnings.append("search interrupted before completion; resume from the checkpoint")
    if base.target is not None and (
        record.best_measure is None or record.best_measure.value >= base.target
    ):
        warnings.append("target not reached: pruned polynomials may hold the family minimum")
    print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return envelope("search", inputs, result, warnings)


# ---------------------------------------------------------------------------
# Parser


def _add_constants(p: argparse.ArgumentParser) -> None:
    d = bounds.DEFAULT_CONSTANTS
    p.add_argument("--c1", type=float, default=d.c1)
    p.add_argument("--c2", type=float, default=d.c2)
    p.add_argument("--c3", type=float, default=d.c3)
    p.add_argument("--c-agg", dest="c_agg", type=float, default=d.c_agg)
    p.add_argument("--cn", type=float, default=d.c_n)
    p.add_argument("--dim-n", dest="dim_n", type=int, default=d.dim_n)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lehmer", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="Mahler measure of a polynomial")
    p.add_argument("poly")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--method", choices=["roots", "jensen", "both"], default="roots")
    p.add_argument("--samples", type=int, default=1 << 14)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("classify", help="cyclotomic / Salem / Pisot / other")
    p.add_argument("poly")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("geodesic", help="translation length from trace or u polynomial")
    p.add_argument("--trace-poly")
    p.add_argument("--u-poly")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("bound", help="evaluate one inequality of the bound chain")
    p.add_argument(
        "kind",
        choices=["dobrowolski", "field-degree", "degree-volume", "systole-volume", "theorem1b"],
    )
    p.add_argument("--d", type=int)
    p.add_argument("--vol", type=float)
    p.add_argument("--systole", type=float)
    _add_constants(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="exhaustive minimum-measure search")
    p.add_argument("--degree", type=int)
    p.add_argument("--coeff-bound", type=int, default=1)
    p.add_argument("--reciprocal-only", action="store_true")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--target", type=float, default=None)
    p.add_argument("--shards", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint")
    p.add_argument("--checkpoint-every", type=int, default=2000)
    p.add_argument("--resume")
    p.add_argument("--stop-after", type=int, default=None, help="process at most N polynomials per shard")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compare-growth", help="arithmetic vs non-arithmetic systole growth table")
    p.add_argument("--vol-min", type=float, required=True)
    p.add_argument("--vol-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--out")
    _add_constants(p)
    p.set_defaults(func=cmd_compare_growth)
    return parser


def _protect_wire_args(argv: list[str]) -> list[str]:
    # argparse would read "-1,-1,0,1" as an option flag; a leading space hides
    # the dash and parse() ignores whitespace
    return [" " + a if _WIRE_WITH_COMMA.match(a) else a for a in argv]


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_protect_wire_args(argv))
    if getattr(args, "shards", None) is not None and args.shards < 1:
        parser.error("--shards must be >= 1")
    try:
        out = args.func(args)
    except (LehmerError, ValueError, OSError) as exc:
        print(f"lehmer {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"lehmer {args.command}: internal failure: {exc!r}", file=sys.stderr)
        return 1
    sys.stdout.write(out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
