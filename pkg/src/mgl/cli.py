"""``mgl`` command line.

Exit codes: 0 success, 1 input error, 2 hypothesis or classification
precondition failure (including a NotMarginal verdict), 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import chacon as ch
from .classifier import DEFAULT_DEPTH, DEFAULT_EPS, NOT_MARGINAL, PreconditionError, classify, verify_rho_one
from .cocycle import CocycleSpec, HypothesisError
from .ergodic import theorem3_limit
from .growth import BudgetExceeded, EnumerationConfig, enumerate_growth, fekete_bracket, hull_dp_growth, hull_dp_matrices
from .matrix import Mat2, MatrixSet, ScalarKindError
from .scalars import format_scalar, is_exact

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunRecord:
    command: str
    input_digest: Optional[str]
    parameters: dict
    results: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "parameters": self.parameters,
            "results": self.results,
            "wall_time_s": self.wall_time_s,
        }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_json(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(raw), hashlib.sha256(raw).hexdigest()
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _load_matrices(path: str):
    obj, digest = _read_json(path)
    try:
        return MatrixSet.from_json(obj), digest
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{path}: {e}") from None


def _load_cocycle(path: str):
    obj, digest = _read_json(path)
    try:
        return CocycleSpec.from_json(obj), digest
    except HypothesisError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{path}: {e}") from None


def _exactify(mats: MatrixSet) -> MatrixSet:
    # float entries become the rationals they represent in binary
    return MatrixSet([Mat2(*(v if is_exact(v) else Fraction(v) for v in m.entries)) for m in mats])


def _num(x):
    return x if isinstance(x, float) else float(x)


# commands --------------------------------------------------------------------


def cmd_classify(args, record: RunRecord) -> int:
    mats, record.input_digest = _load_matrices(args.input)
    if not mats.is_exact:
        if args.exact:
            raise InputError("--exact given but the input has float entries")
        mats = _exactify(mats)
    try:
        result = classify(mats, depth=args.depth, eps=args.tolerance)
    except ScalarKindError as e:
        raise InputError(str(e)) from None
    out = result.to_json()
    sys.stdout.write(_dump(out))
    record.results = out
    return EXIT_HYPOTHESIS if result.tag == NOT_MARGINAL else EXIT_OK


def cmd_jsr_bounds(args, record: RunRecord) -> int:
    mats, record.input_digest = _load_matrices(args.input)
    report = verify_rho_one(mats, depth=args.depth, eps=args.tolerance)
    out = report.to_json()
    sys.stdout.write(_dump(out))
    record.results = out
    return EXIT_OK


def cmd_growth(args, record: RunRecord) -> int:
    obj, record.input_digest = _read_json(args.input)
    is_cocycle = isinstance(obj, dict) and "alphabet" in obj
    try:
        if is_cocycle:
            if args.method != "hull-dp":
                raise InputError("cocycle input needs --method hull-dp")
            curve = hull_dp_growth(CocycleSpec.from_json(obj), args.max_len)
        else:
            mats = MatrixSet.from_json(obj)
            if args.method == "hull-dp":
                curve = hull_dp_matrices(mats, args.max_len)
            else:
                cfg = EnumerationConfig(args.max_len, prune_domination=args.prune, norm=args.norm, budget=args.budget)
                curve = enumerate_growth(mats, cfg)
    except HypothesisError:
        raise
    except (ValueError, TypeError, ScalarKindError) as e:
        raise InputError(str(e)) from None
    triangular = is_cocycle or all(m.e21 == 0 for m in mats)
    if not triangular:
        # the corner is not subadditive here; summarize the norm sequence instead
        curve.c_vals = list(curve.a_vals)
    br = fekete_bracket(curve)
    if args.out:
        curve.write_csv(args.out)
    sys.stdout.write(f"fekete_upper={_num(br.upper)!r}, latest={_num(br.latest)!r}\n")
    record.results = {
        "fekete_upper": _num(br.upper),
        "latest": _num(br.latest),
        "argmin": br.argmin,
        "watermark": curve.watermark,
        "curve": args.out,
    }
    return EXIT_OK


def cmd_ergopt(args, record: RunRecord) -> int:
    spec, record.input_digest = _load_cocycle(args.input)
    out = theorem3_limit(spec).to_json()
    text = _dump(out)
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    record.results = out
    return EXIT_OK


def _log3(n: int) -> int:
    k = 0
    while n > 1:
        n //= 3
        k += 1
    return k


def _is_power_of_3(n: int) -> bool:
    return n == 3 ** _log3(n)


def chacon_summary(model, disc: ch.DiscrepancyCurve, growth, max_n: int, seed: int, samples) -> dict:
    d = dict(zip(disc.thresholds, disc.values))
    triadic = [n for n in disc.thresholds if _is_power_of_3(n)]
    s_first, s_last = growth.a_vals[0], growth.a_vals[-1]
    n_last = growth.lengths[-1]
    # s_n >= 1 on Z and s_n^(1/n) -> 1 at the largest length
    rho_one = s_last >= 1.0 and s_last ** (1.0 / n_last) <= 1.01
    sub_n = 3**10 if 3**10 in d else triadic[-1]
    sublinear = float(d[sub_n]) / sub_n <= 0.01
    tri_vals = [d[n] for n in triadic]
    nondecreasing = all(a <= b for a, b in zip(tri_vals, tri_vals[1:]))
    lo = 3**6 if 3**6 in d else triadic[0]
    unbounded = nondecreasing and d[triadic[-1]] > d[lo]
    return {
        "depth": model.depth,
        "prefix_length": len(model.word),
        "max_n": max_n,
        "seed": seed,
        "samples": samples,
        "discrepancy": {str(n): format_scalar(v) for n, v in zip(disc.thresholds, disc.values)},
        "s_over_n": {"first": s_first / growth.lengths[0], "last": s_last / n_last},
        "sublinear_checkpoint": sub_n,
        "unbounded_levels": [_log3(lo), _log3(triadic[-1])],
        "rho_one_observed": bool(rho_one),
        "sublinear_observed": bool(sublinear),
        "unbounded_trend_observed": bool(unbounded),
    }


def cmd_chacon(args, record: RunRecord) -> int:
    if args.depth < 0 or args.depth > ch.MAX_LEVEL:
        raise BudgetExceeded(f"depth must be in 0..{ch.MAX_LEVEL}")
    model = ch.ChaconModel(args.depth)
    max_n = args.max_n if args.max_n is not None else 3 ** args.depth
    if max_n < 1 or max_n > len(model.word):
        raise InputError(f"--max-n must be in 1..{len(model.word)} at depth {args.depth}")
    disc = ch.birkhoff_discrepancy(model, max_n)
    growth = ch.cocycle_sup_growth(model, max_n, samples=args.samples, off_z=args.off_z, seed=args.seed)
    prefix = args.out_prefix
    Path(prefix).parent.mkdir(parents=True, exist_ok=True)
    paths = {k: f"{prefix}_{k}" for k in ("discrepancy.csv", "growth.csv", "summary.json")}
    with open(paths["discrepancy.csv"], "w", newline="") as fh:
        disc.write_csv(fh)
    with open(paths["growth.csv"], "w", newline="") as fh:
        fh.write("n,s_n,s_n_over_n\n")
        for n, s in zip(growth.lengths, growth.a_vals):
            fh.write(f"{n},{s!r},{s / n!r}\n")
    summary = chacon_summary(model, disc, growth, max_n, args.seed, args.samples)
    Path(paths["summary.json"]).write_text(_dump(summary))
    sys.stdout.write(_dump(summary))
    record.results = {"files": list(paths.values()), **{k: summary[k] for k in summary if k.endswith("_observed")}}
    return EXIT_OK


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mgl", description="Growth of 2x2 matrix products and triangular cocycles.")
    p.add_argument("--record", metavar="PATH", help="write a RunRecord JSON for this invocation")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="Bounded / Linear / NotMarginal verdict for a matrix set")
    c.add_argument("input")
    c.add_argument("--exact", action="store_true", help="reject float entries")
    c.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="word length for numeric rho brackets")
    c.add_argument("--tolerance", type=float, default=DEFAULT_EPS)
    c.set_defaults(func=cmd_classify)

    j = sub.add_parser("jsr-bounds", help="joint spectral radius check against 1")
    j.add_argument("input")
    j.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    j.add_argument("--tolerance", type=float, default=DEFAULT_EPS)
    j.set_defaults(func=cmd_jsr_bounds)

    g = sub.add_parser("growth", help="growth curve of product norms / corners")
    g.add_argument("input", help="matrix-set JSON, or cocycle JSON with --method hull-dp")
    g.add_argument("--max-len", type=int, required=True)
    g.add_argument("--method", choices=["enumerate", "hull-dp"], default="enumerate")
    g.add_argument("--norm", choices=["op2", "sum"], default="op2")
    g.add_argument("--prune", action="store_true", help="domination pruning (nonnegative triangular sets)")
    g.add_argument("--budget", type=int, default=EnumerationConfig(1).budget, help="max multiplications")
    g.add_argument("--out", help="CSV path")
    g.set_defaults(func=cmd_growth)

    e = sub.add_parser("ergopt", help="exact linear growth rate of a locally constant cocycle")
    e.add_argument("input")
    e.add_argument("--out")
    e.set_defaults(func=cmd_ergopt)

    k = sub.add_parser("chacon", help="Chacon-subshift discrepancy and growth experiment")
    k.add_argument("--depth", type=int, default=8)
    k.add_argument("--max-n", type=int)
    k.add_argument("--samples", type=int, help="random Z-window starts (default: all)")
    k.add_argument("--off-z", type=int, default=8, help="corrupted off-Z samples")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--out-prefix", default="chacon")
    k.set_defaults(func=cmd_chacon)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "record", "command")}
    record = RunRecord(args.command, None, params)
    start = time.perf_counter()
    try:
        code = args.func(args, record)
    except InputError as e:
        print(f"mgl: input error: {e}", file=sys.stderr)
        code = EXIT_INPUT
    except (HypothesisError, PreconditionError) as e:
        print(f"mgl: hypothesis failed: {e}", file=sys.stderr)
        code = EXIT_HYPOTHESIS
    except BudgetExceeded as e:
        print(f"mgl: budget exceeded: {e}", file=sys.stderr)
        code = EXIT_BUDGET
    record.wall_time_s = time.perf_counter() - start
    if args.record:
        Path(args.record).write_text(_dump(record.to_json()))
    return code


if __name__ == "__main__":
    sys.exit(main())
