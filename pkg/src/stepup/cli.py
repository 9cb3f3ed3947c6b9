"""Command line entry point: ``stepup {constants,apply,tables,figures,simulate}``.

Exit codes: 0 success, 1 data or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import reports
from .constants import d1, d2, fdp_stepup_values, kfwer_stepup_values
from .metrics import FDR, KFWER, FDPTail, describe
from .procedures import (
    PValueVector,
    by_derived_fdp_values,
    by_fdr_values,
    fdr_median_comparators,
    hochberg_values,
    holm_values,
    stepdown,
    stepup,
)
from .sequences import TEMPLATES, CriticalSequence, harmonic, make_template, parse_gamma
from .simulation import (
    ByCounterexample,
    FdpAdversary,
    IndependentUniform,
    KfwerAdversary,
    Procedure,
    estimate_error_rate,
)
from .simulation.estimate import DEFAULT_REPS, DEFAULT_SEED

PROCEDURES = ("kfwer-stepup", "fdp-stepup", "holm", "hochberg", "by-fdr", "by-fdp", "fdr-median-comparator")
MODELS = ("independent", "kfwer-adversary", "fdp-adversary", "by-counterexample")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------- argument types


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _gamma(text: str) -> Fraction:
    try:
        return parse_gamma(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _level(text: str) -> float:
    try:
        v = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit non-negative integer")
    return v


# ---------------------------------------------------------------- I/O helpers


def read_pvalues(path: Path) -> PValueVector:
    """CSV with optional header; columns id,p or a single column of p-values."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}")
    rows = [(n, r) for n, r in enumerate(csv.reader(io.StringIO(text)), start=1) if r and any(c.strip() for c in r)]
    if not rows:
        raise DataError(f"{path}: no hypotheses found")
    id_col, p_col = None, 0
    first = [c.strip().lower() for c in rows[0][1]]
    # only the p-value cell decides: ids may be arbitrary strings
    try:
        float(first[1] if len(first) >= 2 else first[0])
        header = False
    except ValueError:
        header = True
    if header:
        if "p" not in first:
            raise DataError(f"{path}:1: header must contain a 'p' column")
        p_col = first.index("p")
        id_col = first.index("id") if "id" in first else None
        rows = rows[1:]
    elif len(rows[0][1]) >= 2:
        id_col, p_col = 0, 1
    if not rows:
        raise DataError(f"{path}: no hypotheses found")
    ids, ps = [], []
    for n, row in rows:
        try:
            p = float(row[p_col])
        except (IndexError, ValueError):
            raise DataError(f"{path}:{n}: malformed row {','.join(row)!r}")
        if not 0.0 <= p <= 1.0:
            raise DataError(f"{path}:{n}: p-value {p} outside [0, 1]")
        ps.append(p)
        ids.append(row[id_col].strip() if id_col is not None else str(len(ids) + 1))
    if len(set(ids)) != len(ids):
        raise DataError(f"{path}: duplicate hypothesis ids")
    return PValueVector(tuple(ids), np.array(ps))


def read_critical_values(path: Path) -> CriticalSequence:
    """JSON with a critical_values list, or CSV with a critical_value column / single column."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}")
    try:
        if text.lstrip().startswith("{"):
            vals = json.loads(text)["critical_values"]
        else:
            lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
            rows = list(csv.reader(lines))
            head = [c.strip() for c in rows[0]]
            if "critical_value" in head:
                col = head.index("critical_value")
                vals = [float(r[col]) for r in rows[1:]]
            else:
                vals = [float(r[0]) for r in rows]
        return CriticalSequence(np.array(vals, dtype=float))
    except (KeyError, IndexError, ValueError) as exc:
        raise DataError(f"{path}: cannot read critical values ({exc})")


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def write_csv(rows: list[list], header: list[str], comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------- procedures


def _template(args, s: int) -> CriticalSequence:
    return make_template(args.template, s, k=args.k, gamma=args.gamma or 0)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing --{', --'.join(m.replace('_', '-') for m in missing)}")


def critical_values_for(args, s: int) -> tuple[CriticalSequence, str]:
    """Critical values and default engine for --procedure."""
    proc = args.procedure
    if proc == "kfwer-stepup":
        _require(args, "alpha")
        args.template = args.template or "kfwer13"
        return kfwer_stepup_values(args.k, s, args.alpha, _template(args, s)), "stepup"
    if proc == "fdp-stepup":
        _require(args, "alpha", "gamma")
        args.template = args.template or "fdp26"
        return fdp_stepup_values(args.gamma, s, args.alpha, _template(args, s)), "stepup"
    if proc == "holm":
        _require(args, "alpha")
        return holm_values(s, args.alpha), "stepdown"
    if proc == "hochberg":
        _require(args, "alpha")
        return hochberg_values(s, args.alpha), "stepup"
    if proc == "by-fdr":
        q = args.q if args.q is not None else args.alpha
        if q is None:
            raise UsageError("by-fdr needs --q")
        return by_fdr_values(s, q), "stepup"
    if proc == "by-fdp":
        _require(args, "alpha", "gamma")
        return by_derived_fdp_values(s, args.gamma, args.alpha), "stepup"
    if proc == "fdr-median-comparator":
        _require(args, "gamma")
        return fdr_median_comparators(s, args.gamma), "stepup"
    raise UsageError(f"unknown procedure {proc!r}")


# ---------------------------------------------------------------- commands


def cmd_constants(args) -> str:
    s = args.s
    if args.metric == "kfwer":
        _require(args, "alpha")
        if args.k > s:
            raise UsageError("--k must not exceed --s")
        args.template = args.template or "kfwer13"
        seq = _template(args, s)
        report = d1(args.k, s, seq)
        crit = kfwer_stepup_values(args.k, s, args.alpha, seq)
        head = {"metric": "kfwer", "k": args.k}
    elif args.metric == "fdp":
        _require(args, "alpha", "gamma")
        args.template = args.template or "fdp26"
        seq = _template(args, s)
        report = d2(args.gamma, s, seq)
        crit = fdp_stepup_values(args.gamma, s, args.alpha, seq)
        head = {"metric": "fdp", "gamma": str(args.gamma)}
    else:
        q = args.q if args.q is not None else args.alpha
        if q is None:
            raise UsageError("constants --metric fdr needs --q")
        seq = make_template("linear19", s)
        crit = by_fdr_values(s, q)
        report = None
        head = {"metric": "fdr", "q": q}

    scan = {} if report is None else dict(report.per_card_i)
    D = harmonic(s) if report is None else report.D
    argmax = None if report is None else report.argmax_card_i
    template = "linear19" if report is None else args.template
    if args.format == "json":
        return dump_json(
            {
                **head,
                "s": s,
                "template": template,
                "alpha": args.alpha if report is not None else None,
                "D": D,
                "argmax_card_i": argmax,
                "template_values": seq.values.tolist(),
                "critical_values": crit.values.tolist(),
                "scan": [{"card_i": c, "S": v} for c, v in scan.items()],
            }
        )
    comments = [" ".join(f"{k}={v}" for k, v in head.items()) + f" s={s} template={template}"]
    comments += [f"D={fmt(D)}", f"argmax_card_i={argmax if argmax is not None else ''}"]
    rows = [
        [i, fmt(seq.values[i - 1]), fmt(crit.values[i - 1]), fmt(scan[i]) if i in scan else ""]
        for i in range(1, s + 1)
    ]
    return write_csv(rows, ["i", "template_value", "critical_value", "S"], comments)


def cmd_apply(args) -> str:
    pv = read_pvalues(args.input)
    s = len(pv)
    if args.critical_values is not None:
        crit = read_critical_values(args.critical_values)
        engine = "stepup"
        name = f"explicit:{args.critical_values.name}"
    else:
        if args.procedure is None:
            raise UsageError("apply needs --procedure or --critical-values")
        crit, engine = critical_values_for(args, s)
        name = args.procedure
    if len(crit) != s:
        raise DataError(f"{s} p-values but {len(crit)} critical values")
    engine = args.engine or engine
    outcome = (stepup if engine == "stepup" else stepdown)(pv, crit)
    ranked = [d.id for d in outcome.sorted_pairs if d.rejected]
    if args.format == "json":
        return dump_json(
            {
                "s": s,
                "procedure": name,
                "engine": engine,
                "critical_values": crit.values.tolist(),
                "num_rejected": outcome.num_rejected,
                "rejected_ids": [str(i) for i in ranked],
            }
        )
    rows = [[d.id, fmt(d.p), d.rank, fmt(crit.values[d.rank - 1]), int(d.rejected)] for d in outcome.sorted_pairs]
    comments = [f"procedure={name} engine={engine} s={s} num_rejected={outcome.num_rejected}"]
    return write_csv(rows, ["id", "p", "rank", "critical_value", "rejected"], comments)


def _table_rows(which: int):
    data = reports.TABLES[which]()
    comments = []
    if which == 1:
        header = ["s", "k", "template", "D1", "D1_2dp", "argmax_card_i"]
        rows = [[r["s"], r["k"], r["template"], fmt(r["D1"]), f"{r['D1']:.2f}", r["argmax_card_i"]] for r in data]
    elif which == 2:
        header = ["s", "gamma", "template", "D2", "D2_2dp", "argmax_card_i"]
        rows = [[r["s"], str(r["gamma"]), r["template"], fmt(r["D2"]), f"{r['D2']:.2f}", r["argmax_card_i"]] for r in data]
        comments = [reports.D3_FOOTNOTE]
    else:
        header = ["s", "gamma", "min_26", "min_26_2dp", "max_26", "max_26_2dp", "ratio_19", "ratio_19_2dp"]
        rows = [
            [r["s"], str(r["gamma"]), fmt(r["min_26"]), f"{r['min_26']:.2f}", fmt(r["max_26"]),
             f"{r['max_26']:.2f}", fmt(r["ratio_19"]), f"{r['ratio_19']:.2f}"]
            for r in data
        ]
    return header, rows, comments


def cmd_tables(args) -> str:
    header, rows, comments = _table_rows(args.which)
    if args.format == "json":
        return dump_json({"table": args.which, "columns": header, "rows": rows, "notes": comments})
    return write_csv(rows, header, comments)


def cmd_figures(args) -> str:
    series = reports.FIGURES[args.which]()
    header = ["i", "a", "b", "ratio"]
    rows = [[r["i"], fmt(r["a"]), fmt(r["b"]), fmt(r["ratio"])] for r in series]
    if args.format == "json":
        return dump_json({"figure": args.which, "columns": header, "rows": rows})
    return write_csv(rows, header)


def _build_model(args):
    s = args.s
    if args.model == "kfwer-adversary":
        _require(args, "alpha")
        if args.k > s:
            raise UsageError("--k must not exceed --s")
        args.template = args.template or "kfwer13"
        return KfwerAdversary(args.k, s, args.alpha, _template(args, s), args.inflation)
    if args.model == "fdp-adversary":
        _require(args, "alpha", "gamma")
        args.template = args.template or "fdp26"
        return FdpAdversary(args.gamma, s, args.alpha, _template(args, s), args.inflation)
    if args.model == "by-counterexample":
        if s % 2:
            raise UsageError("by-counterexample needs an even --s")
        return ByCounterexample(s, args.alpha if args.alpha is not None else 0.05)
    false_p = args.false_p
    if false_p not in ("zero", "uniform"):
        try:
            false_p = float(false_p)
        except ValueError:
            raise UsageError("--false-p must be zero, uniform or a number")
    return IndependentUniform(s, args.num_true, false_p)


def cmd_simulate(args) -> str:
    if args.reps < 1:
        raise UsageError("--reps must be >= 1")
    model = _build_model(args)
    if args.procedure is None:
        if isinstance(model, (KfwerAdversary, FdpAdversary)):
            procedure = Procedure(model.critical_values, args.engine or "stepup", f"{args.model}-target")
        elif isinstance(model, ByCounterexample):
            args.procedure = "by-fdr"
            args.q = args.q if args.q is not None else model.alpha
            crit, engine = critical_values_for(args, args.s)
            procedure = Procedure(crit.values, args.engine or engine, "by-fdr")
        else:
            raise UsageError("simulate --model independent needs --procedure")
    else:
        crit, engine = critical_values_for(args, args.s)
        procedure = Procedure(crit.values, args.engine or engine, args.procedure)

    metric_name = args.metric or {"fdp-adversary": "fdp"}.get(args.model, "kfwer")
    if metric_name == "kfwer":
        metric = KFWER(args.k)
    elif metric_name == "fdp":
        _require(args, "gamma")
        metric = FDPTail(args.gamma, args.alpha)
    else:
        metric = FDR(args.q)
    est = estimate_error_rate(model, procedure, metric, args.reps, args.seed, args.workers)
    out = {
        "model": args.model,
        "procedure": procedure.name,
        "engine": procedure.engine,
        **describe(metric),
        "s": args.s,
        "estimate": est.estimate,
        "std_error": est.std_error,
        "replications": est.replications,
        "seed": est.seed,
    }
    if args.format == "json":
        return dump_json(out)
    return write_csv([[fmt(v) if isinstance(v, float) else v for v in out.values()]], list(out.keys()))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stepup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_s=True):
        if need_s:
            p.add_argument("--s", type=_positive_int, required=True, help="number of hypotheses")
        p.add_argument("--k", type=_positive_int, default=1)
        p.add_argument("--gamma", type=_gamma, default=None, help="exact, e.g. 1/10 or 0.1")
        p.add_argument("--alpha", type=_level, default=None)
        p.add_argument("--q", type=_level, default=None)
        p.add_argument("--template", choices=TEMPLATES, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("constants", help="normalizing constant and critical values")
    p.add_argument("--metric", choices=("kfwer", "fdp", "fdr"), required=True)
    common(p)

    p = sub.add_parser("apply", help="apply a procedure to a p-value file")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--procedure", choices=PROCEDURES, default=None)
    p.add_argument("--critical-values", type=Path, default=None, help="explicit critical values (JSON or CSV)")
    p.add_argument("--engine", choices=("stepup", "stepdown"), default=None)
    common(p, need_s=False)

    p = sub.add_parser("tables", help="reproduce a normalizing-constant table")
    p.add_argument("which", type=int, choices=sorted(reports.TABLES))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("figures", help="data series comparing constant sequences")
    p.add_argument("which", type=int, choices=sorted(reports.FIGURES))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("simulate", help="Monte-Carlo error-rate estimate")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--procedure", choices=PROCEDURES, default=None)
    p.add_argument("--engine", choices=("stepup", "stepdown"), default=None)
    p.add_argument("--metric", choices=("kfwer", "fdp", "fdr"), default=None)
    p.add_argument("--reps", type=int, default=DEFAULT_REPS)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--inflation", type=float, default=1.0, help="scale the adversary's target critical values")
    p.add_argument("--num-true", type=int, default=None, help="independent model: number of true nulls")
    p.add_argument("--false-p", default="zero", help="independent model: zero, uniform or a fixed value")
    common(p)
    return parser


COMMANDS = {
    "constants": cmd_constants,
    "apply": cmd_apply,
    "tables": cmd_tables,
    "figures": cmd_figures,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stepup {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"stepup {args.command}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"stepup {args.command}: error: {exc}", file=sys.stderr)
        return 2
    try:
        emit(text, getattr(args, "out", None))
    except OSError as exc:
        print(f"stepup {args.command}: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
