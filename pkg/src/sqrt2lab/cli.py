"""Command-line surface: tables and figure data for every analysis.

Every command emits a deterministic table (text, CSV or JSON) on stdout or
to --output; CSV uses a header row, LF endings and '.' decimal points, so
identical invocations produce identical bytes.  Commands whose data is
naturally a curve also accept --plot PATH to render a matplotlib figure
alongside the table.  Long runs report progress on stderr only when
--verbose is given; the data stream never carries diagnostics.

Exit status: 0 on success, 1 on domain errors (the error class name is
reported), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import core, cycles, duffing, predecessors, qsqrt2
from .core import SQRT2, MapConfig
from .errors import Sqrt2LabError, ZeroTermError

PROG = "sqrt2lab"


# --------------------------------------------------------------------------
# table export
# --------------------------------------------------------------------------

def export_table(
    rows: Sequence[dict],
    schema: Sequence[str],
    fmt: str = "csv",
    text_line: Callable[[dict], str] | None = None,
) -> bytes:
    """Serialize rows (dicts following ``schema`` order) to stable bytes."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(schema)
        for row in rows:
            writer.writerow([_cell(row[col]) for col in schema])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        payload = [{col: _json_cell(row[col]) for col in schema} for row in rows]
        return (json.dumps(payload, indent=2, ensure_ascii=True) + "\n").encode("utf-8")
    if fmt == "text":
        if text_line is not None:
            lines = [text_line(row) for row in rows]
            return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
        cells = [[_cell(row[col]) for col in schema] for row in rows]
        widths = [
            max(len(schema[i]), *(len(r[i]) for r in cells)) if cells else len(schema[i])
            for i in range(len(schema))
        ]
        lines = ["  ".join(schema[i].ljust(widths[i]) for i in range(len(schema)))]
        for r in cells:
            lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(schema))))
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_cell(v):
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


# --------------------------------------------------------------------------
# shared helpers
# --------------------------------------------------------------------------

def _parse_alpha(text: str):
    t = text.strip().lower()
    if t in ("sqrt2", "sqrt(2)", "root2"):
        return SQRT2
    try:
        if "/" in t:
            num, den = t.split("/", 1)
            return (int(num), int(den))  # zero denominators surface as domain errors
        if "." in t or "e" in t:
            return float(t)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse parameter value {text!r}")


def _exact_decimal_fraction(evens: int, level: int) -> tuple[str, str]:
    """p0/p1 of a 10^level window as exact fixed-point strings."""
    window = 10**level
    return (
        "0." + str(evens).zfill(level) if evens < window else "1." + "0" * level,
        "0." + str(window - evens).zfill(level) if evens > 0 else "1." + "0" * level,
    )


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    output_format: str
    output_path: str | None
    plot_path: str | None
    verbose: bool


def _emit(cfg: RunConfig, rows, schema, text_line=None) -> None:
    data = export_table(rows, schema, cfg.output_format, text_line=text_line)
    if cfg.output_path:
        with open(cfg.output_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _note(cfg: RunConfig, message: str) -> None:
    if cfg.verbose:
        print(message, file=sys.stderr, flush=True)


# --------------------------------------------------------------------------
# command implementations
# --------------------------------------------------------------------------

def _cmd_orbit(cfg: RunConfig) -> int:
    a = cfg.args
    if a.parity_table is not None:
        rows = []
        for level in range(1, a.parity_table + 1):
            window = 10**level
            stats = core.orbit_stats(a.n, window)
            p0, p1 = _exact_decimal_fraction(stats.even_count, level)
            rows.append(
                {
                    "level": level,
                    "window": window,
                    "even_count": stats.even_count,
                    "odd_count": stats.odd_count,
                    "p0": p0,
                    "p1": p1,
                }
            )
            _note(cfg, f"window 10^{level} done")
        _emit(cfg, rows, ["level", "window", "even_count", "odd_count", "p0", "p1"])
        return 0
    rows = []
    evens = 0
    for state in core.orbit(a.n, a.steps):
        odd = state.value & 1
        evens += 0 if odd else 1
        rows.append(
            {
                "step": state.step,
                "value": state.value,
                "parity": "odd" if odd else "even",
                "even_count": evens,
                "odd_count": state.step + 1 - evens,
            }
        )
    _emit(cfg, rows, ["step", "value", "parity", "even_count", "odd_count"])
    if cfg.plot_path:
        from . import plots

        plots.orbit_figure(rows, cfg.plot_path)
    return 0


def _cmd_growth(cfg: RunConfig) -> int:
    a = cfg.args
    series = core.growth_series(a.n, a.r_max, r_min=a.r_min, stride=a.stride)
    rows = [{"r": r, "growth": g} for r, g in series]
    _emit(cfg, rows, ["r", "growth"])
    if cfg.plot_path:
        from . import plots

        plots.growth_figure(rows, cfg.plot_path)
    return 0


def _census_cycles(cfg: RunConfig) -> int:
    a = cfg.args
    chunk = 1000
    cycling = 0
    divergent: list[int] = []
    for start in range(a.lo, a.hi, chunk):
        end = min(start + chunk, a.hi)
        part = cycles.classify_range(start, end, iteration_cap=a.cap, jobs=a.jobs)
        cycling += len(part.cycling)
        divergent.extend(part.divergent)
        _note(cfg, f"classified [{start}, {end}): cycling so far {cycling}")
    if a.list_divergent:
        label = f"divergent (heuristic, cap={a.cap})"
        rows = [{"n": n, "verdict": label} for n in divergent]
        _emit(cfg, rows, ["n", "verdict"])
    else:
        rows = [
            {
                "lo": a.lo,
                "hi": a.hi,
                "iteration_cap": a.cap,
                "cycling": cycling,
                "divergent": len(divergent),
            }
        ]
        _emit(cfg, rows, ["lo", "hi", "iteration_cap", "cycling", "divergent"])
    return 0


def _cmd_census(cfg: RunConfig) -> int:
    a = cfg.args
    if a.kind == "cycles":
        return _census_cycles(cfg)
    if a.kind == "no-pred":
        count = predecessors.no_predecessor_census(a.hi)
        _emit(cfg, [{"hi": a.hi, "no_predecessor_count": count}], ["hi", "no_predecessor_count"])
        return 0
    # counting function
    rows = [
        {"n": n, "cycling_so_far": c}
        for n, c in cycles.counting_function(a.hi, iteration_cap=a.cap, jobs=a.jobs)
    ]
    _emit(cfg, rows, ["n", "cycling_so_far"])
    if cfg.plot_path:
        from . import plots

        plots.counting_figure(rows, cfg.plot_path)
    return 0


def _cycle_row(report, cap: int) -> dict:
    if isinstance(report, cycles.CycleReport):
        return {
            "n": report.start_n,
            "verdict": "cycling",
            "pre_period": report.pre_period_m,
            "period": report.period_r,
            "cycle_min": report.cycle_members[0],
            "cycle": ";".join(str(v) for v in report.cycle_members),
        }
    return {
        "n": report.start_n,
        "verdict": report.label(),
        "pre_period": "",
        "period": "",
        "cycle_min": "",
        "cycle": "",
    }


def _cmd_cycles(cfg: RunConfig) -> int:
    a = cfg.args
    schema = ["n", "verdict", "pre_period", "period", "cycle_min", "cycle"]
    if a.n is not None:
        rows = [_cycle_row(cycles.detect_cycle(a.n, iteration_cap=a.cap), a.cap)]
        _emit(cfg, rows, schema)
        return 0
    if a.lo is None or a.hi is None:
        raise Sqrt2LabError("cycles needs either --n or both --lo and --hi")
    classified = cycles.classify_range(a.lo, a.hi, iteration_cap=a.cap, jobs=a.jobs)
    by_n: dict[int, object] = {r.start_n: r for r in classified.cycling}
    for n in classified.divergent:
        by_n[n] = cycles.Divergent(n, a.cap, "iteration_cap", a.cap, classified.value_cap_bits)
    rows = [_cycle_row(by_n[n], a.cap) for n in sorted(by_n)]
    _emit(cfg, rows, schema)
    if cfg.plot_path:
        from . import plots

        plots.cycles_figure(rows, cfg.plot_path)
    return 0


def _cmd_preds(cfg: RunConfig) -> int:
    a = cfg.args
    targets = [a.m] if a.m is not None else range(a.lo, a.hi)
    rows = []
    for m in targets:
        c = predecessors.classify_predecessor(m)
        rows.append(
            {
                "m": m,
                "kind": c.kind.value,
                "predecessors": ";".join(str(w) for w in c.witnesses),
                "beatty_k": c.beatty_k,
            }
        )
    _emit(cfg, rows, ["m", "kind", "predecessors", "beatty_k"])
    return 0


def _render_tree_text(tree) -> list[str]:
    lines = [f"{tree.root}   <--- start"]

    def walk(node: int, depth: int) -> None:
        for child in tree.edges.get(node, ()):  # children are the predecessors
            marker = " ---" if not tree.edges.get(child) else ""
            lines.append("    " * (depth + 1) + f"{child}{marker}")
            if child != node:
                walk(child, depth + 1)

    walk(tree.root, 0)
    lines.append(
        "complete: tree closed at no-predecessor leaves"
        if tree.complete
        else "incomplete: node cap reached"
    )
    if tree.degenerate:
        lines.append("degenerate: root is its own predecessor")
    return lines


def _cmd_tree(cfg: RunConfig) -> int:
    a = cfg.args
    tree = predecessors.predecessor_tree(a.root, node_cap=a.node_cap)
    if cfg.output_format == "text":
        data = ("\n".join(_render_tree_text(tree)) + "\n").encode("utf-8")
        if cfg.output_path:
            with open(cfg.output_path, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
        return 0
    rows = [
        {
            "node": node,
            "predecessors": ";".join(str(p) for p in tree.edges[node]),
            "is_leaf": not tree.edges[node],
        }
        for node in tree.nodes
    ]
    _emit(cfg, rows, ["node", "predecessors", "is_leaf"])
    return 0


def _cmd_gaps(cfg: RunConfig) -> int:
    a = cfg.args
    if a.convergents:
        rows = [
            {"index": i, "numerator": p, "denominator": q}
            for i, (p, q) in enumerate(predecessors.sqrt2_convergents(a.convergents))
        ]
        _emit(cfg, rows, ["index", "numerator", "denominator"])
        return 0
    levels = predecessors.gap_words(a.hi, a.levels)
    rows = [
        {
            "level": lv.level,
            "short_gap": lv.short_gap,
            "long_gap": lv.long_gap,
            "letters": len(lv.word_sequence),
            "sequence_prefix": lv.word_sequence[: a.prefix],
        }
        for lv in levels
    ]
    _emit(cfg, rows, ["level", "short_gap", "long_gap", "letters", "sequence_prefix"])
    return 0


def _probability_rows(r_values) -> list[dict]:
    rows = []
    for r in r_values:
        p = qsqrt2.markov_pr(r)
        rows.append({"r": r, "exact": p.exact_str(), "decimal": p.decimal_str(15)})
    return rows


def _cmd_markov(cfg: RunConfig) -> int:
    a = cfg.args
    if a.stationary:
        p = qsqrt2.stationary_odd()
        rows = [{"r": "stationary", "exact": p.exact_str(), "decimal": p.decimal_str(15)}]
    elif a.r_max is not None:
        rows = _probability_rows(range(2, a.r_max + 1))
    else:
        rows = _probability_rows([a.r])
    _emit(cfg, rows, ["r", "exact", "decimal"], text_line=lambda row: f"{row['exact']} = {row['decimal']}")
    if cfg.plot_path:
        from . import plots

        plots.probability_figure([r for r in rows if isinstance(r["r"], int)], cfg.plot_path)
    return 0


def _cmd_appendix(cfg: RunConfig) -> int:
    a = cfg.args
    rows = []
    for r in range(a.r_min, a.r_max + 1):
        p = qsqrt2.appendix_enumeration(r)
        rows.append({"r": r, "exact": p.exact_str(), "decimal": p.decimal_str(15)})
        _note(cfg, f"enumerated r={r}")
    _emit(
        cfg,
        rows,
        ["r", "exact", "decimal"],
        text_line=lambda row: f"p_{row['r']} = {row['exact']} = {row['decimal']}",
    )
    if cfg.plot_path:
        from . import plots

        plots.probability_figure(rows, cfg.plot_path)
    return 0


def _cmd_constants(cfg: RunConfig) -> int:
    rep = qsqrt2.constants_report()
    rows = [
        {"name": "alpha", "exact": rep.alpha_exact.exact_str(), "value": rep.alpha_digits},
        {
            "name": "delta",
            "exact": f"2^({rep.delta_exponent_exact.exact_str()})",
            "value": rep.delta_digits,
        },
        {"name": "identity delta^2*4^alpha=2", "exact": "", "value": rep.identity_ok},
        {"name": "empirical alpha (finite windows)", "exact": "", "value": rep.empirical_alpha},
        {"name": "empirical delta", "exact": "", "value": rep.empirical_delta},
    ]
    _emit(cfg, rows, ["name", "exact", "value"])
    return 0


def _duffing_params(a) -> duffing.DuffingParams:
    return duffing.DuffingParams(
        a=a.a, b=a.b, c=a.c, gamma=a.gamma, delta_damp=a.delta, omega=a.omega,
        amp=a.amp, lam=a.lam, k=a.k,
    )


def _forcing_from_args(a) -> duffing.ForcingSignal | None:
    if a.forcing == "none":
        return None
    orbit_vals = tuple(s.value for s in core.orbit(a.forcing_n, a.forcing_steps))
    transform = duffing.Transform.PARITY_SIGN if a.forcing == "parity" else duffing.Transform.LOG_SCALED
    return duffing.ForcingSignal(orbit_vals, transform, a.hold)


def _cmd_duffing(cfg: RunConfig) -> int:
    a = cfg.args
    p = _duffing_params(a)
    if a.job == "equilibria":
        rows = [{"x": x, "stability": s} for x, s in duffing.equilibria(p)]
        _emit(cfg, rows, ["x", "stability"])
        return 0
    if a.job == "separatrix":
        rows = []
        n = a.points
        for i in range(n):
            x = a.x_min + (a.x_max - a.x_min) * i / (n - 1) if n > 1 else a.x_min
            try:
                v = duffing.separatrix_velocity(p, x)
            except Sqrt2LabError:
                continue
            rows.append({"x": x, "v_plus": v, "v_minus": -v})
        _emit(cfg, rows, ["x", "v_plus", "v_minus"])
        return 0
    if a.job == "profile":
        rows = []
        n = a.points
        for i in range(n):
            t = a.t_min + (a.t_max - a.t_min) * i / (n - 1) if n > 1 else a.t_min
            x, v = duffing.homoclinic_profile(p, t)
            rows.append({"t": t, "x": x, "v": v})
        _emit(cfg, rows, ["t", "x", "v"])
        return 0
    if a.job == "melnikov":
        n = a.points
        t0s = [a.t0_min + (a.t0_max - a.t0_min) * i / (n - 1) if n > 1 else a.t0_min for i in range(n)]
        rows = [{"t0": t0, "M": m} for t0, m in duffing.melnikov_scan(p, t0s)]
        _emit(cfg, rows, ["t0", "M"])
        if cfg.plot_path:
            from . import plots

            plots.melnikov_figure(rows, cfg.plot_path)
        return 0
    if a.job == "simulate":
        forcing = _forcing_from_args(a)
        points = duffing.simulate(
            p, forcing, a.t_end, a.dt, x0=a.x0, v0=a.v0, sample_every=a.sample_every
        )
        rows = [{"t": pt.t, "x": pt.x, "v": pt.v} for pt in points]
        _emit(cfg, rows, ["t", "x", "v"])
        if cfg.plot_path:
            from . import plots

            plots.trajectory_figure(rows, cfg.plot_path)
        return 0
    # sensitivity
    forcing = _forcing_from_args(a)
    series = duffing.sensitivity_split(
        p, forcing, a.t_end, a.dt, x0=a.x0, v0=a.v0, epsilon=a.eps, sample_every=a.sample_every
    )
    rows = [{"t": t, "separation": s} for t, s in series]
    _emit(cfg, rows, ["t", "separation"])
    if cfg.plot_path:
        from . import plots

        plots.sensitivity_figure(rows, cfg.plot_path)
    return 0


def _cmd_borderline(cfg: RunConfig) -> int:
    a = cfg.args
    mc = MapConfig(alpha=a.alpha)
    if a.series:
        rows = []
        total = 0.0
        for r in range(1, a.n_max + 1):
            fr = core.step(r) if mc.exact else core.step_alpha(r, mc)
            if fr == 0:
                raise ZeroTermError(r)
            total += core.log_of_big(fr) - math.log(r)
            rows.append({"n": r, "geometric_mean": math.exp(total / r)})
        _emit(cfg, rows, ["n", "geometric_mean"])
        if cfg.plot_path:
            from . import plots

            plots.borderline_figure(rows, cfg.plot_path)
        return 0
    value = core.borderline_check(mc, a.n_max)
    verdict = "within borderline bound" if value <= 1.0 + 1e-12 else "exceeds 1: not Collatz-like"
    rows = [
        {"alpha": repr(mc.alpha), "n_max": a.n_max, "geometric_mean": value, "verdict": verdict}
    ]
    _emit(cfg, rows, ["alpha", "n_max", "geometric_mean", "verdict"])
    return 0


_COMMANDS = {
    "orbit": _cmd_orbit,
    "growth": _cmd_growth,
    "census": _cmd_census,
    "cycles": _cmd_cycles,
    "preds": _cmd_preds,
    "tree": _cmd_tree,
    "gaps": _cmd_gaps,
    "markov": _cmd_markov,
    "appendix": _cmd_appendix,
    "constants": _cmd_constants,
    "duffing": _cmd_duffing,
    "borderline": _cmd_borderline,
}


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, plot: bool = False) -> None:
    sub.add_argument("--format", choices=["text", "csv", "json"], default="text")
    sub.add_argument("--output", help="write the table to this path instead of stdout")
    sub.add_argument("--verbose", action="store_true", help="progress lines on stderr")
    if plot:
        sub.add_argument("--plot", help="also render a figure to this file (png/pdf/svg)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Exact-arithmetic toolkit for the floor-sqrt2 parity map and its driven oscillator",
    )
    parser.add_argument("--config", help="key=value file with default parameter overrides")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("orbit", help="exact iterates and parity statistics")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int, default=17)
    s.add_argument("--parity-table", type=int, metavar="L",
                   help="emit even/odd probabilities for windows 10^1..10^L instead of iterates")
    _add_common(s, plot=True)

    s = sub.add_parser("growth", help="per-step geometric growth factor along an orbit")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r-max", type=int, required=True)
    s.add_argument("--r-min", type=int, default=1)
    s.add_argument("--stride", type=int, default=1)
    _add_common(s, plot=True)

    s = sub.add_parser("census", help="range counts: cycling orbits, no-predecessor numbers")
    s.add_argument("--kind", choices=["cycles", "no-pred", "counting"], required=True)
    s.add_argument("--lo", type=int, default=0)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--cap", type=int, default=cycles.DEFAULT_ITERATION_CAP)
    s.add_argument("--jobs", type=int)
    s.add_argument("--list-divergent", action="store_true")
    _add_common(s, plot=True)

    s = sub.add_parser("cycles", help="cycle reports for one start or a range")
    s.add_argument("--n", type=int)
    s.add_argument("--lo", type=int)
    s.add_argument("--hi", type=int)
    s.add_argument("--cap", type=int, default=cycles.DEFAULT_ITERATION_CAP)
    s.add_argument("--jobs", type=int)
    _add_common(s, plot=True)

    s = sub.add_parser("preds", help="predecessor classes and witnesses")
    s.add_argument("--m", type=int)
    s.add_argument("--lo", type=int, default=1)
    s.add_argument("--hi", type=int, default=51)
    _add_common(s)

    s = sub.add_parser("tree", help="back-step predecessor tree")
    s.add_argument("--root", type=int, required=True)
    s.add_argument("--node-cap", type=int, default=10000)
    _add_common(s)

    s = sub.add_parser("gaps", help="gap words of the no-predecessor sequence")
    s.add_argument("--hi", type=int, default=100000)
    s.add_argument("--levels", type=int, default=3)
    s.add_argument("--prefix", type=int, default=40, help="letters of each level to show")
    s.add_argument("--convergents", type=int, metavar="COUNT",
                   help="emit sqrt2 continued-fraction convergents instead")
    _add_common(s)

    s = sub.add_parser("markov", help="exact odds probability via the parity chain")
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--r-max", type=int)
    s.add_argument("--stationary", action="store_true")
    _add_common(s, plot=True)

    s = sub.add_parser("appendix", help="odds probabilities via literal path enumeration")
    s.add_argument("--r-min", type=int, default=2)
    s.add_argument("--r-max", type=int, default=24)
    _add_common(s, plot=True)

    s = sub.add_parser("constants", help="exact growth constants and their identity check")
    _add_common(s)

    s = sub.add_parser("duffing", help="oscillator analyses and forced simulations")
    s.add_argument("--job", choices=["equilibria", "separatrix", "profile", "melnikov", "simulate", "sensitivity"],
                   required=True)
    s.add_argument("--a", type=float, default=1.0)
    s.add_argument("--b", type=float, default=1.0)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--gamma", type=float, default=0.3)
    s.add_argument("--delta", type=float, default=0.1)
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--amp", type=float, default=1.0)
    s.add_argument("--lam", type=float, default=1.0)
    s.add_argument("--k", type=float, default=1.0)
    s.add_argument("--x-min", type=float, default=-1.3)
    s.add_argument("--x-max", type=float, default=1.3)
    s.add_argument("--t-min", type=float, default=-10.0)
    s.add_argument("--t-max", type=float, default=10.0)
    s.add_argument("--t0-min", type=float, default=0.0)
    s.add_argument("--t0-max", type=float, default=12.566370614359172)
    s.add_argument("--points", type=int, default=101)
    s.add_argument("--t-end", type=float, default=100.0)
    s.add_argument("--dt", type=float, default=1e-3)
    s.add_argument("--x0", type=float, default=0.0)
    s.add_argument("--v0", type=float, default=0.0)
    s.add_argument("--eps", type=float, default=1e-8)
    s.add_argument("--sample-every", type=int, default=100)
    s.add_argument("--forcing", choices=["none", "parity", "log"], default="none")
    s.add_argument("--forcing-n", type=int, default=73)
    s.add_argument("--forcing-steps", type=int, default=400)
    s.add_argument("--hold", type=float, default=0.5)
    _add_common(s, plot=True)

    s = sub.add_parser("borderline", help="geometric-mean growth test of a map parameter")
    s.add_argument("--alpha", type=_parse_alpha, default="sqrt2")
    s.add_argument("--n-max", type=int, default=10000)
    s.add_argument("--series", action="store_true", help="emit the running mean per n")
    _add_common(s, plot=True)

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Fold --config key=value entries in as argument defaults (CLI flags win)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        parser.error("--config needs a path")
    overrides = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                parser.error(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            overrides.extend([f"--{key.strip().replace('_', '-')}", value.strip()])
    head = argv[: idx] + argv[idx + 2 :]
    if not head:
        return head
    # insert overrides right after the subcommand so explicit flags override them
    for i, tok in enumerate(head):
        if tok in _COMMANDS:
            return head[: i + 1] + overrides + head[i + 1 :]
    return head + overrides


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    argv = _apply_config_file(parser, argv)
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        args=args,
        output_format=args.format,
        output_path=args.output,
        plot_path=getattr(args, "plot", None),
        verbose=args.verbose,
    )
    try:
        return _COMMANDS[args.command](cfg)
    except Sqrt2LabError as exc:
        print(f"{PROG}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{PROG}: ValueError: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
