"""
Command-line front end: measure | kernel | corr | sample | verify | rimhook-corr

Every document written to stdout (or --output) starts from the resolved
configuration and the library version. Exit codes: 0 ok, 1 verification or
--strict failure, 2 bad input, 3 math-domain error.
"""

import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer

from . import __version__
from .config import RunConfig, resolve_config
from .errors import MathDomainError, ParseError, VerificationError
from .halfint import format_halfints
from .kernel import (
    KernelSpec, block_factorization, brute_corr_rimhook, kernel_matrix, rho_det,
)
from .measure import brute_corr, chi_square_summary, mixed_table, sample, tail_bound, zmeasure_n
from .partition import enumerate_partitions, format_partition, residue_index
from .scalars import NumericMode, coerce, format_scalar
from .utils import csv_text, format_count, json_text, lines_text, scalar_parts, setup_logging, show_table, stderr_console, write_output
from .verify import SuiteOptions, run_suites, suite_names

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

APP = typer.Typer(
    name="zmeasures",
    help="z-measures on partitions, the hypergeometric kernel and their verification suites",
    add_completion=False,
    no_args_is_help=True,
)


@APP.callback()
def _root_callback(
    ctx: typer.Context,
    log_level: str = typer.Option("WARNING", "--log-level", help="Log level (DEBUG, INFO, WARNING, ERROR)"),
    debug_log: Optional[Path] = typer.Option(None, "--debug-log", help="Append plain-text log records to this file"),
    config: Optional[Path] = typer.Option(None, "--config", help="JSON file of default settings"),
    output: Optional[str] = typer.Option(None, "--output", "-o", help="Write the result here instead of stdout"),
    fmt: Optional[str] = typer.Option(None, "--format", help="csv, json, or lines (sample only)"),
    mode: Optional[str] = typer.Option(None, "--mode", help="exact or float arithmetic"),
) -> None:
    setup_logging(log_level, debug_log)
    ctx.obj = {"config": config, "flags": {"output": output, "format": fmt, "mode": mode}}


def _run(ctx: typer.Context, command: str, flags: Dict[str, Any],
         body: Callable[[RunConfig], int]) -> None:
    """Resolve the config, run the command body and turn library errors into exit codes"""
    obj = ctx.obj or {}
    merged = dict(obj.get("flags", {}))
    merged.update(flags)
    try:
        cfg = resolve_config(command, merged, obj.get("config"))
        logger.debug("resolved config: %s", cfg.to_dict())
        code = body(cfg)
    except VerificationError as e:
        stderr_console.print(f"[red]verification failed[/red]: {e}")
        raise typer.Exit(code=EXIT_FAILED)
    except MathDomainError as e:
        stderr_console.print(f"[red]math-domain error[/red]: {e}")
        raise typer.Exit(code=EXIT_DOMAIN)
    except (ParseError, ValueError, TypeError) as e:
        stderr_console.print(f"[red]invalid input[/red]: {e}")
        raise typer.Exit(code=EXIT_USAGE)
    if code:
        raise typer.Exit(code=code)


def _header(cfg: RunConfig) -> List[str]:
    return [f"zmeasures {__version__}", "config " + json.dumps(cfg.to_dict(), sort_keys=True)]


def _emit(cfg: RunConfig, header: List[str], rows: List[List[Any]], extra: Dict[str, Any],
          comments: Optional[List[str]] = None) -> None:
    """One document: CSV (config and summary lines as '#' comments) or JSON"""
    if cfg.format == "json":
        document = {"version": __version__, "config": cfg.to_dict(), **extra,
                    "rows": [dict(zip(header, row)) for row in rows]}
        write_output(json_text(document), cfg.output)
        return
    write_output(csv_text(header, rows, _header(cfg) + list(comments or [])), cfg.output)


def _scalar_row(value) -> List[Any]:
    parts = scalar_parts(value)
    return [parts["re"], parts["im"]]


def _require_float_kernel(cfg: RunConfig) -> None:
    params = cfg.params()
    if params.mode == NumericMode.EXACT and params.xi != 0:
        raise MathDomainError("the kernel is transcendental for xi > 0; use --mode float")


def _require_float(cfg: RunConfig, what: str) -> None:
    if cfg.numeric_mode == NumericMode.EXACT:
        raise MathDomainError(f"{what} are computed in floating point; use --mode float")


def _number(value) -> Any:
    """JSON field for a summary value: floats as numbers, exact values as "p/q" strings"""
    return value if isinstance(value, float) else format_scalar(value)


def _number_text(value) -> str:
    return repr(value) if isinstance(value, float) else format_scalar(value)


def _exact_gap(det, brute):
    diff = coerce(det, NumericMode.EXACT) - coerce(brute, NumericMode.EXACT)
    return abs(diff.re) if diff.im == 0 else diff


# ----------------------------------------------------------------------------
# measure
# ----------------------------------------------------------------------------
@APP.command("measure")
def measure(
    ctx: typer.Context,
    z: Optional[str] = typer.Option(None, "--z", help="z"),
    zp: Optional[str] = typer.Option(None, "--zp", help="z'"),
    xi: Optional[str] = typer.Option(None, "--xi", help="mixing parameter in [0, 1)"),
    n: Optional[int] = typer.Option(None, "--n", help="size of the partitions for M_n"),
    mixed: Optional[bool] = typer.Option(None, "--mixed/--fixed", help="mixed measure M over |lambda| <= max size"),
    max_size: Optional[int] = typer.Option(None, "--max-size", help="largest size for --mixed (default 25)"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="--mixed rows need |M| above this"),
) -> None:
    """Table of M_n(lambda) for lambda of size n, or of the mixed measure M(lambda)"""
    flags = dict(z=z, zp=zp, xi=xi, n=n, mixed=mixed, max_size=max_size, threshold=threshold)

    def body(cfg: RunConfig) -> int:
        p = cfg.params()
        rows: List[List[Any]] = []
        total = 0
        if cfg.mixed:
            table = mixed_table(p, cfg.size(25))
            for lam, w in zip(table.partitions, table.weights):
                if abs(w) > cfg.threshold:
                    rows.append([format_partition(lam)] + _scalar_row(w))
                    total = total + w
            tail = table.tail()
            extra = {"sum": scalar_parts(total), "tail_bound": _number(tail.reported()),
                     "tail_rigorous": tail.rigorous}
            comments = [f"sum {format_scalar(total)}",
                        f"tail_bound {_number_text(tail.reported())} rigorous={tail.rigorous}"]
        else:
            for lam in enumerate_partitions(cfg.n):
                value = zmeasure_n(lam, p)
                rows.append([format_partition(lam)] + _scalar_row(value))
                total = total + value
            extra = {"sum": scalar_parts(total)}
            comments = [f"sum {format_scalar(total)}"]
        _emit(cfg, ["partition", "re", "im"], rows, extra, comments)
        show_table("measure", ["rows", "sum"], [[format_count(len(rows)), format_scalar(total)]])
        return EXIT_OK

    _run(ctx, "measure", flags, body)


# ----------------------------------------------------------------------------
# kernel
# ----------------------------------------------------------------------------
@APP.command("kernel")
def kernel(
    ctx: typer.Context,
    z: Optional[str] = typer.Option(None, "--z"),
    zp: Optional[str] = typer.Option(None, "--zp"),
    xi: Optional[str] = typer.Option(None, "--xi"),
    r: Optional[int] = typer.Option(None, "--r", help="rim-hook length; r > 1 gives K_r"),
    points: Optional[str] = typer.Option(None, "--points", help="comma-separated half-integers, e.g. -1/2,1/2"),
    method: Optional[str] = typer.Option(None, "--method", help="series, closed or both"),
    tol: Optional[float] = typer.Option(None, "--tol", help="bound for the series/closed discrepancy with --method both"),
) -> None:
    """Dump the kernel matrix K(x_a, x_b) over the given points"""
    flags = dict(z=z, zp=zp, xi=xi, r=r, points=points, method=method, tol=tol)

    def body(cfg: RunConfig) -> int:
        _require_float_kernel(cfg)
        ks = KernelSpec(cfg.params(), cfg.r)
        xs = cfg.halfint_points()
        method = "closed" if cfg.method == "both" else cfg.method
        km = kernel_matrix(xs, ks, method)
        rows = []
        for a, i in enumerate(km.points):
            for b, j in enumerate(km.points):
                rows.append([str(i), str(j)] + _scalar_row(km.entries[a, b]))
        extra: Dict[str, Any] = {
            "points": [str(k) for k in km.points],
            "entries": [[scalar_parts(km.entries[a, b]) for b in range(len(km.points))]
                        for a in range(len(km.points))],
        }
        comments = []
        if cfg.numeric_mode == NumericMode.FLOAT:
            condition = km.condition if math.isfinite(km.condition) else None
            extra["condition"] = condition
            comments.append(f"condition {condition!r}")
        code = EXIT_OK
        if cfg.method == "both":
            series = kernel_matrix(xs, ks, "series")
            discrepancy = float(abs(series.entries - km.entries).max()) if xs else 0.0
            if cfg.numeric_mode == NumericMode.EXACT:
                # both routes give the same 0/1 vacuum indicator at xi = 0
                reported = Fraction(discrepancy)
            else:
                reported = discrepancy
            extra["discrepancy"] = _number(reported)
            comments.append(f"discrepancy {_number_text(reported)} tol {cfg.tol!r}")
            if discrepancy > cfg.tol:
                logger.warning("series and closed form differ by %.3g > %.3g", discrepancy, cfg.tol)
                code = EXIT_FAILED if cfg.strict else EXIT_OK
        _emit(cfg, ["i", "j", "re", "im"], rows, extra, comments)
        return code

    _run(ctx, "kernel", flags, body)


# ----------------------------------------------------------------------------
# corr
# ----------------------------------------------------------------------------
@APP.command("corr")
def corr(
    ctx: typer.Context,
    z: Optional[str] = typer.Option(None, "--z"),
    zp: Optional[str] = typer.Option(None, "--zp"),
    xi: Optional[str] = typer.Option(None, "--xi"),
    r: Optional[int] = typer.Option(None, "--r"),
    points: Optional[str] = typer.Option(None, "--points"),
    max_size: Optional[int] = typer.Option(None, "--max-size", help="brute-force truncation size N (default 25)"),
    tol: Optional[float] = typer.Option(None, "--tol"),
    strict: Optional[bool] = typer.Option(None, "--strict/--no-strict", help="exit 1 when the gap exceeds tail + tol"),
) -> None:
    """rho(X) as a kernel determinant and as a brute-force sum, with the gap between them"""
    flags = dict(z=z, zp=zp, xi=xi, r=r, points=points, max_size=max_size, tol=tol, strict=strict)

    def body(cfg: RunConfig) -> int:
        _require_float_kernel(cfg)
        if cfg.r > 1:
            _require_float(cfg, "rim-hook correlations")
        p = cfg.params()
        ks = KernelSpec(p, cfg.r)
        xs = sorted(set(cfg.halfint_points()))
        det = rho_det(xs, ks)
        extra: Dict[str, Any] = {"points": format_halfints(xs)}
        comments = []
        if cfg.r == 1:
            brute, tail = brute_corr(xs, p, cfg.size(25))
        else:
            factorization = block_factorization(xs, ks)
            extra["block_product"] = scalar_parts(factorization.product)
            comments.append(f"block_product {format_scalar(factorization.product)} "
                            f"residues {','.join(str(c) for c in sorted(factorization.groups))}")
            if len({residue_index(k, cfg.r) for k in xs}) > 1:
                logger.info("points span several residue classes; det factorizes over the blocks")
            result = brute_corr_rimhook(xs, ks, cfg.size(20))
            brute, tail = result.value, result.tail
        gap = abs(complex(det) - complex(brute))
        reported_gap = _exact_gap(det, brute) if p.mode == NumericMode.EXACT else gap
        extra.update(tail_bound=_number(tail.reported()), tail_rigorous=tail.rigorous, gap=_number(reported_gap))
        rows = [["rho_det"] + _scalar_row(det), ["brute"] + _scalar_row(brute)]
        comments += [f"tail_bound {_number_text(tail.reported())} rigorous={tail.rigorous}",
                     f"gap {_number_text(reported_gap)}"]
        _emit(cfg, ["route", "re", "im"], rows, extra, comments)
        show_table("corr", ["X", "gap", "tail"], [[format_halfints(xs) or "{}", f"{gap:.3g}", f"{tail.bound:.3g}"]])
        if gap > tail.bound + cfg.tol:
            logger.warning("gap %.3g exceeds tail %.3g + tol %.3g", gap, tail.bound, cfg.tol)
            if cfg.strict:
                return EXIT_FAILED
        return EXIT_OK

    _run(ctx, "corr", flags, body)


# ----------------------------------------------------------------------------
# rimhook-corr
# ----------------------------------------------------------------------------
@APP.command("rimhook-corr")
def rimhook_corr(
    ctx: typer.Context,
    z: Optional[str] = typer.Option(None, "--z"),
    zp: Optional[str] = typer.Option(None, "--zp"),
    xi: Optional[str] = typer.Option(None, "--xi"),
    r: Optional[int] = typer.Option(None, "--r"),
    points: Optional[str] = typer.Option(None, "--points"),
    max_size: Optional[int] = typer.Option(None, "--max-size", help="truncation size N (default 20)"),
    tol: Optional[float] = typer.Option(None, "--tol"),
    strict: Optional[bool] = typer.Option(None, "--strict/--no-strict"),
) -> None:
    """det K_r(X) against the normalized rim-hook weights, with the partition function check"""
    flags = dict(z=z, zp=zp, xi=xi, r=r, points=points, max_size=max_size, tol=tol, strict=strict)

    def body(cfg: RunConfig) -> int:
        _require_float(cfg, "rim-hook correlations")
        ks = KernelSpec(cfg.params(), cfg.r)
        xs = sorted(set(cfg.halfint_points()))
        det = rho_det(xs, ks)
        result = brute_corr_rimhook(xs, ks, cfg.size(20))
        gap = abs(complex(det) - result.value)
        rows = [
            ["rho_det"] + _scalar_row(det),
            ["brute"] + _scalar_row(result.value),
            ["z_truncated"] + _scalar_row(result.z_truncated),
            ["z_predicted"] + _scalar_row(result.z_predicted),
        ]
        extra = {"points": format_halfints(xs), "tail_bound": result.tail.bound, "gap": gap,
                 "relative_gap": result.relative_gap}
        comments = [f"tail_bound {result.tail.bound!r}", f"gap {gap!r}"]
        _emit(cfg, ["route", "re", "im"], rows, extra, comments)
        if gap > result.tail.bound + cfg.tol and cfg.strict:
            return EXIT_FAILED
        return EXIT_OK

    _run(ctx, "rimhook-corr", flags, body)


# ----------------------------------------------------------------------------
# sample
# ----------------------------------------------------------------------------
@APP.command("sample")
def sample_cmd(
    ctx: typer.Context,
    z: Optional[str] = typer.Option(None, "--z"),
    zp: Optional[str] = typer.Option(None, "--zp"),
    xi: Optional[str] = typer.Option(None, "--xi"),
    count: Optional[int] = typer.Option(None, "--count", help="number of draws"),
    seed: Optional[int] = typer.Option(None, "--seed", help="PCG64 seed"),
    max_size: Optional[int] = typer.Option(None, "--max-size", help="truncation size (default 25)"),
) -> None:
    """i.i.d. partitions from the mixed measure with a chi-square summary; --format lines gives one per line"""
    flags = dict(z=z, zp=zp, xi=xi, count=count, seed=seed, max_size=max_size)

    def body(cfg: RunConfig) -> int:
        p = cfg.params()
        size = cfg.size(25)
        draws = sample(p, cfg.draws(1000), size, cfg.seed)
        texts = [format_partition(lam) for lam in draws]
        tail = tail_bound(p, size)
        extra: Dict[str, Any] = {"tail_bound": _number(tail.reported())}
        comments = [f"tail_bound {_number_text(tail.reported())}"]
        if draws:
            summary = chi_square_summary(draws, p, size)
            if p.mode == NumericMode.EXACT:
                # the chi-square statistic is float-only; exact documents carry the empty-diagram check
                empty = sum(1 for lam in draws if lam.size == 0)
                table = mixed_table(p, size)
                extra["summary"] = {"empty_fraction": format_scalar(Fraction(empty, len(draws))),
                                    "expected_empty": format_scalar(table.weights[0] / table.total_mass())}
            else:
                extra["summary"] = {
                    "chi_square": summary.statistic, "dof": summary.dof, "p_value": summary.p_value,
                    "empty_fraction": summary.empty_fraction, "expected_empty": summary.expected_empty,
                }
                comments.append(f"chi_square {summary.statistic!r} dof {summary.dof} p_value {summary.p_value!r}")
            show_table("sample", ["draws", "chi2", "dof", "p", "empty (observed/exact)"], [[
                format_count(len(draws)), f"{summary.statistic:.3f}", summary.dof, f"{summary.p_value:.3g}",
                f"{summary.empty_fraction:.4f}/{summary.expected_empty:.4f}",
            ]])
        if cfg.format == "lines":
            write_output(lines_text(texts, _header(cfg) + comments), cfg.output)
            return EXIT_OK
        extra["partitions"] = texts
        _emit(cfg, ["index", "partition"], [[index, text] for index, text in enumerate(texts)], extra, comments)
        return EXIT_OK

    _run(ctx, "sample", flags, body)


# ----------------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------------
@APP.command("verify")
def verify(
    ctx: typer.Context,
    suite: Optional[str] = typer.Option(None, "--suite", help="all, or comma-separated suite names"),
    max_size: Optional[int] = typer.Option(None, "--max-size", help="override the suites' size limits"),
    size_cap: Optional[int] = typer.Option(None, "--size-cap", help="size cap of the du suite"),
    alpha: Optional[str] = typer.Option(None, "--alpha"),
    beta: Optional[str] = typer.Option(None, "--beta"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    count: Optional[int] = typer.Option(None, "--count", help="draws for the sampler suite"),
) -> None:
    """Run the identity suites; JSON report, exit 0 iff every suite passes"""
    flags = dict(suite=suite, max_size=max_size, size_cap=size_cap, alpha=alpha, beta=beta, seed=seed,
                 count=count)

    def body(cfg: RunConfig) -> int:
        names = suite_names(cfg.suite)
        opts = SuiteOptions(max_size=cfg.max_size, size_cap=cfg.size_cap, alpha=cfg.alpha, beta=cfg.beta,
                            seed=cfg.seed, count=cfg.count)
        results = run_suites(names, opts)
        passed = all(r.passed for r in results)
        document = {"version": __version__, "config": cfg.to_dict(), "passed": passed,
                    "suites": [r.to_dict() for r in results]}
        write_output(json_text(document), cfg.output)
        show_table("verify", ["suite", "max error", "threshold", "seconds", "status"], [
            [r.name, f"{r.max_error:.3g}", f"{r.threshold:.3g}", f"{r.seconds:.2f}", "ok" if r.passed else "FAILED"]
            for r in results
        ])
        if not passed:
            raise VerificationError(", ".join(r.name for r in results if not r.passed))
        return EXIT_OK

    _run(ctx, "verify", flags, body)


def main():
    """Main entry point"""
    APP()


if __name__ == "__main__":
    main()
