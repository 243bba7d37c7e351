"""CLI interface for almost Golomb sequence generation and verification.

Exit codes: 0 pass, 1 identity failure or runtime error, 2 usage error,
3 suite inapplicable to the order, 4 unstabilized meta data.
"""

import os
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import click
import yaml

from . import __version__
from .analysis import AnalysisError, cesaro_r2, oscillation_profile, ratio_pivots
from .automata import (
    DFAO_NAMES,
    SOURCES,
    AutomatonError,
    audit_dfao,
    dump_dfao,
    eval_dfao,
    format_output,
    geometric_orbit,
    load_dfao,
)
from .config import load_config
from .core_seq import (
    Sequence,
    SequenceError,
    generate_almost_golomb,
    generate_gap_variant,
    generate_golomb,
    generate_r2_mallows,
)
from .correctors import CorrectorError
from .formatter import (
    SEQUENCE_FORMATS,
    FormatError,
    bfile_values,
    format_bundles_json,
    format_bundles_text,
    format_cesaro_report,
    format_meta_csv,
    format_meta_report,
    format_oscillation,
    format_orbit,
    format_ratio_report,
    format_sequence,
    format_threshold_table,
    parse_bfile,
)
from .identities import SUITES, InapplicableSuiteError, perturbation_sweep, verify_order
from .meta import meta_structure
from .recurrences import RecurrenceError
from .reports import MAX_SAMPLES, ReportBundle

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INAPPLICABLE = 3
EXIT_UNSTABILIZED = 4

DEFAULT_GEN_COUNT = 100
DEFAULT_VERIFY_COUNT = 10_000
DEFAULT_ANALYSIS_COUNT = 100_000
DEFAULT_CESARO_KMAX = 20
DEFAULT_MAX_ORDER = 50


def _say(ctx: click.Context, message: str) -> None:
    """Progress line on stderr, shown with --verbose."""
    if ctx.obj.get("verbose"):
        click.echo(message, err=True)


def _fail(message: str, code: int = EXIT_FAILURE) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _emit(text: str, out: Optional[str]) -> None:
    """Write ``text`` to ``out`` or standard output."""
    if not out:
        click.echo(text, nl=False)
        return
    file_path = Path(out)
    try:
        file_path.write_text(text, encoding="utf-8", newline="\n")
    except (OSError, PermissionError) as e:
        _fail(f"writing to file {out}: {e}")
    click.echo(f"Output saved to: {file_path.absolute()}")


def _config(ctx: click.Context, key: str, default):
    return ctx.obj["config"].get(key, default)


def _parse_geometric(value: str) -> Tuple[List[int], List[int], int]:
    """Parse ``P,Q,K`` where P and Q are digit strings read most significant first."""
    parts = value.split(",")
    if len(parts) != 3:
        raise click.BadParameter("expected P,Q,K, for example 1,0,12", param_hint="--geometric")
    prefix, suffix, k_max = parts
    if not (prefix.isdigit() and (suffix == "" or suffix.isdigit()) and k_max.isdigit()):
        raise click.BadParameter(
            "P and Q must be digit strings and K a non-negative integer",
            param_hint="--geometric",
        )
    return [int(c) for c in prefix], [int(c) for c in suffix], int(k_max)


def _generate(
    ctx: click.Context,
    order: Optional[int],
    golomb: bool,
    gap: Optional[int],
    mallows: bool,
    count: int,
) -> Sequence:
    chosen = [order is not None, golomb, gap is not None, mallows]
    if sum(chosen) != 1:
        raise click.UsageError("Choose exactly one of --order, --golomb, --gap or --mallows")
    if order is not None:
        seq = generate_almost_golomb(order, count)
    elif golomb:
        seq = generate_golomb(count).sequence
    elif gap is not None:
        seq = generate_gap_variant(gap, count)
    else:
        seq = generate_r2_mallows(count)
    _say(ctx, f"generated {seq.length} terms of {seq.tag}")
    return seq


@click.group()
@click.version_option(__version__, prog_name="almost-golomb")
@click.option("--verbose", "-v", is_flag=True, default=False, help="Print progress on stderr")
@click.pass_context
def main(ctx: click.Context, verbose: bool):
    """Generate almost Golomb sequences and check their identities."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    try:
        ctx.obj["config"] = load_config()
    except RuntimeError as e:
        _fail(str(e))


@main.command()
@click.option("--order", type=click.IntRange(min=2), default=None, help="Almost Golomb order r")
@click.option("--golomb", is_flag=True, default=False, help="Golomb's sequence")
@click.option("--gap", type=click.IntRange(min=1), default=None, help="Gap variant with gap s")
@click.option("--mallows", is_flag=True, default=False, help="Order-2 sequence by its recursion")
@click.option("--count", type=click.IntRange(min=1), default=None, help="Number of terms")
@click.option("--format", "fmt", type=click.Choice(SEQUENCE_FORMATS), default=None)
@click.option("--out", type=str, default=None, help="Write to this file instead of stdout")
@click.pass_context
def gen(
    ctx: click.Context,
    order: Optional[int],
    golomb: bool,
    gap: Optional[int],
    mallows: bool,
    count: Optional[int],
    fmt: Optional[str],
    out: Optional[str],
):
    """Emit the first COUNT terms of a sequence."""
    count = count if count is not None else _config(ctx, "count", DEFAULT_GEN_COUNT)
    fmt = fmt if fmt is not None else _config(ctx, "format", "text")
    try:
        seq = _generate(ctx, order, golomb, gap, mallows, count)
    except SequenceError as e:
        _fail(str(e))
    _emit(format_sequence(seq, fmt), out)


@main.command()
@click.option("--order", type=click.IntRange(min=2), required=True, help="Almost Golomb order r")
@click.option("--count", type=click.IntRange(min=1), default=None, help="Number of terms")
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(("json", "text")), default="json", show_default=True)
@click.option("--full", is_flag=True, default=None, help="Also run the perturbation sweep")
@click.option("--out", type=str, default=None, help="Write the report to this file")
@click.pass_context
def verify(
    ctx: click.Context,
    order: int,
    count: Optional[int],
    suite: str,
    fmt: str,
    full: Optional[bool],
    out: Optional[str],
):
    """Check the selected identity suites on a generated prefix.

    Exits 0 when every check passes, 1 on any failure and 3 when the suite
    has no identities for the order.
    """
    count = count if count is not None else _config(ctx, "count", DEFAULT_VERIFY_COUNT)
    full = full if full is not None else bool(_config(ctx, "full", False))
    max_samples = _config(ctx, "max_samples", MAX_SAMPLES)

    try:
        seq = generate_almost_golomb(order, count)
        _say(ctx, f"generated {seq.length} terms of {seq.tag}")
        bundles: List[ReportBundle] = verify_order(seq, suite)
        if full:
            _say(ctx, "running perturbation sweep")
            bundles.append(perturbation_sweep(seq).as_bundle())
    except InapplicableSuiteError as e:
        _fail(str(e), EXIT_INAPPLICABLE)
    except (SequenceError, AutomatonError, CorrectorError, RecurrenceError) as e:
        _fail(str(e))

    for bundle in bundles:
        _say(ctx, f"{bundle.name}: {'pass' if bundle.passed else 'FAIL'}")
    if fmt == "json":
        meta = {"order": order, "count": count, "suite": suite}
        text = format_bundles_json(bundles, meta, max_samples)
    else:
        text = format_bundles_text(bundles, max_samples)
    _emit(text, out)
    sys.exit(EXIT_OK if bundles and all(b.passed for b in bundles) else EXIT_FAILURE)


@main.command()
@click.option("--which", type=click.Choice(DFAO_NAMES), required=True, help="Automaton name")
@click.option("--source", type=click.Choice(SOURCES), default="published", show_default=True)
@click.option("--eval", "eval_n", type=click.IntRange(min=1), default=None, help="Evaluate at n")
@click.option("--dump", is_flag=True, default=False, help="Print the transition table")
@click.option("--geometric", type=str, default=None, help="Orbit of P 0^k Q as P,Q,K")
@click.option("--audit", type=click.IntRange(min=1), default=None, help="Compare with the recurrence up to NMAX")
@click.option("--out", type=str, default=None, help="Write to this file instead of stdout")
@click.pass_context
def dfao(
    ctx: click.Context,
    which: str,
    source: str,
    eval_n: Optional[int],
    dump: bool,
    geometric: Optional[str],
    audit: Optional[int],
    out: Optional[str],
):
    """Query a corrector automaton."""
    modes = [eval_n is not None, dump, geometric is not None, audit is not None]
    if sum(modes) != 1:
        raise click.UsageError("Choose exactly one of --eval, --dump, --geometric or --audit")
    orbit_args = _parse_geometric(geometric) if geometric is not None else None

    try:
        if audit is not None:
            # audits always read the published table
            report = audit_dfao(which, audit)
            _emit(format_bundles_text([ReportBundle(f"audit {which}", [report])]), out)
            return
        automaton = load_dfao(which, source)
        _say(ctx, f"{which} ({source}): {automaton.state_count} states, base {automaton.base}")
        if eval_n is not None:
            text = format_output(eval_dfao(automaton, eval_n)) + "\n"
        elif dump:
            text = dump_dfao(automaton)
        else:
            prefix, suffix, k_max = orbit_args
            text = format_orbit(geometric_orbit(automaton, prefix, suffix, k_max))
    except (AutomatonError, RecurrenceError) as e:
        _fail(str(e))
    _emit(text, out)


@main.group()
def analyze():
    """Ratio families, Cesaro means and oscillation envelopes."""


@analyze.command()
@click.option("--order", type=click.IntRange(2, 5), required=True, help="Order r in 2..5")
@click.option("--kmax", type=click.IntRange(min=0), default=None, help="Largest k per family")
@click.option("--count", type=click.IntRange(min=1), default=DEFAULT_ANALYSIS_COUNT, show_default=True)
@click.option("--out", type=str, default=None, help="Write to this file instead of stdout")
@click.pass_context
def ratios(ctx: click.Context, order: int, kmax: Optional[int], count: int, out: Optional[str]):
    """Exact a(n)/n values along index families with distinct limits."""
    try:
        seq = generate_almost_golomb(order, count)
        report = ratio_pivots(seq, kmax)
    except (SequenceError, AnalysisError) as e:
        _fail(str(e))
    for notice in report.notices:
        _say(ctx, notice)
    _emit(format_ratio_report(report), out)
    sys.exit(EXIT_OK if report.passed else EXIT_FAILURE)


@analyze.command()
@click.option("--kmax", type=click.IntRange(min=3), default=DEFAULT_CESARO_KMAX, show_default=True)
@click.option("--out", type=str, default=None, help="Write to this file instead of stdout")
@click.pass_context
def cesaro(ctx: click.Context, kmax: int, out: Optional[str]):
    """Cesaro means of a(n)/n for order 2 against both limit points."""
    count = 3 * 2 ** (kmax - 1)
    try:
        seq = generate_almost_golomb(2, count)
        _say(ctx, f"generated {seq.length} terms of {seq.tag}")
        report = cesaro_r2(seq, kmax)
    except (SequenceError, AnalysisError) as e:
        _fail(str(e))
    for warning in report.warnings:
        _say(ctx, f"warning: {warning}")
    _emit(format_cesaro_report(report), out)
    sys.exit(EXIT_OK if report.passed else EXIT_FAILURE)


@analyze.command()
@click.option("--order", type=click.IntRange(min=2), required=True, help="Almost Golomb order r")
@click.option("--count", type=click.IntRange(min=1), default=DEFAULT_ANALYSIS_COUNT, show_default=True)
@click.option("--windows", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--out", type=str, default=None, help="Write to this file instead of stdout")
@click.pass_context
def oscillation(ctx: click.Context, order: int, count: int, windows: int, out: Optional[str]):
    """Min and max of a(n)/n over windows of [N/2, N] as TSV."""
    try:
        seq = generate_almost_golomb(order, count)
        profile = oscillation_profile(seq, windows)
    except (SequenceError, AnalysisError) as e:
        _fail(str(e))
    _say(ctx, f"a(n)/n ranges over [{profile.overall_min:.6f}, {profile.overall_max:.6f}]")
    _emit(format_oscillation(profile), out)


@main.command()
@click.option("--max-order", type=click.IntRange(min=2), default=DEFAULT_MAX_ORDER, show_default=True)
@click.option("--terms", type=click.IntRange(min=1), default=None, help="Terms per order")
@click.option("--table1", "tabulated", is_flag=True, default=False, help="Exit 0 only on an exact table match")
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    envvar="ALMOST_GOLOMB_WORKERS",
    default=None,
    help="Worker processes (can also be set via ALMOST_GOLOMB_WORKERS env var)",
)
@click.option("--csv", "as_csv", is_flag=True, default=False, help="Per-order CSV output")
@click.option("--out", type=str, default=None, help="Write to this file instead of stdout")
@click.pass_context
def meta(
    ctx: click.Context,
    max_order: int,
    terms: Optional[int],
    tabulated: bool,
    workers: Optional[int],
    as_csv: bool,
    out: Optional[str],
):
    """Maximal multiplicities, thresholds and their link to Golomb's sequence."""
    workers = workers if workers is not None else _config(ctx, "workers", os.cpu_count() or 1)
    _say(ctx, f"profiling orders 2..{max_order} with {workers} worker(s)")
    try:
        report = meta_structure(max_order, n_terms=terms, workers=workers)
    except (SequenceError, ValueError) as e:
        _fail(str(e))

    if as_csv:
        _emit(format_meta_csv(report), out)
    else:
        _emit(format_threshold_table(report) + "\n" + format_meta_report(report), out)

    if report.unstabilized:
        _fail(
            f"maximal multiplicity not stabilized for orders {report.unstabilized}; "
            "raise --terms",
            EXIT_UNSTABILIZED,
        )
    ok = report.table_match if tabulated else report.passed
    sys.exit(EXIT_OK if ok else EXIT_FAILURE)


@main.command()
@click.option("--order", type=click.IntRange(min=2), required=True, help="Almost Golomb order r")
@click.option("--bfile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.pass_context
def compare(ctx: click.Context, order: int, bfile: str):
    """Compare a local b-file with the generated sequence."""
    try:
        values = bfile_values(parse_bfile(Path(bfile).read_text(encoding="utf-8")))
    except (FormatError, OSError, UnicodeDecodeError) as e:
        _fail(str(e))
    if not values:
        _fail(f"{bfile} holds no terms")

    seq = generate_almost_golomb(order, len(values))
    for n, (expected, found) in enumerate(zip(seq.values().tolist(), values), 1):
        if expected != found:
            click.echo(f"Mismatch at n={n}: generated {expected}, b-file has {found}")
            sys.exit(EXIT_FAILURE)
    click.echo(f"Match: {len(values)} terms agree")


@main.command("config")
@click.pass_context
def config_cmd(ctx: click.Context):
    """Print the merged configuration."""
    config = ctx.obj["config"]
    if not config:
        click.echo("No configuration found.")
        return
    click.echo(yaml.safe_dump(config, sort_keys=False).strip())


if __name__ == "__main__":
    main()  # pragma: no cover
