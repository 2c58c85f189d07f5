"""CLI interface for the golden-ratio series identities."""

import functools
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import click
from rich.console import Console
from rich.logging import RichHandler

from . import arithfn, formal, identities, render
from .config import MIN_GUARD_DIGITS, load_settings
from .errors import ContractError, GoldenPairError
from .fixedpoint import CONSTANT_NAMES, PrecisionContext, const, fx_round, to_string
from .series import GOLDEN_INVERSE_POINT, Form, SeriesSpec, Weight, evaluate, resolve_point, truncation_index

PROG_NAME = "golden-pair"
MAX_DIGITS = 4000
MAX_GUARD_DIGITS = 200

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_ERROR = 3

console = Console()
err_console = Console(stderr=True)


def handle_errors(func):
    """Report library errors on stderr and exit with EXIT_ERROR."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except GoldenPairError as e:
            err_console.print(f"[red]Error:[/red] {e}")
            raise SystemExit(EXIT_ERROR)

    return wrapper


def precision_options(func):
    """--digits and --guard-digits, defaulting to the environment settings."""
    func = click.option(
        "--guard-digits", "-g",
        type=click.IntRange(MIN_GUARD_DIGITS, MAX_GUARD_DIGITS),
        help="Extra working digits (default: GOLDEN_PAIR_GUARD_DIGITS or 20).",
    )(func)
    func = click.option(
        "--digits", "-d",
        type=click.IntRange(1, MAX_DIGITS),
        help="Decimal digits to produce (default: GOLDEN_PAIR_DIGITS or 50).",
    )(func)
    return func


def configure_logging(level: str, verbose: int) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _write_lines(lines, out: str | None) -> None:
    if out:
        text = "".join(f"{line}\n" for line in lines)
        Path(out).write_text(text, encoding="utf-8", newline="\n")
        err_console.print(f"[green]✓[/green] Wrote {out}")
    else:
        for line in lines:
            click.echo(line)


@click.group()
@click.version_option(package_name="golden-pair")
@click.option("--verbose", "-v", count=True, help="Log progress (-v info, -vv debug).")
@click.pass_context
@handle_errors
def cli(ctx, verbose):
    """Golden-ratio identities with totient and Möbius weights, to any precision."""
    settings = load_settings()
    ctx.obj = settings
    configure_logging(settings.log_level, verbose)


# Series commands

@cli.command("eval")
@click.option(
    "--weight", "-w",
    default=Weight.TOTIENT.value,
    type=click.Choice([w.value for w in Weight]),
    help="Series weight.",
)
@click.option(
    "--x", "x_spec",
    default=GOLDEN_INVERSE_POINT,
    show_default=True,
    help="Evaluation point: decimal, p/q, or golden-inverse.",
)
@click.option(
    "--form", "-f",
    default=Form.SUM.value,
    type=click.Choice([f.value for f in Form]),
    help="Log series or its exponential product.",
)
@precision_options
@click.option("--json/--text", "json_output", default=False, help="Output format.")
@click.option(
    "--sidecar",
    type=click.Path(dir_okay=False, writable=True),
    help="Also write terms_used and error bounds as JSON to this file.",
)
@click.pass_obj
@handle_errors
def eval_cmd(settings, weight, x_spec, form, digits, guard_digits, json_output, sidecar):
    """Evaluate a weighted log series (or product) at a point."""
    digits = digits or settings.digits
    guard_digits = guard_digits or settings.guard_digits
    ctx = PrecisionContext(digits, guard_digits)

    x = resolve_point(x_spec, ctx)
    spec = SeriesSpec(Weight(weight), x, digits, guard_digits)
    table = arithfn.sieve_build(truncation_index(x, digits, guard_digits))
    result = evaluate(spec, table, Form(form))

    value = to_string(fx_round(result.value, digits))
    payload = {
        "weight": weight,
        "x": x_spec,
        "form": form,
        "digits": digits,
        "value": value,
        **result.sidecar(),
    }
    if sidecar:
        Path(sidecar).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

    if json_output:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(value)


# Verification commands

@cli.command("verify")
@click.option(
    "--identity", "-i", "identity_name",
    required=True,
    type=click.Choice([name.value for name in identities.IdentityName]),
    help="Identity to check.",
)
@click.option("--x", "x_spec", help="Point p/q for the lemma2_* and general_product_* identities.")
@precision_options
@click.option("--json/--text", "json_output", default=False, help="Report format.")
@click.pass_obj
@handle_errors
def verify_cmd(settings, identity_name, x_spec, digits, guard_digits, json_output):
    """Check one identity; exit 0 iff it holds to the requested digits."""
    digits = digits or settings.digits
    guard_digits = guard_digits or settings.guard_digits
    try:
        identity = identities.IdentityId.parse(identity_name, x_spec)
    except ContractError as e:
        raise click.UsageError(str(e))

    report = identities.verify(identity, digits, guard_digits=guard_digits)

    if json_output:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        for line in render.report_lines(report):
            console.print(line, highlight=False)

    if not report.passed:
        raise SystemExit(EXIT_FAILED)


@cli.command("verify-all")
@precision_options
@click.option(
    "--workers",
    type=click.IntRange(1),
    help="Processes for independent identities (default: GOLDEN_PAIR_WORKERS or 1).",
)
@click.option("--json/--text", "json_output", default=False, help="Report format.")
@click.pass_obj
@handle_errors
def verify_all_cmd(settings, digits, guard_digits, workers, json_output):
    """Check every identity; exit 0 only if all of them hold."""
    digits = digits or settings.digits
    guard_digits = guard_digits or settings.guard_digits
    workers = workers or settings.workers

    reports = identities.verify_all(digits, guard_digits=guard_digits, workers=workers)
    passed = identities.all_passed(reports)

    if json_output:
        payload = {
            "schema": identities.REPORT_SCHEMA,
            "digits": digits,
            "pass": passed,
            "reports": [r.to_dict() for r in reports],
        }
        click.echo(json.dumps(payload, indent=2))
    else:
        console.print(render.reports_table(reports, digits))
        failed = sum(not r.passed for r in reports)
        if failed:
            console.print(f"[red]✗[/red] {failed} of {len(reports)} identities failed")
        else:
            console.print(f"[green]✓[/green] All {len(reports)} identities hold to {digits} digits")

    if not passed:
        raise SystemExit(EXIT_FAILED)


# Table commands

@cli.command("sieve")
@click.option("--limit", "-n", type=click.IntRange(1), default=100, show_default=True,
              help="Largest n to tabulate.")
@click.option("--out", "-o", type=click.Path(dir_okay=False, writable=True),
              help="Write to this file instead of standard output.")
@handle_errors
def sieve_cmd(limit, out):
    """Dump n, phi(n), mu(n) as tab-separated lines."""
    table = arithfn.sieve_build(limit)
    _write_lines(arithfn.dump_rows(table), out)


@cli.command("coeffs")
@click.option(
    "--weight", "-w",
    default=Weight.TOTIENT.value,
    type=click.Choice([*(w.value for w in Weight), "difference"]),
    help="Weight to expand; difference is totient minus moebius.",
)
@click.option("--degree", "-n", type=click.IntRange(1), default=formal.DEFAULT_DEGREE,
              show_default=True, help="Truncation degree.")
@click.option("--out", "-o", type=click.Path(dir_okay=False, writable=True),
              help="Write to this file instead of standard output.")
@handle_errors
def coeffs_cmd(weight, degree, out):
    """Print exact coefficients; exit 1 if any differs from the divisor-sum prediction."""
    table = arithfn.sieve_build(degree)
    series, mismatches = formal.check_expansion(weight, degree, table)
    _write_lines(formal.dump_rows(series), out)

    if mismatches:
        shown = ", ".join(str(n) for n in mismatches[:10])
        err_console.print(f"[red]✗[/red] {len(mismatches)} coefficient mismatches at x^n for n = {shown}")
        raise SystemExit(EXIT_FAILED)


@cli.command("constants")
@click.option("--name", type=click.Choice(CONSTANT_NAMES), help="Print only this constant.")
@precision_options
@click.pass_obj
@handle_errors
def constants_cmd(settings, name, digits, guard_digits):
    """Print the named constants sqrt5, golden, golden_inverse and e."""
    digits = digits or settings.digits
    ctx = PrecisionContext(digits, guard_digits or settings.guard_digits)

    if name:
        click.echo(to_string(fx_round(const(name, ctx), digits)))
        return

    values = {n: to_string(fx_round(const(n, ctx), digits)) for n in CONSTANT_NAMES}
    console.print(render.constants_table(values, digits))


def _exit_code(code) -> int:
    if code is None:
        return EXIT_OK
    if isinstance(code, int):
        return code
    # click prints string exit messages itself
    return EXIT_FAILED


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name=PROG_NAME)
    except SystemExit as exc:
        return _exit_code(exc.code)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
