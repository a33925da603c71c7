import click

from commands.common import EXIT_INTERNAL, EXIT_IO, fail, get_app
from services.errors import DomainError, IdentityFailure
from services.scan_service import FORMATS, parse_range


@click.command('scan')
@click.option('--t', 't_range', required=True, help="Exponents, e.g. '5,7,11' or '5..13'.")
@click.option('--B', 'b_range', required=True, help="Coefficients, e.g. '2..20'.")
@click.option('--output', '-o', default='-', type=click.Path(dir_okay=False, allow_dash=True),
              help='Output file (default: standard output).')
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default='jsonl')
@click.option('--threads', type=click.IntRange(min=1), default=None)
@click.option('--full-scan', is_flag=True)
@click.pass_context
def scan(ctx, t_range, b_range, output, fmt, threads, full_scan):
    """Evaluate the corollary over a grid of (t, B), one record per pair."""
    try:
        ts = parse_range(t_range)
        bs = parse_range(b_range)
    except DomainError as e:
        raise click.UsageError(str(e))

    app = get_app(ctx, THREADS=threads, FULL_SCAN=full_scan or None)

    try:
        with click.open_file(output, 'w', encoding='utf-8') as stream:
            summary = app.scan.write(ts, bs, stream, fmt=fmt)
    except DomainError as e:
        raise click.UsageError(str(e))
    except IdentityFailure as e:
        fail(ctx, f"identity check failed: {e}", EXIT_INTERNAL)
    except OSError as e:
        fail(ctx, f"cannot write {output}: {e}", EXIT_IO)

    counts = ', '.join(f"{k}={v}" for k, v in sorted(summary.items()) if k != 'records')
    click.echo(f"{summary['records']} records ({counts})", err=True)
