import click

from commands.common import EXIT_INTERNAL, EXIT_IO, fail, get_app
from services.errors import DomainError


@click.command('verify')
@click.argument('path', type=click.Path(dir_okay=False, allow_dash=True))
@click.pass_context
def verify(ctx, path):
    """Re-evaluate a stored certificate and compare it row by row."""
    try:
        with click.open_file(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        fail(ctx, f"cannot read {path}: {e}", EXIT_IO)

    app = get_app(ctx)
    try:
        certificate = app.export.parse_certificate(text)
    except DomainError as e:
        raise click.UsageError(str(e))

    # Re-run with the settings recorded in the certificate so evidence strings match
    app = get_app(ctx, FULL_SCAN=bool(certificate.inputs.get('full_scan', False)))
    differing = app.export.recheck_certificate(certificate, app.hypotheses)
    v = certificate.verdict
    if differing:
        click.echo(f"certificate for t={v.t}, B={v.B} does NOT match: {', '.join(differing)}")
        ctx.exit(EXIT_INTERNAL)
    click.echo(f"certificate for t={v.t}, B={v.B} matches: {v.conclusion.value}")
