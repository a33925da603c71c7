import json

import click

from commands.common import EXIT_INTERNAL, get_app
from services.errors import DomainError, IdentityFailure


@click.command('search')
@click.option('--t', 't', type=int, required=True)
@click.option('--B', 'B', type=int, required=True)
@click.option('--bound', 'H', type=click.IntRange(min=1), required=True)
@click.option('--require-t-divides-z', is_flag=True, help='Keep only solutions with t | Z.')
@click.option('--threads', type=click.IntRange(min=1), default=None)
@click.pass_context
def search(ctx, t, B, H, require_t_divides_z, threads):
    """List primitive solutions with max(|X|, |Y|) <= H, one JSON object per line."""
    app = get_app(ctx, THREADS=threads)
    try:
        solutions = app.search.find_solutions(t, B, H, only_t_divides_z=require_t_divides_z)
    except DomainError as e:
        raise click.UsageError(str(e))
    except IdentityFailure as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INTERNAL)

    for s in solutions:
        click.echo(json.dumps(s.to_dict(), sort_keys=True))
    click.echo(f"{len(solutions)} solution(s) with max(|X|, |Y|) <= {H}", err=True)
