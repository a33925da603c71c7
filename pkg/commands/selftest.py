import click

from commands.common import EXIT_INTERNAL, get_app
from services.errors import DomainError


@click.command('selftest')
@click.option('--t-max', type=int, default=None, help='Largest prime t to check (default 13).')
@click.option('--seed', type=int, default=None)
@click.pass_context
def selftest(ctx, t_max, seed):
    """Machine-check the cyclotomic identities behind the descent."""
    app = get_app(ctx, SELFTEST_SEED=seed)
    try:
        results = app.selftest.run(t_max=t_max if t_max is not None else app.config['SELFTEST_T_MAX'])
    except DomainError as e:
        raise click.UsageError(str(e))

    for r in results:
        mark = 'PASS' if r.passed else 'FAIL'
        line = f"[{mark}] t={r.t} {r.name} ({r.checked} checked): {r.anchor}"
        if r.detail and not r.passed:
            line += f" -- {r.detail}"
        click.echo(line)

    failed = sum(not r.passed for r in results)
    click.echo(f"{len(results) - failed}/{len(results)} identity checks passed")
    if failed:
        ctx.exit(EXIT_INTERNAL)
