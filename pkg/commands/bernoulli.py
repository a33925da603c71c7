import json

import click

from commands.common import get_app
from services.errors import DomainError


@click.command('bernoulli')
@click.option('--t', 't', type=int, required=True)
@click.option('--exact-cap', type=click.IntRange(min=2), default=None)
@click.option('--full-scan', is_flag=True)
@click.option('--json', 'as_json', is_flag=True)
@click.pass_context
def bernoulli(ctx, t, exact_cap, full_scan, as_json):
    """Irregular pairs of t and its good-prime verdict."""
    app = get_app(ctx, EXACT_BERNOULLI_CAP=exact_cap)
    try:
        verdict = app.bernoulli.good_prime_check(t, full_scan=full_scan)
    except DomainError as e:
        raise click.UsageError(str(e))

    report = verdict.report
    if as_json:
        click.echo(json.dumps({
            'report': report.to_dict(),
            'is_good': verdict.is_good,
            'branch': verdict.branch.value,
            'assumptions': [a.to_dict() for a in verdict.assumptions],
        }, indent=2, sort_keys=True))
        return

    click.echo(f"irregular pairs: {report.pairs_display()}, ι = {report.iota}")
    if report.scan_failure_index is not None:
        n = report.scan_failure_index
        click.echo(f"t^3 divides B_{2 * n * t} (n = {n})")
    if report.scan_mod_t_cubed is not None:
        zeros = [n for n, r in report.scan_mod_t_cubed if r == 0]
        click.echo(f"B_2nt mod t^3: {len(report.scan_mod_t_cubed)} residues, "
                   f"{'zero at n = ' + str(zeros) if zeros else 'all nonzero'}")
    quality = 'good prime' if verdict.is_good else 'not a good prime'
    click.echo(f"ι = {report.iota}; {quality} (branch {verdict.branch.value})")
    for a in verdict.assumptions:
        click.echo(f"assumes: {a.statement}")
