import json

import click

from commands.common import EXIT_INTERNAL, EXIT_IO, exit_code_for, fail, get_app
from services.errors import ContradictionError, DomainError, IdentityFailure


@click.command('certify')
@click.option('--t', 't', type=int, required=True, help='Prime exponent t > 3.')
@click.option('--B', 'B', type=int, required=True, help='Nonzero coefficient B.')
@click.option('--bound', 'H', type=click.IntRange(min=1), default=None,
              help='Also search max(|X|, |Y|) <= H and check consistency.')
@click.option('--theorem-only', is_flag=True, help='Evaluate the t | Z statement only.')
@click.option('--corollary-only', is_flag=True, help='Exit 0 only when the full statement holds.')
@click.option('--full-scan', is_flag=True, help='Record every B_2nt residue mod t^3.')
@click.option('--exact-cap', type=click.IntRange(min=2), default=None)
@click.option('--output', '-o', 'output', type=click.Path(dir_okay=False), default=None,
              help='Write the JSON certificate here instead of standard output.')
@click.option('--pdf', 'pdf_path', type=click.Path(dir_okay=False), default=None,
              help='Also render a printable PDF certificate.')
@click.option('--format', 'fmt', type=click.Choice(['json', 'text']), default='json')
@click.pass_context
def certify(ctx, t, B, H, theorem_only, corollary_only, full_scan, exact_cap, output, pdf_path, fmt):
    """Evaluate every hypothesis for (t, B) and emit a certificate."""
    if theorem_only and corollary_only:
        raise click.UsageError('--theorem-only and --corollary-only are exclusive')

    app = get_app(ctx, FULL_SCAN=full_scan or None, EXACT_BERNOULLI_CAP=exact_cap)
    mode = 'theorem' if theorem_only else 'corollary'

    try:
        if theorem_only:
            verdict = app.hypotheses.evaluate_theorem(t, B)
        else:
            verdict = app.hypotheses.evaluate_corollary(t, B)
        irregularity = app.hypotheses.irregularity(t) if verdict.good_prime_branch else None

        evidence = None
        if H is not None:
            if verdict.good_prime_branch is None:
                app.logger.warning("skipping bounded search: (t=%s, B=%s) is outside its domain", t, B)
            else:
                evidence = app.search.consistency_check(t, B, H)

        inputs = {'t': t, 'B': B, 'mode': mode, 'full_scan': app.config['FULL_SCAN'], 'bound': H}
        certificate = app.export.build_certificate(verdict, irregularity, evidence, inputs=inputs)
    except DomainError as e:
        raise click.UsageError(str(e))
    except ContradictionError as e:
        click.echo(json.dumps(e.report.to_dict(), indent=2, sort_keys=True), err=True)
        fail(ctx, str(e), EXIT_INTERNAL)
    except IdentityFailure as e:
        fail(ctx, f"identity check failed: {e}", EXIT_INTERNAL)

    rendered = (app.export.render_json(certificate) if fmt == 'json'
                else app.export.render_text(certificate))
    try:
        if output:
            with open(output, 'w', encoding='utf-8') as f:
                f.write(rendered)
            click.echo(f"certificate written to {output}", err=True)
        else:
            click.echo(rendered, nl=False)
        if pdf_path:
            with open(pdf_path, 'wb') as f:
                f.write(app.export.generate_pdf_certificate(certificate))
    except OSError as e:
        fail(ctx, f"cannot write output: {e}", EXIT_IO)

    ctx.exit(exit_code_for(verdict.conclusion, corollary_only=corollary_only))
