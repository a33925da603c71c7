import click

from config import Config


def create_cli(config_class=Config):
    """Build the click group and register every command on it."""

    @click.group()
    @click.option('--threads', type=click.IntRange(min=1), default=None,
                  help='Worker threads (default: FLT_CERT_THREADS or CPU count).')
    @click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                                                   case_sensitive=False), default=None)
    @click.pass_context
    def cli(ctx, threads, log_level):
        """Certify insolvability of X^t + Y^t = B Z^t from computable hypotheses."""
        ctx.obj = {
            'config_class': config_class,
            'overrides': {'THREADS': threads, 'LOG_LEVEL': log_level},
        }

    from commands import bernoulli, certify, scan, search, selftest, verify
    cli.add_command(certify.certify)
    cli.add_command(scan.scan)
    cli.add_command(search.search)
    cli.add_command(bernoulli.bernoulli)
    cli.add_command(selftest.selftest)
    cli.add_command(verify.verify)

    return cli
