import click

from app import create_app
from config import Config
from services.hypothesis_service import Conclusion

EXIT_OK = 0
EXIT_THEOREM = 10
EXIT_NOT_APPLICABLE = 20
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTERNAL = 4

CONCLUSION_EXIT_CODES = {
    Conclusion.COROLLARY_HOLDS: EXIT_OK,
    Conclusion.THEOREM_HOLDS: EXIT_THEOREM,
    Conclusion.NOT_APPLICABLE: EXIT_NOT_APPLICABLE,
}


def exit_code_for(conclusion, corollary_only=False):
    if corollary_only and conclusion != Conclusion.COROLLARY_HOLDS:
        return EXIT_NOT_APPLICABLE
    return CONCLUSION_EXIT_CODES[conclusion]


def get_app(ctx, **overrides):
    """Build the app for this command, applying group- and command-level overrides."""
    settings = ctx.find_root().obj or {}
    merged = dict(settings.get('overrides', {}))
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return create_app(settings.get('config_class', Config), **merged)


def fail(ctx, message, code):
    click.echo(f"Error: {message}", err=True)
    ctx.exit(code)
