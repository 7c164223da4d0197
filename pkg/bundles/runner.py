"""In-process entry point for the ``homalg`` command."""
import logging
from io import StringIO

from django.core.management.base import CommandError

from .management.commands.homalg import BAD_INPUT, Command

logger = logging.getLogger(__name__)


def run_command(argv):
    """Run ``homalg`` with the given arguments; returns (exit_code, report_text)"""
    stdout, stderr = StringIO(), StringIO()
    command = Command(stdout=stdout, stderr=stderr)
    try:
        command.run_from_argv(['manage.py', 'homalg', *argv])
        code = 0
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else BAD_INPUT
    except CommandError as exc:
        code = exc.returncode
    if stderr.getvalue():
        logger.debug(f"homalg {' '.join(argv)}: {stderr.getvalue().strip()}")
    return code, stdout.getvalue()
