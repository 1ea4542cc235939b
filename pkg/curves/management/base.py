"""
Shared plumbing for the curve management commands.
"""
import logging
import sys

from django.core.management.base import BaseCommand, CommandError, CommandParser

from curves.config import RunConfig
from curves.errors import BudgetExhaustedError, ConfigError, CurveError

logger = logging.getLogger('curves')


class ConfigExitParser(CommandParser):
    """Argument errors exit with the configuration exit code"""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(ConfigError.exit_code, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=ConfigError.exit_code)


class CurveCommand(BaseCommand):
    """Builds a RunConfig from the options and maps CurveError to exit codes"""

    command_name = ''

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = ConfigExitParser
        return parser

    def add_field_arguments(self, parser):
        parser.add_argument('--p', type=int, required=True, help='Field characteristic')
        parser.add_argument('--e', type=int, default=1, help='Field degree over F_p')
        parser.add_argument('--modulus', help='Comma-separated coefficients of the defining polynomial, low degree first')

    def add_jobs_argument(self, parser):
        parser.add_argument('--jobs', type=int, default=None, help='Parallel workers (defaults to GONAL_JOBS)')

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(self.command_name, options)
            logger.setLevel(config.log_level)
            self.run(config)
        except CurveError as e:
            if isinstance(e, BudgetExhaustedError) and e.advisory:
                self.stderr.write(e.advisory)
            logger.debug(f"{type(e).__name__} in stage {e.stage}: {e.message}")
            raise CommandError(f"{e.stage}: {e.message}", returncode=e.exit_code)

    def run(self, config: RunConfig):
        raise NotImplementedError
