from curves.errors import ConfigError
from curves.management.base import CurveCommand
from curves.services import get_curve_service


class Command(CurveCommand):
    help = 'Count points of a certified curve over F_(q^k)'
    command_name = 'count'

    def add_arguments(self, parser):
        parser.add_argument('--cert', required=True, help='Certificate JSON path')
        group = parser.add_mutually_exclusive_group()
        group.add_argument('--ext', type=int, default=None, help='Extension degree k')
        group.add_argument('--ext-max', type=int, default=None, help='Count N_1 .. N_K')
        self.add_jobs_argument(parser)

    def run(self, config):
        if config.ext is None and config.ext_max is None:
            raise ConfigError("count needs --ext or --ext-max")
        for k, n, inside in get_curve_service().point_counts(config):
            window = "inside" if inside else "OUTSIDE"
            self.stdout.write(f"k={k} N={n} weil={window}")
