from curves.certificates import dump_certificate
from curves.management.base import CurveCommand
from curves.services import get_curve_service, summarize


class Command(CurveCommand):
    help = 'Construct a curve of given gonality and genus with gamma(q+1) rational points and write its certificate'
    command_name = 'construct'

    def add_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument('--gamma', type=int, required=True, help='Gonality')
        parser.add_argument('--genus', type=int, required=True, help='Target genus')
        parser.add_argument('--seed', type=int, default=None, help='Unsigned 64-bit search seed')
        parser.add_argument('--budget', type=int, default=None, help='Maximum number of random trials')
        parser.add_argument('--out', default=None, help='Certificate path (printed to stdout when omitted)')
        self.add_jobs_argument(parser)

    def run(self, config):
        cert = get_curve_service().construct(config)
        self.stdout.write(summarize(cert))
        if not config.output_path:
            self.stdout.write(dump_certificate(cert), ending='')
