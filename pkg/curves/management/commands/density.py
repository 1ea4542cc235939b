import json

from curves.management.base import CurveCommand
from curves.services import density_rows, get_curve_service


class Command(CurveCommand):
    help = 'Truncated Euler product and empirical frequency of squarefree F'
    command_name = 'density'

    def add_arguments(self, parser):
        self.add_field_arguments(parser)
        parser.add_argument('--gamma', type=int, required=True, help='Gonality')
        parser.add_argument('--d', default=None, help='Comma-separated degrees for the empirical run, e.g. 3,5,1')
        parser.add_argument('--trials', type=int, default=0, help='Empirical trials (0 skips the empirical run)')
        parser.add_argument('--seed', type=int, default=None, help='Unsigned 64-bit seed for the empirical run')
        parser.add_argument('--max-prime-degree', type=int, default=None, help='Truncation degree of the Euler product')
        parser.add_argument('--json', action='store_true', help='Print the report as JSON')
        self.add_jobs_argument(parser)

    def run(self, config):
        report = get_curve_service().density(config)
        if config.as_json:
            self.stdout.write(json.dumps(report.to_json(), sort_keys=True, indent=2))
            return
        for row in density_rows(report):
            self.stdout.write(f"p={row['p']} deg={row['degree']} c_p={row['cp']} factor={row['factor']}")
        product = report.truncated_product
        self.stdout.write(f"truncated product = {product} ~ {float(product):.6f}")
        if report.empirical is not None:
            frequency = report.empirical['frequency']
            self.stdout.write(f"empirical = {report.empirical['successes']}/{report.empirical['trials']} ~ {frequency:.6f}")
            self.stdout.write(f"difference = {abs(frequency - float(product)):.6f}")
