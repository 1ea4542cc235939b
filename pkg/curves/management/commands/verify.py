from curves.management.base import CurveCommand
from curves.services import get_curve_service


class Command(CurveCommand):
    help = 'Re-verify a certificate file from scratch'
    command_name = 'verify'

    def add_arguments(self, parser):
        parser.add_argument('--cert', required=True, help='Certificate JSON path')

    def run(self, config):
        cert = get_curve_service().load_certificate(config.input_path)
        self.stdout.write(f"OK N1={cert.n1} genus={cert.genus} gonality={cert.gonality}")
