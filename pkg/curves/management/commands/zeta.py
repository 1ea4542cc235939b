from curves.errors import VerificationError
from curves.management.base import CurveCommand
from curves.services import get_curve_service


class Command(CurveCommand):
    help = 'Check the genus of a certified curve against its zeta function'
    command_name = 'zeta'

    def add_arguments(self, parser):
        parser.add_argument('--cert', required=True, help='Certificate JSON path')
        parser.add_argument('--genus', type=int, default=None, help='Genus to test (defaults to the certified genus)')
        self.add_jobs_argument(parser)

    def run(self, config):
        verdict = get_curve_service().zeta(config)
        if verdict.data is not None:
            coeffs = ",".join(str(a) for a in verdict.data.a_coeffs)
            self.stdout.write(f"P(T) coefficients: [{coeffs}]")
        for k in sorted(verdict.predicted):
            self.stdout.write(f"N_{k}: predicted {verdict.predicted[k]}, observed {verdict.observed.get(k)}")
        self.stdout.write(f"{verdict.label}, genus {verdict.genus}")
        if not verdict.consistent:
            raise VerificationError(verdict.reason or f"counts are inconsistent with genus {verdict.genus}", check="zeta")
