"""
Service layer behind the management commands: construction, certificate
file I/O, verification, point counts, the zeta oracle and density reports.
"""
import logging
import os
from typing import Dict, List, Optional, Tuple

from .certificates import dump_certificate, load_document, verify_document
from .config import RunConfig
from .construct import DiscriminantFamily, construct_curve
from .density import DensityReport, empirical_density, truncated_density
from .errors import ConfigError, SchemaError
from .verify import Certificate, count_points_ext, weil_window, zeta_genus
from .zeta import ZetaVerdict

logger = logging.getLogger(__name__)


def summarize(cert: Certificate) -> str:
    """One-line summary of a verified certificate"""
    instance = cert.instance
    d = ",".join(str(x) for x in instance.d)
    return f"N1={cert.n1} genus={cert.genus} r={instance.right.r} d=[{d}] trials={cert.trials}"


class CurveService:
    """Runs the pipeline for one configuration at a time"""

    def __init__(self):
        logger.debug("Curve service initialized")

    def construct(self, config: RunConfig) -> Certificate:
        config.require('p', 'gamma', 'genus')
        field = config.field_spec()
        logger.info(f"Constructing q={field.cardinality} gamma={config.gamma} g={config.genus} seed={config.seed}")
        cert = construct_curve(field, config.gamma, config.genus, config.seed, config.budget, config.jobs)
        if config.output_path:
            self.write_certificate(cert, config.output_path)
        return cert

    def write_certificate(self, cert: Certificate, path: str) -> None:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(dump_certificate(cert))
        logger.info(f"Certificate written to {path}")

    def load_certificate(self, path: Optional[str]) -> Certificate:
        """Read, validate and fully re-verify a certificate file"""
        if not path:
            raise ConfigError("a certificate path is required (--cert)")
        try:
            with open(path, encoding='utf-8') as fh:
                text = fh.read()
        except OSError as e:
            logger.error(f"Cannot read certificate {path}: {e}")
            raise ConfigError(f"cannot read certificate {path}: {e}")
        if not text.strip():
            raise SchemaError(f"certificate {path} is empty")
        return verify_document(load_document(text))

    def point_counts(self, config: RunConfig) -> List[Tuple[int, int, bool]]:
        """(k, N_k, inside Weil window) for the requested extension degrees"""
        cert = self.load_certificate(config.input_path)
        if config.ext_max is not None:
            degrees = range(1, config.ext_max + 1)
        else:
            degrees = [config.ext or 1]
        rows = []
        for k in degrees:
            n = count_points_ext(cert, k, config.jobs)
            rows.append((k, n, weil_window(n, k, cert.genus, cert.instance.q)))
        return rows

    def zeta(self, config: RunConfig) -> ZetaVerdict:
        cert = self.load_certificate(config.input_path)
        return zeta_genus(cert, config.genus, config.jobs)

    def density(self, config: RunConfig) -> DensityReport:
        config.require('p', 'gamma')
        family = DiscriminantFamily.create(config.field_spec(), config.gamma)
        report = truncated_density(family, config.truncation_degree, config.jobs)
        if config.trials:
            config.require('degrees')
            report.empirical = empirical_density(family, config.degrees, config.trials, config.seed, config.jobs)
        return report


_curve_service = None


def get_curve_service() -> CurveService:
    """Get or create the curve service instance"""
    global _curve_service
    if _curve_service is None:
        _curve_service = CurveService()
    return _curve_service


def density_rows(report: DensityReport) -> List[Dict]:
    return [
        {"p": lf.prime.to_text(), "degree": int(lf.prime.degree), "cp": lf.cp, "factor": lf.factor}
        for lf in report.per_prime
    ]
