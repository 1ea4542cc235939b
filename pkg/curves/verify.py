"""
Independent checks of a constructed curve: discriminant valuations, fibres
above P^1(F_q), genus accounting, point counts over extensions, the zeta
oracle and the gonality bound.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from .algebra import INF, FieldSpec, UniPoly, check_enumeration, extension_spec, field_of, is_squarefree, valuation_at
from .conf import gonal_setting
from .construct import ConstructionInstance, assemble_f, capital_F
from .curve import CurvePoly, baker_bound, discriminant_y, projective_fibre_count
from .errors import CapExceededError, CurveError, VerificationError
from .lattice import LatticePolygon, edge_lattice_count, lattice_counts
from .zeta import ZetaVerdict, check_genus

logger = logging.getLogger(__name__)

INFINITY = "inf"
Place = Union[int, str]


@dataclass
class FibreCertificate:
    place: Place
    expected: Tuple[int, ...]
    observed: Tuple
    slopes: Tuple[int, ...]
    passed: bool

    def to_json(self) -> Dict:
        return {"place": self.place, "expected": list(self.expected), "slopes": list(self.slopes), "passed": self.passed}


@dataclass
class Certificate:
    instance: ConstructionInstance
    g_tuple: Tuple[UniPoly, ...]
    f: CurvePoly
    disc_checks: Dict
    fibres: List[FibreCertificate]
    polygon: LatticePolygon
    interior: int
    n1: int
    genus: int
    gonality: int
    trials: int
    verified: bool = True
    point_counts: Dict[int, int] = field(default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.instance.field


def _linear(field_spec: FieldSpec, a: int) -> UniPoly:
    """t - a"""
    return UniPoly(field_spec, [field_of(field_spec).neg(a), 1])


def check_discriminant(instance: ConstructionInstance, f: CurvePoly) -> Dict:
    """v_(t-a)(disc) = 2L on F_q, v_beta(disc) - (gamma-1) in {0, 1}, F squarefree"""
    disc = discriminant_y(f)
    if disc.is_zero():
        raise VerificationError("discriminant of f is identically zero", check="discriminant")
    two_l = 2 * instance.profile.L
    alpha_vals = []
    for a in range(instance.q):
        v = valuation_at(disc, _linear(instance.field, a))
        if v != two_l:
            logger.error(f"v_(t-{a})(disc) = {v}, expected {two_l}")
            raise VerificationError(f"v_(t-{a})(disc) = {v}, expected {two_l}", check="discriminant")
        alpha_vals.append(v)
    v_beta = valuation_at(disc, instance.beta)
    excess = v_beta - (instance.gamma - 1)
    gamma_vanishes = instance.gamma % instance.field.p == 0
    if excess not in ((0, 1) if gamma_vanishes else (0,)):
        raise VerificationError(f"v_beta(disc) = {v_beta} with gamma={instance.gamma}", check="discriminant")
    try:
        F = capital_F(instance, f)
    except CurveError as e:
        raise VerificationError(f"capital F: {e.message}", check="discriminant") from e
    if not is_squarefree(F):
        raise VerificationError("F has a repeated factor", check="discriminant")
    return {"alphaValuations": alpha_vals, "betaValuation": v_beta, "squarefree": True, "degreeF": int(F.degree)}


def _strictly_monotone(values: Sequence[int], decreasing: bool) -> bool:
    pairs = zip(values, values[1:])
    return all(a > b for a, b in pairs) if decreasing else all(a < b for a, b in pairs)


def fibre_certificate(instance: ConstructionInstance, f: CurvePoly, place: Place) -> FibreCertificate:
    """gamma distinct rational points above place, read off valuations and slopes"""
    gamma = instance.gamma
    if place == INFINITY:
        r, lp = instance.right.r, instance.right.lp
        expected = tuple(r + lp[gamma - i] for i in range(gamma + 1))
        observed = tuple(fi.degree for fi in f.f)
        # k'_j = deg f_(gamma-j) - deg f_(gamma-j+1)
        steps = [(observed[gamma - j], gamma - j, observed[gamma - j + 1], gamma - j + 1) for j in range(1, gamma + 1)]
        decreasing = True
    else:
        if not 0 <= place < instance.q:
            raise CurveError(f"place {place} is not an element of {instance.field}", stage="verify")
        prime = _linear(instance.field, place)
        expected = tuple(instance.profile.l)
        observed = tuple(valuation_at(fi, prime) for fi in f.f)
        steps = [(observed[i], i, observed[i - 1], i - 1) for i in range(1, gamma + 1)]
        decreasing = False

    passed = observed == expected and all(v not in (INF, float('-inf')) for v in observed)
    slopes: Tuple[int, ...] = ()
    if passed:
        slopes = tuple(int(a - b) for a, _, b, _ in steps)
        passed = _strictly_monotone(slopes, decreasing) and all(
            edge_lattice_count((int(a), i), (int(b), j)) == 2 for a, i, b, j in steps
        )
    if not passed:
        logger.warning(f"Fibre above {place} fails: observed {observed}, expected {expected}")
    return FibreCertificate(place, expected, observed, slopes, passed)


def rational_point_count(instance: ConstructionInstance, fibres: Sequence[FibreCertificate]) -> int:
    """gamma points per certified place of P^1(F_q)"""
    places = {fc.place for fc in fibres if fc.passed}
    missing = [a for a in list(range(instance.q)) + [INFINITY] if a not in places]
    if missing:
        raise VerificationError(f"fibres above {missing} are not certified", check="fibres")
    n1 = instance.gamma * len(places)
    if n1 > instance.gamma * (instance.q + 1):
        raise VerificationError(f"N1 = {n1} exceeds gamma(q+1)", check="N1")
    return n1


def genus_check(instance: ConstructionInstance, f: CurvePoly) -> Tuple[int, int]:
    """(interior of Delta_r, interior - qL), the latter equal to the requested genus"""
    interior, _ = lattice_counts(instance.polygon)
    genus = interior - instance.q * instance.profile.L
    if genus != instance.genus:
        raise VerificationError(f"interior {interior} - qL gives genus {genus}, requested {instance.genus}", check="genus")
    if baker_bound(f) < genus:
        raise VerificationError(f"Baker's bound {baker_bound(f)} is below genus {genus}", check="genus")
    return interior, genus


def gonality_certificate(instance: ConstructionInstance, f: CurvePoly, n1: Optional[int]) -> int:
    """gamma: the t-map has degree gamma and N1 exceeds (gamma-1)(q+1)"""
    if n1 is None:
        raise VerificationError("gonality needs a certified N1", check="gonality")
    gamma, q = instance.gamma, instance.q
    if f.f[-1].is_zero() or f.f[0].is_zero():
        raise VerificationError("f does not span the full strip 0 <= j <= gamma", check="gonality")
    if n1 <= (gamma - 1) * (q + 1):
        raise VerificationError(f"N1 = {n1} does not exceed (gamma-1)(q+1) = {(gamma - 1) * (q + 1)}", check="gonality")
    return gamma


def weil_window(n: int, k: int, g: int, q: int) -> bool:
    """|N - q^k - 1| <= 2 g q^(k/2), on squares"""
    return (n - q ** k - 1) ** 2 <= 4 * g * g * q ** k


def build_certificate(instance: ConstructionInstance, g_tuple: Sequence[UniPoly], trials: int) -> Certificate:
    """Assemble f and run every check; VerificationError names the first failure"""
    try:
        f = assemble_f(instance, g_tuple)
    except CurveError as e:
        raise VerificationError(f"assembly: {e.message}", check="f") from e
    return certify(instance, tuple(g_tuple), f, trials)


def certify(instance: ConstructionInstance, g_tuple: Tuple[UniPoly, ...], f: CurvePoly, trials: int) -> Certificate:
    disc_checks = check_discriminant(instance, f)
    fibres = [fibre_certificate(instance, f, a) for a in range(instance.q)]
    fibres.append(fibre_certificate(instance, f, INFINITY))
    n1 = rational_point_count(instance, fibres)
    interior, genus = genus_check(instance, f)
    gonality = gonality_certificate(instance, f, n1)
    if not weil_window(n1, 1, genus, instance.q):
        raise VerificationError(f"N1 = {n1} outside the Weil window for genus {genus}", check="N1")
    logger.info(f"Certificate verified: N1={n1} genus={genus} gonality={gonality} interior={interior}")
    return Certificate(instance, g_tuple, f, disc_checks, fibres, instance.polygon, interior, n1, genus, gonality, trials)


def _require_certificate(cert) -> None:
    if not isinstance(cert, Certificate) or not cert.verified:
        raise VerificationError("point counting needs a verified certificate", check="certificate")


def _quadratic_fibre_counts(f: CurvePoly, ext: FieldSpec, xs: np.ndarray) -> Tuple[int, int]:
    """(sum of projective fibre counts, zero fibres) for gamma = 2 over the points xs"""
    E = field_of(ext)
    c0, c1, c2 = (E.veval(fi.coeffs, xs) for fi in f.f)
    zero_fibre = (c0 == 0) & (c1 == 0) & (c2 == 0)
    if E.p == 2:
        denom = E.vinv(E.vmul(c1, c1))
        trace = E.vtrace_f2(E.vmul(E.vmul(c0, c2), denom))
        full = np.where(c1 == 0, 1, np.where(trace == 0, 2, 0))
    else:
        disc = E.vsub(E.vmul(c1, c1), E.vmul(E.vmul(c0, c2), E.scalar(4)))
        full = np.where(disc == 0, 1, np.where(E.vis_square(disc), 2, 0))
    # leading coefficient vanishes: affine roots of c1 y + c0 plus [1:0]
    dropped = np.where(c1 != 0, 1, 0) + 1
    counts = np.where(c2 != 0, full, dropped)
    counts = np.where(zero_fibre, 0, counts)
    return int(counts.sum()), int(zero_fibre.sum())


def _general_fibre_counts(f: CurvePoly, ext: FieldSpec, xs: Sequence[int]) -> Tuple[int, int]:
    total = zeros = 0
    for a in xs:
        c = projective_fibre_count(f, int(a), ext)
        if c == f.gamma + 1:
            zeros += 1
        else:
            total += c
    return total, zeros


def count_points_ext(cert: Certificate, k: int, jobs: int = 1) -> int:
    """N_k = gamma(q+1) + sum of fibre counts over t in F_(q^k) minus F_q"""
    _require_certificate(cert)
    if k < 1:
        raise CurveError(f"extension degree {k} must be at least 1", stage="verify")
    if k in cert.point_counts:
        return cert.point_counts[k]
    instance, f = cert.instance, cert.f
    q = instance.q
    Q = q ** k
    check_enumeration(Q, f"point count over F_{Q}")
    base = instance.gamma * (q + 1)
    if k == 1:
        return base
    ext = extension_spec(instance.field, k)
    chunk = 1 << 18
    ranges = [(lo, min(lo + chunk, Q)) for lo in range(q, Q, chunk)]
    if instance.gamma == 2:
        worker = lambda lo, hi: _quadratic_fibre_counts(f, ext, np.arange(lo, hi, dtype=np.int64))
        parts = [worker(lo, hi) for lo, hi in ranges]
    else:
        ranges = [(lo, min(lo + 2048, Q)) for lo in range(q, Q, 2048)]
        if jobs > 1:
            parts = Parallel(n_jobs=jobs)(delayed(_general_fibre_counts)(f, ext, range(lo, hi)) for lo, hi in ranges)
        else:
            parts = [_general_fibre_counts(f, ext, range(lo, hi)) for lo, hi in ranges]
    total = sum(p[0] for p in parts)
    zeros = sum(p[1] for p in parts)
    if zeros:
        logger.error(f"{zeros} identically zero fibres over F_{Q}")
        raise VerificationError(f"{zeros} identically zero fibres over F_{Q}", check="fibres")
    n = base + total
    logger.info(f"N_{k} = {n} over F_{Q}")
    cert.point_counts[k] = n
    return n


def zeta_genus(cert: Certificate, g_claim: Optional[int] = None, jobs: int = 1) -> ZetaVerdict:
    """Fit the zeta numerator to N_1..N_g and confirm N_(g+1), N_(g+2)"""
    _require_certificate(cert)
    g = cert.genus if g_claim is None else g_claim
    cap = gonal_setting('GONAL_ENUMERATION_CAP')
    size = cert.instance.q ** (g + 2)
    if size > cap:
        logger.error(f"zeta check for genus {g} needs F_{size}, cap is {cap}")
        raise CapExceededError(f"zeta check for genus {g} needs counts over F_{size}, cap is {cap}", size=size, cap=cap)
    return check_genus(cert.instance.q, g, lambda k: count_points_ext(cert, k, jobs))
