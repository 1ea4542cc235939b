"""
Bivariate polynomials f(t, y) = sum f_i(t) y^i over F_q.

Discriminants follow the formal Sylvester convention: Res_y(f, df/dy) is
the determinant with block sizes gamma - 1 and gamma even when df/dy
drops degree, and disc = (-1)^(gamma(gamma-1)/2) Res / f_gamma.
"""
import functools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .algebra import (
    FieldSpec,
    UniPoly,
    check_enumeration,
    count_distinct_roots,
    extension_spec,
    field_of,
)
from .errors import CurveError, FieldMismatchError, InexactDivisionError
from .lattice import LatticePoint, LatticePolygon, convex_hull, lattice_counts, point_on_segment

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvePoly:
    field: FieldSpec
    f: Tuple[UniPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, 'f', tuple(self.f))
        if len(self.f) < 2:
            raise CurveError("a curve polynomial needs y-degree at least 1", stage="curve")
        if any(fi.field != self.field for fi in self.f):
            raise FieldMismatchError(f"coefficients of f must all lie over {self.field}")
        if self.f[-1].is_zero():
            raise CurveError("leading coefficient f_gamma is zero", stage="curve")

    @property
    def gamma(self) -> int:
        return len(self.f) - 1

    @classmethod
    def from_lists(cls, field: FieldSpec, coeffs: Sequence[Sequence[int]]) -> 'CurvePoly':
        """f_0, ..., f_gamma given as ascending coefficient lists"""
        f = [UniPoly(field, c) for c in coeffs]
        while len(f) > 2 and f[-1].is_zero():
            f.pop()
        return cls(field, tuple(f))

    def max_degree(self) -> int:
        return max(int(fi.degree) for fi in self.f if not fi.is_zero())

    def derivative_y(self) -> List[UniPoly]:
        """Coefficients of df/dy, formal length gamma"""
        F = field_of(self.field)
        return [self.f[i].scale(F.scalar(i)) for i in range(1, len(self.f))]

    def __mul__(self, other: 'CurvePoly') -> 'CurvePoly':
        if other.field != self.field:
            raise FieldMismatchError(f"curve polynomials over {self.field} and {other.field}")
        out = [UniPoly.zero(self.field)] * (self.gamma + other.gamma + 1)
        for i, a in enumerate(self.f):
            for j, b in enumerate(other.f):
                out[i + j] = out[i + j] + a * b
        return CurvePoly(self.field, tuple(out))

    def to_json(self) -> Dict:
        return {"gamma": self.gamma, "f": [fi.to_list() for fi in self.f]}

    @classmethod
    def from_json(cls, field: FieldSpec, data: Dict) -> 'CurvePoly':
        poly = cls.from_lists(field, data["f"])
        if poly.gamma != data.get("gamma", poly.gamma):
            raise CurveError(f"stated gamma {data['gamma']} differs from the coefficient count", stage="curve")
        return poly


def support(f: CurvePoly) -> Set[LatticePoint]:
    """Exponent pairs (i, j) of the nonzero terms t^i y^j"""
    return {LatticePoint(i, j) for j, fj in enumerate(f.f) for i, c in enumerate(fj.coeffs) if c}


def newton_polygon(f: CurvePoly) -> LatticePolygon:
    points = support(f)
    if not points:
        raise CurveError("the zero polynomial has no Newton polygon", stage="curve")
    return convex_hull(points)


def baker_bound(f: CurvePoly) -> int:
    interior, _ = lattice_counts(newton_polygon(f))
    return interior


def is_delta_polynomial(f: CurvePoly, delta: LatticePolygon) -> bool:
    """Support inside delta and meeting every closed edge of delta"""
    points = support(f)
    if delta.is_degenerate:
        return newton_polygon(f) == delta
    if not all(p in delta for p in points):
        return False
    return all(any(point_on_segment(p, a, b) for p in points) for a, b in delta.edges())


def sylvester_matrix(coeffs: Sequence, deriv: Sequence, zero) -> List[List]:
    """Formal Sylvester matrix of f (degree gamma) and f' (degree gamma - 1), descending rows"""
    gamma = len(coeffs) - 1
    size = 2 * gamma - 1
    mat = [[zero] * size for _ in range(size)]
    for r in range(gamma - 1):
        for i, c in enumerate(coeffs):
            mat[r][r + gamma - i] = c
    for s in range(gamma):
        for j, c in enumerate(deriv):
            mat[gamma - 1 + s][s + gamma - 1 - j] = c
    return mat


def bareiss_det(mat: List[List[UniPoly]], field: FieldSpec) -> UniPoly:
    """Fraction-free determinant over F_q[t]"""
    n = len(mat)
    mat = [list(row) for row in mat]
    if n == 1:
        return mat[0][0]
    prev_pivot = UniPoly.one(field)
    sign = 1
    for k in range(n - 1):
        pivot_row = k
        while mat[pivot_row][k].is_zero():
            pivot_row += 1
            if pivot_row == n:
                return UniPoly.zero(field)
        if pivot_row != k:
            mat[pivot_row], mat[k] = mat[k], mat[pivot_row]
            sign = -sign
        pivot = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * mat[i][j] - mat[i][k] * mat[k][j]
                mat[i][j] = num.exact_div(prev_pivot, "Bareiss step")
            mat[i][k] = UniPoly.zero(field)
        prev_pivot = pivot
    det = mat[n - 1][n - 1]
    return det if sign == 1 else -det


def field_det(mat: List[List[int]], field: FieldSpec) -> int:
    """Gaussian elimination over a field"""
    F = field_of(field)
    n = len(mat)
    mat = [list(row) for row in mat]
    det = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if mat[i][k]), None)
        if pivot_row is None:
            return 0
        if pivot_row != k:
            mat[pivot_row], mat[k] = mat[k], mat[pivot_row]
            det = F.neg(det)
        pivot = mat[k][k]
        det = F.mul(det, pivot)
        inv = F.inv(pivot)
        for i in range(k + 1, n):
            if mat[i][k] == 0:
                continue
            factor = F.mul(mat[i][k], inv)
            for j in range(k, n):
                mat[i][j] = F.sub(mat[i][j], F.mul(factor, mat[k][j]))
    return det


def _disc_sign(gamma: int) -> int:
    return -1 if (gamma * (gamma - 1) // 2) % 2 else 1


def _sylvester_discriminant(f: CurvePoly) -> UniPoly:
    mat = sylvester_matrix(f.f, f.derivative_y(), UniPoly.zero(f.field))
    res = bareiss_det(mat, f.field)
    quot, rem = divmod(res, f.f[-1])
    if not rem.is_zero():
        logger.error(f"Resultant not divisible by f_gamma for gamma={f.gamma}")
        raise InexactDivisionError("Res_y(f, f') is not divisible by f_gamma", stage="curve")
    return quot if _disc_sign(f.gamma) == 1 else -quot


def univariate_discriminant(coeffs: Sequence[int], field: FieldSpec) -> int:
    """Discriminant of a polynomial over a field with nonzero formal leading coefficient"""
    F = field_of(field)
    deriv = [F.mul(F.scalar(i), coeffs[i]) for i in range(1, len(coeffs))]
    res = field_det(sylvester_matrix(list(coeffs), deriv, 0), field)
    disc = F.div(res, coeffs[-1])
    return disc if _disc_sign(len(coeffs) - 1) == 1 else F.neg(disc)


def interpolate(xs: Sequence[int], ys: Sequence[int], field: FieldSpec) -> UniPoly:
    """Lagrange interpolation through distinct nodes"""
    F = field_of(field)
    master = UniPoly.one(field)
    for x in xs:
        master = master * UniPoly(field, [F.neg(x), 1])
    result = UniPoly.zero(field)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = master // UniPoly(field, [F.neg(xi), 1])
        weight = F.div(yi, basis.evaluate(xi))
        result = result + basis.scale(weight)
    return result


def _interpolated_discriminant(f: CurvePoly) -> UniPoly:
    gamma, maxdeg = f.gamma, f.max_degree()
    bound = (2 * gamma - 1) * maxdeg
    q = f.field.cardinality
    k = 1
    while q ** k <= bound + gamma * maxdeg:
        k += 1
    ext = extension_spec(f.field, k)
    lead = f.f[-1]
    xs, ys = [], []
    for a in range(ext.cardinality):
        if len(xs) == bound + 1:
            break
        values = [fi.evaluate(a, ext) for fi in f.f]
        if values[-1] == 0:
            continue
        xs.append(a)
        ys.append(univariate_discriminant(values, ext))
    if len(xs) < bound + 1:
        raise CurveError(f"not enough interpolation nodes in {ext}", stage="curve")
    disc = interpolate(xs, ys, ext)
    if any(c >= q for c in disc.coeffs):
        raise InexactDivisionError("interpolated discriminant leaves the base field", stage="curve")
    logger.debug(f"Interpolated discriminant of degree {disc.degree} from {len(xs)} nodes in {ext}")
    return UniPoly(f.field, disc.coeffs)


def discriminant_y(f: CurvePoly, method: str = 'sylvester') -> UniPoly:
    """Discriminant of f with respect to y; the zero polynomial when f is not squarefree in y"""
    if f.gamma < 2:
        raise CurveError(f"discriminant needs gamma >= 2, got {f.gamma}", stage="curve")
    if method == 'sylvester':
        return _sylvester_discriminant(f)
    if method == 'interpolation':
        return _interpolated_discriminant(f)
    raise CurveError(f"unknown discriminant method {method!r}", stage="curve")


Monomial = Tuple[int, ...]


def _poly_mul_monomial(poly: Dict[Monomial, int], coeff: int, var: int) -> Dict[Monomial, int]:
    out = {}
    for mono, c in poly.items():
        m = list(mono)
        m[var] += 1
        out[tuple(m)] = c * coeff
    return out


@functools.lru_cache(maxsize=None)
def generic_discriminant(gamma: int) -> Tuple[Tuple[Monomial, int], ...]:
    """Integer discriminant of a_0 + a_1 y + ... + a_gamma y^gamma as (exponents, coefficient) terms"""
    if gamma < 2:
        raise CurveError(f"discriminant needs gamma >= 2, got {gamma}", stage="curve")
    # entries are (coefficient, variable index) or None
    coeffs = [(1, i) for i in range(gamma + 1)]
    deriv = [(i, i) for i in range(1, gamma + 1)]
    mat = sylvester_matrix(coeffs, deriv, None)
    n = len(mat)
    nvars = gamma + 1

    @functools.lru_cache(maxsize=None)
    def minor(row: int, cols: int) -> Tuple[Tuple[Monomial, int], ...]:
        if row == n:
            return (((0,) * nvars, 1),)
        total: Dict[Monomial, int] = {}
        position = 0
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = mat[row][c]
            if entry is not None and entry[0] != 0:
                sign = -1 if position % 2 else 1
                sub = dict(minor(row + 1, cols & ~(1 << c)))
                for mono, value in _poly_mul_monomial(sub, sign * entry[0], entry[1]).items():
                    total[mono] = total.get(mono, 0) + value
            position += 1
        return tuple((m, v) for m, v in total.items() if v)

    res = minor(0, (1 << n) - 1)
    sign = _disc_sign(gamma)
    terms = []
    for mono, value in res:
        if mono[gamma] == 0:
            raise InexactDivisionError("generic resultant not divisible by the leading coefficient", stage="curve")
        m = list(mono)
        m[gamma] -= 1
        terms.append((tuple(m), sign * value))
    return tuple(sorted(terms))


def eval_t(f: CurvePoly, a: int, field: Optional[FieldSpec] = None) -> UniPoly:
    """f(a, y) as a polynomial in y over field (default the base field)"""
    field = field or f.field
    return UniPoly(field, [fi.evaluate(a, field) for fi in f.f])


def projective_fibre_count(f: CurvePoly, a: int, field: Optional[FieldSpec] = None) -> int:
    """Distinct [y:z] over field with sum f_i(a) y^i z^(gamma-i) = 0; gamma + 1 flags a zero fibre"""
    h = eval_t(f, a, field)
    if h.is_zero():
        return f.gamma + 1
    count = count_distinct_roots(h)
    if h.degree < f.gamma:
        count += 1
    return count


def count_affine_points(f: CurvePoly, k: int = 1) -> int:
    """Points (t, y) over F_{q^k} on the affine plane model f = 0"""
    ext = extension_spec(f.field, k)
    check_enumeration(ext.cardinality, f"affine point count over {ext}")
    total = 0
    for a in range(ext.cardinality):
        h = eval_t(f, a, ext)
        total += ext.cardinality if h.is_zero() else count_distinct_roots(h)
    return total
