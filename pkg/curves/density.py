"""
Density of coefficient tuples with squarefree F.

The density is the Euler product of local factors 1 - c_p / |p|^(2(gamma+1)),
where c_p counts residue tuples g mod p^2 with F(g) = 0 mod p^2. Since
F = F_1 / (p^e D') with D' prime to p, that condition reads
F_1(g) = 0 mod p^(2+e), so counting happens in F_q[t]/(p^(2+e)).
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from .algebra import FieldSpec, UniPoly, check_enumeration, field_of, is_irreducible, valuation_at
from .conf import gonal_setting
from .construct import DiscriminantFamily, capital_F, run_trials
from .curve import discriminant_y, generic_discriminant
from .errors import CurveError, VerificationError
from .tables import code_to_digits, digits_to_code

logger = logging.getLogger(__name__)


@dataclass
class LocalFactor:
    prime: UniPoly
    cp: int
    norm: int

    @property
    def total(self) -> int:
        """|p|^(2(gamma+1)) residue tuples"""
        return self.norm

    @property
    def factor(self) -> Fraction:
        return 1 - Fraction(self.cp, self.norm)

    def to_json(self) -> Dict:
        return {"p": self.prime.to_list(), "cp": self.cp, "localFactor": str(self.factor)}


@dataclass
class DensityReport:
    q: int
    gamma: int
    profile: Dict
    beta: List[int]
    truncation_degree: int
    per_prime: List[LocalFactor] = field(default_factory=list)
    truncated_product: Fraction = Fraction(1)
    empirical: Optional[Dict] = None

    def to_json(self) -> Dict:
        data = {
            "q": self.q,
            "gamma": self.gamma,
            "profile": self.profile,
            "beta": self.beta,
            "truncationDegree": self.truncation_degree,
            "perPrime": [lf.to_json() for lf in self.per_prime],
            "truncatedProduct": str(self.truncated_product),
            "truncatedProductFloat": float(self.truncated_product),
        }
        if self.empirical is not None:
            data["empirical"] = self.empirical
        return data


class ResidueRing:
    """F_q[t]/(P), elements coded as base-q digit strings of the reduced residue"""

    def __init__(self, modulus: UniPoly):
        if modulus.degree < 1 or modulus.leading != 1:
            raise CurveError(f"residue ring needs a monic modulus of positive degree, got {modulus!r}", stage="density")
        self.modulus = modulus
        self.field = modulus.field
        self.F = field_of(self.field)
        self.q = self.field.cardinality
        self.n = int(modulus.degree)
        self.order = self.q ** self.n
        # t^k mod P for k = n .. 2n-2
        self._wrap = []
        for k in range(self.n, 2 * self.n - 1):
            rem = UniPoly.monomial(self.field, k) % modulus
            self._wrap.append(list(rem.coeffs) + [0] * (self.n - len(rem.coeffs)))
        self.table = None
        if self.order <= gonal_setting('GONAL_RING_TABLE_CAP'):
            a, b = np.meshgrid(np.arange(self.order), np.arange(self.order), indexing='ij')
            self.table = self._conv_mul(a.ravel(), b.ravel()).reshape(self.order, self.order)

    def encode(self, poly: UniPoly) -> int:
        rem = poly % self.modulus
        value = 0
        for c in reversed(rem.coeffs):
            value = value * self.q + c
        return value

    def decode(self, code: int) -> UniPoly:
        digits = []
        for _ in range(self.n):
            code, c = divmod(code, self.q)
            digits.append(c)
        return UniPoly(self.field, digits)

    def _conv_mul(self, a, b) -> np.ndarray:
        F, n = self.F, self.n
        da = code_to_digits(a, self.q, n)
        db = code_to_digits(b, self.q, n)
        prod = [np.zeros(da.shape[1], dtype=np.int64) for _ in range(2 * n - 1)]
        for i in range(n):
            for j in range(n):
                prod[i + j] = F.vadd(prod[i + j], F.vmul(da[i], db[j]))
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            row = self._wrap[k - n]
            for j in range(n):
                if row[j]:
                    out[j] = F.vadd(out[j], F.vmul(prod[k], row[j]))
        return digits_to_code(np.array(out), self.q)

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.table is not None:
            return self.table[a, b]
        return self._conv_mul(a.ravel(), b.ravel()).reshape(a.shape)

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        da = code_to_digits(a.ravel(), self.q, self.n)
        db = code_to_digits(b.ravel(), self.q, self.n)
        return digits_to_code(self.F.vadd(da, db), self.q).reshape(a.shape)

    def vpow(self, a, k: int) -> np.ndarray:
        result = np.zeros(np.shape(a), dtype=np.int64) + 1
        base = np.asarray(a, dtype=np.int64)
        while k:
            if k & 1:
                result = self.vmul(result, base)
            base = self.vmul(base, base)
            k >>= 1
        return result


def monic_irreducibles(spec: FieldSpec, degree: int) -> List[UniPoly]:
    q = spec.cardinality
    out = []
    for low in itertools.product(range(q), repeat=degree):
        candidate = UniPoly(spec, list(low) + [1])
        if is_irreducible(candidate):
            out.append(candidate)
    return out


def _grid_size(family: DiscriminantFamily, p: UniPoly) -> int:
    return family.q ** (2 * int(p.degree) * (family.gamma + 1))


class ResidueDiscriminant:
    """disc_y of the family over F_q[t]/(p^(2+e_p)), evaluated on indexed residue tuples"""

    def __init__(self, family: DiscriminantFamily, p: UniPoly):
        self.family = family
        self.gamma = family.gamma
        e_p = valuation_at(family.divisor(), p)
        self.ring = ResidueRing(p ** (2 + e_p))
        self.reps = family.q ** (2 * int(p.degree))
        self.grid = self.reps ** (self.gamma + 1)
        xs = np.arange(self.reps, dtype=np.int64)
        self.values = []
        for i in range(self.gamma + 1):
            a, b = family.parts(i)
            self.values.append(self.ring.vadd(self.ring.encode(a), self.ring.vmul(self.ring.encode(b), xs)))
        self.terms = generic_discriminant(self.gamma)

    def residue_tuple(self, index: int) -> Tuple[UniPoly, ...]:
        """g_0, ..., g_gamma of degree < 2 deg p behind a grid index"""
        out = []
        for _ in range(self.gamma + 1):
            out.append(self.ring.decode(index % self.reps))
            index //= self.reps
        return tuple(out)

    def zero_mask(self, idx: np.ndarray) -> np.ndarray:
        ring, p = self.ring, self.family.field.p
        coords = []
        rest = idx
        for i in range(self.gamma + 1):
            coords.append(self.values[i][rest % self.reps])
            rest = rest // self.reps
        total = np.zeros(idx.shape, dtype=np.int64)
        for mono, coeff in self.terms:
            c = coeff % p
            if c == 0:
                continue
            term = np.full(idx.shape, c, dtype=np.int64)
            for var, exp in enumerate(mono):
                if exp:
                    term = ring.vmul(term, ring.vpow(coords[var], exp))
            total = ring.vadd(total, term)
        return total == 0


def _count_cp_vector(family: DiscriminantFamily, p: UniPoly) -> int:
    disc = ResidueDiscriminant(family, p)
    chunk = max(disc.reps, 1 << 16)
    count = 0
    for lo in range(0, disc.grid, chunk):
        idx = np.arange(lo, min(lo + chunk, disc.grid), dtype=np.int64)
        count += int(disc.zero_mask(idx).sum())
    return count


def vanishes_mod(family: DiscriminantFamily, g_tuple: Sequence[UniPoly], modulus: UniPoly) -> bool:
    """F(g) = 0 mod modulus, computed in F_q[t]; a zero discriminant counts as vanishing"""
    f = family.assemble(g_tuple)
    if discriminant_y(f).is_zero():
        return True
    return (capital_F(family, f) % modulus).is_zero()


def _count_cp_exact(family: DiscriminantFamily, p: UniPoly) -> int:
    """Reference count: F_1 in F_q[t] for every residue tuple, then F mod p^2"""
    gamma, q = family.gamma, family.q
    p2 = p * p
    width = 2 * int(p.degree)
    count = 0
    for coeffs in itertools.product(itertools.product(range(q), repeat=width), repeat=gamma + 1):
        g_tuple = tuple(UniPoly(family.field, c) for c in coeffs)
        if vanishes_mod(family, g_tuple, p2):
            count += 1
    return count


def count_cp(family: DiscriminantFamily, p: UniPoly, method: str = 'vector') -> int:
    """Residue tuples g mod p^2 with F(g) = 0 mod p^2"""
    if p.degree < 1 or p.leading != 1:
        raise CurveError(f"c_p needs a monic prime, got {p!r}", stage="density")
    check_enumeration(_grid_size(family, p), f"c_p enumeration for p={p.to_text()}")
    if method == 'vector':
        cp = _count_cp_vector(family, p)
    elif method == 'exact':
        cp = _count_cp_exact(family, p)
    else:
        raise CurveError(f"unknown c_p method {method!r}", stage="density")
    logger.debug(f"c_p = {cp} for p = {p.to_text()}")
    return cp


def local_factor(family: DiscriminantFamily, p: UniPoly) -> LocalFactor:
    norm = family.q ** (int(p.degree) * 2 * (family.gamma + 1))
    return LocalFactor(p, count_cp(family, p), norm)


def truncated_density(family: DiscriminantFamily, max_degree: int, jobs: int = 1) -> DensityReport:
    """Exact Euler product over monic irreducibles of degree <= max_degree"""
    if max_degree < 1:
        raise CurveError(f"truncation degree must be at least 1, got {max_degree}", stage="density")
    primes = [p for s in range(1, max_degree + 1) for p in monic_irreducibles(family.field, s)]
    for p in primes:
        check_enumeration(_grid_size(family, p), f"c_p enumeration for p={p.to_text()}")
    if jobs > 1:
        factors = Parallel(n_jobs=jobs)(delayed(local_factor)(family, p) for p in primes)
    else:
        factors = [local_factor(family, p) for p in primes]

    product = Fraction(1)
    for lf in factors:
        if lf.prime.degree == 1 and lf.cp != 0:
            logger.error(f"c_p = {lf.cp} at the degree-1 prime {lf.prime.to_text()}")
            raise VerificationError(f"c_p = {lf.cp} at degree-1 prime {lf.prime.to_text()}, expected 0", check="density")
        if lf.cp >= lf.norm:
            raise VerificationError(f"local factor at {lf.prime.to_text()} vanishes", check="density")
        product *= lf.factor
    logger.info(f"Truncated density to degree {max_degree}: {product} ~ {float(product):.4f} over {len(factors)} primes")
    return DensityReport(
        q=family.q,
        gamma=family.gamma,
        profile=family.profile.to_json(),
        beta=family.beta.to_list(),
        truncation_degree=max_degree,
        per_prime=factors,
        truncated_product=product,
    )


def empirical_density(family: DiscriminantFamily, degrees: Sequence[int], trials: int, seed: int, jobs: int = 1) -> Dict:
    """Fraction of exact-degree uniform tuples with F squarefree"""
    if trials < 1:
        raise CurveError(f"trials must be positive, got {trials}", stage="density")
    if len(degrees) != family.gamma + 1 or any(d < 0 for d in degrees):
        raise CurveError(f"need {family.gamma + 1} nonnegative degrees, got {list(degrees)}", stage="density")
    results = run_trials(family, degrees, seed, range(trials), jobs, stop_early=False)
    successes = sum(1 for _, g_tuple, _ in results if g_tuple is not None)
    frequency = successes / trials
    logger.info(f"Empirical squarefree frequency {successes}/{trials} = {frequency:.4f}")
    return {"trials": trials, "successes": successes, "frequency": frequency, "seed": seed, "degrees": list(degrees)}
