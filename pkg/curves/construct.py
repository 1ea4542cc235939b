"""
The explicit curve: gonality profile, the polygon Delta_r, the degree plan,
assembly of f from a coefficient tuple and the randomized search for a
tuple whose discriminant quotient F is squarefree.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from .algebra import FieldSpec, UniPoly, find_irreducible, is_squarefree, valuation_at
from .conf import debug_checks, gonal_setting
from .curve import CurvePoly, discriminant_y, newton_polygon
from .errors import (
    BudgetExhaustedError,
    ConfigError,
    CurveError,
    InexactDivisionError,
    InfeasibleGenusError,
    ZeroDiscriminantError,
)
from .lattice import LatticePolygon, convex_hull, delta_r, lattice_counts

logger = logging.getLogger(__name__)

CHAR2_ADVISORY = (
    "in characteristic 2 the discriminant of a quadratic in y is f_1^2, so "
    "F = beta * (1 + alpha * g_1)^2 always has a repeated factor; even q with "
    "gamma = 2 is supported on a best-effort basis only"
)


@dataclass(frozen=True)
class GonalityProfile:
    """Left-hand slopes k_0 = 0 <= k_1 < ... < k_gamma and their prefix sums"""
    gamma: int
    k: Tuple[int, ...]
    l: Tuple[int, ...]
    L: int

    def __post_init__(self):
        k = self.k
        if len(k) != self.gamma + 1 or k[0] != 0 or k[1] < 0:
            raise CurveError(f"malformed gonality profile k={list(k)}", stage="construct")
        if any(k[i] >= k[i + 1] for i in range(1, self.gamma)):
            raise CurveError(f"k must increase strictly from index 1: {list(k)}", stage="construct")
        prefix = tuple(sum(k[:j + 1]) for j in range(self.gamma + 1))
        if tuple(self.l) != prefix or self.L != sum(prefix[1:self.gamma]):
            raise CurveError(f"profile sums inconsistent with k={list(k)}", stage="construct")

    @classmethod
    def from_k(cls, k: Sequence[int]) -> 'GonalityProfile':
        k = tuple(k)
        l = tuple(sum(k[:j + 1]) for j in range(len(k)))
        return cls(len(k) - 1, k, l, sum(l[1:len(k) - 1]))

    def to_json(self) -> Dict:
        return {"k": list(self.k), "l": list(self.l), "L": self.L}


@dataclass(frozen=True)
class RightProfile:
    """Right-hand slopes k'_1 > ... > k'_gamma, prefix sums l'_0..l'_gamma, and r"""
    kp: Tuple[int, ...]
    lp: Tuple[int, ...]
    r: int

    def __post_init__(self):
        kp = self.kp
        if any(kp[i] <= kp[i + 1] for i in range(len(kp) - 1)) or sum(kp) < 0:
            raise CurveError(f"k' must decrease strictly with nonnegative sum: {list(kp)}", stage="construct")
        if tuple(self.lp) != tuple(sum(kp[:j]) for j in range(len(kp) + 1)):
            raise CurveError(f"l' inconsistent with k'={list(kp)}", stage="construct")

    @classmethod
    def from_kp(cls, kp: Sequence[int], r: int) -> 'RightProfile':
        kp = tuple(kp)
        return cls(kp, tuple(sum(kp[:j]) for j in range(len(kp) + 1)), r)

    def to_json(self) -> Dict:
        return {"kp": list(self.kp), "lp": list(self.lp), "r": self.r}


@dataclass(frozen=True)
class DiscriminantFamily:
    """f_i = alpha^(l_i) beta^(delta_i) (1 + alpha beta^(delta'_i) g_i) as the g_i vary"""
    field: FieldSpec
    gamma: int
    profile: GonalityProfile
    alpha: UniPoly
    beta: UniPoly

    @classmethod
    def create(cls, field: FieldSpec, gamma: int) -> 'DiscriminantFamily':
        q = field.cardinality
        alpha = UniPoly.monomial(field, q) - UniPoly.monomial(field, 1)
        return cls(field, gamma, default_profile(gamma), alpha, find_irreducible(field, 2))

    @property
    def q(self) -> int:
        return self.field.cardinality

    def delta(self, i: int) -> int:
        return 1 if i < self.gamma else 0

    def delta_prime(self, i: int) -> int:
        return 1 if i in (0, self.gamma) else 0

    def divisor(self) -> UniPoly:
        """alpha^(2L) beta^(gamma - 1)"""
        return (self.alpha ** (2 * self.profile.L)) * (self.beta ** (self.gamma - 1))

    def parts(self, i: int) -> Tuple[UniPoly, UniPoly]:
        """(A_i, B_i) with f_i = A_i + B_i g_i"""
        a = (self.alpha ** self.profile.l[i]) * (self.beta ** self.delta(i))
        return a, a * self.alpha * (self.beta ** self.delta_prime(i))

    def assemble(self, g_tuple: Sequence[UniPoly]) -> CurvePoly:
        if len(g_tuple) != self.gamma + 1:
            raise CurveError(f"expected {self.gamma + 1} coefficients g_i, got {len(g_tuple)}", stage="construct")
        f = []
        for i, gi in enumerate(g_tuple):
            a, b = self.parts(i)
            f.append(a + b * gi)
        return CurvePoly(self.field, tuple(f))


@dataclass(frozen=True)
class ConstructionInstance:
    field: FieldSpec
    gamma: int
    genus: int
    profile: GonalityProfile
    right: RightProfile
    alpha: UniPoly
    beta: UniPoly
    n: int
    m: int
    d: Tuple[int, ...]
    seed: int = 0
    budget: int = 10000

    @property
    def q(self) -> int:
        return self.field.cardinality

    @property
    def family(self) -> DiscriminantFamily:
        return DiscriminantFamily(self.field, self.gamma, self.profile, self.alpha, self.beta)

    def delta(self, i: int) -> int:
        return self.family.delta(i)

    def delta_prime(self, i: int) -> int:
        return self.family.delta_prime(i)

    @property
    def polygon(self) -> LatticePolygon:
        return delta_r(self.gamma, self.right)

    def divisor(self) -> UniPoly:
        return self.family.divisor()


@dataclass
class SearchResult:
    g_tuple: Tuple[UniPoly, ...]
    index: int
    trials: int
    failures: Dict[str, int] = dataclass_field(default_factory=dict)


def default_profile(gamma: int) -> GonalityProfile:
    """k = (0, 0, 1, ..., gamma - 1)"""
    if gamma < 2:
        raise ConfigError(f"gamma must be at least 2, got {gamma}")
    return GonalityProfile.from_k([0] + list(range(gamma)))


def build_right_profile(gamma: int, q: int, g: int, profile: GonalityProfile) -> Tuple[int, int, Tuple[int, ...]]:
    """(n, m, k') with k'_2 minimal above gamma - 3 in its class mod gamma - 1"""
    modulus = gamma - 1
    n = g % modulus if gamma > 2 else 0
    m = n + q * profile.L
    target = (sum(j * j for j in range(1, gamma - 2)) - m) % modulus
    start = gamma - 2
    k2 = start + (target - start) % modulus
    kp = [k2 + 1, k2] + [gamma - i for i in range(3, gamma + 1)]
    kp = tuple(kp)
    if any(kp[i] <= kp[i + 1] for i in range(gamma - 1)):
        raise CurveError(f"k' is not strictly decreasing: {list(kp)}", stage="construct")
    if sum((gamma - j) * kp[j - 1] for j in range(1, gamma)) % modulus != m % modulus:
        raise CurveError(f"k'={list(kp)} misses the congruence class of m={m}", stage="construct")
    logger.debug(f"Right profile for gamma={gamma}, q={q}, g={g}: n={n}, m={m}, k'={list(kp)}")
    return n, m, kp


def interior_identity(gamma: int, right: RightProfile) -> int:
    """Interior lattice count of Delta_r by rows: (gamma - 1)(r - 1) + sum l'_1..l'_(gamma-1)"""
    return (gamma - 1) * (right.r - 1) + sum(right.lp[1:gamma])


def solve_r(gamma: int, profile: GonalityProfile, kp: Sequence[int], g: int, q: int) -> RightProfile:
    """The r giving Delta_r exactly g + qL interior points"""
    target = g + q * profile.L
    lp = [sum(kp[:j]) for j in range(gamma + 1)]
    numerator = target - sum(lp[1:gamma])
    if numerator % (gamma - 1):
        raise CurveError(f"interior target {target} unreachable in steps of {gamma - 1}", stage="construct")
    r = numerator // (gamma - 1) + 1
    if r < 1:
        logger.error(f"Genus {g} too small: r={r} for gamma={gamma}, q={q}")
        raise InfeasibleGenusError(f"genus {g} too small for this construction (r={r} < 1)", index=None, value=r)
    right = RightProfile.from_kp(kp, r)
    if debug_checks():
        interior, _ = lattice_counts(delta_r(gamma, right))
        if interior != interior_identity(gamma, right) or interior != target:
            raise CurveError(f"Delta_{r} has {interior} interior points, expected {target}", stage="construct")
    return right


def degree_plan(gamma: int, q: int, profile: GonalityProfile, right: RightProfile) -> Tuple[int, ...]:
    """d_i = r + l'_(gamma-i) - q(l_i + 1) - 2(delta_i + delta'_i)"""
    d = []
    for i in range(gamma + 1):
        delta = 1 if i < gamma else 0
        delta_p = 1 if i in (0, gamma) else 0
        d.append(right.r + right.lp[gamma - i] - q * (profile.l[i] + 1) - 2 * (delta + delta_p))
    for i, di in enumerate(d):
        if di < 0:
            logger.error(f"Degree plan {d} infeasible at index {i}")
            raise InfeasibleGenusError(f"genus too small for this construction: d_{i} = {di} < 0", index=i, value=di)
    return tuple(d)


def build_instance(field: FieldSpec, gamma: int, genus: int, seed: int = 0, budget: int = 10000) -> ConstructionInstance:
    """Everything of the construction that does not depend on the random tuple"""
    if genus < 2:
        raise ConfigError(f"genus must be at least 2, got {genus}")
    family = DiscriminantFamily.create(field, gamma)
    profile = family.profile
    q = field.cardinality
    n, m, kp = build_right_profile(gamma, q, genus, profile)
    right = solve_r(gamma, profile, kp, genus, q)
    d = degree_plan(gamma, q, profile, right)
    logger.info(f"Instance q={q} gamma={gamma} g={genus}: r={right.r} k'={list(kp)} d={list(d)} L={profile.L}")
    return ConstructionInstance(field, gamma, genus, profile, right, family.alpha, family.beta, n, m, d, seed, budget)


def assemble_f(instance: ConstructionInstance, g_tuple: Sequence[UniPoly]) -> CurvePoly:
    """f_i = alpha^(l_i) beta^(delta_i) (1 + alpha beta^(delta'_i) g_i), with deg g_i = d_i"""
    gamma = instance.gamma
    if len(g_tuple) != gamma + 1:
        raise CurveError(f"expected {gamma + 1} coefficients g_i, got {len(g_tuple)}", stage="construct")
    for i, gi in enumerate(g_tuple):
        if gi.field != instance.field or gi.degree != instance.d[i]:
            raise CurveError(f"deg g_{i} = {gi.degree}, expected {instance.d[i]}", stage="construct")
    curve = instance.family.assemble(g_tuple)

    r, lp = instance.right.r, instance.right.lp
    for i, fi in enumerate(curve.f):
        if fi.degree != r + lp[gamma - i]:
            raise CurveError(f"deg f_{i} = {fi.degree}, expected {r + lp[gamma - i]}", stage="construct")
    if debug_checks():
        t = UniPoly.monomial(instance.field, 1)
        for i, fi in enumerate(curve.f):
            if valuation_at(fi, t) != instance.profile.l[i]:
                raise CurveError(f"v_t(f_{i}) differs from l_{i}", stage="construct")
        hull = convex_hull(list(newton_polygon(curve).vertices) + [(0, 0), (0, gamma)])
        if hull != instance.polygon:
            raise CurveError(f"Newton polygon hull {hull.to_json()} differs from Delta_r", stage="construct")
    return curve


def capital_F(source: Union[ConstructionInstance, DiscriminantFamily], f: CurvePoly) -> UniPoly:
    """disc_y(f) / (alpha^(2L) beta^(gamma-1)), exact"""
    disc = discriminant_y(f)
    if disc.is_zero():
        raise ZeroDiscriminantError("disc_y(f) is identically zero")
    quot, rem = divmod(disc, source.divisor())
    if not rem.is_zero():
        logger.error(f"disc_y(f) not divisible by alpha^{2 * source.profile.L} beta^{source.gamma - 1}")
        raise InexactDivisionError("disc_y(f) is not divisible by alpha^(2L) beta^(gamma-1)", stage="construct")
    return quot


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator of one trial, fixed by (seed, index)"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def sample_tuple(field: FieldSpec, degrees: Sequence[int], rng: np.random.Generator) -> Tuple[UniPoly, ...]:
    """Uniform tuple with deg g_i = d_i exactly"""
    return tuple(UniPoly.random(field, di, rng) for di in degrees)


def run_trial(family: DiscriminantFamily, degrees: Sequence[int], seed: int,
              index: int) -> Tuple[int, Optional[Tuple[UniPoly, ...]], str]:
    """(index, tuple or None, failure reason) for one seeded draw"""
    g_tuple = sample_tuple(family.field, degrees, trial_rng(seed, index))
    try:
        F = capital_F(family, family.assemble(g_tuple))
    except ZeroDiscriminantError:
        return index, None, "discriminant identically zero"
    if is_squarefree(F):
        return index, g_tuple, ""
    return index, None, "F has a repeated factor"


def run_trials(family: DiscriminantFamily, degrees: Sequence[int], seed: int, indices: Sequence[int],
               jobs: int = 1, stop_early: bool = True) -> List[Tuple[int, Optional[Tuple[UniPoly, ...]], str]]:
    if jobs > 1:
        return Parallel(n_jobs=jobs)(delayed(run_trial)(family, degrees, seed, i) for i in indices)
    results = []
    for i in indices:
        results.append(run_trial(family, degrees, seed, i))
        if stop_early and results[-1][1] is not None:
            break
    return results


def search_tuple(instance: ConstructionInstance, jobs: int = 1) -> SearchResult:
    """Lowest trial index whose tuple makes F squarefree"""
    char2 = instance.q % 2 == 0 and instance.gamma == 2
    if char2:
        logger.warning(f"Searching in even characteristic: {CHAR2_ADVISORY}")
    family = instance.family
    failures: Dict[str, int] = {}
    last_failure = ""
    batch = max(1, jobs) * 16
    for start in range(0, instance.budget, batch):
        indices = range(start, min(start + batch, instance.budget))
        for index, g_tuple, reason in run_trials(family, instance.d, instance.seed, indices, jobs):
            if g_tuple is not None:
                logger.info(f"Squarefree F found at trial {index + 1} (seed {instance.seed})")
                return SearchResult(g_tuple, index, index + 1, failures)
            failures[reason] = failures.get(reason, 0) + 1
            last_failure = reason
        logger.debug(f"Trials {start}..{indices[-1]} failed: {failures}")

    advisory = CHAR2_ADVISORY if char2 else None
    logger.error(f"No squarefree F within {instance.budget} trials: {failures}")
    message = f"no squarefree F within {instance.budget} trials (last failure: {last_failure})"
    if advisory:
        message += f"; {advisory}"
    raise BudgetExhaustedError(message, trials=instance.budget, last_failure=last_failure, advisory=advisory)


def construct_curve(field: FieldSpec, gamma: int, genus: int, seed: int = 0, budget: Optional[int] = None, jobs: int = 1):
    """Build, search and fully verify; returns the Certificate"""
    from .verify import build_certificate

    if budget is None:
        budget = gonal_setting('GONAL_DEFAULT_BUDGET')
    if budget < 1:
        raise ConfigError(f"budget must be positive, got {budget}")
    instance = build_instance(field, gamma, genus, seed, budget)
    result = search_tuple(instance, jobs)
    return build_certificate(instance, result.g_tuple, result.trials)
