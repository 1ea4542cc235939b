"""
Zeta numerator P(T) = prod (1 - alpha_i T) of a curve of genus g over F_q,
recovered from point counts with Newton's identities.

The power sums of the Frobenius eigenvalues are S_k = q^k + 1 - N_k and
P(T) = sum a_i T^i with a_i = (-1)^i e_i.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class ZetaData:
    q: int
    genus: int
    counts: List[int]
    a_coeffs: List[int]

    @property
    def trace(self) -> int:
        """Frobenius trace q + 1 - N_1"""
        return self.q + 1 - self.counts[0]

    def functional_equation_holds(self) -> bool:
        g, q, a = self.genus, self.q, self.a_coeffs
        return len(a) == 2 * g + 1 and a[0] == 1 and all(a[2 * g - i] == q ** (g - i) * a[i] for i in range(g + 1))

    def within_weil_bounds(self) -> bool:
        """|a_i| <= C(2g, i) q^(i/2), compared on squares"""
        g, q = self.genus, self.q
        return all(a * a <= comb(2 * g, i) ** 2 * q ** i for i, a in enumerate(self.a_coeffs))

    def predict(self, k: int) -> int:
        """N_k determined by P"""
        e = [(-1) ** i * a for i, a in enumerate(self.a_coeffs)]
        sums = power_sums(e, k)
        return self.q ** k + 1 - sums[k - 1]

    def to_json(self) -> Dict:
        return {"q": self.q, "genus": self.genus, "counts": list(self.counts), "aCoeffs": list(self.a_coeffs)}


@dataclass
class ZetaVerdict:
    consistent: bool
    genus: int
    data: Optional[ZetaData]
    predicted: Dict[int, int] = field(default_factory=dict)
    observed: Dict[int, int] = field(default_factory=dict)
    reason: str = ""

    @property
    def label(self) -> str:
        return "consistent" if self.consistent else "inconsistent"


def power_sums(e: Sequence[int], count: int) -> List[int]:
    """S_1..S_count from elementary symmetric e_0 = 1, e_1, ... (zero beyond the list)"""
    def elem(j):
        return e[j] if j < len(e) else 0

    sums: List[int] = []
    for k in range(1, count + 1):
        acc = k * elem(k)
        for i in range(1, k):
            acc -= (-1) ** (i - 1) * elem(k - i) * sums[i - 1]
        sums.append((-1) ** (k - 1) * acc)
    return sums


def elementary_from_sums(sums: Sequence[int]) -> Optional[List[int]]:
    """e_0..e_n from S_1..S_n; None when some e_k is not an integer"""
    e = [Fraction(1)]
    for k in range(1, len(sums) + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * sums[i - 1] for i in range(1, k + 1))
        e.append(Fraction(acc, k))
    if any(x.denominator != 1 for x in e):
        return None
    return [int(x) for x in e]


def zeta_from_counts(q: int, genus: int, counts: Sequence[int]) -> Optional[ZetaData]:
    """P(T) from N_1..N_g, completed by a_(2g-i) = q^(g-i) a_i"""
    if len(counts) < genus:
        raise ValueError(f"need N_1..N_{genus}, got {len(counts)} counts")
    sums = [q ** k + 1 - counts[k - 1] for k in range(1, genus + 1)]
    e = elementary_from_sums(sums)
    if e is None:
        return None
    a = [(-1) ** i * e[i] for i in range(genus + 1)]
    a += [q ** (genus - i) * a[i] for i in range(genus - 1, -1, -1)]
    return ZetaData(q, genus, list(counts), a)


def check_genus(q: int, genus: int, count: Callable[[int], int], extra: int = 2) -> ZetaVerdict:
    """Fit P from N_1..N_g and test it against N_(g+1)..N_(g+extra)"""
    if genus < 1:
        raise ValueError(f"genus claim must be positive, got {genus}")
    observed = {k: count(k) for k in range(1, genus + extra + 1)}
    data = zeta_from_counts(q, genus, [observed[k] for k in range(1, genus + 1)])
    if data is None:
        logger.info(f"Genus {genus} refuted: Newton identities give non-integral coefficients")
        return ZetaVerdict(False, genus, None, observed=observed, reason="non-integral zeta coefficients")
    data.counts = [observed[k] for k in sorted(observed)]
    predicted = {k: data.predict(k) for k in range(genus + 1, genus + extra + 1)}
    if not data.functional_equation_holds() or data.a_coeffs[-1] != q ** genus:
        return ZetaVerdict(False, genus, data, predicted, observed, "functional equation violated")
    if not data.within_weil_bounds():
        return ZetaVerdict(False, genus, data, predicted, observed, "coefficients outside the Weil bounds")
    for k, value in predicted.items():
        if observed[k] != value:
            logger.info(f"Genus {genus} refuted: predicted N_{k}={value}, counted {observed[k]}")
            return ZetaVerdict(False, genus, data, predicted, observed, f"N_{k} predicted {value}, counted {observed[k]}")
    logger.info(f"Genus {genus} consistent with counts {[observed[k] for k in sorted(observed)]}")
    return ZetaVerdict(True, genus, data, predicted, observed)
