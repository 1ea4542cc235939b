"""
Exact arithmetic in F_q = F_{p^e}, its extensions F_{q^k}, and F_q[t].

Elements are stored as canonical integer codes: the element with
coordinates (c_0, ..., c_{e-1}) over F_p is the integer sum c_i p^i. An
extension F_{q^k} = F_q[u]/(m(u)) encodes c_0 + c_1 u + ... as
sum c_j q^j with each c_j an F_q code, so F_q codes embed verbatim and
addition is digit-wise mod p in every tower.

Polynomials are ascending coefficient tuples of codes with trailing zeros
trimmed; the zero polynomial has degree -inf.
"""
import functools
import hashlib
import itertools
import json
import logging
import os
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .conf import debug_checks, gonal_setting
from .errors import (
    CapExceededError,
    CurveError,
    FieldMismatchError,
    InexactDivisionError,
    ReducibleModulusError,
    ZeroDivisionFieldError,
)
from .tables import ZechTables

logger = logging.getLogger(__name__)

NEG_INF = float('-inf')  # degree of the zero polynomial
INF = float('inf')  # valuation of the zero polynomial


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """F_{p^e}, either over F_p (base is None) or as an extension of base"""
    p: int
    e: int = 1
    modulus: Optional[Tuple[int, ...]] = None
    base: Optional['FieldSpec'] = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ReducibleModulusError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise ReducibleModulusError(f"extension degree {self.e} must be at least 1")
        if self.modulus is not None:
            object.__setattr__(self, 'modulus', tuple(int(c) for c in self.modulus))
        if self.base is not None:
            if self.base.p != self.p or self.modulus is None:
                raise ReducibleModulusError("tower extension needs a modulus over a base of the same characteristic")
            k = len(self.modulus) - 1
            if k < 1 or self.e != self.base.e * k:
                raise ReducibleModulusError(f"tower degree mismatch: e={self.e}, base e={self.base.e}, modulus degree {k}")
        elif self.e == 1:
            if self.modulus is not None and len(self.modulus) != 2:
                raise ReducibleModulusError("prime field modulus must be linear")
            object.__setattr__(self, 'modulus', None)
        else:
            if self.modulus is None or len(self.modulus) != self.e + 1:
                raise ReducibleModulusError(f"F_{self.p}^{self.e} needs a monic modulus of degree {self.e}")
        if self.modulus is not None:
            sub = self.subfield.cardinality
            if self.modulus[-1] != 1 or any(not 0 <= c < sub for c in self.modulus):
                raise ReducibleModulusError(f"modulus {list(self.modulus)} is not monic with reduced coefficients")

    @property
    def cardinality(self) -> int:
        return self.p ** self.e

    @property
    def subfield(self) -> 'FieldSpec':
        """Field the modulus has its coefficients in"""
        return self.base if self.base is not None else FieldSpec(self.p)

    @property
    def degree(self) -> int:
        """Degree over the subfield"""
        return 1 if self.modulus is None else len(self.modulus) - 1

    def contains(self, other: 'FieldSpec') -> bool:
        """True when codes of other are codes of the same elements in self"""
        if other == self:
            return True
        if other.p == self.p and other.e == 1 and other.base is None:
            return True
        return self.base is not None and self.base.contains(other)

    @classmethod
    def create(cls, p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> 'FieldSpec':
        """F_{p^e} with the given modulus, or the first irreducible one"""
        if e == 1:
            return cls(p)
        if modulus is None:
            modulus = find_irreducible(cls(p), e).coeffs
        spec = cls(p, e, tuple(modulus))
        if not is_irreducible(UniPoly(cls(p), spec.modulus)):
            raise ReducibleModulusError(f"modulus {list(spec.modulus)} is reducible over F_{p}")
        return spec

    def to_json(self) -> Dict:
        data = {"p": self.p, "e": self.e}
        if self.modulus is not None:
            data["modulus"] = list(self.modulus)
        if self.base is not None:
            data["base"] = self.base.to_json()
        return data

    @classmethod
    def from_json(cls, data: Dict) -> 'FieldSpec':
        if not isinstance(data, dict) or "p" not in data:
            raise ReducibleModulusError(f"malformed field description: {data!r}")
        p, e = int(data["p"]), int(data.get("e", 1))
        if "base" in data:
            return cls(p, e, tuple(data["modulus"]), cls.from_json(data["base"]))
        return cls.create(p, e, data.get("modulus"))

    def __str__(self):
        return f"F_{self.cardinality}"


class FiniteField:
    """Arithmetic on element codes of one FieldSpec (scalars and numpy vectors)"""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.order = spec.cardinality
        self.is_prime_field = spec.e == 1
        self.tables = None
        if not self.is_prime_field:
            self.subfield_ops = field_of(spec.subfield)
            self.sub_order = spec.subfield.cardinality
            self.k = spec.degree
            if self.order <= gonal_setting('GONAL_TABLE_CAP'):
                self.tables = ZechTables.build(self.p, spec.e, self._slow_mul)

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.is_prime_field:
            return (a + b) % self.p
        if self.tables is not None:
            return self.tables.add(a, b)
        return _digit_add(a, b, self.p)

    def neg(self, a: int) -> int:
        if self.is_prime_field:
            return -a % self.p
        if self.tables is not None:
            return self.tables.neg(a)
        return _digit_neg(a, self.p)

    def sub(self, a: int, b: int) -> int:
        if self.is_prime_field:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.is_prime_field:
            return a * b % self.p
        if self.tables is not None:
            return self.tables.mul(a, b)
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionFieldError(f"division by zero in {self.spec}")
        if self.is_prime_field:
            return pow(a, self.p - 2, self.p)
        if self.tables is not None:
            return self.tables.inv(a)
        return self.power(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.is_prime_field:
            return pow(a, n, self.p)
        if self.tables is not None:
            return self.tables.power(a, n)
        result = 1
        while n:
            if n & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return result

    def scalar(self, n: int) -> int:
        """Image of the integer n in the field"""
        return n % self.p

    def _slow_mul(self, a: int, b: int) -> int:
        B, k, sub = self.sub_order, self.k, self.subfield_ops
        da = _to_digits(a, B, k)
        db = _to_digits(b, B, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = sub.add(prod[i + j], sub.mul(x, y))
        modulus = self.spec.modulus
        for top in range(len(prod) - 1, k - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            for j in range(k):
                if modulus[j]:
                    prod[top - k + j] = sub.sub(prod[top - k + j], sub.mul(c, modulus[j]))
            prod[top] = 0
        return _from_digits(prod[:k], B)

    # vector arithmetic

    def vadd(self, a, b) -> np.ndarray:
        if self.is_prime_field:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.tables is not None:
            return self.tables.vadd(a, b)
        return _vectorize(self.add)(a, b)

    def vneg(self, a) -> np.ndarray:
        if self.is_prime_field:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        if self.tables is not None:
            return self.tables.vneg(a)
        return _vectorize(self.neg)(a)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        if self.is_prime_field:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self.tables is not None:
            return self.tables.vmul(a, b)
        return _vectorize(self.mul)(a, b)

    def vinv(self, a) -> np.ndarray:
        """Elementwise inverse, with 0 mapped to 0"""
        if self.tables is not None:
            return self.tables.vinv(a)
        return _vectorize(lambda x: 0 if x == 0 else self.inv(x))(a)

    def vpower(self, a, n: int) -> np.ndarray:
        if self.tables is not None:
            return self.tables.vpower(a, n)
        return _vectorize(lambda x: self.power(x, n))(a)

    def vis_square(self, a) -> np.ndarray:
        if self.tables is not None:
            return self.tables.vis_square(a)
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.ones(a.shape, dtype=bool)
        return (a == 0) | (self.vpower(a, (self.order - 1) // 2) == 1)

    def vtrace_f2(self, a) -> np.ndarray:
        """Absolute trace to F_2 (characteristic 2 only)"""
        a = np.asarray(a, dtype=np.int64)
        acc = a.copy()
        conj = a
        for _ in range(self.spec.e - 1):
            conj = self.vmul(conj, conj)
            acc = self.vadd(acc, conj)
        return acc

    def veval(self, coeffs: Sequence[int], xs) -> np.ndarray:
        """Horner evaluation of one coefficient list at many points"""
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros(xs.shape, dtype=np.int64)
        for c in reversed(coeffs):
            acc = self.vadd(self.vmul(acc, xs), c)
        return acc

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # polynomial kernels on coefficient lists

    def poly_add(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.add(out[i], c)
        return out

    def poly_neg(self, a: Sequence[int]) -> List[int]:
        return [self.neg(c) for c in a]

    def poly_mul(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        if not a or not b:
            return []
        if self.is_prime_field:
            if len(a) > 8 and len(b) > 8 and self.p < 2 ** 24:
                prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % self.p
                return prod.tolist()
            p = self.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return [c % p for c in out]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = self.add(out[i + j], self.mul(x, y))
        return out

    def poly_scale(self, a: Sequence[int], c: int) -> List[int]:
        return [self.mul(x, c) for x in a]

    def poly_divmod(self, a: Sequence[int], b: Sequence[int]) -> Tuple[List[int], List[int]]:
        """Long division; b must be trimmed and nonzero"""
        rem = list(a)
        db = len(b) - 1
        if len(rem) - 1 < db:
            return [], rem
        lead_inv = self.inv(b[-1])
        quot = [0] * (len(rem) - db)
        if self.is_prime_field:
            p = self.p
            for i in range(len(rem) - 1, db - 1, -1):
                c = rem[i] * lead_inv % p
                if c == 0:
                    continue
                quot[i - db] = c
                shift = i - db
                for j in range(db + 1):
                    rem[shift + j] = (rem[shift + j] - c * b[j]) % p
        else:
            for i in range(len(rem) - 1, db - 1, -1):
                c = self.mul(rem[i], lead_inv)
                if c == 0:
                    continue
                quot[i - db] = c
                shift = i - db
                for j in range(db + 1):
                    if b[j]:
                        rem[shift + j] = self.sub(rem[shift + j], self.mul(c, b[j]))
        return quot, rem[:db]


def _to_digits(a: int, base: int, width: int) -> List[int]:
    out = []
    for _ in range(width):
        a, r = divmod(a, base)
        out.append(r)
    return out


def _from_digits(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * base + d
    return value


def _digit_add(a: int, b: int, p: int) -> int:
    result, place = 0, 1
    while a or b:
        a, x = divmod(a, p)
        b, y = divmod(b, p)
        result += ((x + y) % p) * place
        place *= p
    return result


def _digit_neg(a: int, p: int) -> int:
    result, place = 0, 1
    while a:
        a, x = divmod(a, p)
        result += (-x % p) * place
        place *= p
    return result


def _vectorize(func):
    return np.vectorize(func, otypes=[np.int64])


@functools.lru_cache(maxsize=None)
def field_of(spec: FieldSpec) -> FiniteField:
    """Arithmetic context of a field (built once per spec)"""
    return FiniteField(spec)


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class FqElem:
    """An element of a finite field, identified by its canonical code"""
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.cardinality:
            raise CurveError(f"code {self.value} out of range for {self.field}", stage="algebra")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(_to_digits(self.value, self.field.p, self.field.e))

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs: Sequence[int]) -> 'FqElem':
        if len(coeffs) != field.e or any(not 0 <= c < field.p for c in coeffs):
            raise CurveError(f"coefficients {list(coeffs)} do not describe an element of {field}", stage="algebra")
        return cls(field, _from_digits(coeffs, field.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other):
        return fq_arith(self, other, 'add')

    def __sub__(self, other):
        return fq_arith(self, other, 'sub')

    def __mul__(self, other):
        return fq_arith(self, other, 'mul')

    def __truediv__(self, other):
        return fq_arith(self, other, 'div')

    def __neg__(self):
        return FqElem(self.field, field_of(self.field).neg(self.value))

    def __pow__(self, n: int):
        return FqElem(self.field, field_of(self.field).power(self.value, n))


def fq_arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    """add, sub, mul or div of two elements of the same field"""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine elements of {a.field} and {b.field}")
    F = field_of(a.field)
    if op == 'add':
        value = F.add(a.value, b.value)
    elif op == 'sub':
        value = F.sub(a.value, b.value)
    elif op == 'mul':
        value = F.mul(a.value, b.value)
    elif op == 'div':
        value = F.div(a.value, b.value)
    else:
        raise CurveError(f"unknown field operation {op!r}", stage="algebra")
    return FqElem(a.field, value)


class UniPoly:
    """Univariate polynomial over a finite field, immutable"""
    __slots__ = ('field', 'coeffs')

    def __init__(self, field: FieldSpec, coeffs: Sequence[int] = ()):
        coeffs = _trim(int(c) for c in coeffs)
        order = field.cardinality
        if any(not 0 <= c < order for c in coeffs):
            raise CurveError(f"coefficients {list(coeffs)} out of range for {field}", stage="algebra")
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coeffs', coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    def __reduce__(self):
        return (UniPoly, (self.field, self.coeffs))

    @classmethod
    def _raw(cls, field: FieldSpec, coeffs: Sequence[int]) -> 'UniPoly':
        poly = object.__new__(cls)
        object.__setattr__(poly, 'field', field)
        object.__setattr__(poly, 'coeffs', _trim(coeffs))
        return poly

    @classmethod
    def zero(cls, field: FieldSpec) -> 'UniPoly':
        return cls._raw(field, ())

    @classmethod
    def one(cls, field: FieldSpec) -> 'UniPoly':
        return cls._raw(field, (1,))

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> 'UniPoly':
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FieldSpec, n: int, c: int = 1) -> 'UniPoly':
        return cls(field, [0] * n + [c])

    @classmethod
    def random(cls, field: FieldSpec, degree: int, rng: np.random.Generator) -> 'UniPoly':
        """Uniform polynomial of exact degree: nonzero leading coefficient"""
        q = field.cardinality
        low = rng.integers(0, q, size=degree).tolist() if degree > 0 else []
        lead = int(rng.integers(1, q))
        return cls._raw(field, low + [lead])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _check(self, other: 'UniPoly') -> FiniteField:
        if not isinstance(other, UniPoly):
            raise TypeError(f"polynomial expected, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"polynomials over {self.field} and {other.field}")
        return field_of(self.field)

    def __add__(self, other: 'UniPoly') -> 'UniPoly':
        F = self._check(other)
        return UniPoly._raw(self.field, F.poly_add(self.coeffs, other.coeffs))

    def __neg__(self) -> 'UniPoly':
        return UniPoly._raw(self.field, field_of(self.field).poly_neg(self.coeffs))

    def __sub__(self, other: 'UniPoly') -> 'UniPoly':
        F = self._check(other)
        return UniPoly._raw(self.field, F.poly_add(self.coeffs, F.poly_neg(other.coeffs)))

    def __mul__(self, other: 'UniPoly') -> 'UniPoly':
        F = self._check(other)
        return UniPoly._raw(self.field, F.poly_mul(self.coeffs, other.coeffs))

    def scale(self, c: int) -> 'UniPoly':
        return UniPoly._raw(self.field, field_of(self.field).poly_scale(self.coeffs, c))

    def __pow__(self, n: int) -> 'UniPoly':
        if n < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = UniPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: 'UniPoly') -> Tuple['UniPoly', 'UniPoly']:
        F = self._check(other)
        if other.is_zero():
            raise ZeroDivisionFieldError("polynomial division by zero")
        quot, rem = F.poly_divmod(self.coeffs, other.coeffs)
        return UniPoly._raw(self.field, quot), UniPoly._raw(self.field, rem)

    def __floordiv__(self, other: 'UniPoly') -> 'UniPoly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'UniPoly') -> 'UniPoly':
        return divmod(self, other)[1]

    def exact_div(self, other: 'UniPoly', what: str = "exact division") -> 'UniPoly':
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise InexactDivisionError(f"{what}: remainder of degree {rem.degree}")
        return quot

    def monic(self) -> 'UniPoly':
        if self.is_zero():
            return self
        F = field_of(self.field)
        return self.scale(F.inv(self.leading))

    def derivative(self) -> 'UniPoly':
        F = field_of(self.field)
        return UniPoly._raw(self.field, [F.mul(F.scalar(i), c) for i, c in enumerate(self.coeffs)][1:])

    def lift(self, field: FieldSpec) -> 'UniPoly':
        """Same polynomial with coefficients read in an extension field"""
        if not field.contains(self.field):
            raise FieldMismatchError(f"{field} does not contain {self.field}")
        return UniPoly._raw(field, self.coeffs)

    def evaluate(self, x: int, field: Optional[FieldSpec] = None) -> int:
        """Value at the element code x of field (an extension of ours, default ours)"""
        field = field or self.field
        if not field.contains(self.field):
            raise FieldMismatchError(f"cannot evaluate a polynomial over {self.field} in {field}")
        F = field_of(field)
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def evaluate_many(self, xs, field: Optional[FieldSpec] = None) -> np.ndarray:
        field = field or self.field
        if not field.contains(self.field):
            raise FieldMismatchError(f"cannot evaluate a polynomial over {self.field} in {field}")
        return field_of(field).veval(self.coeffs, xs)

    def pow_mod(self, n: int, modulus: 'UniPoly') -> 'UniPoly':
        result = UniPoly.one(self.field) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def to_text(self) -> str:
        return json.dumps(list(self.coeffs), separators=(',', ':'))

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    @classmethod
    def from_text(cls, field: FieldSpec, text) -> 'UniPoly':
        """Parse the ascending coefficient-list form, e.g. "[1,0,1]" for t^2+1"""
        coeffs = json.loads(text) if isinstance(text, str) else text
        if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
            raise CurveError(f"malformed polynomial text {text!r}", stage="algebra")
        return cls(field, coeffs)

    def __repr__(self):
        if self.is_zero():
            return f"UniPoly({self.field}, 0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return f"UniPoly({self.field}, {' + '.join(reversed(terms))})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd"""
    if a.field != b.field:
        raise FieldMismatchError(f"polynomials over {a.field} and {b.field}")
    if a.is_zero() and b.is_zero():
        raise ZeroDivisionFieldError("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_arith(a: UniPoly, b: UniPoly, op: str):
    """add, mul, divrem or gcd of two polynomials over the same field"""
    if a.field != b.field:
        raise FieldMismatchError(f"polynomials over {a.field} and {b.field}")
    if op == 'add':
        return a + b
    if op == 'mul':
        return a * b
    if op == 'divrem':
        return divmod(a, b)
    if op == 'gcd':
        return poly_gcd(a, b)
    raise CurveError(f"unknown polynomial operation {op!r}", stage="algebra")


def is_irreducible(a: UniPoly) -> bool:
    """No factor of degree <= deg a / 2: gcd(a, t^(q^i) - t) = 1 for all such i"""
    n = a.degree
    if n == NEG_INF or n < 1:
        raise CurveError("irreducibility of a constant polynomial is undefined", stage="algebra")
    if n == 1:
        return True
    q = a.field.cardinality
    t = UniPoly.monomial(a.field, 1)
    power = t % a
    for _ in range(n // 2):
        power = power.pow_mod(q, a)
        if poly_gcd(a, power - t).degree > 0:
            return False
    return True


def is_squarefree(a: UniPoly) -> bool:
    if a.is_zero():
        raise CurveError("squarefreeness of the zero polynomial is undefined", stage="algebra")
    if a.degree == 0:
        return True
    da = a.derivative()
    if da.is_zero():
        # a p-th power over a perfect field
        return False
    return poly_gcd(a, da).degree == 0


def valuation_at(a: UniPoly, p: UniPoly):
    """Largest m with p^m | a (INF for a = 0)"""
    if p.degree < 1:
        raise CurveError(f"valuation at a unit or zero polynomial {p!r}", stage="algebra")
    if debug_checks() and not is_irreducible(p):
        raise ReducibleModulusError(f"valuation at a reducible polynomial {p!r}")
    if a.is_zero():
        return INF
    m = 0
    while True:
        quot, rem = divmod(a, p)
        if not rem.is_zero():
            return m
        a = quot
        m += 1


def _cache_path(spec: FieldSpec, d: int) -> Optional[str]:
    cache_dir = gonal_setting('GONAL_CACHE_DIR')
    if not cache_dir:
        return None
    key = json.dumps({"field": spec.to_json(), "degree": d}, sort_keys=True)
    digest = hashlib.sha1(key.encode()).hexdigest()[:16]
    return os.path.join(cache_dir, f"irreducible-{digest}.json")


def find_irreducible(spec: FieldSpec, d: int) -> UniPoly:
    """First monic irreducible of degree d, coefficients ordered from the constant term up"""
    if d < 1:
        raise CurveError(f"degree {d} must be at least 1", stage="algebra")
    path = _cache_path(spec, d)
    if path and os.path.exists(path):
        try:
            with open(path) as fh:
                return UniPoly(spec, json.load(fh)["coeffs"])
        except (OSError, ValueError, KeyError) as e:
            logger.warning(f"Ignoring unreadable irreducible cache entry {path}: {e}")
    q = spec.cardinality
    for low in itertools.product(range(q), repeat=d):
        candidate = UniPoly._raw(spec, list(low) + [1])
        if d > 1 and low[0] == 0:
            continue
        if is_irreducible(candidate):
            if path:
                try:
                    os.makedirs(os.path.dirname(path), exist_ok=True)
                    with open(path, 'w') as fh:
                        json.dump({"field": spec.to_json(), "degree": d, "coeffs": list(candidate.coeffs)}, fh)
                except OSError as e:
                    logger.warning(f"Could not write irreducible cache entry {path}: {e}")
            return candidate
    raise ReducibleModulusError(f"no irreducible polynomial of degree {d} over {spec}")


@functools.lru_cache(maxsize=None)
def extension_spec(spec: FieldSpec, k: int) -> FieldSpec:
    """F_{q^k} as F_q[u]/(m(u)), m the first monic irreducible of degree k"""
    if k < 1:
        raise CurveError(f"extension degree {k} must be at least 1", stage="algebra")
    if k == 1:
        return spec
    m = find_irreducible(spec, k)
    return FieldSpec(spec.p, spec.e * k, m.coeffs, spec)


def check_enumeration(size: int, what: str) -> None:
    cap = gonal_setting('GONAL_ENUMERATION_CAP')
    if size > cap:
        logger.error(f"{what}: {size} exceeds the enumeration cap {cap}")
        raise CapExceededError(f"{what} needs {size} evaluations, cap is {cap}", size=size, cap=cap)


def roots_in_field(a: UniPoly) -> FrozenSet[int]:
    """Distinct roots of a in its own field, by evaluation at every element"""
    if a.is_zero():
        raise CurveError("the zero polynomial has every element as a root", stage="algebra")
    F = field_of(a.field)
    check_enumeration(F.order, f"root search in {a.field}")
    values = F.veval(a.coeffs, F.elements())
    return frozenset(np.nonzero(values == 0)[0].tolist())


def count_distinct_roots(h: UniPoly) -> int:
    """deg gcd(h, y^|K| - y): the number of distinct roots of h in its field"""
    if h.is_zero():
        raise CurveError("the zero polynomial has every element as a root", stage="algebra")
    if h.degree <= 0:
        return 0
    if h.degree == 1:
        return 1
    y = UniPoly.monomial(h.field, 1)
    frob = y.pow_mod(h.field.cardinality, h)
    return int(poly_gcd(h, frob - y).degree)
