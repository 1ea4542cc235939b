"""
Exp/log/Zech-logarithm tables for finite fields of moderate size.

An element of F_Q is stored as its canonical integer code (base-p digits of
its coordinate vector over F_p). Multiplication by a fixed element is an
F_p-linear map on those digit vectors, so the whole power sequence of a
primitive element is produced by repeated squaring of that matrix with
numpy. Addition uses Zech logarithms: a + b = a * (1 + b/a).
"""
import itertools
import logging
from typing import List

import numpy as np

logger = logging.getLogger(__name__)


def factor_integer(n: int) -> List[int]:
    """Distinct prime factors of n by trial division"""
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        primes.append(n)
    return primes


def code_to_digits(codes: np.ndarray, p: int, width: int) -> np.ndarray:
    """Base-p digit matrix of shape (width, len(codes)), least significant first"""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((width, codes.size), dtype=np.int64)
    rest = codes.copy()
    for i in range(width):
        out[i] = rest % p
        rest //= p
    return out


def digits_to_code(digits: np.ndarray, p: int) -> np.ndarray:
    weights = p ** np.arange(digits.shape[0], dtype=np.int64)
    return weights @ digits


class ZechTables:
    """exp, log and Zech tables of one field, plus the numpy kernels using them"""

    def __init__(self, p: int, width: int, exp: np.ndarray):
        self.p = p
        self.width = width
        self.order = p ** width
        self.unit_order = self.order - 1
        self.exp = exp
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(self.unit_order, dtype=np.int64)
        self.log = log
        # 1 + x only changes the lowest base-p digit
        low = exp % p
        one_plus = exp - low + (low + 1) % p
        self.zech = log[one_plus]
        self.half = self.unit_order // 2 if p != 2 else 0
        self.exp_list = exp.tolist()
        self.log_list = log.tolist()
        self.zech_list = self.zech.tolist()

    @classmethod
    def build(cls, p: int, width: int, mul_code) -> "ZechTables":
        """Build tables given the field's (slow) multiplication on codes"""
        order = p ** width
        unit_order = order - 1
        prime_factors = factor_integer(unit_order)

        def slow_pow(a, n):
            result = 1
            while n:
                if n & 1:
                    result = mul_code(result, a)
                a = mul_code(a, a)
                n >>= 1
            return result

        generator = None
        candidates = itertools.chain([p], (c for c in range(2, order) if c != p)) if order > 2 else [1]
        for candidate in candidates:
            if candidate >= order:
                continue
            if all(slow_pow(candidate, unit_order // ell) != 1 for ell in prime_factors):
                generator = candidate
                break
        if generator is None:
            raise ArithmeticError(f"no primitive element found in field of order {order}")

        # matrix of multiplication by the generator on base-p digit vectors
        basis = [p ** i for i in range(width)]
        columns = [mul_code(generator, b) for b in basis]
        step = code_to_digits(np.array(columns, dtype=np.int64), p, width)

        powers = np.zeros((width, unit_order), dtype=np.int64)
        powers[0, 0] = 1
        filled = 1
        while filled < unit_order:
            take = min(filled, unit_order - filled)
            powers[:, filled:filled + take] = (step @ powers[:, :take]) % p
            step = (step @ step) % p
            filled += take
        exp = digits_to_code(powers, p)
        logger.debug(f"Zech tables built for F_{order} with generator code {generator}")
        return cls(p, width, exp)

    # scalar kernels

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_list[(self.log_list[a] + self.log_list[b]) % self.unit_order]

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log_list[a]
        z = self.zech_list[(self.log_list[b] - la) % self.unit_order]
        if z < 0:
            return 0
        return self.exp_list[(la + z) % self.unit_order]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self.exp_list[(self.log_list[a] + self.half) % self.unit_order]

    def inv(self, a: int) -> int:
        return self.exp_list[(-self.log_list[a]) % self.unit_order]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n > 0 else 1
        return self.exp_list[(self.log_list[a] * n) % self.unit_order]

    # vector kernels

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self.exp[(self.log[a] + self.log[b]) % self.unit_order]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % self.unit_order]
        out = np.where(z < 0, 0, self.exp[(la + z) % self.unit_order])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        out = self.exp[(self.log[a] + self.half) % self.unit_order]
        return np.where(a == 0, 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == 0, 0, self.exp[(-self.log[a]) % self.unit_order])

    def vpower(self, a: np.ndarray, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * n) % self.unit_order]
        return np.where(a == 0, 0 if n > 0 else 1, out)

    def vis_square(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.ones(a.shape, dtype=bool)
        return (a == 0) | (self.log[a] % 2 == 0)
