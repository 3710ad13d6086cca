"""Coefficient ring descriptors.

Elements are plain Python values: ints in [0, p) for a prime field,
Fraction for the rationals, arbitrary ints for the integers. The
descriptor supplies coercion and arithmetic so series/polynomial code can
stay generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, NotPrime, RingMismatch


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for machine-word sized n."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # Sufficient witness set for n < 3.3 * 10^24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


@dataclass(frozen=True)
class PrimeField:
    """F_p with canonical representatives 0..p-1."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def char(self) -> int:
        return self.p

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise RingMismatch(f"denominator of {x} not invertible mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise RingMismatch(f"cannot coerce {x!r} into F_{self.p}")

    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"0 is not invertible in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def format(self, a) -> str:
        return str(a)

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class RationalField:
    """Exact rationals."""

    @property
    def char(self) -> int:
        return 0

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise RingMismatch(f"cannot coerce {x!r} into Q")

    zero = property(lambda self: Fraction(0))
    one = property(lambda self: Fraction(1))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 is not invertible in Q")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class IntegerRing:
    """Z, for polynomial coefficients."""

    @property
    def char(self) -> int:
        return 0

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise RingMismatch(f"cannot coerce {x!r} into Z")

    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def __str__(self):
        return "Z"


QQ = RationalField()
ZZ = IntegerRing()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
