"""Arithmetic in F3 and F9 = F3[omega]/(omega^2 - omega - 1).

With this minimal polynomial omega itself generates the cyclic group F9^x,
so it is the distinguished primitive 8th root of unity.
"""
from __future__ import annotations

import re
from typing import Iterator


def f3(n: int) -> int:
    """Reduce an integer to the balanced representative in {-1, 0, 1}."""
    r = n % 3
    return -1 if r == 2 else r


_ADD: dict = {}
_MUL: dict = {}


class F9:
    """An element c0 + c1*omega of F9, immutable and hashable."""

    __slots__ = ("c0", "c1")
    _interned: dict = {}

    def __new__(cls, c0: int = 0, c1: int = 0):
        key = (c0 % 3, c1 % 3)
        x = cls._interned.get(key)
        if x is None:
            x = object.__new__(cls)
            object.__setattr__(x, "c0", f3(c0))
            object.__setattr__(x, "c1", f3(c1))
            cls._interned[key] = x
        return x

    def __setattr__(self, key, value):
        raise AttributeError("F9 elements are immutable")

    def __reduce__(self):
        return (F9, (self.c0, self.c1))

    @classmethod
    def coerce(cls, x) -> "F9":
        if isinstance(x, F9):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to F9")

    def __eq__(self, other):
        if isinstance(other, int):
            other = F9(other)
        if not isinstance(other, F9):
            return NotImplemented
        return self is other

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def __add__(self, other):
        if not isinstance(other, F9):
            other = F9.coerce(other)
        r = _ADD.get((self, other))
        if r is None:
            r = _ADD[(self, other)] = F9(self.c0 + other.c0, self.c1 + other.c1)
        return r

    __radd__ = __add__

    def __neg__(self):
        return F9(-self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-F9.coerce(other))

    def __rsub__(self, other):
        return F9.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, F9):
            other = F9.coerce(other)
        r = _MUL.get((self, other))
        if r is None:
            # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, and w^2 = w + 1
            a, b, c, d = self.c0, self.c1, other.c0, other.c1
            bd = b * d
            r = _MUL[(self, other)] = F9(a * c + bd, a * d + b * c + bd)
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return self * F9.coerce(other).inverse()

    def inverse(self) -> "F9":
        if not self:
            raise ZeroDivisionError("0 has no inverse in F9")
        return self ** 7

    def frobenius(self) -> "F9":
        return self ** 3

    def norm(self) -> int:
        """x * frobenius(x), which always lies in F3."""
        n = self * self.frobenius()
        assert n.c1 == 0
        return n.c0

    def in_f3(self) -> bool:
        return self.c1 == 0

    def log(self) -> int:
        """The exponent k in 0..7 with omega^k == self."""
        if not self:
            raise ValueError("0 has no discrete logarithm")
        return _LOG[(self.c0, self.c1)]

    def __repr__(self):
        return f"F9({self.c0}, {self.c1})"

    def __str__(self):
        if not self:
            return "0"
        k = self.log()
        if k == 0:
            return "1"
        if k == 4:
            return "-1"
        return "omega" if k == 1 else f"omega^{k}"

    @classmethod
    def parse(cls, text: str) -> "F9":
        text = text.strip().replace(" ", "")
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:]
        elif text.startswith("+"):
            text = text[1:]
        if re.fullmatch(r"\d+", text):
            return cls(sign * int(text))
        m = re.fullmatch(r"(?:omega|ω)(?:\^(-?\d+))?", text)
        if not m:
            raise ValueError(f"not an F9 element: {text!r}")
        return OMEGA ** int(m.group(1) or 1) * sign


ZERO = F9(0, 0)
ONE = F9(1, 0)
OMEGA = F9(0, 1)

_LOG = {}
_x = ONE
for _k in range(8):
    _LOG[(_x.c0, _x.c1)] = _k
    _x = _x * OMEGA
del _x, _k


def elements() -> Iterator[F9]:
    for c0 in (0, 1, -1):
        for c1 in (0, 1, -1):
            yield F9(c0, c1)


def units() -> list[F9]:
    return [OMEGA ** k for k in range(8)]


def f9_mul(x: F9, y: F9) -> F9:
    return x * y


def frobenius(x: F9) -> F9:
    return F9.coerce(x).frobenius()
