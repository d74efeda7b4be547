"""Exact arithmetic in Q + sum_p Q log p.

Shannon entropies of rational laws are rational combinations of logarithms
of primes. Those logarithms are linearly independent over Q, so a value is
zero exactly when every coefficient is zero. This makes the natural-log
entropy identities checkable with no rounding at all.
"""

import math
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(sorted(out.items()))


class LogLinear:
    """Element c_1 + sum_p c_p log p with rational coefficients (key 1 holds c_1)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def log(cls, q):
        q = Fraction(q)
        if q <= 0:
            raise ValueError("log of non-positive number")
        t = {}
        for p, e in factorize(q.numerator):
            t[p] = t.get(p, 0) + e
        for p, e in factorize(q.denominator):
            t[p] = t.get(p, 0) - e
        return cls(t)

    @staticmethod
    def _coerce(x):
        if isinstance(x, LogLinear):
            return x
        if isinstance(x, (int, Fraction)):
            return LogLinear({1: x})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) + other
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return LogLinear(t)

    __radd__ = __add__

    def __neg__(self):
        return LogLinear({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LogLinear({k: v * other for k, v in self.terms.items()})
        if isinstance(other, LogLinear):
            if set(other.terms) <= {1}:
                return self * other.terms.get(1, 0)
            if set(self.terms) <= {1}:
                return other * self.terms.get(1, 0)
            raise TypeError("product of two logarithmic terms is not linear")
        return float(self) * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LogLinear({k: v / other for k, v in self.terms.items()})
        return float(self) / other

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __float__(self):
        return float(sum(float(v) * (1.0 if k == 1 else math.log(k)) for k, v in self.terms.items()))

    def __abs__(self):
        return abs(float(self))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            parts.append(str(v) if k == 1 else "%s*log(%d)" % (v, k))
        return " + ".join(parts)


def is_exact_zero(x):
    if isinstance(x, LogLinear):
        return x.is_zero()
    return x == 0


def to_float(x):
    return float(x)


def exact_str(x):
    """String for a value: num/den for rationals, log form for LogLinear."""
    if isinstance(x, Fraction):
        return "%d/%d" % (x.numerator, x.denominator)
    if isinstance(x, int):
        return "%d/1" % x
    if isinstance(x, LogLinear):
        return repr(x)
    return repr(float(x))
