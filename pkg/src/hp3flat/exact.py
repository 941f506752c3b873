"""Exact rational and quadratic-surd arithmetic for torus decisions."""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
import math

from sympy import factorint


def to_fraction(x):
    """Fraction from an int, Fraction or a "p/q" string.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"exact rational required, got {type(x).__name__} {x!r}")


def is_rational_square(q):
    """sqrt(q) as a Fraction when q is the square of a rational, else None."""
    q = to_fraction(q)
    if q < 0:
        raise ValueError(f"negative input {q}")
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ExactAngle:
    """An angle in (0, pi) given by its rational cosine; the sine is positive."""

    cos: Fraction

    def __post_init__(self):
        c = to_fraction(self.cos)
        if not -1 < c < 1:
            raise ValueError(f"cosine {c} must lie strictly between -1 and 1")
        object.__setattr__(self, "cos", c)

    @classmethod
    def from_cos(cls, c):
        return cls(to_fraction(c))

    @property
    def sin_sq(self):
        return 1 - self.cos * self.cos

    @property
    def sin_sign(self):
        return 1

    @property
    def sin(self):
        """The sine as a Surd (exact)."""
        return Surd.sqrt(self.sin_sq)

    @property
    def radians(self):
        return math.acos(float(self.cos))

    def double(self):
        """The angle 2 theta (requires theta < pi/2)."""
        if not self.cos > 0:
            raise ValueError("doubling leaves (0, pi) unless cos > 0")
        return ExactAngle(2 * self.cos * self.cos - 1)

    def supplement(self):
        """pi - theta."""
        return ExactAngle(-self.cos)

    def __str__(self):
        return f"acos({self.cos})"


def squarefree_split(q):
    """Write q > 0 as f^2 * m / 1 with m a squarefree positive integer; returns (f, m)."""
    q = to_fraction(q)
    if q <= 0:
        raise ValueError("positive rational required")
    # q = n/d = n*d / d^2
    n = q.numerator * q.denominator
    f, m = 1, 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        if e % 2:
            m *= p
    return Fraction(f, q.denominator), m


class Surd:
    """Element of Q(sqrt(p) : p prime) stored as {squarefree m: rational coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for m, c in (terms or {}).items():
            c = to_fraction(c)
            if c != 0:
                clean[int(m)] = clean.get(int(m), 0) + c
        self.terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def rational(cls, q):
        return cls({1: to_fraction(q)})

    @classmethod
    def sqrt(cls, q):
        q = to_fraction(q)
        if q == 0:
            return cls()
        if q < 0:
            raise ValueError("real surds only")
        f, m = squarefree_split(q)
        return cls({m: f})

    def is_rational(self):
        return all(m == 1 for m in self.terms)

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def is_zero(self):
        return not self.terms

    def _primes(self):
        ps = set()
        for m in self.terms:
            ps.update(factorint(m))
        return ps

    def __add__(self, other):
        other = _coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Surd(t)

    __radd__ = __add__

    def __neg__(self):
        return Surd({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                t[m] = t.get(m, 0) + c1 * c2 * g
        return Surd(t)

    __rmul__ = __mul__

    def conjugate(self, p):
        """Galois conjugate sqrt(p) -> -sqrt(p)."""
        return Surd({m: (-c if m % p == 0 else c) for m, c in self.terms.items()})

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero surd")
        num = Surd.rational(1)
        den = self
        # multiply by conjugates until the denominator is rational
        for p in sorted(den._primes()):
            conj = den.conjugate(p)
            num = num * conj
            den = den * conj
        return num * Fraction(1, 1) * (1 / den.rational_value())

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __float__(self):
        return float(sum(float(c) * math.sqrt(m) for m, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Surd(0)"
        parts = [f"{c}" if m == 1 else f"{c}*sqrt({m})" for m, c in sorted(self.terms.items())]
        return "Surd(" + " + ".join(parts) + ")"


def _coerce(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Surd.rational(x)
    raise TypeError(f"cannot mix Surd with {type(x).__name__}")


def parse_rational(text):
    """Parse "p/q" or an integer string into a Fraction; floats are refused."""
    if not isinstance(text, str):
        raise TypeError("rational values must be given as 'p/q' strings")
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"{text!r} is not an exact rational (use 'p/q')")
    return Fraction(text.strip())
