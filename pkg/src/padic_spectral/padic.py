"""Exact arithmetic in the p-adic numbers with finite digit expansions.

Values are elements of Z[1/p] stored as a pair ``unit * p**valuation`` with
``unit`` either zero or coprime to p.  All ring operations, valuations,
fractional parts and character exponents are decided exactly with integer
arithmetic; digit expansions are derived on demand rather than stored, so
there is no precision policy anywhere.

The additive character used throughout is ``chi(x) = exp(2*pi*i*{x})`` where
``{x}`` is the fractional part of x (the digits at negative positions).  It
is trivial on the p-adic integers and its exponent ``{x}`` is always an
ordinary rational with p-power denominator, which is what
:func:`character_exponent` returns.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

INFINITY = math.inf
NEG_INFINITY = -math.inf

__all__ = [
    "INFINITY",
    "NEG_INFINITY",
    "is_prime",
    "PrimeContext",
    "PAdicRational",
    "Ball",
    "valuation",
    "distance",
    "fractional_part",
    "character_exponent",
    "parse_literal",
]


def is_prime(n: int) -> bool:
    """Trial-division primality check; the primes used here are small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeContext:
    """A validated prime base shared by a family of p-adic values."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise ValueError(f"p must be a prime integer, got {p!r}")
        self.p = p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeContext) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeContext", self.p))

    def __repr__(self) -> str:
        return f"PrimeContext({self.p})"

    def zero(self) -> "PAdicRational":
        return PAdicRational(self.p, 0, 0)

    def one(self) -> "PAdicRational":
        return PAdicRational(self.p, 1, 0)

    def from_int(self, n: int) -> "PAdicRational":
        return PAdicRational(self.p, n, 0)

    def from_fraction(self, q) -> "PAdicRational":
        return PAdicRational.from_fraction(self.p, q)

    def parse(self, text: str) -> "PAdicRational":
        return parse_literal(self.p, text)


@dataclass(frozen=True, slots=True)
class PAdicRational:
    """An element ``unit * p**valuation`` of Q_p with a finite expansion.

    ``unit == 0`` is the unique representation of zero (its stored valuation
    is normalised to 0 and carries no meaning).  The constructor renormalises
    arbitrary integer inputs, so ``PAdicRational(2, 12, 0)`` stores
    ``(3, 2)``.
    """

    p: int
    unit: int
    valuation: int = 0

    def __post_init__(self):
        u = self.unit
        if u == 0:
            if self.valuation != 0:
                object.__setattr__(self, "valuation", 0)
            return
        p, v = self.p, self.valuation
        while u % p == 0:
            u //= p
            v += 1
        if u != self.unit:
            object.__setattr__(self, "unit", u)
            object.__setattr__(self, "valuation", v)

    # ------------------------------------------------------------------
    # constructors / conversions

    @classmethod
    def from_int(cls, p: int, n: int) -> "PAdicRational":
        return cls(p, n, 0)

    @classmethod
    def from_fraction(cls, p: int, q) -> "PAdicRational":
        """Build from a rational whose denominator is a power of p.

        Rationals like 1/3 in Q_2 exist p-adically but have an infinite
        expansion; they are rejected rather than approximated.
        """
        q = Fraction(q)
        if q == 0:
            return cls(p, 0, 0)
        num, den = q.numerator, q.denominator
        v = 0
        while den % p == 0:
            den //= p
            v -= 1
        if den != 1:
            raise ValueError(
                f"{q} has no finite {p}-adic expansion (denominator {q.denominator} "
                f"is not a power of {p})"
            )
        return cls(p, num, v)

    def to_fraction(self) -> Fraction:
        if self.unit == 0:
            return Fraction(0)
        if self.valuation >= 0:
            return Fraction(self.unit * self.p**self.valuation)
        return Fraction(self.unit, self.p ** (-self.valuation))

    # ------------------------------------------------------------------
    # predicates and digit access

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_integer(self) -> bool:
        """True iff the value lies in Z_p (equivalently, is a plain integer)."""
        return self.unit == 0 or self.valuation >= 0

    def digit(self, position: int) -> int:
        """The digit a_position in the expansion sum(a_n * p**n)."""
        if self.unit == 0 or position < self.valuation:
            return 0
        k = position - self.valuation
        return (self.unit % self.p ** (k + 1)) // self.p**k

    def digits(self, start: int, stop: int) -> tuple[int, ...]:
        """Digits at positions start <= n < stop."""
        return tuple(self.digit(n) for n in range(start, stop))

    def truncate_digits(self, position: int) -> "PAdicRational":
        """Keep only the digits at positions strictly below ``position``.

        This is the canonical representative of the value modulo the ball
        ``p**position * Z_p``; with ``position == 0`` it is the fractional
        part.
        """
        if self.unit == 0 or self.valuation >= position:
            return PAdicRational(self.p, 0, 0)
        m = position - self.valuation
        return PAdicRational(self.p, self.unit % self.p**m, self.valuation)

    # ------------------------------------------------------------------
    # ring operations

    def _check(self, other: "PAdicRational") -> None:
        if not isinstance(other, PAdicRational):
            raise TypeError(f"expected PAdicRational, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def __add__(self, other: "PAdicRational") -> "PAdicRational":
        self._check(other)
        if self.unit == 0:
            return other
        if other.unit == 0:
            return self
        v = min(self.valuation, other.valuation)
        u = self.unit * self.p ** (self.valuation - v) + other.unit * self.p ** (
            other.valuation - v
        )
        return PAdicRational(self.p, u, v)

    def __neg__(self) -> "PAdicRational":
        return PAdicRational(self.p, -self.unit, self.valuation)

    def __sub__(self, other: "PAdicRational") -> "PAdicRational":
        return self + (-other)

    def __mul__(self, other: "PAdicRational") -> "PAdicRational":
        self._check(other)
        if self.unit == 0 or other.unit == 0:
            return PAdicRational(self.p, 0, 0)
        return PAdicRational(
            self.p, self.unit * other.unit, self.valuation + other.valuation
        )

    def __truediv__(self, other: "PAdicRational") -> "PAdicRational":
        """Exact division, defined only when the quotient stays in Z[1/p].

        Needed only as an oracle convenience; a quotient like 1/3 in Q_2
        would have an infinite expansion and raises.
        """
        self._check(other)
        if other.unit == 0:
            raise ZeroDivisionError("division by p-adic zero")
        if self.unit == 0:
            return PAdicRational(self.p, 0, 0)
        q = Fraction(self.unit, other.unit)
        if q.denominator != 1:
            raise ValueError(
                f"quotient {self}/{other} has no finite {self.p}-adic expansion"
            )
        return PAdicRational(self.p, q.numerator, self.valuation - other.valuation)

    def scaled(self, k: int) -> "PAdicRational":
        """Multiply by p**k."""
        if self.unit == 0:
            return self
        return PAdicRational(self.p, self.unit, self.valuation + k)

    # ------------------------------------------------------------------
    # serialization

    def __str__(self) -> str:
        if self.unit == 0:
            return "0"
        return f"{self.unit}*{self.p}^{self.valuation}"

    def to_rational_text(self) -> str:
        """Fraction-style text: integers plain, otherwise ``num/den``."""
        f = self.to_fraction()
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"

    def to_json(self) -> dict:
        return {"unit": self.unit, "valuation": self.valuation if self.unit else 0}

    @classmethod
    def from_json(cls, p: int, obj: dict) -> "PAdicRational":
        return cls(p, int(obj["unit"]), int(obj.get("valuation", 0)))


def valuation(x: PAdicRational) -> int | float:
    """v_p(x): the exponent with x = unit * p**v; +inf for x = 0."""
    return INFINITY if x.unit == 0 else x.valuation


def distance(x: PAdicRational, y: PAdicRational) -> int | float:
    """The exponent e with |x - y|_p = p**e; -inf when x == y."""
    d = x - y
    return NEG_INFINITY if d.unit == 0 else -d.valuation


def fractional_part(x: PAdicRational) -> PAdicRational:
    """{x}: the digits of x at negative positions, as an exact value.

    ``x - fractional_part(x)`` always lies in Z_p, and the fractional part
    is zero exactly when x itself is a p-adic integer.
    """
    return x.truncate_digits(0)


def character_exponent(x: PAdicRational) -> Fraction:
    """{x} as an ordinary rational q in [0, 1); chi(x) = exp(2*pi*i*q).

    Exact: the exponential is never evaluated.
    """
    f = fractional_part(x)
    if f.unit == 0:
        return Fraction(0)
    return Fraction(f.unit % f.p ** (-f.valuation), f.p ** (-f.valuation))


@dataclass(frozen=True, slots=True)
class Ball(object):
    """The ball center + p**(-radius_exponent) Z_p, of radius p**radius_exponent."""

    center: PAdicRational
    radius_exponent: int

    def contains(self, x: PAdicRational) -> bool:
        d = x - self.center
        return d.unit == 0 or -d.valuation <= self.radius_exponent

    def canonical(self) -> "Ball":
        # two centers describe the same ball iff they agree on the digits
        # below position -radius_exponent
        return Ball(
            self.center.truncate_digits(-self.radius_exponent), self.radius_exponent
        )

    def same_ball(self, other: "Ball") -> bool:
        return (
            self.radius_exponent == other.radius_exponent
            and self.contains(other.center)
        )

    def disjoint_from(self, other: "Ball") -> bool:
        """Balls of equal radius are identical or disjoint; decided exactly."""
        if self.radius_exponent != other.radius_exponent:
            raise ValueError("disjointness check expects equal radii")
        return not self.same_ball(other)

    def __str__(self) -> str:
        return f"B({self.center}, {self.center.p}^{self.radius_exponent})"


_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/(\d+)$")
_POW_RE = re.compile(r"^([+-]?\d+)\*([0-9]+|p)\^([+-]?\d+)$")


def parse_literal(p: int, text: str) -> PAdicRational:
    """Parse a p-adic literal: a signed integer, ``a/b`` with b a power of p,
    or ``u*p^k`` (the prime may be spelled ``p`` or by its decimal value)."""
    s = re.sub(r"\s+", "", text)
    if _INT_RE.match(s):
        return PAdicRational(p, int(s), 0)
    m = _FRAC_RE.match(s)
    if m:
        return PAdicRational.from_fraction(p, Fraction(int(m.group(1)), int(m.group(2))))
    m = _POW_RE.match(s)
    if m:
        base = m.group(2)
        if base != "p" and int(base) != p:
            raise ValueError(f"literal {text!r} uses base {base}, expected {p}")
        return PAdicRational(p, int(m.group(1)), int(m.group(3)))
    raise ValueError(f"cannot parse p-adic literal {text!r}")
