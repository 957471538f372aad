"""Integer combinations of p^n-th roots of unity with exact zero testing.

An element is a finite sum ``sum_e coeffs[e] * exp(2*pi*i*e/p**n)`` with
arbitrary-precision integer coefficients.  The lattice of vanishing
coefficient vectors has a basis indexed by the residue fibers
``{r + j*p**(n-1) : 0 <= j < p}``: a combination is exactly zero iff its
coefficients are constant on every fiber.  Zero testing therefore never
touches floating point and never divides by a cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

__all__ = [
    "LevelMismatchError",
    "Fiber",
    "fibers",
    "GroupRingElement",
]


class LevelMismatchError(ValueError):
    """Raised when combining elements at incompatible cyclotomic levels."""


@dataclass(frozen=True, slots=True)
class Fiber:
    """The p exponents {residue + j*p**(n-1)} inside Z/p**n Z."""

    p: int
    n: int
    residue: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("fibers exist only for level n >= 1")
        if not 0 <= self.residue < self.p ** (self.n - 1):
            raise ValueError("fiber residue out of range")

    @property
    def exponents(self) -> tuple[int, ...]:
        q = self.p ** (self.n - 1)
        return tuple(self.residue + j * q for j in range(self.p))


def fibers(p: int, n: int):
    """All p**(n-1) fibers, partitioning Z/p**n Z."""
    for r in range(p ** (n - 1)):
        yield Fiber(p, n, r)


class GroupRingElement:
    """Integer combination of p**n-th roots of unity, in canonical form.

    Canonical form stores no zero coefficients and reduces all exponents
    mod p**n.  Values are immutable; every operation returns a new element.
    """

    __slots__ = ("p", "n", "_coeffs")

    def __init__(self, p: int, n: int, coeffs=None):
        if n < 0:
            raise ValueError("level n must be >= 0")
        self.p = p
        self.n = n
        m = p**n
        acc: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, c in items:
                if c:
                    e %= m
                    acc[e] = acc.get(e, 0) + c
        self._coeffs = {e: c for e, c in acc.items() if c}

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, p: int, n: int) -> "GroupRingElement":
        return cls(p, n)

    @classmethod
    def constant(cls, p: int, n: int, value: int) -> "GroupRingElement":
        return cls(p, n, {0: value})

    @classmethod
    def from_exponents(cls, p: int, n: int, exponents) -> "GroupRingElement":
        """Sum of roots of unity given as a multiset of exponents."""
        return cls(p, n, ((e, 1) for e in exponents))

    # ------------------------------------------------------------------
    # structure

    @property
    def modulus(self) -> int:
        return self.p**self.n

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent % self.modulus, 0)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and other.p == self.p
            and other.n == self.n
            and other._coeffs == self._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, tuple(sorted(self._coeffs.items()))))

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*w^{e}" for e, c in sorted(self._coeffs.items())
        ) or "0"
        return f"<{body} at level {self.p}^{self.n}>"

    # ------------------------------------------------------------------
    # zero test (fiber criterion)

    def is_zero(self) -> bool:
        """Exact vanishing test.

        For n >= 1 the element vanishes iff its coefficient vector is
        constant on every fiber {r + j*p**(n-1)}; for n = 0 it vanishes iff
        the single coefficient is 0.
        """
        if not self._coeffs:
            return True
        if self.n == 0:
            return False
        q = self.p ** (self.n - 1)
        get = self._coeffs.get
        seen = set()
        for e in self._coeffs:
            r = e % q
            if r in seen:
                continue
            seen.add(r)
            c0 = get(r, 0)
            for j in range(1, self.p):
                if get(r + j * q, 0) != c0:
                    return False
        return True

    # ------------------------------------------------------------------
    # arithmetic

    def _check(self, other: "GroupRingElement") -> None:
        if not isinstance(other, GroupRingElement):
            raise TypeError(f"expected GroupRingElement, got {type(other).__name__}")
        if other.p != self.p or other.n != self.n:
            raise LevelMismatchError(
                f"incompatible cyclotomic levels {self.p}^{self.n} and {other.p}^{other.n}"
            )

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return GroupRingElement(self.p, self.n, acc)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.p, self.n, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(
                self.p, self.n, {e: c * other for e, c in self._coeffs.items()}
            )
        self._check(other)
        m = self.modulus
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = (e1 + e2) % m
                acc[e] = acc.get(e, 0) + c1 * c2
        return GroupRingElement(self.p, self.n, acc)

    __rmul__ = __mul__

    def conj(self) -> "GroupRingElement":
        m = self.modulus
        return GroupRingElement(
            self.p, self.n, {(-e) % m: c for e, c in self._coeffs.items()}
        )

    def norm_squared(self) -> "GroupRingElement":
        """|value|^2 as an exact element: self * conj(self)."""
        return self * self.conj()

    def rotate(self, x_unit: int) -> "GroupRingElement":
        """Multiply every exponent by a unit of Z/p**n Z.

        Vanishing is preserved in both directions because rotation by a unit
        is invertible; that property is tested rather than assumed.
        """
        if x_unit % self.p == 0:
            raise ValueError(f"rotation factor {x_unit} is divisible by {self.p}")
        m = self.modulus
        return GroupRingElement(
            self.p, self.n, {(e * x_unit) % m: c for e, c in self._coeffs.items()}
        )

    def lifted(self, new_n: int) -> "GroupRingElement":
        """Rewrite at a deeper level: exponents scale by p**(new_n - n)."""
        if new_n < self.n:
            raise LevelMismatchError("can only lift to a deeper level")
        f = self.p ** (new_n - self.n)
        return GroupRingElement(
            self.p, new_n, {e * f: c for e, c in self._coeffs.items()}
        )

    # ------------------------------------------------------------------
    # structural decomposition

    def decompose_zero_sum(self) -> list[tuple[int, ...]]:
        """Split a vanishing 0/1 sum into p-term vanishing subsets.

        Greedy: take the smallest unmatched exponent and complete its fiber.
        The fiber criterion guarantees the whole fiber is present, so the
        subsets partition the support into support/p groups of size p, each
        vanishing on its own.
        """
        if any(c != 1 for c in self._coeffs.values()):
            raise ValueError("decomposition requires 0/1 coefficients")
        if not self.is_zero():
            raise ValueError("decomposition requires a vanishing sum")
        if not self._coeffs:
            return []
        q = self.p ** (self.n - 1)
        out = []
        used: set[int] = set()
        for e in sorted(self._coeffs):
            if e in used:
                continue
            fiber = Fiber(self.p, self.n, e % q).exponents
            for x in fiber:
                if x not in self._coeffs:  # cannot happen for vanishing 0/1 input
                    raise ValueError("support is not a union of complete fibers")
                used.add(x)
            out.append(fiber)
        return out

    # ------------------------------------------------------------------
    # numeric view (for oracles and display only)

    def complex_value(self) -> complex:
        m = self.modulus
        return sum(
            c * cmath.exp(2j * cmath.pi * e / m) for e, c in self._coeffs.items()
        )

    # ------------------------------------------------------------------
    # serialization

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "coeffs": [[e, c] for e, c in sorted(self._coeffs.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GroupRingElement":
        return cls(int(obj["p"]), int(obj["n"]), ((int(e), int(c)) for e, c in obj["coeffs"]))
