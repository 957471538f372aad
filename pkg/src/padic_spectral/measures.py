"""Finite spectral measures and truncations of singular self-similar measures.

A uniform measure on a finite set F is spectral exactly when
``#F == p**#I_F`` where I_F collects the pairwise valuation exponents; the
same answer can be read off any fattening of F into a compact open set,
which the oracle mode cross-checks.

An eventually periodic partition of the levels N = I | J (branching levels
and pinned levels), together with a digit-choice rule at the pinned levels,
produces a nested family of compact open truncations whose normalized
restrictions converge to a singular measure.  The limit object is never
materialized: every claim about it is certified on truncations by the exact
residue identity checked in :func:`verify_truncation_spectrum`.  When the
partition is purely periodic with period gamma the limit is self-similar
under the maps x -> p**gamma * x + c over the level-gamma digit set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .cyclic import DigitSet
from .cyclotomic import GroupRingElement
from .padic import PAdicRational, character_exponent, is_prime
from .sets import CompactOpenSet, FourierValue

__all__ = [
    "FinitePointMeasure",
    "SingularMeasureSpec",
    "IFSMaps",
    "gamma_span",
    "is_spectral_finite",
    "measure_fourier",
    "verify_truncation_spectrum",
    "truncation_residue_checks",
    "ifs_orbit",
]


@dataclass(frozen=True)
class FinitePointMeasure:
    """The uniform probability measure on a finite set of p-adic points."""

    p: int
    points: tuple[PAdicRational, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("point set must be nonempty")
        if any(x.p != self.p for x in pts):
            raise ValueError("points have mixed primes")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        object.__setattr__(
            self, "points", tuple(sorted(pts, key=PAdicRational.to_fraction))
        )

    @classmethod
    def from_integers(cls, p: int, values) -> "FinitePointMeasure":
        return cls(p, tuple(PAdicRational(p, v) for v in values))

    @property
    def weight(self) -> Fraction:
        return Fraction(1, len(self.points))

    def gamma_span(self) -> int:
        """Max pairwise valuation: p**(-gamma_span) is the minimal distance."""
        if len(self.points) < 2:
            raise ValueError("gamma_span needs at least two points")
        return max(
            (x - y).valuation
            for i, x in enumerate(self.points)
            for y in self.points[i + 1 :]
        )

    def admissible_orders(self) -> frozenset[int]:
        return frozenset(
            (x - y).valuation
            for i, x in enumerate(self.points)
            for y in self.points[i + 1 :]
        )

    def fattened(self, gamma0: int) -> CompactOpenSet:
        """The union of the radius-p**(-gamma0) balls around the points."""
        from .sets import _canonicalize_balls

        return _canonicalize_balls(
            self.p, [(x, gamma0) for x in self.points], anchored=False
        )

    def is_spectral(self, oracle: bool = False) -> bool:
        """Spectrality of the measure: #points == p**#orders.

        With ``oracle`` the answer is cross-checked against homogeneity of
        the fattened set one level below the minimal distance; disagreement
        raises (it would falsify the equivalence this module relies on).
        """
        verdict = len(self.points) == self.p ** len(self.admissible_orders())
        if oracle:
            gamma0 = 1 if len(self.points) == 1 else self.gamma_span() + 1
            fat = self.fattened(gamma0).homogeneity().homogeneous
            if fat != verdict:
                raise RuntimeError(
                    f"finite-measure criterion ({verdict}) disagrees with "
                    f"fattened homogeneity ({fat}) for points "
                    f"{[str(x) for x in self.points]}"
                )
        return verdict

    def fourier(self, xi: PAdicRational) -> FourierValue:
        """Exact transform value (1/#F) * sum_c chi(-c*xi)."""
        if xi.p != self.p:
            raise ValueError("frequency has a different prime")
        p = self.p
        exponents = [character_exponent(-(c * xi)) for c in self.points]
        level = 0
        for q in exponents:
            den, k = q.denominator, 0
            while den > 1:
                den //= p
                k += 1
            level = max(level, k)
        pl = p**level
        elem = GroupRingElement.from_exponents(
            p, level, (int(q * pl) for q in exponents)
        )
        return FourierValue(self.weight, elem)


def gamma_span(measure: FinitePointMeasure) -> int:
    return measure.gamma_span()


def is_spectral_finite(measure: FinitePointMeasure, oracle: bool = False) -> bool:
    return measure.is_spectral(oracle)


def measure_fourier(measure: FinitePointMeasure, xi: PAdicRational) -> FourierValue:
    return measure.fourier(xi)


# ---------------------------------------------------------------------------
# digit-choice rules


def _zero_choice(level: int, prefix: tuple[int, ...]) -> int:
    return 0


def _repeat_choice(level: int, prefix: tuple[int, ...]) -> int:
    return prefix[-1] if prefix else 0


_NAMED_CHOICES: dict[str, Callable[[int, tuple[int, ...]], int]] = {
    "zero": _zero_choice,
    "repeat": _repeat_choice,
}


@dataclass(frozen=True)
class SingularMeasureSpec:
    """An eventually periodic level partition plus a digit-choice rule.

    ``preperiod`` and ``period`` are bit tuples; level i branches (all p
    digits) when its bit is set, otherwise the digit is pinned by ``choice``
    applied to the digits already chosen below.  Both parts of the partition
    must be infinite, so the period carries at least one bit of each kind.
    """

    p: int
    preperiod: tuple[bool, ...]
    period: tuple[bool, ...]
    choice_name: str = "zero"
    choice_fn: Callable[[int, tuple[int, ...]], int] | None = field(
        default=None, compare=False
    )

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "preperiod", tuple(bool(b) for b in self.preperiod))
        object.__setattr__(self, "period", tuple(bool(b) for b in self.period))
        if not self.period:
            raise ValueError("period must be nonempty")
        if True not in self.period or False not in self.period:
            raise ValueError(
                "both parts of the level partition must be infinite: the "
                "period needs a branching and a pinned level"
            )
        if self.choice_fn is None:
            if self.choice_name not in _NAMED_CHOICES:
                raise ValueError(f"unknown digit choice {self.choice_name!r}")
            object.__setattr__(self, "choice_fn", _NAMED_CHOICES[self.choice_name])

    # ------------------------------------------------------------------

    @classmethod
    def example1(cls) -> "SingularMeasureSpec":
        """p=2, period-3 partition branching at levels 0 and 2, repeat rule."""
        return cls(2, (), (True, False, True), "repeat")

    @classmethod
    def example2(cls) -> "SingularMeasureSpec":
        """p=3, same period-3 shape as example1."""
        return cls(3, (), (True, False, True), "repeat")

    @classmethod
    def from_json(cls, obj: dict) -> "SingularMeasureSpec":
        choice = obj.get("choice", "zero")
        if isinstance(choice, dict):
            table = {
                key: int(digit) for key, digit in choice.items()
            }

            def table_choice(level: int, prefix: tuple[int, ...]) -> int:
                key = f"{level}:{','.join(map(str, prefix))}"
                if key not in table:
                    raise KeyError(f"digit-choice table has no entry for {key!r}")
                return table[key]

            return cls(
                int(obj["p"]),
                tuple(c == "1" for c in obj.get("preperiod", "")),
                tuple(c == "1" for c in obj["period"]),
                "table",
                table_choice,
            )
        return cls(
            int(obj["p"]),
            tuple(c == "1" for c in obj.get("preperiod", "")),
            tuple(c == "1" for c in obj["period"]),
            str(choice),
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "preperiod": "".join("1" if b else "0" for b in self.preperiod),
            "period": "".join("1" if b else "0" for b in self.period),
            "choice": self.choice_name,
        }

    # ------------------------------------------------------------------

    def branches_at(self, level: int) -> bool:
        if level < 0:
            raise ValueError("levels are nonnegative")
        if level < len(self.preperiod):
            return self.preperiod[level]
        return self.period[(level - len(self.preperiod)) % len(self.period)]

    def branch_levels(self, gamma: int) -> tuple[int, ...]:
        return tuple(i for i in range(gamma) if self.branches_at(i))

    def truncate(self, gamma: int) -> tuple[DigitSet, CompactOpenSet]:
        """The level-gamma digit set and its compact open fattening.

        Built level by level so nestedness of the truncations is automatic:
        pinned digits depend only on the digits below them.
        """
        if gamma < 0:
            raise ValueError("gamma must be >= 0")
        p = self.p
        prefixes: list[tuple[int, ...]] = [()]
        for level in range(gamma):
            if self.branches_at(level):
                prefixes = [t + (d,) for t in prefixes for d in range(p)]
            else:
                nxt = []
                for t in prefixes:
                    d = self.choice_fn(level, t)
                    if not 0 <= d < p:
                        raise ValueError(
                            f"digit choice {d} out of range at level {level}"
                        )
                    nxt.append(t + (d,))
                prefixes = nxt
        values = sorted(sum(d * p**i for i, d in enumerate(t)) for t in prefixes)
        digit_set = (
            DigitSet.from_elements(p, gamma, values)
            if gamma > 0
            else DigitSet(p, 0, 1)
        )
        return digit_set, CompactOpenSet.from_digits(p, gamma, values)

    def spectrum_window(self, gamma0: int) -> tuple[PAdicRational, ...]:
        """The finite spectrum piece: digit sums p**(-i-1) over branching i < gamma0."""
        p = self.p
        pts = [PAdicRational(p, 0)]
        for i in self.branch_levels(gamma0):
            pts = [x + PAdicRational(p, b, -(i + 1)) for x in pts for b in range(p)]
        return tuple(sorted(pts, key=PAdicRational.to_fraction))

    def ifs(self) -> "IFSMaps | None":
        """The self-similar map system, for purely periodic partitions."""
        if self.preperiod:
            return None
        gamma = len(self.period)
        digit_set, _ = self.truncate(gamma)
        return IFSMaps(self.p, gamma, digit_set.elements)


# ---------------------------------------------------------------------------
# truncation certificates


def truncation_residue_checks(
    p: int, gamma0: int, branch_levels, elements
) -> tuple[bool, list[dict]]:
    """Exact residue-grid check of the truncation spectrum identity.

    For every residue xi = k * p**(-gamma0) the sum over the finite spectrum
    piece of |sum_c chi(-c*(lambda - xi))|**2 must equal (#elements)**2;
    each check is an exact vanishing test of a sum of roots of unity.
    """
    modulus = p**gamma0
    lam_ints = [0]
    for i in sorted(set(branch_levels)):
        if i >= gamma0:
            raise ValueError("branch levels must lie below gamma0")
        step = p ** (gamma0 - 1 - i)
        lam_ints = [v + b * step for v in lam_ints for b in range(p)]
    elements = list(elements)
    target = len(elements) ** 2
    checks = []
    ok = True
    for k in range(modulus):
        acc = [0] * modulus
        for lam in lam_ints:
            counts = [0] * modulus
            d = lam - k
            for c in elements:
                counts[(-c * d) % modulus] += 1
            for r, cr in enumerate(counts):
                if cr:
                    for rr, crr in enumerate(counts):
                        if crr:
                            acc[(r - rr) % modulus] += cr * crr
        acc[0] -= target
        good = GroupRingElement(p, gamma0, dict(enumerate(acc))).is_zero()
        ok = ok and good
        checks.append({"residue": f"{k}/{modulus}", "ok": good})
    return ok, checks


def verify_truncation_spectrum(
    spec: SingularMeasureSpec, gamma0: int, gamma: int
) -> bool:
    """Certify the finite spectrum piece at depth gamma0 against the
    truncation at depth gamma >= gamma0."""
    if gamma < gamma0:
        raise ValueError("gamma must be >= gamma0")
    digit_set, _ = spec.truncate(gamma)
    ok, _ = truncation_residue_checks(
        spec.p, gamma0, spec.branch_levels(gamma0), digit_set.elements
    )
    return ok


# ---------------------------------------------------------------------------
# iterated function system


@dataclass(frozen=True)
class IFSMaps:
    """The maps x -> p**gamma * x + c over a digit set; images are the
    pairwise disjoint balls c + p**gamma Z_p."""

    p: int
    gamma: int
    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(sorted(set(self.digits)))
        modulus = self.p**self.gamma
        if not digits:
            raise ValueError("digit set must be nonempty")
        if any(not 0 <= c < modulus for c in digits):
            raise ValueError("digits out of range")
        object.__setattr__(self, "digits", digits)

    def map_descriptions(self) -> list[str]:
        scale = self.p**self.gamma
        return [
            f"x -> {scale}*x" if c == 0 else f"x -> {scale}*x + {c}"
            for c in self.digits
        ]

    def orbit(self, depth: int) -> tuple[int, ...]:
        """All depth-fold compositions applied to 0."""
        if depth < 0:
            raise ValueError("depth must be >= 0")
        scale = self.p**self.gamma
        values = [0]
        for _ in range(depth):
            values = [c + scale * v for v in values for c in self.digits]
        return tuple(sorted(values))


def ifs_orbit(maps: IFSMaps, depth: int) -> tuple[int, ...]:
    return maps.orbit(depth)
