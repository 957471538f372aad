"""Spectral sets and tiles in Z/p^gamma Z, with independent brute-force oracles.

The fast path decides everything from the digit tree: a subset is spectral,
and equally a tile, exactly when its tree branches uniformly (factor 1 or p
per level).  Two oracles check that claim from first principles:

* :func:`brute_force_tile` searches for an exact-cover complement T with
  C (+) T = Z/p^gamma Z by backtracking over translates;
* :func:`brute_force_spectrum` searches for a clique of size #C through 0 in
  the orthogonality graph, whose edges are the frequencies where the
  discrete transform of the indicator vanishes.

The oracles never share the fast path's fiber-based zero test: frequency
zeros inside :func:`dft_zero_set` are decided by exact reduction against the
integral basis of the cyclotomic integers, so the two routes stay
independent down to the arithmetic.

Spectra are represented as integer frequency sets k (characters
``x -> exp(2*pi*i*k*x/p**gamma)``); dividing by p**gamma turns them into the
finite part of a p-adic spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .cyclotomic import GroupRingElement
from .padic import is_prime
from .sets import homogeneity_of_digits

__all__ = [
    "EquivalenceError",
    "DigitSet",
    "Verdict",
    "fourier_zero_powers",
    "dft_zero_set",
    "classify",
    "brute_force_tile",
    "brute_force_spectrum",
    "enumerate_homogeneous",
    "count_homogeneous",
]


class EquivalenceError(RuntimeError):
    """Fast path and oracle disagreed; carries the full counterexample."""


@dataclass(frozen=True)
class DigitSet:
    """A nonempty subset of Z/p^gamma Z stored as a bitmask."""

    p: int
    gamma: int
    mask: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if not 0 < self.mask < 1 << self.p**self.gamma:
            raise ValueError("mask out of range or empty")

    @classmethod
    def from_elements(cls, p: int, gamma: int, elements) -> "DigitSet":
        mask = 0
        modulus = p**gamma
        for e in elements:
            if not 0 <= e < modulus:
                raise ValueError(f"element {e} out of range")
            mask |= 1 << e
        return cls(p, gamma, mask)

    @property
    def modulus(self) -> int:
        return self.p**self.gamma

    @property
    def elements(self) -> tuple[int, ...]:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")


@dataclass(frozen=True)
class Verdict:
    """Classification result; the three flags agree on every input."""

    p: int
    gamma: int
    elements: tuple[int, ...]
    spectral: bool
    tile: bool
    homogeneous: bool
    zero_powers: tuple[int, ...]
    branch_levels: tuple[int, ...] | None
    fixed_levels: tuple[int, ...] | None
    spectrum: tuple[int, ...] | None
    complement: tuple[int, ...] | None
    oracle: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "gamma": self.gamma,
            "set": list(self.elements),
            "spectral": self.spectral,
            "tile": self.tile,
            "homogeneous": self.homogeneous,
            "zero_powers": list(self.zero_powers),
            "I": list(self.branch_levels) if self.branch_levels is not None else None,
            "J": list(self.fixed_levels) if self.fixed_levels is not None else None,
            "spectrum": list(self.spectrum) if self.spectrum is not None else None,
            "complement": list(self.complement) if self.complement is not None else None,
            "oracle": self.oracle,
        }


# ---------------------------------------------------------------------------
# Fourier zeros


def fourier_zero_powers(ds: DigitSet) -> frozenset[int]:
    """The l in [0, gamma) with dft(indicator)(p**l) == 0, decided exactly.

    The transform at p**l is the sum of roots of unity with exponents
    -t mod p**(gamma-l) over t in C, tested by the fiber criterion.
    """
    out = set()
    elements = ds.elements
    for ell in range(ds.gamma):
        n = ds.gamma - ell
        z = GroupRingElement.from_exponents(ds.p, n, (-t for t in elements))
        if z.is_zero():
            out.add(ell)
    return frozenset(out)


def _vanishes_in_integral_basis(p: int, n: int, counts: list[int]) -> bool:
    # Exact zero test by rewriting exponents >= (p-1)*p^(n-1) through the
    # relation sum_j w^(j*p^(n-1)) = 0 and checking the basis coordinates.
    # Deliberately independent of the fiber criterion.
    if n == 0:
        return counts[0] == 0
    q = p ** (n - 1)
    phi = (p - 1) * q
    vec = list(counts)
    for e in range(phi, p**n):
        c = vec[e]
        if c:
            r = e - phi
            for j in range(p - 1):
                vec[r + j * q] -= c
    return not any(vec[:phi])


def dft_zero_set(ds: DigitSet) -> frozenset[int]:
    """All frequencies k with dft(indicator)(k) == 0, via the integral basis."""
    p, modulus = ds.p, ds.modulus
    elements = ds.elements
    out = set()
    for k in range(modulus):
        counts = [0] * modulus
        for t in elements:
            counts[(-k * t) % modulus] += 1
        if _vanishes_in_integral_basis(p, ds.gamma, counts):
            out.add(k)
    return frozenset(out)


# ---------------------------------------------------------------------------
# oracles


def brute_force_tile(ds: DigitSet) -> tuple[int, ...] | None:
    """Search for T with C (+) T = Z/p^gamma Z (every element covered once).

    Backtracking exact cover over translates; the complement is normalised
    to contain 0 (translating T preserves tilings).  Returns the first
    complement in deterministic ascending order, or None.
    """
    n = ds.modulus
    size = ds.size
    if n % size:
        return None
    full = (1 << n) - 1
    base = ds.mask
    translates = [
        ((base << t) | (base >> (n - t))) & full if t else base for t in range(n)
    ]
    elements = ds.elements

    def extend(covered: int, chosen: list[int]) -> list[int] | None:
        if covered == full:
            return chosen
        lowest = (~covered & (covered + 1)).bit_length() - 1
        for t in sorted({(lowest - c) % n for c in elements}):
            m = translates[t]
            if not (m & covered):
                got = extend(covered | m, chosen + [t])
                if got is not None:
                    return got
        return None

    got = extend(base, [0])
    return tuple(sorted(got)) if got is not None else None


def brute_force_spectrum(ds: DigitSet) -> tuple[int, ...] | None:
    """Search for a spectrum: #C pairwise-orthogonal frequencies through 0.

    Two frequencies are orthogonal when their difference lies in the zero
    set of the indicator transform; #C pairwise-orthogonal characters are a
    basis of the functions on C by dimension count, so a clique of size #C
    containing 0 is exactly a spectrum.  Deterministic ascending search.
    """
    n = ds.modulus
    size = ds.size
    if size == 1:
        return (0,)
    zero_set = dft_zero_set(ds)
    candidates = sorted(k for k in zero_set if k != 0)
    if len(candidates) + 1 < size:
        return None

    def extend(clique: list[int], rest: list[int]) -> list[int] | None:
        if len(clique) == size:
            return clique
        if len(clique) + len(rest) < size:
            return None
        for i, v in enumerate(rest):
            nxt = [w for w in rest[i + 1 :] if (w - v) % n in zero_set]
            got = extend(clique + [v], nxt)
            if got is not None:
                return got
        return None

    got = extend([0], candidates)
    return tuple(got) if got is not None else None


# ---------------------------------------------------------------------------
# classification


def _log_p(p: int, size: int) -> int | None:
    k, m = 0, size
    while m % p == 0:
        m //= p
        k += 1
    return k if m == 1 else None


def _canonical_frequency_spectrum(p: int, gamma: int, branch_levels) -> tuple[int, ...]:
    terms = [[b * p ** (gamma - 1 - i) for b in range(p)] for i in sorted(branch_levels)]
    return tuple(sorted(sum(c) for c in product(*terms))) if terms else (0,)


def _canonical_complement(p: int, gamma: int, fixed_levels) -> tuple[int, ...]:
    terms = [[a * p**j for a in range(p)] for j in sorted(fixed_levels)]
    return tuple(sorted(sum(c) for c in product(*terms))) if terms else (0,)


def classify(ds: DigitSet, use_oracles: bool = False) -> Verdict:
    """Decide spectral / tile / homogeneous, optionally against both oracles.

    The fast path equates all three flags with tree homogeneity.  With
    ``use_oracles`` the exact-cover and clique searches run as well and any
    disagreement raises :class:`EquivalenceError` with the counterexample.
    """
    hom = homogeneity_of_digits(ds.p, ds.gamma, ds.elements)
    zero_powers = fourier_zero_powers(ds)

    log_size = _log_p(ds.p, ds.size)
    fourier_says = log_size is not None and len(zero_powers) >= log_size
    if fourier_says != hom.homogeneous or (
        hom.homogeneous and len(zero_powers) != log_size
    ):
        raise EquivalenceError(
            f"zero-power count disagrees with homogeneity: set={ds.elements} "
            f"p={ds.p} gamma={ds.gamma} zero_powers={sorted(zero_powers)} "
            f"homogeneous={hom.homogeneous}"
        )

    spectrum = complement = None
    if hom.homogeneous:
        spectrum = _canonical_frequency_spectrum(ds.p, ds.gamma, hom.branch_levels)
        complement = _canonical_complement(ds.p, ds.gamma, hom.fixed_levels)

    if use_oracles:
        found_t = brute_force_tile(ds)
        found_s = brute_force_spectrum(ds)
        if (found_t is not None) != hom.homogeneous or (
            found_s is not None
        ) != hom.homogeneous:
            raise EquivalenceError(
                "oracle disagreement: "
                f"set={ds.elements} p={ds.p} gamma={ds.gamma} "
                f"homogeneous={hom.homogeneous} "
                f"tile={found_t} spectrum={found_s}"
            )
        spectrum, complement = found_s, found_t

    return Verdict(
        p=ds.p,
        gamma=ds.gamma,
        elements=ds.elements,
        spectral=hom.homogeneous,
        tile=hom.homogeneous,
        homogeneous=hom.homogeneous,
        zero_powers=tuple(sorted(zero_powers)),
        branch_levels=tuple(sorted(hom.branch_levels)) if hom.homogeneous else None,
        fixed_levels=tuple(sorted(hom.fixed_levels)) if hom.homogeneous else None,
        spectrum=spectrum,
        complement=complement,
        oracle=use_oracles,
    )


# ---------------------------------------------------------------------------
# enumeration of homogeneous digit sets


def count_homogeneous(p: int, gamma: int, branch_levels) -> int:
    """Number of digit sets whose tree branches fully exactly at the given levels.

    Derived from the construction: each fixed level contributes one free
    digit choice per reachable prefix, and prefixes multiply by p at each
    branching level below.  Validated against exhaustive enumeration in the
    test suite rather than quoted from anywhere.
    """
    branch = frozenset(branch_levels)
    exponent = 0
    for j in range(gamma):
        if j not in branch:
            exponent += p ** len([i for i in branch if i < j])
    return p**exponent


def enumerate_homogeneous(
    p: int,
    gamma: int,
    branch_levels,
    choice: str | Callable[[int, tuple[int, ...]], int] = "all",
) -> Iterator[DigitSet]:
    """Digit sets branching fully exactly at ``branch_levels``.

    ``choice`` is either "all" (stream every such set, ordered by bitmask
    value) or a function (level, prefix_digits) -> digit that pins the digit
    at every non-branching level, yielding the single set it induces.
    """
    branch = frozenset(branch_levels)
    if not branch <= set(range(gamma)):
        raise ValueError("branch levels must lie in [0, gamma)")

    if callable(choice):
        prefixes: list[tuple[int, ...]] = [()]
        for level in range(gamma):
            if level in branch:
                prefixes = [t + (d,) for t in prefixes for d in range(p)]
            else:
                nxt = []
                for t in prefixes:
                    d = choice(level, t)
                    if not 0 <= d < p:
                        raise ValueError(f"digit choice {d} out of range at level {level}")
                    nxt.append(t + (d,))
                prefixes = nxt
        values = {sum(d * p**i for i, d in enumerate(t)) for t in prefixes}
        yield DigitSet.from_elements(p, gamma, values)
        return

    if choice != "all":
        raise ValueError("choice must be 'all' or a callable")

    masks: list[int] = []

    def rec(level: int, values: list[int]) -> None:
        if level == gamma:
            mask = 0
            for v in values:
                mask |= 1 << v
            masks.append(mask)
            return
        q = p**level
        if level in branch:
            rec(level + 1, [v + d * q for v in values for d in range(p)])
        else:
            for combo in product(range(p), repeat=len(values)):
                rec(level + 1, [v + d * q for v, d in zip(values, combo)])

    rec(0, [0])
    for mask in sorted(masks):
        yield DigitSet(p, gamma, mask)
