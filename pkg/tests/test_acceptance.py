"""Acceptance criteria: exact equivalences, fixtures and oracle sweeps.

Each test prints one pass/fail line (run pytest with -s to see them on
success).  All checks are exact; the only tolerance anywhere is the 1e-9
threshold of the floating-point cross-check in criterion 7.
"""

import random
from contextlib import contextmanager
from fractions import Fraction

from padic_spectral import (
    CompactOpenSet,
    DigitSet,
    GroupRingElement,
    LatticePeriodicSet,
    PAdicRational,
    SingularMeasureSpec,
    FinitePointMeasure,
    brute_force_spectrum,
    brute_force_tile,
    canonical_spectrum,
    canonical_tiling_complement,
    canonicalize_discrete,
    classify,
    discrete_profile,
    enumerate_homogeneous,
    fibers,
    parse_set,
    spectrum_uniform_count,
    verify_spectral_pair,
    verify_tiling_pair,
    verify_truncation_spectrum,
)

FIG5 = "p=2; {1 + 2^3 Z, 4 + 2^3 Z}"
EXHAUSTIVE_RANGES = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)]


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] FAIL - {description}")
        raise
    print(f"[criterion {number}] PASS - {description}")


def all_homogeneous_sets(p, gamma):
    """Every homogeneous digit set at (p, gamma), via enumeration by levels."""
    from itertools import combinations

    for r in range(gamma + 1):
        for branch in combinations(range(gamma), r):
            yield from enumerate_homogeneous(p, gamma, branch)


def test_criterion_1_equivalence_exhaustive():
    with criterion(1, "spectral = tile = homogeneous, exhaustive small ranges"):
        total = 0
        for p, gamma in EXHAUSTIVE_RANGES:
            for mask in range(1, 1 << p**gamma):
                verdict = classify(DigitSet(p, gamma, mask), use_oracles=True)
                assert verdict.spectral == verdict.tile == verdict.homogeneous
                total += 1
        assert total == 3 + 15 + 255 + 65535 + 7 + 511


def test_criterion_2_equivalence_sampled():
    with criterion(2, "spectral = tile = homogeneous, 10^5 samples in Z/27Z"):
        rng = random.Random(0)
        for _ in range(100_000):
            mask = rng.randrange(1, 1 << 27)
            verdict = classify(DigitSet(3, 3, mask), use_oracles=True)
            assert verdict.spectral == verdict.tile == verdict.homogeneous


def test_criterion_3_fig5_fixture():
    with criterion(3, "canonical spectrum {0,1/2} and complement {0,2,4,6}"):
        omega = parse_set(FIG5)
        lam = canonical_spectrum(omega)
        assert sorted(f.to_fraction() for f in lam.finite_part) == [0, Fraction(1, 2)]
        assert lam.level_exponent == 3
        comp = canonical_tiling_complement(omega)
        assert sorted(f.to_fraction() for f in comp.finite_part) == [0, 2, 4, 6]
        assert comp.level_exponent == 0

        spectral = verify_spectral_pair(omega, lam)
        assert spectral.ok and len(spectral.checks) == 8
        assert all(c["ok"] for c in spectral.checks)
        tiling = verify_tiling_pair(omega, comp)
        assert tiling.ok


def test_criterion_4_self_similar_examples():
    with criterion(4, "period-3 self-similar examples at p=2 and p=3"):
        cases = [
            (SingularMeasureSpec.example1(), (0, 3, 4, 7)),
            (SingularMeasureSpec.example2(), (0, 4, 8, 9, 13, 17, 18, 22, 26)),
        ]
        for spec, expected_digits in cases:
            p = spec.p
            ds, omega = spec.truncate(3)
            assert ds.elements == expected_digits
            hom = omega.homogeneity()
            assert hom.homogeneous and sorted(hom.branch_levels) == [0, 2]
            assert len(omega.digits) == p**2 == p ** len(hom.branch_levels)

            lam = canonical_spectrum(omega)
            result = verify_spectral_pair(omega, lam)
            assert result.ok and len(result.checks) == p**3
            assert all(c["ok"] for c in result.checks)

            ifs = spec.ifs()
            assert ifs.orbit(1) == expected_digits
            assert ifs.orbit(2) == spec.truncate(6)[0].elements


def test_criterion_5_uniform_distribution():
    with criterion(5, "every window ball holds exactly #C spectrum points"):
        rng = random.Random(5)
        for p, gamma in EXHAUSTIVE_RANGES:
            for ds in all_homogeneous_sets(p, gamma):
                omega = CompactOpenSet.from_digits(p, gamma, ds.elements)
                lam = canonical_spectrum(omega)
                size = ds.size
                for _ in range(100):
                    u = rng.randint(-(10**6), 10**6)
                    center = PAdicRational(p, u, rng.randint(-2 * gamma - 2, 2 * gamma + 2))
                    assert spectrum_uniform_count(omega, lam, center) == size


def test_criterion_6_spectrum_and_complement_structure():
    with criterion(
        6, "brute-forced spectra/complements carry the predicted order sets"
    ):
        for p, gamma in EXHAUSTIVE_RANGES:
            for ds in all_homogeneous_sets(p, gamma):
                omega = CompactOpenSet.from_digits(p, gamma, ds.elements)
                window = set(omega.admissible_orders().finite_part)

                freqs = brute_force_spectrum(ds)
                assert freqs is not None
                lam_points = [PAdicRational(p, k, -gamma) for k in freqs]
                prof = discrete_profile(lam_points)
                assert prof.homogeneous
                assert set(prof.admissible_orders) == {-i - 1 for i in window}
                canon = canonicalize_discrete(lam_points)
                assert canon.target == canonical_spectrum(omega).finite_part

                tiles = brute_force_tile(ds)
                assert tiles is not None
                t_prof = discrete_profile([PAdicRational(p, t) for t in tiles])
                assert t_prof.homogeneous
                assert set(t_prof.admissible_orders) == set(range(gamma)) - window


def test_criterion_7_cyclotomic_soundness():
    with criterion(7, "exact zero test vs complex evaluation; decompositions"):
        rng = random.Random(7)
        for _ in range(10_000):
            p = rng.choice([2, 3, 5])
            n = rng.randint(1, 6)
            if rng.random() < 0.25:
                n_small = min(n, 3)
                coeffs = {}
                pool = list(range(p ** (n_small - 1)))
                for r in rng.sample(pool, rng.randint(1, min(8, len(pool)))):
                    c = rng.randint(-5, 5)
                    q = p ** (n_small - 1)
                    for j in range(p):
                        e = r + j * q
                        coeffs[e] = coeffs.get(e, 0) + c
                z = GroupRingElement(p, n_small, coeffs)
            else:
                modulus = p**n
                support = rng.sample(
                    range(modulus), rng.randint(1, min(24, modulus))
                )
                z = GroupRingElement(
                    p, n, {e: rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) for e in support}
                )
            assert z.is_zero() == (abs(z.complex_value()) < 1e-9)

        for _ in range(1000):
            p = rng.choice([2, 3, 5])
            n = rng.randint(1, 4)
            pool = list(range(p ** (n - 1)))
            chosen = rng.sample(pool, rng.randint(1, len(pool)))
            exps = [
                e
                for f in fibers(p, n)
                if f.residue in set(chosen)
                for e in f.exponents
            ]
            z = GroupRingElement.from_exponents(p, n, exps)
            parts = z.decompose_zero_sum()
            assert len(parts) == len(exps) // p
            seen = set()
            for part in parts:
                assert GroupRingElement.from_exponents(p, n, part).is_zero()
                assert not seen & set(part)
                seen |= set(part)
            assert seen == set(exps)


def test_criterion_8_finite_measure_equivalences():
    with criterion(8, "finite-measure criterion matches fattened homogeneity"):
        rng = random.Random(8)
        for _ in range(1000):
            p = rng.choice([2, 3])
            size = rng.randint(2, 16)
            points = rng.sample(range(4096), size)
            m = FinitePointMeasure.from_integers(p, points)
            verdict = m.is_spectral()
            gamma_f = m.gamma_span()
            for extra in (1, 2, 3):
                hom = m.fattened(gamma_f + extra).homogeneity().homogeneous
                assert hom == verdict


def test_criterion_9_truncation_certificates():
    with criterion(9, "truncation spectrum certificates for both examples"):
        spec1 = SingularMeasureSpec.example1()
        for gamma in (3, 6, 9):
            assert verify_truncation_spectrum(spec1, 3, gamma)
        spec2 = SingularMeasureSpec.example2()
        for gamma in (3, 6):
            assert verify_truncation_spectrum(spec2, 3, gamma)
