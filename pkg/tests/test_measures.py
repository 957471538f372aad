"""Finite point measures, singular-measure truncations, IFS orbits."""

import random
from fractions import Fraction

import pytest

from padic_spectral import (
    CompactOpenSet,
    FinitePointMeasure,
    IFSMaps,
    PAdicRational,
    SingularMeasureSpec,
    ifs_orbit,
    truncation_residue_checks,
    verify_truncation_spectrum,
)

EX1_DIGITS = (0, 3, 4, 7)
EX2_DIGITS = (0, 4, 8, 9, 13, 17, 18, 22, 26)


# ---------------------------------------------------------------------------
# finite point measures


def test_gamma_span_and_orders_fixtures():
    m = FinitePointMeasure.from_integers(2, EX1_DIGITS)
    assert m.gamma_span() == 2  # v_2(4) = 2
    assert m.admissible_orders() == {0, 2}

    m2 = FinitePointMeasure.from_integers(2, [0, 1])
    assert m2.gamma_span() == 0
    assert m2.admissible_orders() == {0}

    m3 = FinitePointMeasure.from_integers(3, EX2_DIGITS)
    assert m3.admissible_orders() == {0, 2}

    with pytest.raises(ValueError):
        FinitePointMeasure.from_integers(2, [5]).gamma_span()


def test_is_spectral_fixtures():
    assert FinitePointMeasure.from_integers(2, EX1_DIGITS).is_spectral(oracle=True)
    assert not FinitePointMeasure.from_integers(2, [0, 1, 2]).is_spectral(oracle=True)
    assert FinitePointMeasure.from_integers(2, [9]).is_spectral(oracle=True)
    assert FinitePointMeasure.from_integers(3, EX2_DIGITS).is_spectral(oracle=True)


def test_is_spectral_oracle_agreement_random():
    rng = random.Random(60)
    for _ in range(150):
        p = rng.choice([2, 3])
        size = rng.randint(2, 10)
        pts = rng.sample(range(200), size)
        m = FinitePointMeasure.from_integers(p, pts)
        # oracle mode raises if the formula and the fattened set disagree
        m.is_spectral(oracle=True)
        gamma_f = m.gamma_span()
        for extra in (1, 2, 3):
            fat = m.fattened(gamma_f + extra)
            assert fat.homogeneity().homogeneous == m.is_spectral()


def test_fattened_set_geometry():
    m = FinitePointMeasure.from_integers(2, EX1_DIGITS)
    fat = m.fattened(3)
    assert fat.haar_measure() == Fraction(4, 8)
    assert fat.homogeneity().homogeneous


def test_measure_fourier_fixtures():
    m = FinitePointMeasure.from_integers(2, EX1_DIGITS)
    assert m.fourier(PAdicRational(2, 0)).rational_value() == 1
    val = m.fourier(PAdicRational(2, 1, -1))  # xi = 1/2
    assert val.is_zero()  # (1 - 1 + 1 - 1)/4
    single = FinitePointMeasure.from_integers(5, [0])
    assert single.fourier(PAdicRational(5, 7, -3)).rational_value() == 1


def test_measure_fourier_matches_indicator_factor():
    # the uniform measure on C and the fattening share the character sum
    rng = random.Random(61)
    for _ in range(60):
        p = rng.choice([2, 3])
        gamma = rng.randint(1, 3)
        elements = rng.sample(range(p**gamma), rng.randint(1, p**gamma))
        m = FinitePointMeasure.from_integers(p, elements)
        omega = CompactOpenSet.from_digits(p, gamma, [e % p**gamma for e in elements])
        u = rng.randrange(1, 30)
        if u % p == 0:
            u += 1
        xi = PAdicRational(p, u, rng.randint(-gamma, 1))
        lhs = m.fourier(xi).complex_value()
        rhs = omega.indicator_fourier(xi).complex_value() * p**gamma / len(elements)
        assert abs(lhs - rhs) < 1e-9


def test_points_validation():
    with pytest.raises(ValueError):
        FinitePointMeasure(2, ())
    with pytest.raises(ValueError):
        FinitePointMeasure(2, (PAdicRational(2, 1), PAdicRational(2, 1)))
    with pytest.raises(ValueError):
        FinitePointMeasure(2, (PAdicRational(3, 1),))


# ---------------------------------------------------------------------------
# singular measure specs


def test_preset_partitions():
    spec = SingularMeasureSpec.example1()
    assert [spec.branches_at(i) for i in range(9)] == [
        True, False, True, True, False, True, True, False, True,
    ]
    assert spec.branch_levels(6) == (0, 2, 3, 5)


def test_truncate_fixtures():
    spec1 = SingularMeasureSpec.example1()
    ds, omega = spec1.truncate(3)
    assert ds.elements == EX1_DIGITS
    assert omega.level == 3 and omega.sorted_digits == EX1_DIGITS

    spec2 = SingularMeasureSpec.example2()
    ds2, _ = spec2.truncate(3)
    assert ds2.elements == EX2_DIGITS

    ds0, omega0 = spec1.truncate(0)
    assert ds0.elements == (0,)
    assert omega0.level == 0 and omega0.haar_measure() == 1


def test_truncations_are_nested():
    for spec in (SingularMeasureSpec.example1(), SingularMeasureSpec.example2()):
        p = spec.p
        prev = None
        for gamma in range(8):
            ds, omega = spec.truncate(gamma)
            if prev is not None:
                prev_ds, prev_omega = prev
                # digit-prefix nestedness: every digit reduces into the
                # previous level's digit set
                assert {c % p ** (gamma - 1) for c in ds.elements} <= set(
                    prev_ds.elements
                )
                # and pointwise containment on integer samples
                for c in ds.elements:
                    assert prev_omega.contains(PAdicRational(p, c))
            prev = (ds, omega)


def test_zero_choice_spec():
    spec = SingularMeasureSpec(2, (), (True, False), "zero")
    ds, _ = spec.truncate(4)
    # levels 0 and 2 branch, levels 1 and 3 pinned to digit 0
    assert ds.elements == (0, 1, 4, 5)


def test_spec_validation():
    with pytest.raises(ValueError):
        SingularMeasureSpec(2, (), (True, True))  # pinned part finite
    with pytest.raises(ValueError):
        SingularMeasureSpec(2, (), (False, False))  # branching part finite
    with pytest.raises(ValueError):
        SingularMeasureSpec(2, (), ())
    with pytest.raises(ValueError):
        SingularMeasureSpec(4, (), (True, False))
    with pytest.raises(ValueError):
        SingularMeasureSpec(2, (), (True, False), "bogus")


def test_spec_json_round_trip():
    spec = SingularMeasureSpec.example1()
    blob = spec.to_json()
    assert blob == {"p": 2, "preperiod": "", "period": "101", "choice": "repeat"}
    again = SingularMeasureSpec.from_json(blob)
    assert again.truncate(6)[0] == spec.truncate(6)[0]


def test_spec_table_choice():
    blob = {
        "p": 2,
        "preperiod": "",
        "period": "101",
        "choice": {"1:0": 1, "1:1": 0},
    }
    spec = SingularMeasureSpec.from_json(blob)
    ds, _ = spec.truncate(3)
    # level 1 digit flips the level-0 digit: 0 -> 0+2, 1 -> 1
    assert ds.elements == (1, 2, 5, 6)
    with pytest.raises(KeyError):
        SingularMeasureSpec.from_json(
            {"p": 2, "preperiod": "", "period": "101", "choice": {"1:0": 1}}
        ).truncate(3)


def test_spectrum_window():
    spec = SingularMeasureSpec.example1()
    pts = spec.spectrum_window(3)
    assert sorted(x.to_fraction() for x in pts) == [
        0,
        Fraction(1, 8),
        Fraction(1, 2),
        Fraction(5, 8),
    ]
    assert spec.spectrum_window(0) == (PAdicRational(2, 0),)


# ---------------------------------------------------------------------------
# truncation certificates


def test_verify_truncation_fixtures():
    spec1 = SingularMeasureSpec.example1()
    assert verify_truncation_spectrum(spec1, 0, 0)
    assert verify_truncation_spectrum(spec1, 3, 3)
    assert verify_truncation_spectrum(spec1, 3, 6)
    with pytest.raises(ValueError):
        verify_truncation_spectrum(spec1, 3, 2)


def test_truncation_certificate_rejects_corrupted_digits():
    spec = SingularMeasureSpec.example1()
    ds, _ = spec.truncate(3)
    ok, checks = truncation_residue_checks(2, 3, spec.branch_levels(3), ds.elements)
    assert ok and all(c["ok"] for c in checks)
    # corrupt one pinned digit: 3 = (1,1,0) -> 1 = (1,0,0) duplicates a
    # level-1 branch and breaks the identity
    corrupted = [1 if c == 3 else c for c in ds.elements]
    ok_bad, checks_bad = truncation_residue_checks(
        2, 3, spec.branch_levels(3), corrupted
    )
    assert not ok_bad
    assert any(not c["ok"] for c in checks_bad)


# ---------------------------------------------------------------------------
# iterated function system


def test_ifs_fixture_maps():
    ifs = SingularMeasureSpec.example1().ifs()
    assert ifs == IFSMaps(2, 3, EX1_DIGITS)
    assert ifs.map_descriptions() == [
        "x -> 8*x",
        "x -> 8*x + 3",
        "x -> 8*x + 4",
        "x -> 8*x + 7",
    ]


def test_ifs_orbit_fixtures():
    ifs = IFSMaps(2, 3, EX1_DIGITS)
    assert ifs_orbit(ifs, 0) == (0,)
    assert ifs_orbit(ifs, 1) == EX1_DIGITS
    depth2 = ifs_orbit(ifs, 2)
    assert len(depth2) == 16
    assert depth2 == tuple(sorted(c1 + 8 * c2 for c1 in EX1_DIGITS for c2 in EX1_DIGITS))


def test_ifs_orbit_matches_truncation():
    for spec in (SingularMeasureSpec.example1(), SingularMeasureSpec.example2()):
        ifs = spec.ifs()
        gamma = len(spec.period)
        for d in (1, 2):
            assert ifs.orbit(d) == spec.truncate(d * gamma)[0].elements


def test_ifs_images_disjoint():
    ifs = IFSMaps(2, 3, EX1_DIGITS)
    balls = [CompactOpenSet.from_digits(2, 3, [c]) for c in ifs.digits]
    for i, a in enumerate(balls):
        for b in balls[i + 1 :]:
            for k in range(8):
                assert not (
                    a.contains(PAdicRational(2, k)) and b.contains(PAdicRational(2, k))
                )


def test_preperiodic_spec_has_no_ifs():
    spec = SingularMeasureSpec(2, (False,), (True, False), "zero")
    assert spec.ifs() is None
    ds, _ = spec.truncate(3)
    assert ds.elements == (0, 2)  # level 0 pinned, level 1 branches, level 2 pinned
