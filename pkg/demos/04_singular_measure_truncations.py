"""Truncations of a singular self-similar spectral measure.

A periodic partition of the digit levels (branch at levels 0 and 2 of every
period of three, pin level 1 to repeat the digit below it) produces nested
compact open sets whose normalized restrictions converge to a singular
measure.  The demo prints the truncations, their self-similar structure, and
the exact residue certificates that witness the spectrum at every depth.
"""

from padic_spectral import (
    FinitePointMeasure,
    PAdicRational,
    SingularMeasureSpec,
    verify_truncation_spectrum,
)

spec = SingularMeasureSpec.example1()
print(f"spec: {spec.to_json()}")
print(f"levels 0..8 branch? {[spec.branches_at(i) for i in range(9)]}")

print("\n== nested truncations ==")
for gamma in range(0, 7, 3):
    ds, omega = spec.truncate(gamma)
    m = omega.haar_measure()
    print(f"  depth {gamma}: {ds.size:3d} balls, measure {m}, digits {list(ds.elements)[:8]}"
          + (" ..." if ds.size > 8 else ""))

print("\n== self-similarity ==")
ifs = spec.ifs()
for line in ifs.map_descriptions():
    print(f"  {line}")
print(f"  orbit depth 2 == truncation depth 6: {ifs.orbit(2) == spec.truncate(6)[0].elements}")

print("\n== the finite spectrum piece and its certificates ==")
window = spec.spectrum_window(3)
print(f"  depth-3 spectrum piece: {[x.to_rational_text() for x in window]}")
for gamma in (3, 6, 9):
    ok = verify_truncation_spectrum(spec, 3, gamma)
    print(f"  certificate (gamma0=3, gamma={gamma}): {'PASS' if ok else 'FAIL'}")

print("\n== finite uniform measures along the way ==")
for gamma in (3, 6):
    ds, _ = spec.truncate(gamma)
    m = FinitePointMeasure.from_integers(2, ds.elements)
    print(
        f"  depth {gamma}: #F = {ds.size}, orders {sorted(m.admissible_orders())}, "
        f"spectral: {m.is_spectral(oracle=True)}"
    )

print("\n== transform values of the depth-3 uniform measure ==")
m3 = FinitePointMeasure.from_integers(2, spec.truncate(3)[0].elements)
for text, xi in [("0", PAdicRational(2, 0)), ("1/2", PAdicRational(2, 1, -1)),
                 ("1/8", PAdicRational(2, 1, -3))]:
    val = m3.fourier(xi)
    shown = val.rational_value()
    print(f"  transform at {text}: {shown if shown is not None else val.complex_value()}")
