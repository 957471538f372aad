"""A tour of exact p-adic arithmetic.

Values live in Z[1/p] as unit * p^valuation pairs, so every operation below
is exact: no floating point, no precision caps.  Run with

    python3 demos/01_exact_padic_arithmetic.py
"""

from fractions import Fraction

from padic_spectral import (
    PAdicRational,
    PrimeContext,
    character_exponent,
    distance,
    fractional_part,
    valuation,
)

ctx = PrimeContext(3)

print("== valuations ==")
for n in (18, 7, 81, 0):
    x = ctx.from_int(n)
    print(f"  v_3({n}) = {valuation(x)}")

x = ctx.parse("10/3")
print(f"\n== fractional parts ==\n  x = 10/3 stored as {x}")
print(f"  fractional part = {fractional_part(x).to_rational_text()}")
print(f"  x - {{x}} = {(x - fractional_part(x)).to_rational_text()} (a 3-adic integer)")

print("\n== the additive character chi(x) = exp(2 pi i {x}) ==")
for text in ("5", "1/3", "4/9", "10/3"):
    q = character_exponent(ctx.parse(text))
    print(f"  chi({text}) = exp(2 pi i * {q})")

print("\n== ultrametric distances (|x - y|_3 = 3^e) ==")
pairs = [("1", "4"), ("1", "10"), ("0", "9/1"), ("2/3", "5/3")]
for a, b in pairs:
    e = distance(ctx.parse(a), ctx.parse(b))
    print(f"  |{a} - {b}|_3 = 3^{e}")

print("\n== the strong triangle inequality in action ==")
x, y, z = ctx.parse("1"), ctx.parse("4"), ctx.parse("13")
dxy, dyz, dxz = distance(x, y), distance(y, z), distance(x, z)
print(f"  d(1,4)=3^{dxy}, d(4,13)=3^{dyz}, d(1,13)=3^{dxz}")
print(f"  max of the first two = 3^{max(dxy, dyz)} >= 3^{dxz}")

print("\n== exact division stays inside finite expansions (or refuses) ==")
print(f"  (6*3^2) / 2 = {PAdicRational(3, 54) / PAdicRational(3, 2)}")
try:
    PAdicRational(3, 1) / PAdicRational(3, 2)
except ValueError as exc:
    print(f"  1 / 2 -> {exc}")

print("\n== serialization round trip ==")
v = PAdicRational.from_fraction(3, Fraction(22, 27))
print(f"  literal: {v}   rational: {v.to_rational_text()}   json: {v.to_json()}")
