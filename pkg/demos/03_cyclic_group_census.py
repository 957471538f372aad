"""Census of spectral sets in Z/8Z, checked against both brute-force oracles.

For every nonempty subset of Z/8Z the fast path (tree homogeneity) is
compared with an exact-cover search for a tiling complement and a clique
search for a spectrum.  The three answers agree on all 255 subsets; the
homogeneous ones are tabulated with their witnesses.
"""

from collections import Counter

from padic_spectral import DigitSet, classify, count_homogeneous, enumerate_homogeneous

P, GAMMA = 2, 3

print(f"classifying all nonempty subsets of Z/{P**GAMMA}Z with oracles...")
spectral = []
for mask in range(1, 1 << P**GAMMA):
    verdict = classify(DigitSet(P, GAMMA, mask), use_oracles=True)
    assert verdict.spectral == verdict.tile == verdict.homogeneous
    if verdict.spectral:
        spectral.append(verdict)

print(f"{len(spectral)} of {(1 << P**GAMMA) - 1} subsets are spectral (= tiles)")

by_levels = Counter(v.branch_levels for v in spectral)
print("\nbranching levels -> count (and the closed-form count)")
for levels in sorted(by_levels):
    formula = count_homogeneous(P, GAMMA, levels)
    print(f"  {list(levels)!s:>10} -> {by_levels[levels]:3d}   formula: {formula}")
    assert by_levels[levels] == formula
    enumerated = list(enumerate_homogeneous(P, GAMMA, levels))
    assert len(enumerated) == formula

print("\nsample verdicts:")
for v in spectral[:3] + spectral[-2:]:
    print(
        f"  C={list(v.elements)!s:>15}  spectrum(freqs)={list(v.spectrum)}"
        f"  complement={list(v.complement)}"
    )

print("\nthe vanishing p-power frequencies pin down the branching levels:")
v = classify(DigitSet.from_elements(2, 3, [0, 3, 4, 7]))
print(f"  C={list(v.elements)}: transform vanishes at 2^l for l in {list(v.zero_powers)}")
print(f"  branching levels {list(v.branch_levels)} = {{gamma - 1 - l}}")
