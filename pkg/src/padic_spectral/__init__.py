"""Exact arithmetic for spectral sets, tiles and spectral measures in Q_p.

The package decides, with integer arithmetic only, whether a compact open
subset of the p-adic numbers is a spectral set / tiles by translation (the
two are equivalent, and equivalent to uniform branching of its ball tree),
constructs and verifies canonical spectra and tiling complements, covers the
finite group Z/p^gamma Z with independent brute-force oracles, and certifies
truncations of singular self-similar spectral measures.
"""

from .padic import (
    INFINITY,
    NEG_INFINITY,
    Ball,
    PAdicRational,
    PrimeContext,
    character_exponent,
    distance,
    fractional_part,
    parse_literal,
    valuation,
)
from .cyclotomic import Fiber, GroupRingElement, LevelMismatchError, fibers
from .sets import (
    AdmissibleOrders,
    CompactOpenSet,
    FourierValue,
    Homogeneity,
    PTree,
    SetSyntaxError,
    admissible_orders,
    build_tree,
    haar_measure,
    homogeneity_of_digits,
    indicator_fourier,
    is_p_homogeneous,
    parse_set,
)
from .cyclic import (
    DigitSet,
    EquivalenceError,
    Verdict,
    brute_force_spectrum,
    brute_force_tile,
    classify,
    count_homogeneous,
    dft_zero_set,
    enumerate_homogeneous,
    fourier_zero_powers,
)
from .spectra import (
    CanonicalDiscreteForm,
    DiscreteSetProfile,
    LatticePeriodicSet,
    VerificationResult,
    canonical_spectrum,
    canonical_tiling_complement,
    canonicalize_discrete,
    discrete_profile,
    full_analysis,
    spectrum_uniform_count,
    verify_spectral_pair,
    verify_tiling_pair,
)
from .measures import (
    FinitePointMeasure,
    IFSMaps,
    SingularMeasureSpec,
    gamma_span,
    ifs_orbit,
    is_spectral_finite,
    measure_fourier,
    truncation_residue_checks,
    verify_truncation_spectrum,
)

__version__ = "0.1.0"
