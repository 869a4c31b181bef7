"""Extremal primes of elliptic curves over Q.

Counts primes with a_p = +-[2 sqrt(p)], checks the Beurling-Selberg
sandwich polynomials that drive explicit Sato-Tate equidistribution, and
evaluates symmetric-power L-function local data at good and bad primes.
"""

from .curves import BadPrimeSpec, CurveQ, ReducedCurve, ReductionKind, discriminant, load_curves, reduce_mod_p
from .errors import (
    AmbiguousOrderError,
    BadReductionError,
    ConfigError,
    DomainError,
    ExtremalPrimesError,
    HasseViolationError,
    InconsistentLocalDataError,
    InvalidPrimeError,
    PoleError,
    QuadratureFailure,
    RangeTooLargeError,
    UnsupportedCaseError,
)
from .point_count import FrobeniusTrace, count_points_naive, isqrt, trace_of_frobenius
from .prime_scan import (
    Extremality,
    ScanReport,
    TraceRecord,
    classify_extremal,
    predict_extremal,
    primes_in_range,
    scan,
    st_histogram,
    theta_of,
)
from .st_approx import (
    ApproxPolynomial,
    Interval,
    Side,
    beurling,
    chebyshev_u,
    dirichlet,
    fejer,
    fejer_integral_identity,
    majorant,
    minorant,
    mu_st,
    sawtooth,
    vaaler,
)
from .sympow import (
    BumpWeight,
    SymPowLocalData,
    bump_g,
    bump_integral,
    conductor_bound,
    conductor_exponent,
    gamma_factor,
    lambda_sym_bad,
    lambda_sym_good,
    local_data,
    psi_sym,
    smoothed_sum,
)

__version__ = "0.1.0"
