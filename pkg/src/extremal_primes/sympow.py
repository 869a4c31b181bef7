"""Local data of symmetric-power L-functions attached to a curve.

Good-prime Dirichlet coefficients are U_n(cos m theta_p) log p; bad-prime
coefficients follow the reduction kind (multiplicative, potentially
multiplicative, potentially good with abelian or non-abelian decomposition
group).  Conductor exponents are exact where formulas exist and recorded as
upper bounds otherwise.  Smoothed prime sums use a fixed C-infinity bump
supported on (1/2, 5/2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import Pool
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import loggamma

from .curves import BadPrimeSpec, CurveQ, ReductionKind
from .errors import (
    InconsistentLocalDataError,
    PoleError,
    UnsupportedCaseError,
)
from .point_count import trace_of_frobenius
from .prime_scan import primes_in_range, theta_of
from .st_approx import chebyshev_u, integrate

__all__ = [
    "bump_g",
    "BumpWeight",
    "bump_integral",
    "lambda_sym_good",
    "SymPowLocalData",
    "local_data",
    "lambda_sym_bad",
    "ConductorExponents",
    "conductor_exponent",
    "conductor_bound",
    "gamma_factor",
    "smoothed_sum",
    "psi_sym",
    "SkippedLocalDataWarning",
]


class SkippedLocalDataWarning(UserWarning):
    """A prime's contribution was skipped for lack of usable local data."""


def bump_g(y) -> float:
    """Smooth bump exp(4/3 + 1/((y-1/2)(y-5/2))) on (1/2, 5/2), else 0.

    The exponent is at most 1/3, attained at y = 3/2, so 0 <= g <= e^(1/3).
    """
    ys = np.asarray(y, dtype=float)
    arr = np.atleast_1d(ys)
    out = np.zeros_like(arr)
    inside = (arr > 0.5) & (arr < 2.5)
    t = arr[inside]
    out[inside] = np.exp(4.0 / 3.0 + 1.0 / ((t - 0.5) * (t - 2.5)))
    return float(out[0]) if ys.ndim == 0 else out.reshape(ys.shape)


@dataclass(frozen=True)
class BumpWeight:
    """The rescaled weight g_x(y) = g(y/x); supported on (x/2, 5x/2)."""

    x: float

    def __post_init__(self) -> None:
        if not self.x > 0:
            raise ValueError("scale must be positive")

    def __call__(self, y) -> float:
        return bump_g(np.asarray(y, dtype=float) / self.x)

    @property
    def support(self) -> tuple[float, float]:
        return (0.5 * self.x, 2.5 * self.x)


@lru_cache(maxsize=1)
def bump_integral() -> float:
    """Int_0^infty g(t) dt, by quadrature (there is no closed form)."""
    return integrate(bump_g, 0.5, 2.5)


def lambda_sym_good(n: int, p: int, m: int, theta_p: float) -> float:
    """Coefficient at p^m for a good prime: U_n(cos(m theta_p)) log p."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return chebyshev_u(n, math.cos(m * theta_p)) * math.log(p)


class ConductorExponents(NamedTuple):
    eps_n: int
    delta_n: int
    exact: bool


def conductor_exponent(spec: BadPrimeSpec, n: int) -> ConductorExponents:
    """Tame exponent eps_n(I_p) and wild part delta_n(p) at one bad prime.

    Exact for the (potentially) multiplicative kinds; for potentially good
    reduction only the bounds eps_n <= n+1, delta_n(2) <= 2(n+1),
    delta_n(3) <= (n+1)/2 are returned, flagged as not exact.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        # Sym^0 is the zeta function, of conductor 1
        return ConductorExponents(0, 0, True)
    kind = spec.kind
    if kind is ReductionKind.MULTIPLICATIVE:
        return ConductorExponents(n, 0, True)
    if kind is ReductionKind.POTENTIALLY_MULTIPLICATIVE:
        eps = n + 1 if n % 2 == 1 else n
        delta = 0
        if spec.p == 2 and n % 2 == 1:
            delta = (n + 1) // 2 * spec.delta1_at_2
        return ConductorExponents(eps, delta, True)
    # potentially good: wild part vanishes for p >= 5
    if spec.p == 2:
        delta = 2 * (n + 1)
    elif spec.p == 3:
        delta = (n + 1) // 2
    else:
        delta = 0
    return ConductorExponents(n + 1, delta, False)


def conductor_bound(E: CurveQ, n: int) -> int:
    """Upper bound for the conductor of the n-th symmetric power, exact integers.

    When every bad prime is multiplicative the conductor is N_E^n exactly
    (N_E squarefree); otherwise the generic bound
    2^(6(n+1)) 3^((n+1)/2) prod_p p^(n+1) is evaluated, rounding the
    3-exponent up to keep an integer.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    if all(s.kind is ReductionKind.MULTIPLICATIVE for s in E.bad_primes):
        n_e = 1
        for s in E.bad_primes:
            n_e *= s.p
        return n_e**n
    val = (1 << (6 * (n + 1))) * 3 ** ((n + 2) // 2)
    for s in E.bad_primes:
        val *= s.p ** (n + 1)
    return val


@dataclass(frozen=True)
class SymPowLocalData:
    """Everything needed for the coefficients of Sym^n at one bad prime."""

    spec: BadPrimeSpec
    n: int
    beta_p: Optional[complex] = None
    eps_n: int = 0
    delta_n: int = 0
    sign: int = 1

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0 <= self.eps_n <= self.n + 1:
            raise InconsistentLocalDataError(f"need 0 <= eps_n <= n+1, got eps_n = {self.eps_n}")
        if self.delta_n < 0:
            raise InconsistentLocalDataError("delta_n must be nonnegative")
        if self.sign not in (1, -1):
            raise InconsistentLocalDataError(f"sign must be +-1, got {self.sign}")
        if self.beta_p is not None:
            p = self.spec.p
            if abs(abs(self.beta_p) ** 2 - p) > 1e-9 * max(1.0, p):
                raise InconsistentLocalDataError(
                    f"|beta_p|^2 = {abs(self.beta_p)**2:.6g} differs from p = {p}"
                )


def local_data(
    spec: BadPrimeSpec,
    n: int,
    beta_p: Optional[complex] = None,
    eps_n: Optional[int] = None,
    sign: int = 1,
) -> SymPowLocalData:
    """Assemble SymPowLocalData, filling exponents from the exact formulas.

    For the potentially-good non-abelian kind with n >= 1 the tame exponent
    is a genuine local datum and must be supplied; for the abelian kind it
    defaults to the bound n+1 (the coefficient formulas never use it).
    """
    eps_default, delta, exact = conductor_exponent(spec, n)
    if eps_n is None:
        if (
            spec.kind is ReductionKind.POTENTIALLY_GOOD_NONABELIAN
            and n >= 1
        ):
            raise InconsistentLocalDataError(
                "eps_n must be supplied for non-abelian potentially good reduction"
            )
        eps_n = eps_default
    return SymPowLocalData(spec=spec, n=n, beta_p=beta_p, eps_n=eps_n, delta_n=delta, sign=sign)


def lambda_sym_bad(data: SymPowLocalData, m: int) -> float:
    """Coefficient at p^m for a bad prime, by reduction kind.

    n = 0 degenerates to the zeta coefficient log p for every kind.  The
    non-abelian branch is only defined for even n and rejects odd n.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = data.n
    p = data.spec.p
    logp = math.log(p)
    if n == 0:
        return logp
    kind = data.spec.kind
    if kind in (ReductionKind.MULTIPLICATIVE, ReductionKind.POTENTIALLY_MULTIPLICATIVE):
        a1 = data.spec.a_p1
        if a1 == 0:
            return 0.0
        # a_{p,n} = a_{p,1}^n, so the m-th power is (+-1)^(nm)
        sgn = -1.0 if (a1 == -1 and (n * m) % 2 == 1) else 1.0
        return sgn * math.exp(-0.5 * n * m * logp) * logp
    if kind is ReductionKind.POTENTIALLY_GOOD_ABELIAN:
        if data.beta_p is None:
            raise InconsistentLocalDataError(f"beta_p required for abelian potentially good reduction at p = {p}")
        u = data.beta_p / abs(data.beta_p)  # beta / sqrt(p), unit modulus
        d = data.spec.d
        total = 0j
        for k in range(n + 1):
            if (2 * k - n) % d == 0:
                total += u ** ((n - 2 * k) * m)
        return total.real * logp
    # non-abelian decomposition group
    if n % 2 == 1:
        raise UnsupportedCaseError(
            f"odd symmetric power n = {n} is not covered in the non-abelian potentially good case"
        )
    sgn = -1.0 if (data.sign == -1 and m % 2 == 1) else 1.0
    alt = -1.0 if (m * n // 2) % 2 == 1 else 1.0
    return sgn * alt * (n + 1 - data.eps_n) * logp


def gamma_factor(n: int, s: complex) -> tuple[float, float]:
    """log gamma(s, Sym^n) as (log-magnitude, phase), computed in log space.

    Odd n: (2^(1-s) pi^(-s))^((n+1)/2) prod_{j<=(n+1)/2} Gamma(s + (j-1/2)(n-1)).
    Even n: pi^(-(s+n2)/2) Gamma((s+n2)/2) (2^(1-s) pi^(-s))^(n/2)
            prod_{j<=n/2} Gamma(s + j(n-1)), with n2 = n/2 mod 2.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = complex(s)
    log2 = math.log(2.0)
    logpi = math.log(math.pi)
    if n % 2 == 1:
        half = (n + 1) // 2
        total = half * ((1 - s) * log2 - s * logpi)
        args = [s + (j - 0.5) * (n - 1) for j in range(1, half + 1)]
    else:
        n2 = (n // 2) % 2
        total = -(s + n2) / 2 * logpi + (n // 2) * ((1 - s) * log2 - s * logpi)
        args = [(s + n2) / 2] + [s + j * (n - 1) for j in range(1, n // 2 + 1)]
    for z in args:
        if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
            raise PoleError(f"Gamma pole at argument {z}")
        total += loggamma(z)
    return (float(total.real), math.remainder(float(total.imag), 2.0 * math.pi))


_SUM_CHUNK = 2048


def _good_primes_in_support(E: CurveQ, x: float) -> list[int]:
    lo = max(2, int(math.floor(0.5 * x)))
    hi = int(math.ceil(2.5 * x)) + 1
    if hi <= lo:
        return []
    return [p for p in primes_in_range(lo, hi) if p > 3 and E.disc % p != 0]


def _smoothed_chunk(args):
    E, n, x, primes = args
    terms = []
    for p in primes:
        g = bump_g(p / x)
        if g == 0.0:
            continue
        if n == 0:
            terms.append(g * math.log(p))
        else:
            theta = theta_of(p, trace_of_frobenius(E, p).a_p)
            terms.append(chebyshev_u(n, math.cos(theta)) * g * math.log(p))
    return math.fsum(terms)


def smoothed_sum(E: CurveQ, n: int, x: float, workers: int = 1) -> float:
    """Sum of U_n(cos theta_p) g(p/x) log p over good primes in (x/2, 5x/2).

    Primes are processed in fixed chunks whose partial sums are combined in
    order, so the value does not depend on the worker count.  For n = 0 no
    point counting is needed (U_0 = 1).
    """
    primes = _good_primes_in_support(E, x)
    chunks = [
        (E, n, x, primes[i : i + _SUM_CHUNK]) for i in range(0, len(primes), _SUM_CHUNK)
    ]
    if not chunks:
        return 0.0
    if workers > 1 and len(chunks) > 1:
        with Pool(processes=workers) as pool:
            parts = pool.map(_smoothed_chunk, chunks)
    else:
        parts = [_smoothed_chunk(c) for c in chunks]
    return math.fsum(parts)


def psi_sym(
    E: CurveQ,
    n: int,
    x: float,
    local: Optional[dict[int, SymPowLocalData]] = None,
) -> float:
    """Partial sum of the Sym^n Dirichlet coefficients over prime powers <= x.

    Good primes contribute U_n(cos m theta_p) log p; bad primes use their
    BadPrimeSpec (plus entries of `local` for data the reduction kind alone
    cannot supply).  Terms whose local data is unavailable are skipped with
    a SkippedLocalDataWarning; for n = 0 every prime contributes log p.
    """
    if x < 2:
        return 0.0
    local = local or {}
    specs = {s.p: s for s in E.bad_primes}
    terms = []
    for p in primes_in_range(2, int(math.floor(x)) + 1):
        n_powers = 0
        q = p
        while q <= x:
            n_powers += 1
            q *= p
        if n == 0:
            terms.extend(math.log(p) for _ in range(n_powers))
            continue
        if E.disc % p == 0:
            data = local.get(p)
            if data is None:
                spec = specs.get(p)
                if spec is None or spec.kind in (
                    ReductionKind.POTENTIALLY_GOOD_ABELIAN,
                    ReductionKind.POTENTIALLY_GOOD_NONABELIAN,
                ):
                    warnings.warn(
                        f"skipping bad prime {p}: no usable local data for n = {n}",
                        SkippedLocalDataWarning,
                        stacklevel=2,
                    )
                    continue
                data = local_data(spec, n)
            elif data.n != n:
                raise InconsistentLocalDataError(f"local data at p = {p} is for n = {data.n}, not {n}")
            terms.extend(lambda_sym_bad(data, m) for m in range(1, n_powers + 1))
            continue
        if p <= 3:
            warnings.warn(
                f"skipping small good prime {p}: no angle available",
                SkippedLocalDataWarning,
                stacklevel=2,
            )
            continue
        theta = theta_of(p, trace_of_frobenius(E, p).a_p)
        terms.extend(lambda_sym_good(n, p, m, theta) for m in range(1, n_powers + 1))
    return math.fsum(terms)
