"""Prime enumeration, extremal classification, and range scans.

A prime p of good reduction is trace-maximal when a_p = +isqrt(4p) and
trace-minimal when a_p = -isqrt(4p); the classification is pure integer
arithmetic.  Angles theta_p = arccos(a_p / 2 sqrt(p)) are carried along for
distribution checks but never enter the classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool
from typing import Optional

import numpy as np

from .curves import CurveQ
from .errors import (
    DomainError,
    ExtremalPrimesError,
    HasseViolationError,
    RangeTooLargeError,
)
from .point_count import isqrt, trace_of_frobenius
from .st_approx import Interval, mu_st

__all__ = [
    "primes_in_range",
    "Extremality",
    "classify_extremal",
    "theta_of",
    "TraceRecord",
    "ScanReport",
    "scan",
    "predict_extremal",
    "st_histogram",
    "report_to_csv",
    "report_to_json",
]

SIEVE_CAP = 1 << 40
_SEGMENT = 1 << 20
DEFAULT_CHUNK = 1 << 16


def _small_primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Exactly the primes in [lo, hi), ascending, by segmented sieve."""
    if hi > SIEVE_CAP:
        raise RangeTooLargeError(f"hi = {hi} exceeds the sieve cap 2^40")
    if lo < 2 or lo > hi:
        raise ValueError(f"need 2 <= lo <= hi, got [{lo}, {hi})")
    if lo == hi:
        return []
    base = _small_primes_upto(isqrt(hi - 1))
    out: list[int] = []
    for seg_lo in range(lo, hi, _SEGMENT):
        seg_hi = min(seg_lo + _SEGMENT, hi)
        mask = np.ones(seg_hi - seg_lo, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= seg_hi:
                break
            start = max(q * q, (seg_lo + q - 1) // q * q)
            if start < seg_hi:
                mask[start - seg_lo :: q] = False
        out.extend((seg_lo + np.flatnonzero(mask)).tolist())
    return out


class Extremality(Enum):
    MAXIMAL = "max"
    MINIMAL = "min"
    NOT_EXTREMAL = "none"


def classify_extremal(p: int, a_p: int) -> Extremality:
    """Maximal iff a_p = isqrt(4p), Minimal iff a_p = -isqrt(4p)."""
    four_p = 4 * p
    if a_p * a_p > four_p:
        raise HasseViolationError(f"a_p = {a_p} with a_p^2 > 4p at p = {p}")
    t = isqrt(four_p)
    # 4p is a perfect square only if p is, so the floor is never attained exactly
    assert t * t != four_p, f"4p is a perfect square at p = {p}"
    if a_p == t:
        return Extremality.MAXIMAL
    if a_p == -t:
        return Extremality.MINIMAL
    return Extremality.NOT_EXTREMAL


def theta_of(p: int, a_p: int) -> float:
    """Sato-Tate angle in [0, pi] with a_p = 2 sqrt(p) cos(theta_p)."""
    if a_p * a_p > 4 * p:
        raise HasseViolationError(f"a_p = {a_p} with a_p^2 > 4p at p = {p}")
    c = a_p / (2.0 * math.sqrt(p))
    return math.acos(min(1.0, max(-1.0, c)))


@dataclass(frozen=True)
class TraceRecord:
    p: int
    a_p: int
    theta: float
    extremal: Extremality


@dataclass(frozen=True)
class ScanReport:
    x_lo: int
    x_hi: int
    curve_label: str
    n_primes: int
    n_maximal: int
    n_minimal: int
    skipped_primes: tuple[tuple[int, str], ...]
    records: Optional[tuple[TraceRecord, ...]] = None


def _scan_chunk(args):
    E, lo, hi = args
    records = []
    skipped = []
    for p in primes_in_range(max(2, lo), hi):
        if E.disc % p == 0:
            skipped.append((p, "bad"))
            continue
        if p <= 3:
            skipped.append((p, "small"))
            continue
        try:
            a_p = trace_of_frobenius(E, p).a_p
        except ExtremalPrimesError as e:
            raise e.__class__(f"curve {E.label or (E.A, E.B)} at p = {p}: {e}") from e
        records.append((p, a_p, theta_of(p, a_p), classify_extremal(p, a_p)))
    return records, skipped


def scan(
    E: CurveQ,
    x_lo: int,
    x_hi: int,
    keep_records: bool = False,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
) -> ScanReport:
    """Classify every good prime in [x_lo, x_hi).

    The range is cut into fixed chunks processed independently (in worker
    processes when workers > 1) and merged in chunk order, so the report is
    identical for any worker count.
    """
    if x_lo >= x_hi:
        raise ValueError(f"need x_lo < x_hi, got [{x_lo}, {x_hi})")
    lo = max(2, x_lo)
    chunks = []
    pos = lo
    while pos < x_hi:
        chunks.append((E, pos, min(pos + chunk_size, x_hi)))
        pos += chunk_size
    if workers > 1 and len(chunks) > 1:
        with Pool(processes=workers) as pool:
            parts = pool.map(_scan_chunk, chunks)
    else:
        parts = [_scan_chunk(c) for c in chunks]
    records: list[TraceRecord] = []
    skipped: list[tuple[int, str]] = []
    n_max = n_min = n_primes = 0
    for recs, skips in parts:
        skipped.extend(skips)
        for p, a_p, theta, ext in recs:
            n_primes += 1
            if ext is Extremality.MAXIMAL:
                n_max += 1
            elif ext is Extremality.MINIMAL:
                n_min += 1
            if keep_records:
                records.append(TraceRecord(p, a_p, theta, ext))
    return ScanReport(
        x_lo=x_lo,
        x_hi=x_hi,
        curve_label=E.label,
        n_primes=n_primes,
        n_maximal=n_max,
        n_minimal=n_min,
        skipped_primes=tuple(skipped),
        records=tuple(records) if keep_records else None,
    )


def predict_extremal(x: float, cm: bool) -> float:
    """Conjectured count of primes up to x with a_p = [2 sqrt(p)].

    (2/3pi) x^(3/4)/log x for CM curves, (8/3pi) x^(1/4)/log x otherwise.
    """
    if x <= math.e:
        raise DomainError(f"prediction needs x > e, got {x}")
    if cm:
        return (2.0 / (3.0 * math.pi)) * x**0.75 / math.log(x)
    return (8.0 / (3.0 * math.pi)) * x**0.25 / math.log(x)


def st_histogram(records, bins: int) -> list[tuple[float, float, float, float]]:
    """(bin_lo, bin_hi, empirical mass, mu_ST mass) over [0, pi].

    Bin edges are i*pi/bins; an angle landing exactly on an interior edge
    counts toward the lower-indexed bin.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts = [0] * bins
    total = 0
    for r in records:
        idx = math.ceil(r.theta * bins / math.pi) - 1
        counts[min(max(idx, 0), bins - 1)] += 1
        total += 1
    out = []
    for i in range(bins):
        lo = i * math.pi / bins
        hi = (i + 1) * math.pi / bins if i < bins - 1 else math.pi
        emp = counts[i] / total if total else 0.0
        out.append((lo, hi, emp, mu_st(Interval(lo, hi))))
    return out


def _f12(x: float) -> float:
    """Round to 12 significant digits (the output formatting policy)."""
    return float(f"{x:.12g}")


def report_to_csv(report: ScanReport) -> str:
    """Per-prime CSV with header p,a_p,theta,extremal."""
    if report.records is None:
        raise ValueError("scan was run without keep_records")
    lines = ["p,a_p,theta,extremal"]
    for r in report.records:
        lines.append(f"{r.p},{r.a_p},{r.theta:.12g},{r.extremal.value}")
    return "\n".join(lines) + "\n"


def report_to_json(report: ScanReport) -> dict:
    """ScanReport as a JSON-ready dict; records included only when kept."""
    out = {
        "x_lo": report.x_lo,
        "x_hi": report.x_hi,
        "curve_label": report.curve_label,
        "n_primes": report.n_primes,
        "n_maximal": report.n_maximal,
        "n_minimal": report.n_minimal,
        "skipped_primes": [[p, reason] for p, reason in report.skipped_primes],
    }
    if report.records is not None:
        out["records"] = [
            {"p": r.p, "a_p": r.a_p, "theta": _f12(r.theta), "extremal": r.extremal.value}
            for r in report.records
        ]
    return out
