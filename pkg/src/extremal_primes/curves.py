"""Elliptic curves over Q in short Weierstrass form y^2 = x^3 + Ax + B.

Only the short model with integer coefficients is supported.  "Bad prime"
means p | disc of the given model; reduction-type metadata at bad primes is
user-supplied input (see BadPrimeSpec), never computed here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ._arith import is_prime
from .errors import BadReductionError, InvalidPrimeError

__all__ = [
    "ReductionKind",
    "BadPrimeSpec",
    "CurveQ",
    "ReducedCurve",
    "discriminant",
    "reduce_mod_p",
    "parse_curve_record",
    "load_curves",
]


def discriminant(A: int, B: int) -> int:
    """Discriminant -16(4A^3 + 27B^2) of y^2 = x^3 + Ax + B, exact."""
    return -16 * (4 * A**3 + 27 * B**2)


class ReductionKind(Enum):
    MULTIPLICATIVE = "multiplicative"
    POTENTIALLY_MULTIPLICATIVE = "potentially_multiplicative"
    POTENTIALLY_GOOD_ABELIAN = "potentially_good_abelian"
    POTENTIALLY_GOOD_NONABELIAN = "potentially_good_nonabelian"


@dataclass(frozen=True)
class BadPrimeSpec:
    """User-supplied reduction data at one bad prime.

    d is the order of the (cyclic) inertia group in the abelian
    potentially-good case and must be one of 2, 3, 4, 6; it is None for
    every other kind.  a_p1 is the first Euler-factor datum for the
    (potentially) multiplicative kinds.  delta1_at_2 is the wild conductor
    exponent of the curve itself at p = 2 and is only meaningful there.
    """

    p: int
    kind: ReductionKind
    d: Optional[int] = None
    a_p1: int = 0
    delta1_at_2: int = 0

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidPrimeError(f"bad prime {self.p} is not prime")
        if self.a_p1 not in (-1, 0, 1):
            raise ValueError(f"a_p1 must be 0 or +-1, got {self.a_p1}")
        if self.kind is ReductionKind.POTENTIALLY_GOOD_ABELIAN:
            if self.d not in (2, 3, 4, 6):
                raise ValueError(f"abelian potentially good reduction needs d in {{2,3,4,6}}, got {self.d}")
        elif self.d is not None:
            raise ValueError(f"d is only meaningful for the abelian potentially-good kind, got d={self.d}")
        if self.delta1_at_2 < 0:
            raise ValueError("delta1_at_2 must be nonnegative")
        if self.delta1_at_2 and self.p != 2:
            raise ValueError("delta1_at_2 is only meaningful at p = 2")


@dataclass(frozen=True)
class CurveQ:
    """A nonsingular short-Weierstrass curve over Q with integer A, B."""

    A: int
    B: int
    bad_primes: tuple[BadPrimeSpec, ...] = ()
    label: str = ""
    disc: int = field(init=False)

    def __post_init__(self) -> None:
        d = discriminant(self.A, self.B)
        if d == 0:
            raise ValueError(f"singular curve: disc(A={self.A}, B={self.B}) = 0")
        object.__setattr__(self, "disc", d)
        object.__setattr__(self, "bad_primes", tuple(self.bad_primes))
        for spec in self.bad_primes:
            if d % spec.p != 0:
                raise ValueError(f"bad prime {spec.p} does not divide disc = {d}")


@dataclass(frozen=True)
class ReducedCurve:
    """Reduction of a CurveQ modulo a good prime."""

    p: int
    A_mod: int
    B_mod: int

    def __post_init__(self) -> None:
        if (4 * self.A_mod**3 + 27 * self.B_mod**2) % self.p == 0:
            raise BadReductionError(f"curve is singular mod {self.p}")


def reduce_mod_p(E: CurveQ, p: int) -> ReducedCurve:
    """Reduce E modulo a good prime p, rejecting bad or composite p."""
    if not is_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    if E.disc % p == 0:
        raise BadReductionError(f"{p} divides disc = {E.disc}")
    return ReducedCurve(p, E.A % p, E.B % p)


_KIND_STRINGS = {
    "multiplicative": (ReductionKind.MULTIPLICATIVE, None),
    "potentially_multiplicative": (ReductionKind.POTENTIALLY_MULTIPLICATIVE, None),
    "potentially_good_abelian_2": (ReductionKind.POTENTIALLY_GOOD_ABELIAN, 2),
    "potentially_good_abelian_3": (ReductionKind.POTENTIALLY_GOOD_ABELIAN, 3),
    "potentially_good_abelian_4": (ReductionKind.POTENTIALLY_GOOD_ABELIAN, 4),
    "potentially_good_abelian_6": (ReductionKind.POTENTIALLY_GOOD_ABELIAN, 6),
    "potentially_good_nonabelian": (ReductionKind.POTENTIALLY_GOOD_NONABELIAN, None),
}


def kind_to_string(kind: ReductionKind, d: Optional[int] = None) -> str:
    if kind is ReductionKind.POTENTIALLY_GOOD_ABELIAN:
        return f"potentially_good_abelian_{d}"
    return kind.value


def _parse_bad_prime(obj: dict) -> BadPrimeSpec:
    allowed = {"p", "kind", "a_p1", "delta1_at_2"}
    unknown = set(obj) - allowed
    if unknown:
        raise ValueError(f"unknown bad-prime fields: {sorted(unknown)}")
    if "p" not in obj or "kind" not in obj:
        raise ValueError("bad-prime record needs 'p' and 'kind'")
    kind_str = obj["kind"]
    if kind_str not in _KIND_STRINGS:
        raise ValueError(f"unknown reduction kind {kind_str!r}; expected one of {sorted(_KIND_STRINGS)}")
    kind, d = _KIND_STRINGS[kind_str]
    return BadPrimeSpec(
        p=int(obj["p"]),
        kind=kind,
        d=d,
        a_p1=int(obj.get("a_p1", 0)),
        delta1_at_2=int(obj.get("delta1_at_2", 0)),
    )


def parse_curve_record(obj: dict) -> CurveQ:
    """Build a CurveQ from one decoded JSON object, rejecting unknown fields."""
    allowed = {"label", "A", "B", "bad_primes"}
    unknown = set(obj) - allowed
    if unknown:
        raise ValueError(f"unknown curve fields: {sorted(unknown)}")
    for key in ("label", "A", "B"):
        if key not in obj:
            raise ValueError(f"curve record is missing {key!r}")
    bad = tuple(_parse_bad_prime(bp) for bp in obj.get("bad_primes", []))
    return CurveQ(A=int(obj["A"]), B=int(obj["B"]), bad_primes=bad, label=str(obj["label"]))


def load_curves(path) -> list[CurveQ]:
    """Load curves from a file with one JSON object per line."""
    curves = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {e}") from e
            try:
                curves.append(parse_curve_record(obj))
            except (ValueError, InvalidPrimeError) as e:
                raise ValueError(f"{path}:{lineno}: {e}") from e
    return curves
