import json

import pytest

from extremal_primes.curves import (
    BadPrimeSpec,
    CurveQ,
    ReductionKind,
    discriminant,
    load_curves,
    parse_curve_record,
    reduce_mod_p,
)
from extremal_primes.errors import BadReductionError, InvalidPrimeError


def test_discriminant_values():
    assert discriminant(1, 1) == -496
    assert discriminant(-1, 0) == 64
    assert discriminant(0, 0) == 0


def test_discriminant_huge_coefficients_exact():
    # arbitrary-precision arithmetic: no wraparound at any width
    A = 10**30
    B = -(10**25)
    assert discriminant(A, B) == -16 * (4 * A**3 + 27 * B**2)


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        CurveQ(0, 0)
    with pytest.raises(ValueError):
        CurveQ(-3, 2)  # 4*(-27) + 27*4 = 0


def test_curve_disc_recomputable():
    E = CurveQ(1, 1)
    assert E.disc == discriminant(E.A, E.B) != 0


def test_bad_prime_must_divide_disc():
    spec = BadPrimeSpec(31, ReductionKind.MULTIPLICATIVE, a_p1=1)
    E = CurveQ(1, 1, bad_primes=(spec,))
    assert E.bad_primes[0].p == 31
    with pytest.raises(ValueError):
        CurveQ(1, 1, bad_primes=(BadPrimeSpec(7, ReductionKind.MULTIPLICATIVE, a_p1=1),))


def test_bad_prime_spec_validation():
    with pytest.raises(InvalidPrimeError):
        BadPrimeSpec(10, ReductionKind.MULTIPLICATIVE)
    with pytest.raises(ValueError):
        BadPrimeSpec(5, ReductionKind.MULTIPLICATIVE, a_p1=2)
    with pytest.raises(ValueError):
        BadPrimeSpec(5, ReductionKind.POTENTIALLY_GOOD_ABELIAN, d=5)
    with pytest.raises(ValueError):
        BadPrimeSpec(5, ReductionKind.MULTIPLICATIVE, d=4)
    with pytest.raises(ValueError):
        BadPrimeSpec(5, ReductionKind.MULTIPLICATIVE, delta1_at_2=1)
    # fine at p = 2
    BadPrimeSpec(2, ReductionKind.POTENTIALLY_MULTIPLICATIVE, delta1_at_2=3)


def test_reduce_mod_p_values():
    assert reduce_mod_p(CurveQ(1, 1), 5) == reduce_mod_p(CurveQ(1, 1), 5)
    r = reduce_mod_p(CurveQ(1, 1), 5)
    assert (r.A_mod, r.B_mod) == (1, 1)
    r = reduce_mod_p(CurveQ(-1, 0), 7)
    assert (r.A_mod, r.B_mod) == (6, 0)


def test_reduce_mod_p_errors():
    with pytest.raises(BadReductionError):
        reduce_mod_p(CurveQ(1, 1), 2)  # 2 | -496
    with pytest.raises(BadReductionError):
        reduce_mod_p(CurveQ(1, 1), 31)
    with pytest.raises(InvalidPrimeError):
        reduce_mod_p(CurveQ(1, 1), 10)


@pytest.mark.parametrize("A,B", [(1, 1), (-1, 0), (2, 3), (-7, 10)])
def test_reduction_never_singular(A, B):
    from extremal_primes.prime_scan import primes_in_range

    E = CurveQ(A, B)
    for p in primes_in_range(5, 200):
        if E.disc % p == 0:
            continue
        r = reduce_mod_p(E, p)
        assert (4 * r.A_mod**3 + 27 * r.B_mod**2) % p != 0


def test_parse_curve_record():
    E = parse_curve_record(
        {
            "label": "x",
            "A": 1,
            "B": 1,
            "bad_primes": [{"p": 31, "kind": "multiplicative", "a_p1": -1}],
        }
    )
    assert E.label == "x"
    assert E.bad_primes[0].a_p1 == -1
    assert E.bad_primes[0].kind is ReductionKind.MULTIPLICATIVE


def test_parse_rejects_unknown_fields():
    with pytest.raises(ValueError, match="unknown curve fields"):
        parse_curve_record({"label": "x", "A": 1, "B": 1, "conductor": 496})
    with pytest.raises(ValueError, match="unknown bad-prime fields"):
        parse_curve_record(
            {"label": "x", "A": 1, "B": 1, "bad_primes": [{"p": 31, "kind": "multiplicative", "root": 1}]}
        )
    with pytest.raises(ValueError, match="unknown reduction kind"):
        parse_curve_record({"label": "x", "A": 1, "B": 1, "bad_primes": [{"p": 31, "kind": "additive"}]})


def test_parse_requires_core_fields():
    with pytest.raises(ValueError, match="missing"):
        parse_curve_record({"A": 1, "B": 1})


def test_parse_abelian_kind_carries_d():
    E = parse_curve_record(
        {"label": "x", "A": 0, "B": 2, "bad_primes": [{"p": 2, "kind": "potentially_good_abelian_6"}]}
    )
    assert E.bad_primes[0].d == 6


def test_load_curves_roundtrip(tmp_path):
    path = tmp_path / "curves.jsonl"
    rows = [
        {"label": "a", "A": 1, "B": 1, "bad_primes": []},
        {"label": "b", "A": -1, "B": 0, "bad_primes": [{"p": 2, "kind": "potentially_good_nonabelian"}]},
    ]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    curves = load_curves(path)
    assert [c.label for c in curves] == ["a", "b"]
    assert curves[1].bad_primes[0].kind is ReductionKind.POTENTIALLY_GOOD_NONABELIAN


def test_load_curves_reports_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"label": "a", "A": 1, "B": 1}\n{"label": "b", "A": 0, "B": 0}\n')
    with pytest.raises(ValueError, match="bad.jsonl:2"):
        load_curves(path)
