from fractions import Fraction

import pytest
from hypothesis import given, settings

from diffreps.cocycles import (
    gf_cocycle,
    printed_forms,
    pullback_coefficient,
    pullback_table,
    residue,
)
from diffreps.coeffs import LAURENT, RATIONAL, SERIES
from diffreps.diffop import DiffOp, bracket
from diffreps.errors import InsufficientPrecision, RingMismatch
from diffreps.liealg import VIR, WITT
from diffreps.parse import parse_op
from diffreps.reps import Representation, Triple, build, central_charge_zero_check
from diffreps.scalar import Scalar

from conftest import C, ops, scalars

L = LAURENT.coerce
zl = LAURENT.gen()


def lop(text):
    return parse_op(text, LAURENT)


# -- residue ----------------------------------------------------------------


def test_residues():
    assert residue(L("1/z")) == 1
    assert residue(L("z^2")) == 0
    assert residue(RATIONAL.coerce("(3 + 2*z)/z^2")) == 2


def test_residue_of_series():
    assert residue(SERIES.coerce("z^-1 + 1 + z")) == 1
    with pytest.raises(InsufficientPrecision):
        residue(SERIES.coerce("z^-3 + O(z^-1)"))


# -- Gelfand-Fuks cocycle ---------------------------------------------------


def test_gf_equal_arguments():
    P = lop("z*d")
    assert gf_cocycle(P, P) == 0


def test_gf_d_against_z2d():
    assert gf_cocycle(lop("d"), lop("z^2*d")) == 0


def test_gf_mixed_orders():
    # 1! 0! / 2! * Res(d(z^2) * d(z^-1)) = 1/2 * Res(2z * (-z^-2)) = -1
    assert gf_cocycle(lop("z^2*d"), lop("z^-1")) == -1


def test_gf_virasoro_values():
    # 1/6 Res(d^2(z^(i+1)) d(z^(1-i))) = (i+1) i (1-i) / 6
    for i in range(-4, 5):
        P = DiffOp({1: -zl ** (i + 1)}, LAURENT)
        Q = DiffOp({1: -zl ** (-i + 1)}, LAURENT)
        assert gf_cocycle(P, Q) == Fraction(i - i ** 3, 6)


def test_gf_ring_mismatch():
    with pytest.raises(RingMismatch):
        gf_cocycle(lop("d"), parse_op("d"))


laurent_ops = ops(LAURENT, max_order=2, max_deg=2, low=-2, params=False)


@settings(max_examples=20)
@given(laurent_ops, laurent_ops, laurent_ops, scalars(params=False))
def test_gf_bilinear_antisymmetric(P, Q, R, s):
    assert gf_cocycle(P, Q) == -gf_cocycle(Q, P)
    sR = R.scale(LAURENT.from_scalar(s))
    assert gf_cocycle(P, Q + sR) == gf_cocycle(P, Q) + s * gf_cocycle(P, R)


@settings(max_examples=20)
@given(laurent_ops, laurent_ops, laurent_ops)
def test_gf_cocycle_identity(P, Q, R):
    total = (gf_cocycle(bracket(P, Q), R) + gf_cocycle(bracket(Q, R), P)
             + gf_cocycle(bracket(R, P), Q))
    assert total == 0


# -- pullback ---------------------------------------------------------------


def r1(h, b=None, c=C):
    b = LAURENT.from_scalar(c) if b is None else b
    return build(Triple(h, b, c, "R1"), alg=WITT)


def test_pullback_h_z():
    res = pullback_coefficient(r1(zl))
    assert res.v == 1
    assert res.coefficient == (1 - 3 * (2 * C + 1) ** 2)
    assert res.coefficient == -2 * (1 + 6 * C + 6 * C * C)


def test_pullback_h_inverse():
    res = pullback_coefficient(r1(zl.inverse()))
    assert res.v == -1
    assert res.coefficient == 2 * (1 + 6 * C + 6 * C * C)


def test_pullback_agrees_with_second_printed_form():
    for h in (zl, zl.inverse(), zl * 3):
        res = pullback_coefficient(r1(h))
        assert res.coefficient == res.second_form


def test_first_printed_form_has_the_opposite_linear_term():
    first, second = printed_forms(C, 1)
    assert first - second == 24 * C


def test_pullback_at_half():
    res = pullback_coefficient(r1(zl, c=Scalar.coerce(Fraction(1, 2))))
    assert res.coefficient == -11
    assert res.first_form == 1


def test_pullback_coboundary_with_nonconstant_b():
    res = pullback_coefficient(r1(zl, LAURENT.from_scalar(C) + zl ** 2 + zl.inverse() * 3))
    assert res.coefficient == (1 - 3 * (2 * C + 1) ** 2)


@pytest.mark.parametrize("h", ["z", "z^-1"])
def test_pullback_locality(h):
    t = pullback_table(r1(L(h)), 4, diagonal_only=False)
    assert t.is_antisymmetric()
    for (i, j), v in t.items():
        if i + j != 0:
            assert v == 0


def test_pullback_table_json():
    rows = pullback_table(r1(zl), 2).to_json()
    assert {(r["i"], r["j"]) for r in rows} == {(i, -i) for i in range(-2, 3)}


def test_pullback_needs_laurent():
    with pytest.raises(RingMismatch):
        pullback_coefficient(build(Triple(RATIONAL.gen(), RATIONAL.coerce("c"), C, "R1"), alg=WITT))


# -- central charge ---------------------------------------------------------


def test_central_charge_zero_generic():
    r = build(Triple(RATIONAL.gen(), RATIONAL.coerce("b0"), C, "R1"), alg=VIR)
    assert central_charge_zero_check(r)


def test_central_charge_zero_series():
    r = build(Triple(SERIES.coerce("z + z^2"), SERIES.zero(), C, "R1"), alg=VIR)
    assert central_charge_zero_check(r)


def test_central_charge_perturbed():
    r = build(Triple(RATIONAL.gen(), RATIONAL.coerce("b0"), C, "R1"), alg=VIR)
    images = {i: r.image(i) for i in (-2, 0, 2)}
    images[2] = images[2] + DiffOp.mult(RATIONAL.coerce("z^2"))
    assert not central_charge_zero_check(Representation.from_images(images, VIR))
