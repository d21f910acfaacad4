import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffreps import sampling
from diffreps.coeffs import LAURENT, RATIONAL
from diffreps.diffop import DiffOp, compose
from diffreps.env import (
    EnvElement,
    env_image,
    kernel_check,
    pbw_closed_form,
    quadratic_weights,
    surjectivity_witness,
    surjectivity_witness_R0,
    verify_witness,
)
from diffreps.errors import CasimirOne, ConstraintViolated
from diffreps.liealg import WITT
from diffreps.reps import Triple, build
from diffreps.scalar import Scalar

from conftest import C

R = RATIONAL.coerce
z = RATIONAL.gen()


def s1(b="c", h=None):
    return build(Triple(h if h is not None else z, R(b), C, "S1"))


def r1(b="c"):
    return build(Triple(z, R(b), C, "R1"))


# -- env_image --------------------------------------------------------------


def test_empty_monomial_is_identity():
    assert env_image(EnvElement.pbw(0, 0, 0), s1()) == DiffOp.const(1)


def test_casimir_element_is_scalar():
    r = s1("c + z^2")
    assert env_image(EnvElement.casimir(), r) == DiffOp.const((2 * C + 1) ** 2)


def test_L1_Lminus1_on_canonical():
    r = s1()
    L = r.image(0)
    assert env_image(EnvElement.pbw(1, 0, 1), r) == compose(L + (C + 1), L - C)


@pytest.mark.parametrize("a,b,g", [(a, b, g) for a, b, g in itertools.product(range(3), repeat=3)])
def test_closed_form_matches_composition(a, b, g):
    r = build(Triple(R("z^2 + 1"), R("c + z"), C, "S1"))
    assert env_image(EnvElement.pbw(a, b, g), r) == pbw_closed_form(a, b, g, r)


def test_pbw_reordering():
    e = EnvElement.word(-1, 1)
    # L_-1 L_1 = L_1 L_-1 - 2 L_0
    assert e == EnvElement.word(1, -1) - 2 * EnvElement.word(0)


@settings(max_examples=15)
@given(st.lists(st.integers(-1, 1), max_size=3), st.lists(st.integers(-1, 1), max_size=3))
def test_env_image_is_multiplicative(w1, w2):
    r = s1("c + z")
    m1, m2 = EnvElement.word(*w1), EnvElement.word(*w2)
    prod = (m1 * m2).pbw_normal_form("sl2")
    assert env_image(prod, r) == compose(env_image(m1, r), env_image(m2, r))


def test_reduced_basis_leading_data_distinct():
    # beta <= 1 monomials: (h-exponent, L-degree) = (a - g, a + b + g) determine the leading term
    seen = {}
    r = s1()
    for a, b, g in itertools.product(range(5), range(2), range(5)):
        if a + b + g > 4:
            continue
        op = env_image(EnvElement.pbw(a, b, g), r)
        key = (a - g, a + b + g)
        assert key not in seen
        seen[key] = op
        assert op.order == a + b + g


# -- kernel -----------------------------------------------------------------


@pytest.mark.parametrize("family", ["S1", "S0", "S2", "R1", "R0", "R2"])
def test_kernel_check_all_families(family):
    t = sampling.random_triple(sampling.rng(3), family, degree=2)
    assert kernel_check(build(t))


def test_kernel_check_wrong_constant():
    r = s1()
    assert not kernel_check(r, (2 * C + 3) ** 2)
    residual = env_image(EnvElement.casimir() - (2 * C + 3) ** 2, r)
    assert residual.order == 0 and not residual.is_zero()


def test_kernel_check_line_case_two():
    t = Triple(R("1/z"), R("c + 1"), C, "S0")
    assert kernel_check(build(t))


# -- surjectivity -----------------------------------------------------------


def test_weights_solve_the_quadratic_system():
    for k in range(5):
        x, y, w = quadratic_weights(k, C)
        L = Scalar.param("L")

        def q(a, b):
            return (L + a) * (L + b)

        total = x * q(-C - k - 1, (k + 1) * C) + y * q(-k, k * C) + w * q(C - k + 1, (k - 1) * C)
        assert total == 1


@pytest.mark.parametrize("k", range(0, 9))
def test_witness_z_power(k):
    r = r1("c + 2*z - z^2")
    e = surjectivity_witness(r, "z^k", k)
    assert verify_witness(e, r, z ** k)


def test_witness_d():
    r = r1("c + 2*z - z^2")
    e = surjectivity_witness(r, "d")
    assert env_image(e, r) == DiffOp.d()


@pytest.mark.parametrize("c", [0, -1])
def test_casimir_one(c):
    r = build(Triple(z, R(str(c)), Scalar.coerce(c), "S1"))
    with pytest.raises(CasimirOne):
        surjectivity_witness(r, "z^k", 2)


def test_casimir_one_only_at_special_c():
    for c in (1, 2, -2, Scalar.coerce(1) / 2):
        quadratic_weights(3, c)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("k", range(-6, 7))
def test_laurent_witnesses(sign, k):
    zl = LAURENT.gen()
    h = zl if sign == 1 else zl.inverse()
    r = build(Triple(h, LAURENT.from_scalar(C), C, "R1"), alg=WITT)
    e = surjectivity_witness(r, "z^k", k)
    assert verify_witness(e, r, zl ** k)


def test_R0_witnesses():
    lam = Scalar.coerce(1)
    t = Triple(R("1/z"), R("2 + z"), Scalar.coerce(1), "R0", lam)
    out = surjectivity_witness_R0(build(t), 3)
    assert [k for k, _, _ in out] == [0, 1, 2, 3]
    for k, _, op in out:
        assert op.order == k and op.symbol == 1


def test_R0_k1_order_and_symbol():
    t = Triple(R("1/z"), R("-c + z"), C, "R0", -C - 1)
    r = build(t)
    (_, _, op0), (_, _, op1) = surjectivity_witness_R0(r, 1)
    L = r.image(0)
    assert op1 == (L - (t.lam + 1)).scale(R("1/z"))
    assert op1.order == 1 and op1.symbol == 1


def test_R0_precondition():
    with pytest.raises(ConstraintViolated):
        surjectivity_witness_R0(build(Triple(R("1/z"), R("c + 2"), C, "R0", C)))
