"""Acceptance suite: one pass/fail line per criterion in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``).
Checks that do not hold are marked ``xfail(strict=True)``: they run in full, the
summary line reports FAIL, and an unexpected pass breaks the suite.
"""

import time
from fractions import Fraction

import pytest

from diffreps import sampling
from diffreps.cocycles import printed_forms, pullback_coefficient
from diffreps.coeffs import LAURENT, RATIONAL, SERIES, series_ring
from diffreps.diffop import DiffOp, apply, bracket
from diffreps.env import kernel_check, surjectivity_witness, verify_witness
from diffreps.errors import CasimirOne, NoCanonicalForm
from diffreps.group import (
    act_on_triple,
    classify_witt_over_powerseries,
    conjugate_rep,
    normal_form_S0,
    normal_form_S1,
    obstruction_polynomials,
)
from diffreps.liealg import VIR, WITT
from diffreps.parse import parse_op, render
from diffreps.reps import (
    Representation,
    Triple,
    build,
    casimir_value,
    central_charge_zero_check,
    centralizer_check,
    classify,
    companion_extension,
    verify_brackets,
)
from diffreps.scalar import Scalar
from diffreps.weyl import WeylAuto, build_hat_rep, fourier_transport, weyl_rep

from conftest import C, record

pytestmark = pytest.mark.slow

FAMILIES = ("S1", "S0", "S2", "R1", "R0", "R2")
HALF = Scalar.coerce(Fraction(1, 2))
QUARTER = Scalar.coerce(Fraction(1, 4))
z = RATIONAL.gen()
zs = SERIES.gen()


def triples(family, n, ring=RATIONAL, degree=3, seed0=0):
    for s in range(n):
        yield sampling.random_triple(sampling.rng(seed0 + s), family, ring, degree)


def support(rep, lo=-6, hi=6):
    return [i for i in range(lo, hi + 1) if i in rep.algebra]


# ---------------------------------------------------------------------------
# 1. bracket suite

# index -6 against a valuation-2 h eats about 22 orders of absolute precision,
# so the power-series sweeps run at 48 instead of the default 24
SERIES48 = series_ring(48)
SWEEPS = [
    ("S1", RATIONAL, None), ("S1", SERIES48, None), ("S1", LAURENT, None),
    ("R1", RATIONAL, WITT), ("R1", SERIES48, WITT), ("R1", LAURENT, WITT),
    ("R0", RATIONAL, None), ("R2", RATIONAL, None),
]


@pytest.fixture(scope="module")
def bracket_suite():
    start = time.perf_counter()
    pairs = failures = truncated = 0
    for k, (family, ring, alg) in enumerate(SWEEPS):
        for t in triples(family, 50, ring, 3, seed0=1000 * k):
            r = build(t, alg=alg) if alg is not None else build(t)
            rep = verify_brackets(r, 6, lo=-6)
            pairs += len(rep["pairs"])
            failures += sum(p["status"] != "pass" for p in rep["pairs"])
            # over C((z)) a vanishing residual prints as O(z^k)
            truncated += sum(p["status"] == "pass" and p["residual"] != "0" for p in rep["pairs"])
    return pairs, failures, truncated, time.perf_counter() - start


def test_c01_zero_residuals(bracket_suite):
    pairs, failures, truncated, _ = bracket_suite
    ok = record(1, "residuals", failures == 0,
                f"{pairs} pairs over 400 triples, {failures} nonzero ({truncated} zero to series precision)")
    assert ok


@pytest.mark.xfail(strict=True, reason="exact sweeps with formal c take minutes on one CPU")
def test_c01_runtime(bracket_suite):
    *_, seconds = bracket_suite
    ok = record(1, "runtime", seconds < 60, f"{seconds:.0f} s against the 60 s expectation")
    assert ok


# ---------------------------------------------------------------------------
# 2. Casimir


def test_c02_casimir():
    bad = []
    n = 0
    for family in FAMILIES:
        for t in triples(family, 10, seed0=2000):
            n += 1
            if casimir_value(build(t)) != (2 * C + 1) ** 2:
                bad.append(str(t))
    for ring in (SERIES, LAURENT):
        for t in triples("S1", 10, ring, seed0=2100):
            n += 1
            if casimir_value(build(t)) != (2 * C + 1) ** 2:
                bad.append(str(t))
    ok = record(2, "casimir", not bad, f"{n} triples equal (2c+1)^2" if not bad else f"mismatch on {bad[:2]}")
    assert ok


# ---------------------------------------------------------------------------
# 3. orders and symbols

ORDER = {"S1": lambda i: 1, "R1": lambda i: 1, "S0": lambda i: i + 1,
         "R0": lambda i: i + 1, "S2": lambda i: 1 - i, "R2": lambda i: 1 - i}


def test_c03_orders_and_symbols():
    bad = []
    n = 0
    for family in FAMILIES:
        for t in triples(family, 3, degree=2, seed0=3000):
            r = build(t, alg=WITT) if family == "R1" else build(t)
            h, hd = t.h, t.h.derivative()
            for i in support(r):
                P = r.image(i)
                m = ORDER[family](i)
                n += 1
                if P.order != m or P.symbol != h ** (i + m) * (-hd) ** (-m):
                    bad.append((family, i))
    ok = record(3, "orders", not bad, f"{n} images match" if not bad else f"failures {bad[:4]}")
    assert ok


# ---------------------------------------------------------------------------
# 4. classification round trip


def test_c04_classification_roundtrip():
    bad = []
    n = 0
    for family in FAMILIES:
        for t in triples(family, 50, seed0=4000):
            r = build(t)
            idx = {"R0": (-1, 0, 1, 2), "R2": (-2, -1, 0, 1)}.get(family, (-1, 0, 1))
            res = classify({i: r.image(i) for i in idx}, r.algebra)
            n += 1
            cands = set(res.c_candidates)
            want = {C} if family in ("S1", "R1") else {C, -C - 1}
            if not res.triple.same_as(t) or cands != want:
                bad.append(str(t))
    ok = record(4, "roundtrip", not bad, f"{n} triples recovered" if not bad else f"failures {bad[:2]}")
    assert ok


# ---------------------------------------------------------------------------
# 5. normal forms over C[[z]]


def test_c05_normal_form_S1():
    rng = sampling.rng(5000)
    bad = []
    precs = []
    for _ in range(20):
        a = [Scalar.coerce(rng.choice([1, -1, 2, -2, 3]))] + [Scalar.coerce(rng.randint(-3, 3)) for _ in range(2)]
        h = sum((zs ** (k + 1) * a[k] for k in range(3)), SERIES.zero())
        b = SERIES.from_scalar(C) + sum((zs ** k * rng.randint(-3, 3) for k in range(1, 4)), SERIES.zero())
        t = Triple(h, b, C, "S1")
        nf = normal_form_S1(t)
        canon_ok = nf.triple.same_as(Triple(zs, SERIES.from_scalar(C), C, "S1"))
        back = conjugate_rep(nf.element.inverse(), build(nf.triple))
        src = build(nf.prepared)
        for i in (-1, 0, 1):
            P = back.image(i)
            precs.append(min(c.prec for c in P.coeffs.values()))
            if P != src.image(i):
                canon_ok = False
        if not canon_ok:
            bad.append(str(t))
    ok = record(5, "S1", not bad and min(precs) >= 20,
                f"20 inputs reduced to (z, c, c); re-conjugation agrees to precision >= {min(precs)}")
    assert ok


def test_c05_normal_form_S0():
    case1 = Representation.from_images({-1: parse_op("z^2", SERIES), 0: parse_op("(1/2)*z*d + 1/4", SERIES),
                                        1: parse_op("(1/4)*d^2", SERIES)})
    b = C + 1
    case2 = Representation.from_images({-1: DiffOp.mult(zs), 0: DiffOp({1: zs, 0: SERIES.from_scalar(b)}, SERIES),
                                        1: DiffOp({2: zs, 1: SERIES.from_scalar(2 * b)}, SERIES)})
    case3 = Representation.from_images({-1: parse_op("1 + z", SERIES), 0: parse_op("(1 + z)*d", SERIES),
                                        1: parse_op("(1 + z)*d^2 - c*(c + 1)/(1 + z)", SERIES)})
    got = [normal_form_S0(r) for r in (case1, case2, case3)]
    ok = ([g.case for g in got] == ["case1", "case2", "case3"]
          and got[1].data["b"] == b and got[2].data["a"] == 1)
    record(5, "S0", ok, "three literal instances classified")
    assert ok


# ---------------------------------------------------------------------------
# 6. Witt_> over C[[z]]

S = SERIES.coerce


def _accepted(t):
    try:
        classify_witt_over_powerseries(t)
        return True
    except NoCanonicalForm:
        return False


def test_c06_witt_over_powerseries():
    zero, one = Scalar.coerce(0), Scalar.coerce(1)
    zinv = S("z^-1")
    accepted = [
        Triple(zinv, SERIES.from_scalar(one), zero, "R0", -one),
        Triple(zinv, SERIES.from_scalar(HALF), -HALF, "R0", -HALF),
        Triple(zinv, SERIES.zero(), zero, "R0", zero),
        Triple(zinv, SERIES.from_scalar(C + 1), C, "R0", C),
        Triple(zinv, SERIES.from_scalar(-C), C, "R0", -C - 1),
        Triple(S("1/(2 + z)"), SERIES.zero(), C, "R0", C),
        Triple(S("1/(2 + z)"), SERIES.zero(), C, "R0", -C - 1),
        Triple(S("2 + z"), SERIES.zero(), C, "R1"),
    ]
    rejected = [
        Triple(zinv, SERIES.from_scalar(-C), C, "R0", C),
        Triple(zinv, SERIES.from_scalar(C + 1), C, "R0", -C - 1),
    ]
    acc = [_accepted(t) for t in accepted]
    rej = [not _accepted(t) for t in rejected]
    try:
        classify_witt_over_powerseries(Triple(S("z^-2"), SERIES.from_scalar(QUARTER), -QUARTER, "R0", -QUARTER))
        obstruction = None
    except NoCanonicalForm as e:
        obstruction = e.details.get("obstruction", "")
    obs_ok = obstruction is not None and obstruction.startswith("(1/8*z^-1") and obstruction.endswith("*d^3")
    A = 2 * C * (2 * C * C + 3 * C + 1)
    b, lam = Scalar.param("b"), Scalar.param("lam")
    polys_ok = (obstruction_polynomials(-C, C)[0] == A
                and obstruction_polynomials(-C, -C - 1)[0] == 0
                and obstruction_polynomials(C + 1, C)[0] == 0
                and obstruction_polynomials(C + 1, -C - 1)[0] == -A
                and obstruction_polynomials(b, lam)[1] == 3 * (b * b - b - lam * lam - lam))
    ok = all(acc) and all(rej) and obs_ok and polys_ok
    record(6, "witt", ok, f"accepted {sum(acc)}/{len(acc)}, rejected {sum(rej)}/{len(rej)}, "
                         f"obstruction {obstruction}, polynomial identities {polys_ok}")
    assert ok


# ---------------------------------------------------------------------------
# 7. enveloping algebra


def test_c07_kernel():
    ok = all(kernel_check(build(t)) for family in FAMILIES for t in triples(family, 5, degree=2, seed0=7000))
    record(7, "kernel", ok, "C - (2c+1)^2 maps to 0 in all families")
    assert ok


def test_c07_witnesses():
    rng = sampling.rng(7100)
    bad = []
    for _ in range(3):
        b = RATIONAL.from_scalar(C) + sampling.random_poly(rng, RATIONAL, 3, low=1)
        r = build(Triple(z, b, C, "R1"))
        for k in range(9):
            if not verify_witness(surjectivity_witness(r, "z^k", k), r, z ** k):
                bad.append((str(b), k))
        if not verify_witness(surjectivity_witness(r, "d"), r, DiffOp.d()):
            bad.append((str(b), "d"))
    ok = record(7, "witnesses", not bad, "z^k for k <= 8 and d verified" if not bad else str(bad[:3]))
    assert ok


def test_c07_casimir_one():
    def raises(c):
        r = build(Triple(z, RATIONAL.from_scalar(c), c, "R1"))
        try:
            surjectivity_witness(r, "z^k", 2)
            return False
        except CasimirOne:
            return True

    special = [Scalar.coerce(0), Scalar.coerce(-1)]
    others = [C, Scalar.coerce(1), Scalar.coerce(-2), HALF, -HALF, Scalar.gaussian(0, 1)]
    ok = all(raises(c) for c in special) and not any(raises(c) for c in others)
    record(7, "casimir-one", ok, "CasimirOne only at c in {0, -1}")
    assert ok


# ---------------------------------------------------------------------------
# 8. cocycle

ZL = LAURENT.gen()


def _coefficients():
    return {v: pullback_coefficient(build(Triple(h, LAURENT.from_scalar(C), C, "R1"), alg=WITT))
            for v, h in ((1, ZL), (-1, ZL.inverse()))}


@pytest.mark.xfail(strict=True, reason="the first closed form has the opposite sign on the linear term")
def test_c08_first_form():
    res = _coefficients()
    ok = all(r.coefficient == -2 * (1 - 6 * C + 6 * C * C) * v for v, r in res.items())
    record(8, "first form", ok, f"computed ({render(res[1].coefficient)}) * v(h)")
    assert ok


def test_c08_second_form():
    res = _coefficients()
    ok = all(r.coefficient == (1 - 3 * (2 * C + 1) ** 2) * v for v, r in res.items())
    record(8, "second form", ok, "(1 - 3(2c+1)^2) v(h) for h = z, 1/z")
    assert ok


@pytest.mark.xfail(strict=True, reason="the two closed forms differ by 24 c v(h)")
def test_c08_forms_agree():
    first, second = printed_forms(C, 1)
    ok = first == second
    record(8, "forms agree", ok, f"difference {render(first - second)}")
    assert ok


def test_c08_central_charge():
    ok = True
    for k, ring in enumerate((RATIONAL, SERIES, LAURENT)):
        for t in triples("R1", 5, ring, 2, seed0=8000 + 100 * k):
            ok = ok and central_charge_zero_check(build(t, alg=VIR))
    record(8, "central charge", ok, "[L2, L-2] - 4 L0 vanishes for R1")
    assert ok


# ---------------------------------------------------------------------------
# 9. Weyl / Fourier


def test_c09_table():
    op = parse_op
    q = lambda s: parse_op(s, fourier_generators_ring())  # noqa: E731
    ok = (fourier_transport(op("-d")) == q("q^-1")
          and fourier_transport(op("-z*d - c")) == q("-q*dq - c + 1")
          and fourier_transport(op("-z^2*d - 2*c*z")) == q("q^3*dq^2 + 2*c*q^2*dq"))
    record(9, "table", ok, "example table reproduced")
    assert ok


def fourier_generators_ring():
    from diffreps.coeffs import LAURENT_Q

    return LAURENT_Q


HAT_B = ["c", "c + z", "c - z", "c + 2*z + z^2", "c - 3*z^2", "c + z - z^2"]


def test_c09_hat_sweep():
    bad = []
    for b in HAT_B:
        r = build_hat_rep(RATIONAL.coerce(b), C, range(-1, 9))
        for i in range(-1, 5):
            for j in range(i + 1, 5):
                if bracket(r.image(i), r.image(j)) != r.image(i + j).scale(i - j):
                    bad.append((b, i, j))
    ok = record(9, "sweep", not bad, "pairs in [-1, 4] pass for deg b <= 2 with b(0) = c")
    assert ok


@pytest.mark.xfail(strict=True, reason="constant b gives order i + 1, not i")
def test_c09_order_formula():
    bad = []
    for b, deg in (("c", 0), ("c + z", 1), ("c + 2*z + z^2", 2)):
        r = build_hat_rep(RATIONAL.coerce(b), C, range(-1, 5))
        for i in range(-1, 5):
            if r.image(i).order != deg + i:
                bad.append((deg, i, r.image(i).order))
    ok = record(9, "order", not bad, f"order != deg b + i at (deg, i, order) {bad[:3]}")
    assert ok


def test_c09_phi_prime():
    delta = Scalar.param("delta")
    t = Triple(RATIONAL.coerce("1/z"), RATIONAL.from_scalar((1 - delta) / 2), (delta - 1) / 2, "S0")
    r = weyl_rep(WeylAuto("PhiPrime", 1, -1), build(t))
    ok = (r.image(-1) == parse_op("-d + z")
          and r.image(0) == parse_op("-d^2 + z*d + (1 - delta)/2")
          and r.image(1) == parse_op("-d^3 + z*d^2 + (1 - delta)*d"))
    record(9, "dixmier", ok, "Phi'_{1,-1} example reproduced")
    assert ok


# ---------------------------------------------------------------------------
# 10. centralizer


def test_c10_centralizer():
    bad = []
    n = 0
    for family in FAMILIES:
        for t in triples(family, 2 if family in ("S1", "R1", "S0", "R0") else 1, degree=2, seed0=10000):
            n += 1
            basis = centralizer_check(build(t), 3, 6)
            if len(basis) != 1 or basis[0].order != 0 or basis[0].scalar_value() is None:
                bad.append(str(t))
    ok = record(10, "constants", not bad, f"{n} families, centralizer = constants" if not bad else str(bad[:2]))
    assert ok


# ---------------------------------------------------------------------------
# 11. companion extension


def test_c11_companion():
    bad = []
    for t in triples("R0", 10, degree=2, seed0=11000):
        res = companion_extension(build(t), 6)
        generic = (Scalar.coerce(0) in res.roots and len(res.roots) == 2 and not res.double_root
                   and all(rep["ok"] for rep in res.reports))
        half = Triple(t.h, t.b, -HALF, "R0", -HALF)
        special = companion_extension(build(half), 6).double_root
        if not (generic and special):
            bad.append(str(t))
    ok = record(11, "quadratic", not bad, "10 triples: roots {0, alpha}, double at c = -1/2, rebuilt sweeps pass"
                if not bad else str(bad[:2]))
    assert ok


# ---------------------------------------------------------------------------
# 12. intermediate series


def test_c12_intermediate_series():
    alpha, beta = Scalar.param("alpha"), Scalar.param("beta")
    r = build(Triple(ZL, LAURENT.from_scalar(beta), alpha, "R1"), alg=WITT)
    ok = all(apply(r.image(i), LAURENT.monomial(n)) == LAURENT.monomial(n + i, alpha * i + beta - n)
             for i in range(-4, 5) for n in range(-4, 5))
    record(12, "action", ok, "81 (i, n) pairs exact")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
