from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from diffreps.coeffs import LAURENT, RATIONAL
from diffreps.diffop import DiffOp
from diffreps.scalar import Scalar

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")

C = Scalar.param("c")

small = st.integers(-4, 4)


@st.composite
def gaussians(draw):
    re = Fraction(draw(small), draw(st.integers(1, 3)))
    im = Fraction(draw(small), draw(st.integers(1, 3))) if draw(st.booleans()) else 0
    return Scalar.gaussian(re, im)


@st.composite
def scalars(draw, params=True):
    s = draw(gaussians())
    if params and draw(st.booleans()):
        s = s + draw(small) * C + draw(small) * C * C
    return s


@st.composite
def nonzero_scalars(draw, params=True):
    s = draw(scalars(params))
    assume(not s.is_zero())
    return s


@st.composite
def polys(draw, ring=RATIONAL, max_deg=3, low=0, params=True):
    f = ring.zero()
    for k in range(low, max_deg + 1):
        if draw(st.booleans()):
            f = f + ring.monomial(k, draw(scalars(params)))
    return f


@st.composite
def nonzero_polys(draw, ring=RATIONAL, max_deg=3, low=0, params=True):
    f = draw(polys(ring, max_deg, low, params))
    assume(not f.is_zero())
    return f


@st.composite
def rationals(draw, max_deg=2, params=False):
    num = draw(polys(RATIONAL, max_deg, params=params))
    den = draw(nonzero_polys(RATIONAL, max_deg, params=params))
    return num / den


@st.composite
def ops(draw, ring=RATIONAL, max_order=2, max_deg=3, low=0, params=True):
    coeffs = {}
    for j in range(max_order + 1):
        if draw(st.booleans()):
            coeffs[j] = draw(polys(ring, max_deg, low, params))
    return DiffOp(coeffs, ring)


@pytest.fixture
def z():
    return RATIONAL.gen()


@pytest.fixture
def zl():
    return LAURENT.gen()


# -- acceptance summary -----------------------------------------------------

# criterion number -> list of (check name, ok, detail)
ACCEPTANCE = {}


def record(criterion, check, ok, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((check, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[k]
        ok = all(c[1] for c in checks)
        bad = [f"{name}: {detail}" for name, good, detail in checks if not good]
        note = "; ".join(bad) if bad else "; ".join(d for _, _, d in checks if d)
        tr.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {note}")
