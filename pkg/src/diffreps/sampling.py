"""Random triples for sweeps, property tests and demos."""

from __future__ import annotations

import random

from .coeffs import LAURENT, RATIONAL, Ring
from .reps import Triple
from .scalar import Scalar


def _coef(rng, lo=-3, hi=3, nonzero=False):
    while True:
        v = rng.randint(lo, hi)
        if v or not nonzero:
            return v


def random_poly(rng, ring, degree, low=0):
    z = ring.gen()
    acc = ring.zero()
    for k in range(low, degree + 1):
        c = _coef(rng)
        if c:
            acc = acc + ring.monomial(k, c)
    return acc


def random_rational(rng, ring=RATIONAL, degree=3):
    """A random ``p/q`` with ``deg p, deg q <= degree`` and small integer coefficients."""
    while True:
        num = random_poly(rng, ring, rng.randint(0, degree))
        den = random_poly(rng, ring, rng.randint(0, degree))
        if not num.is_zero() and not den.is_zero():
            return num / den


def random_h(rng, ring=RATIONAL, degree=3):
    """Random h with ``h' != 0``; over Laurent polynomials h is an invertible monomial."""
    if ring.kind == "laurent":
        k = rng.choice([-3, -2, -1, 1, 2, 3])
        return ring.monomial(k, _coef(rng, nonzero=True))
    while True:
        if ring.kind == "series":
            h = random_rational(rng, RATIONAL, degree).to_series(ring.prec)
        else:
            h = random_rational(rng, ring, degree)
        try:
            if not h.derivative().is_zero():
                return h
        except Exception:  # undecidable at this precision; draw again
            continue


def random_b(rng, ring=RATIONAL, degree=3):
    if ring.kind == "laurent":
        return random_poly(rng, ring, degree, low=-degree)
    if ring.kind == "series":
        return random_rational(rng, RATIONAL, degree).to_series(ring.prec)
    return random_rational(rng, ring, degree)


def random_triple(rng, family, ring=RATIONAL, degree=3, c="c"):
    """Random triple of the given family with (by default) formal c."""
    h = random_h(rng, ring, degree)
    b = random_b(rng, ring, degree)
    c = Scalar.coerce(c)
    lam = None
    if family in ("R0", "R2"):
        lam = rng.choice([c, -c - 1])
    return Triple(h, b, c, family, lam)


def rng(seed=0):
    return random.Random(seed)


__all__ = ["random_b", "random_h", "random_poly", "random_rational", "random_triple", "rng", "Ring"]
