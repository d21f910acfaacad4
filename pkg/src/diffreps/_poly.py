"""Thin layer over flint multivariate polynomials.

All polynomials live in a context whose generators are ``("z", "I", *params)``:
``z`` is the coefficient-ring variable, ``I`` the Gaussian unit (reduced modulo
``I**2 + 1`` after every product) and ``params`` the formal constants in order
of first use.  Contexts are cached by flint, so identity comparison is cheap.
"""

from __future__ import annotations

from fractions import Fraction

import flint
from flint.utils.flint_exceptions import DomainError

Z, I = 0, 1
BASE_NAMES = ("z", "I")
RESERVED = frozenset({"z", "q", "d", "dq", "i", "I", "O"})


def context(params=()):
    return flint.fmpq_mpoly_ctx.get(BASE_NAMES + tuple(params))


def params_of(ctx):
    return tuple(ctx.names()[2:])


def lift(p, ctx):
    """Re-express ``p`` in the (larger) context ``ctx``."""
    if p.context() is ctx:
        return p
    return p.project_to_context(ctx)


def union_context(c1, c2):
    if c1 is c2:
        return c1
    p1, p2 = params_of(c1), params_of(c2)
    merged = p1 + tuple(n for n in p2 if n not in p1)
    if merged == p1:
        return c1
    if merged == p2:
        return c2
    return context(merged)


def align(*polys):
    """Lift all polynomials into a common context."""
    ctx = polys[0].context()
    for p in polys[1:]:
        ctx = union_context(ctx, p.context())
    return [lift(p, ctx) for p in polys]


def to_fmpq(x):
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return flint.fmpq(x)
    raise TypeError(f"not a rational number: {x!r}")


def const(x, ctx=None):
    ctx = ctx or context()
    return ctx.constant(to_fmpq(x))


def reduce_i(p):
    """Reduce modulo ``I**2 + 1``."""
    if p.degrees()[I] < 2:
        return p
    out = {}
    for mon, coef in p.to_dict().items():
        e = mon[I]
        if e >= 2:
            coef = -coef if (e // 2) % 2 else coef
            mon = mon[:I] + (e % 2,) + mon[I + 1:]
        out[mon] = out.get(mon, 0) + coef
    return p.context().from_dict({m: c for m, c in out.items() if c != 0})


def mul(p, q):
    r = p * q
    if p.degrees()[I] and q.degrees()[I]:
        r = reduce_i(r)
    return r


def pow_(p, n):
    if n == 0:
        return p.context().constant(1)
    r = p ** n
    if p.degrees()[I]:
        r = reduce_i(r)
    return r


def conj(p):
    """Complex conjugate (``I -> -I``); parameters are treated as formal."""
    if not p.degrees()[I]:
        return p
    ctx = p.context()
    return ctx.from_dict({m: (-c if m[I] % 2 else c) for m, c in p.to_dict().items()})


def has_i(p):
    return p.degrees()[I] > 0


def rationalize(num, den):
    """Make the denominator I-free by multiplying through by its conjugate."""
    if not has_i(den):
        return num, den
    cd = conj(den)
    return reduce_i(num * cd), reduce_i(den * cd)


def is_z_free(p):
    return p.degrees()[Z] <= 0


def zdeg(p):
    return p.degrees()[Z] if not p.is_zero() else -1


def zval(p):
    """Lowest power of ``z`` occurring in ``p`` (``p`` nonzero)."""
    return min(m[Z] for m in p.monoms())


def zsplit(p):
    """Dict ``k -> coefficient of z**k`` (coefficients are z-free polys)."""
    out = {}
    for mon, coef in p.to_dict().items():
        k = int(mon[Z])
        out.setdefault(k, {})[(0,) + mon[1:]] = coef
    ctx = p.context()
    return {k: ctx.from_dict(d) for k, d in out.items()}


def zjoin(parts, ctx):
    """Inverse of :func:`zsplit`; ``parts`` maps exponents (>= 0) to z-free polys."""
    out = {}
    for k, poly in parts.items():
        for mon, coef in lift(poly, ctx).to_dict().items():
            out[(k,) + mon[1:]] = coef
    return ctx.from_dict(out)


def zcoeff(p, k):
    out = {}
    for mon, coef in p.to_dict().items():
        if mon[Z] == k:
            out[(0,) + mon[1:]] = coef
    return p.context().from_dict(out)


def truncate(p, n):
    """Drop every term of z-degree >= n."""
    if p.is_zero() or zdeg(p) < n:
        return p
    return p.context().from_dict({m: c for m, c in p.to_dict().items() if m[Z] < n})


def shift_z(p, k):
    """Multiply by ``z**k`` for k >= 0, or divide exactly by ``z**-k``."""
    if k == 0 or p.is_zero():
        return p
    return p.context().from_dict(
        {(m[Z] + k,) + m[1:]: c for m, c in p.to_dict().items()}
    )


def zgen(ctx):
    return ctx.gen(Z)


def monic(p):
    """Scale so that the leading coefficient (lex order) is 1."""
    lc = p.leading_coefficient()
    return p / lc if lc != 1 else p



def derivative(p):
    return p.derivative(Z)


def evaluate_params(p, values):
    """Substitute rational values for named parameters."""
    vals = {k: to_fmpq(v) for k, v in values.items() if k in p.context().names()}
    if not vals:
        return p
    return p.subs(vals)


def icoeff(p, k):
    """Coefficient of ``I**k`` (k in {0, 1}) of an I-reduced polynomial."""
    return p.context().from_dict(
        {m[:I] + (0,) + m[I + 1:]: c for m, c in p.to_dict().items() if m[I] == k}
    )


def try_sqrt(p):
    try:
        return p.sqrt()
    except DomainError:
        return None


def try_div(a, b):
    """Exact quotient ``a / b`` or None."""
    try:
        return a / b
    except DomainError:
        return None
