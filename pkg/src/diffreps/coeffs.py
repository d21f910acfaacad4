"""Coefficient rings: C(z), C[z, 1/z] and truncated C((z)).

Rational functions are stored as ``num / base**exp`` where ``base`` is a shared,
interned polynomial free of ``I``.  Sharing the base keeps sums and products of
related functions (the typical situation: everything is built from one ``h`` and
one ``b``) free of polynomial gcds; fractions are only reduced for display,
hashing and membership questions.
"""

from __future__ import annotations

import weakref
from fractions import Fraction

import flint

from . import _poly as P
from .errors import (
    DivisionByZero,
    InsufficientPrecision,
    NotInvertible,
    RingMismatch,
    ZeroElement,
)
from .scalar import Scalar

DEFAULT_PREC = 24
MIN_ORDER = 4


# ---------------------------------------------------------------------------
# shared denominators


class Base:
    """An interned monic polynomial used as a common denominator."""

    __slots__ = ("poly", "ctx", "zfree", "_d", "_pow", "_merge", "__weakref__")
    _interned = weakref.WeakValueDictionary()

    def __init__(self, poly):
        self.poly = poly
        self.ctx = poly.context()
        self.zfree = P.is_z_free(poly)
        self._d = None
        self._pow = [poly.context().constant(1), poly]
        self._merge = {}

    @classmethod
    def of(cls, poly):
        key = (poly.context().names(), str(poly))
        b = cls._interned.get(key)
        if b is None:
            b = cls(poly)
            cls._interned[key] = b
        return b

    @classmethod
    def one(cls, ctx):
        return cls.of(ctx.constant(1))

    def is_one(self):
        return self.poly.is_one()

    def deriv(self):
        if self._d is None:
            self._d = P.derivative(self.poly)
        return self._d

    def pow(self, k):
        pw = self._pow
        while len(pw) <= k:
            pw.append(pw[-1] * self.poly)
        return pw[k]

    def lift(self, ctx):
        if self.ctx is ctx:
            return self
        return Base.of(P.lift(self.poly, ctx))

    def merge(self, other):
        """``(m, u, w)`` with ``self*u == other*w == m`` (an lcm)."""
        hit = self._merge.get(id(other))
        if hit is not None and hit[0] is other:
            return hit[1]
        if self.is_one():
            res = (other, _Mult(other.poly), _Mult(other.ctx.constant(1)))
        elif other.is_one():
            res = (self, _Mult(self.ctx.constant(1)), _Mult(self.poly))
        else:
            g = self.poly.gcd(other.poly)
            u = other.poly / g
            w = self.poly / g
            res = (Base.of(P.monic(self.poly * u)), _Mult(u), _Mult(w))
        self._merge[id(other)] = (other, res)
        return res


class _Mult:
    __slots__ = ("poly", "_pow")

    def __init__(self, poly):
        self.poly = poly
        self._pow = [poly.context().constant(1), poly]

    def pow(self, k):
        pw = self._pow
        while len(pw) <= k:
            pw.append(pw[-1] * self.poly)
        return pw[k]


def _ctx_of(*objs):
    ctx = None
    for o in objs:
        c = o.context() if hasattr(o, "context") else o.ctx
        ctx = c if ctx is None else P.union_context(ctx, c)
    return ctx


def _common(n1, b1, e1, n2, b2, e2):
    """Bring two fractions over one base; returns ``(n1, e1, n2, e2, base)``."""
    ctx = n1.context()
    if not (n2.context() is ctx and b1.ctx is ctx and b2.ctx is ctx):
        ctx = _ctx_of(n1, n2, b1, b2)
        n1, n2 = P.lift(n1, ctx), P.lift(n2, ctx)
        b1, b2 = b1.lift(ctx), b2.lift(ctx)
    if b1 is b2:
        return n1, e1, n2, e2, b1
    m, u, w = b1.merge(b2)
    if e1:
        n1 = n1 * u.pow(e1)
    if e2:
        n2 = n2 * w.pow(e2)
    return n1, e1, n2, e2, m


def _frac_from(num, den):
    """Normalise ``num/den`` (polys) to ``(num, base, exp)``."""
    num, den = P.align(num, den)
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    num, den = P.rationalize(P.reduce_i(num), den)
    if num.is_zero():
        return num, Base.one(num.context()), 0
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    if den.is_one():
        return num, Base.one(den.context()), 0
    return num, Base.of(den), 1


def _add(x, y, sign=1):
    n1, e1, n2, e2, b = _common(*x, *y)
    if sign < 0:
        n2 = -n2
    if e1 == e2:
        n = n1 + n2
        e = e1
    elif e1 < e2:
        n = n1 * b.pow(e2 - e1) + n2
        e = e2
    else:
        n = n1 + n2 * b.pow(e1 - e2)
        e = e1
    if n.is_zero():
        return n, Base.one(n.context()), 0
    return n, b, e


def _mul(x, y):
    n1, e1, n2, e2, b = _common(*x, *y)
    n = P.mul(n1, n2)
    if n.is_zero():
        return n, Base.one(n.context()), 0
    return n, b, (e1 + e2 if not b.is_one() else 0)


def _deriv(x):
    n, b, e = x
    dn = P.derivative(n)
    if e == 0 or b.zfree:
        if dn.is_zero():
            return dn, Base.one(dn.context()), 0
        return dn, b, e
    ctx = n.context()
    if b.ctx is not ctx:
        ctx = _ctx_of(n, b)
        n, dn, b = P.lift(n, ctx), P.lift(dn, ctx), b.lift(ctx)
    r = dn * b.poly - e * n * b.deriv()
    if r.is_zero():
        return r, Base.one(ctx), 0
    return r, b, e + 1


def _reduce(x):
    """Lowest-terms ``(num, den)`` with monic I-free denominator."""
    n, b, e = x
    if e == 0 or n.is_zero():
        return n, n.context().constant(1)
    n, d = P.align(n, b.pow(e))
    g = n.gcd(d)
    if not g.is_one():
        n, d = n / g, d / g
    lc = d.leading_coefficient()
    if lc != 1:
        n, d = n / lc, d / lc
    return n, d


def _scalar_frac(s):
    if s.den.is_one():
        return s.num, Base.one(s.num.context()), 0
    return s.num, Base.of(s.den), 1


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Parent object for coefficient elements.

    ``kind`` is ``"rational"`` (C(z)), ``"laurent"`` (C[z, 1/z]) or ``"series"``
    (truncated C((z))); ``var`` is the display name of the variable.
    """

    __slots__ = ("kind", "var", "prec")

    def __init__(self, kind, var="z", prec=DEFAULT_PREC):
        if kind not in ("rational", "laurent", "series"):
            raise ValueError(f"unknown ring kind {kind!r}")
        self.kind = kind
        self.var = var
        self.prec = prec

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.var) == (other.kind, other.var)

    def __hash__(self):
        return hash((self.kind, self.var))

    @property
    def tag(self):
        if self.kind == "rational":
            return f"C({self.var})"
        if self.kind == "laurent":
            return f"C[{self.var},1/{self.var}]"
        return f"C(({self.var}))"

    def __repr__(self):
        if self.kind == "series":
            return f"Ring(series, {self.var}, prec={self.prec})"
        return f"Ring({self.kind}, {self.var})"

    def with_prec(self, prec):
        return Ring(self.kind, self.var, prec)

    # element constructors
    def from_poly(self, num, den=None):
        if den is None:
            den = num.context().constant(1)
        if self.kind == "series":
            return LaurentSeries.from_frac(_frac_from(num, den), self, self.prec)
        cls = LaurentPoly if self.kind == "laurent" else RatFunc
        return cls._checked(_frac_from(num, den), self)

    def from_scalar(self, s):
        s = Scalar.coerce(s)
        if self.kind == "series":
            return LaurentSeries.from_frac(_scalar_frac(s), self, self.prec)
        cls = LaurentPoly if self.kind == "laurent" else RatFunc
        return cls(*_scalar_frac(s), self)

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, CoeffElem):
            if x.ring == self:
                return x
            if self.kind == "series":
                if x.ring.var != self.var:
                    raise RingMismatch(f"cannot convert {x.ring.tag} element to {self.tag}")
                return x.to_series(self.prec)
            if self.kind == "rational" and x.ring.kind == "laurent" and x.ring.var == self.var:
                return RatFunc(x.num, x.base, x.exp, self)
            if self.kind == "laurent" and x.ring.kind == "rational" and x.ring.var == self.var:
                return LaurentPoly._checked((x.num, x.base, x.exp), self)
            raise RingMismatch(f"cannot convert {x.ring.tag} element to {self.tag}")
        if isinstance(x, str):
            from .parse import parse_coeff

            return parse_coeff(x, self)
        return self.from_scalar(x)

    def gen(self):
        ctx = P.context()
        return self.from_poly(ctx.gen(P.Z))

    def zero(self):
        return self.from_scalar(0)

    def one(self):
        return self.from_scalar(1)

    def monomial(self, k, coef=1):
        """``coef * var**k`` for any integer k."""
        ctx = P.context()
        z = ctx.gen(P.Z)
        c = self.from_scalar(coef)
        if k >= 0:
            return c * self.from_poly(z ** k)
        if self.kind == "series":
            return c * LaurentSeries(ctx.constant(1), Base.one(ctx), 0, k, self.prec, self)
        return c * self.from_poly(ctx.constant(1), z ** (-k))


RATIONAL = Ring("rational")
LAURENT = Ring("laurent")
LAURENT_Q = Ring("laurent", "q")
RATIONAL_Q = Ring("rational", "q")


def series_ring(prec=DEFAULT_PREC, var="z"):
    return Ring("series", var, prec)


SERIES = series_ring()


# ---------------------------------------------------------------------------
# elements


class CoeffElem:
    """Common interface of the coefficient rings."""

    __slots__ = ()

    def _check_ring(self, other):
        if isinstance(other, CoeffElem):
            if other.ring != self.ring:
                raise RingMismatch(
                    f"ring mismatch: {self.ring.tag} vs {other.ring.tag}",
                    left=self.ring.tag,
                    right=other.ring.tag,
                )
            return other
        if isinstance(other, (int, Fraction, Scalar, flint.fmpq, complex)):
            return self.ring.from_scalar(other)
        return None

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return (-self) + other

    def __rmul__(self, other):
        return self * other

    def __rtruediv__(self, other):
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        return o / self

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __str__(self):
        from .parse import render

        return render(self)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def derive(self, n=1):
        f = self
        for _ in range(n):
            f = f.derivative()
        return f

    def scalar_value(self):
        """The element as a Scalar if it does not depend on the variable, else None."""
        raise NotImplementedError


class RatFunc(CoeffElem):
    """Element of C(z): ``num / base**exp``."""

    __slots__ = ("num", "base", "exp", "ring", "_red")

    def __init__(self, num, base, exp, ring=RATIONAL):
        self.num = num
        self.base = base
        self.exp = exp
        self.ring = ring
        self._red = None

    @classmethod
    def _checked(cls, frac, ring):
        return cls(*frac, ring)

    def _new(self, frac):
        return type(self)(*frac, self.ring)

    def _frac(self):
        return self.num, self.base, self.exp

    # arithmetic
    def __add__(self, other):
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        return self._new(_add(self._frac(), o._frac()))

    def __sub__(self, other):
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        return self._new(_add(self._frac(), o._frac(), -1))

    def __neg__(self):
        return type(self)(-self.num, self.base, self.exp, self.ring)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.ring.zero()
            return type(self)(self.num * other, self.base, self.exp, self.ring)
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        return self._new(_mul(self._frac(), o._frac()))

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero")
        n, d = self.reduced()
        return self._checked(_frac_from(d, n), self.ring)

    def __truediv__(self, other):
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero")
        if o.exp == 0 and P.is_z_free(o.num):
            return self * self.ring.from_scalar(Scalar(o.num).inverse())
        n, d = o.reduced()
        return self._checked(_mul(self._frac(), _frac_from(d, n)), self.ring)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.ring.one()
        if self.exp == 0:
            return type(self)(P.pow_(self.num, k), self.base, 0, self.ring)
        return type(self)(P.pow_(self.num, k), self.base, self.exp * k, self.ring)

    def derivative(self):
        return self._new(_deriv(self._frac()))

    # predicates
    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        try:
            o = self._check_ring(other)
        except RingMismatch:
            return False
        if o is None:
            return NotImplemented
        return _add(self._frac(), o._frac(), -1)[0].is_zero()

    def __hash__(self):
        n, d = self.reduced()
        return hash((self.ring, str(n), str(d)))

    def reduced(self):
        """``(num, den)`` polynomials in lowest terms, den monic and I-free."""
        if self._red is None:
            self._red = _reduce(self._frac())
        return self._red

    def numerator(self):
        return self.reduced()[0]

    def denominator(self):
        return self.reduced()[1]

    def valuation(self):
        if self.is_zero():
            raise ZeroElement("valuation of zero")
        v = P.zval(self.num)
        if self.exp:
            v -= self.exp * P.zval(self.base.poly)
        return v

    def is_polynomial(self):
        return P.is_z_free(self.denominator())

    def is_laurent(self):
        return len(self.denominator()) == 1

    def scalar_value(self):
        n, d = self.reduced()
        if P.is_z_free(n) and P.is_z_free(d):
            return Scalar(n, d)
        return None

    def is_constant(self):
        return self.scalar_value() is not None

    def membership(self, which):
        return membership(self, which)

    def value_at_zero(self):
        """f(0) for f regular at 0."""
        n, d = self.reduced()
        d0 = P.zcoeff(d, 0)
        if d0.is_zero():
            raise DivisionByZero("function has a pole at 0")
        return Scalar(P.zcoeff(n, 0), d0)

    def coefficient(self, k):
        """Coefficient of ``z**k`` of a Laurent polynomial."""
        return self.laurent_terms().get(k, Scalar.coerce(0))

    def laurent_terms(self):
        """``{k: Scalar}`` for a Laurent polynomial."""
        n, d = self.reduced()
        if len(d) != 1:
            raise ValueError("not a Laurent polynomial")
        v = P.zdeg(d)
        dc = P.zcoeff(d, v)
        return {k - v: Scalar(c, dc) for k, c in sorted(P.zsplit(n).items())}

    def degree(self):
        """deg(num) - deg(den)."""
        n, d = self.reduced()
        return P.zdeg(n) - P.zdeg(d)

    def params(self):
        names = set()
        for p in self.reduced():
            ns = p.context().names()
            for k, dgr in enumerate(p.degrees()):
                if k >= 2 and dgr:
                    names.add(ns[k])
        return tuple(sorted(names))

    # conversions
    def to_series(self, prec=DEFAULT_PREC):
        ring = Ring("series", self.ring.var, prec)
        return LaurentSeries.from_frac(self._frac(), ring, prec)

    def as_rational(self):
        return RatFunc(self.num, self.base, self.exp, Ring("rational", self.ring.var))

    def subs(self, values):
        """Substitute scalar values for parameters."""
        n, d = self.reduced()
        return _subs_z_poly(n, values, self.ring) / _subs_z_poly(d, values, self.ring)

    def compose(self, phi):
        """``f(phi(z))`` for phi in the same ring."""
        phi = self._check_ring(phi)
        n, d = self.reduced()
        return _horner(n, phi) / _horner(d, phi)

    def conj_i(self):
        """Conjugate ``I -> -I`` on coefficients."""
        return self._new((P.conj(self.num), self.base, self.exp))


class LaurentPoly(RatFunc):
    """Element of C[z, 1/z]; same storage as RatFunc with a power of z as base."""

    __slots__ = ()

    @classmethod
    def _checked(cls, frac, ring):
        el = cls(*frac, ring)
        if el.is_zero():
            return el
        if not el.is_laurent():
            raise NotInvertible("result is not a Laurent polynomial", value=str(el.as_rational()))
        if el.exp and len(el.base.poly) != 1:
            el = cls(*_frac_from(*el.reduced()), ring)
        return el


def _horner(poly, phi):
    ring = phi.ring
    parts = P.zsplit(poly)
    if not parts:
        return ring.zero()
    acc = ring.zero()
    for k in range(max(parts), -1, -1):
        acc = acc * phi
        if k in parts:
            acc = acc + ring.from_poly(parts[k])
    return acc


def _subs_z_poly(poly, values, ring):
    acc = ring.zero()
    z = ring.gen()
    for k, c in sorted(P.zsplit(poly).items()):
        acc = acc + ring.from_scalar(Scalar(c).subs(values)) * z ** int(k)
    return acc


# ---------------------------------------------------------------------------
# truncated Laurent series


def _inv_series(poly, r):
    """1/poly modulo z**r for poly with nonzero, I-free constant term.

    Returns ``(M, n0)`` with ``1/poly = M / n0**r + O(z**r)``.
    """
    ctx = poly.context()
    parts = P.zsplit(poly)
    n0 = parts[0]
    n = [parts.get(j, ctx.constant(0)) for j in range(r)]
    n0pow = [ctx.constant(1)]
    for _ in range(r):
        n0pow.append(n0pow[-1] * n0)
    # c_k = C_k / n0**(k+1)
    C = [ctx.constant(1)]
    for k in range(1, r):
        acc = ctx.constant(0)
        for j in range(1, k + 1):
            if not n[j].is_zero():
                acc = acc + P.mul(n[j], C[k - j]) * n0pow[j - 1]
        C.append(-acc)
    z = ctx.gen(P.Z)
    M = ctx.constant(0)
    for k in range(r):
        if not C[k].is_zero():
            M = M + C[k] * n0pow[r - 1 - k] * z ** k
    return M, n0


class LaurentSeries(CoeffElem):
    """Truncated Laurent series ``z**val * num / base**exp + O(z**prec)``.

    ``num`` is a polynomial in z with nonzero constant term (or zero), ``base``
    a z-free shared denominator.  Only terms below ``prec`` are meaningful.
    """

    __slots__ = ("num", "base", "exp", "val", "prec", "ring")

    def __init__(self, num, base, exp, val, prec, ring):
        if num.is_zero():
            val = prec
            base, exp = Base.one(num.context()), 0
        else:
            s = P.zval(num)
            if s:
                num = P.shift_z(num, -s)
                val += s
            if val >= prec:
                num = num.context().constant(0)
                val = prec
                base, exp = Base.one(num.context()), 0
            else:
                num = P.truncate(num, prec - val)
        self.num = num
        self.base = base
        self.exp = exp
        self.val = int(val)
        self.prec = int(prec)
        self.ring = ring

    @classmethod
    def from_frac(cls, frac, ring, prec):
        n, b, e = frac
        if n.is_zero():
            return cls(n, b, 0, prec, prec, ring)
        if e == 0 or b.zfree:
            return cls(n, b, e, 0, prec, ring)
        # split the z-dependent base as z**k * b0 with b0(0) != 0
        bp = b.poly
        k = P.zval(bp)
        b0 = P.shift_z(bp, -k)
        nv = P.zval(n)
        v = nv - e * k
        r = prec - v
        if r <= 0:
            return cls(n.context().constant(0), Base.one(n.context()), 0, prec, prec, ring)
        M, n0 = _inv_series(b0 ** e, r)
        num = P.truncate(P.mul(*P.align(P.shift_z(n, -nv), M)), r)
        num, d0 = P.align(num, n0)
        lc = d0.leading_coefficient()
        num = num / (lc ** r)
        if d0.is_constant():
            return cls(num, Base.one(num.context()), 0, v, prec, ring)
        return cls(num, Base.of(P.monic(d0)), r, v, prec, ring)

    def _new(self, num, base, exp, val, prec):
        return LaurentSeries(num, base, exp, val, prec, self.ring)

    def _frac(self):
        return self.num, self.base, self.exp

    # arithmetic
    def __add__(self, other, sign=1):
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        v = min(self.val, o.val)
        a = P.shift_z(self.num, self.val - v) if self.val > v else self.num
        b = P.shift_z(o.num, o.val - v) if o.val > v else o.num
        n, base, e = _add((a, self.base, self.exp), (b, o.base, o.exp), sign)
        return self._new(n, base, e, v, prec)

    def __sub__(self, other):
        return self.__add__(other, -1)

    def __neg__(self):
        return self._new(-self.num, self.base, self.exp, self.val, self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new(self.num * other, self.base, self.exp, self.val, self.prec)
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec + o.val, o.prec + self.val)
        v = self.val + o.val
        r = prec - v
        if r <= 0:
            ctx = _ctx_of(self.num, o.num)
            return self._new(ctx.constant(0), Base.one(ctx), 0, prec, prec)
        a = P.truncate(self.num, r)
        b = P.truncate(o.num, r)
        n, base, e = _mul((a, self.base, self.exp), (b, o.base, o.exp))
        return self._new(P.truncate(n, r), base, e, v, prec)

    def inverse(self):
        if self.num.is_zero():
            raise InsufficientPrecision(
                "cannot invert a series whose known coefficients vanish", prec=self.prec
            )
        r = self.prec - self.val
        n0 = P.zcoeff(self.num, 0)
        num = self.num
        scale = None
        if P.has_i(n0):
            scale = P.conj(n0)
            num = P.truncate(P.mul(num, scale), r)
        M, d0 = _inv_series(num, r)
        if scale is not None:
            M = P.truncate(P.mul(M, scale), r)
        # result = base**exp * M / d0**r * z**(-val)
        top = P.mul(*P.align(M, self.base.pow(self.exp))) if self.exp else M
        n, b, e = _frac_from(top, d0 ** r)
        return self._new(n, b, e, -self.val, self.prec - 2 * self.val)

    def __truediv__(self, other):
        o = self._check_ring(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        ctx = self.num.context()
        acc = self._new(ctx.constant(1), Base.one(ctx), 0, 0, self.prec)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def derivative(self):
        # d/dz (z^v N) = z^(v-1) (v N + z N')
        n = self.num * self.val + P.shift_z(P.derivative(self.num), 1)
        return self._new(n, self.base, self.exp, self.val - 1, self.prec - 1)

    # predicates
    def is_zero(self, order=MIN_ORDER):
        if not self.num.is_zero():
            return False
        if self.prec < order:
            raise InsufficientPrecision(
                "all known coefficients vanish but precision is too low", prec=self.prec
            )
        return True

    def __eq__(self, other):
        try:
            o = self._check_ring(other)
        except RingMismatch:
            return False
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def valuation(self):
        if self.num.is_zero():
            raise InsufficientPrecision("all known coefficients vanish", prec=self.prec)
        return self.val

    def coefficient(self, k):
        if k >= self.prec:
            raise InsufficientPrecision(f"coefficient of z^{k} is beyond the precision", prec=self.prec)
        if k < self.val:
            return Scalar.coerce(0)
        c = P.zcoeff(self.num, k - self.val)
        return Scalar(c, self.base.pow(self.exp))

    def terms(self):
        """``{k: Scalar}`` for the known nonzero coefficients."""
        d = self.base.pow(self.exp)
        return {k + self.val: Scalar(c, d) for k, c in sorted(P.zsplit(self.num).items())}

    def value_at_zero(self):
        if self.val < 0:
            raise DivisionByZero("series has a pole at 0")
        return self.coefficient(0)

    def scalar_value(self):
        if self.num.is_zero():
            return Scalar.coerce(0)
        if self.val == 0 and P.is_z_free(self.num):
            return Scalar(self.num, self.base.pow(self.exp))
        return None

    def membership(self, which):
        return membership(self, which)

    def to_series(self, prec=None):
        if prec is None or prec == self.prec:
            return self
        return self._new(self.num, self.base, self.exp, self.val, min(prec, self.prec))

    def truncate(self, prec):
        return self._new(self.num, self.base, self.exp, self.val, min(prec, self.prec))

    def subs(self, values):
        acc = self.ring.zero().truncate(self.prec)
        for k, c in self.terms().items():
            acc = acc + self.ring.monomial(k, c.subs(values))
        return acc.truncate(self.prec)

    def compose(self, phi):
        """``f(phi(z))`` for phi with positive valuation."""
        phi = self._check_ring(phi)
        if phi.valuation() <= 0:
            raise DivisionByZero("substituted series must have positive valuation")
        acc = self.ring.zero()
        d = self.base.pow(self.exp)
        parts = P.zsplit(self.num)
        for k in range(max(parts, default=0), -1, -1):
            acc = acc * phi
            if k in parts:
                acc = acc + self.ring.from_scalar(Scalar(parts[k], d))
        if self.val:
            acc = acc * phi ** self.val
        # precision: f known to O(z^prec) gives f(phi) known to O(z^(prec*nu(phi)))
        return acc.truncate(self.prec * phi.valuation() if self.prec > 0 else self.prec)

    def conj_i(self):
        return self._new(P.conj(self.num), self.base, self.exp, self.val, self.prec)

    def params(self):
        names = set()
        for p in (self.num, self.base.poly):
            ns = p.context().names()
            for k, dgr in enumerate(p.degrees()):
                if k >= 2 and dgr:
                    names.add(ns[k])
        return tuple(sorted(names))


# ---------------------------------------------------------------------------
# module-level operations


def derive(f):
    return f.derivative()


def valuation(f):
    return f.valuation()


def membership(f, which):
    """Is ``f`` in C[[z]], C[z] or C[z,1/z]?"""
    which = which.replace(" ", "").replace("⁻¹", "^-1").replace("z^-1", "1/z")
    if isinstance(f, LaurentSeries):
        if which == "C[[z]]":
            if f.num.is_zero():
                f.is_zero()
                return True
            return f.val >= 0
        raise ValueError(f"membership in {which} is not decidable for a truncated series")
    if f.is_zero():
        return True
    n, d = f.reduced()
    if which == "C[[z]]":
        return not P.zcoeff(d, 0).is_zero()
    if which == "C[z]":
        return P.is_z_free(d)
    if which in ("C[z,1/z]", "C[z,z^-1]"):
        return len(d) == 1
    raise ValueError(f"unknown ring {which!r}")
