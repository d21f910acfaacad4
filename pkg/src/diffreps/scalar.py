"""Exact scalars: the field Q(i) adjoined with finitely many formal parameters."""

from __future__ import annotations

from fractions import Fraction

import flint

from . import _poly as P
from .errors import DivisionByZero, RootNotInField


class Scalar:
    """A quotient ``num/den`` of polynomials in ``I`` and the parameters.

    The denominator is kept free of ``I`` and monic, and common factors are
    cancelled, so equal scalars have equal representations.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = num.context().constant(1)
        if not _canonical:
            num, den = P.align(num, den)
            if den.is_zero():
                raise DivisionByZero("zero denominator")
            num, den = P.rationalize(P.reduce_i(num), den)
            if num.is_zero():
                den = num.context().constant(1)
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num, den = num / g, den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num, den = num / lc, den / lc
        self.num = num
        self.den = den
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, flint.fmpz):
            x = int(x)
        if isinstance(x, (int, Fraction, flint.fmpq)):
            return cls(P.const(x), _canonical=True)
        if isinstance(x, complex):
            re, im = Fraction(x.real), Fraction(x.imag)
            return cls.coerce(re) + cls.coerce(im) * I_UNIT
        if isinstance(x, str):
            from .parse import parse_scalar

            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @classmethod
    def param(cls, name):
        ctx = P.context((name,))
        return cls(ctx.gen(2), _canonical=True)

    @classmethod
    def gaussian(cls, re, im=0):
        return cls.coerce(Fraction(re)) + cls.coerce(Fraction(im)) * I_UNIT

    # queries ------------------------------------------------------------
    @property
    def params(self):
        used = set()
        for p in (self.num, self.den):
            names = p.context().names()
            for k, d in enumerate(p.degrees()):
                if d and k >= 2:
                    used.add(names[k])
        return tuple(n for n in P.params_of(self.num.context()) if n in used)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_numeric(self):
        return not self.params

    def is_rational(self):
        return self.is_numeric() and not P.has_i(self.num)

    def parts(self):
        """``(re, im)`` as Fractions; only for numeric scalars."""
        if not self.is_numeric():
            raise ValueError("scalar depends on parameters")
        d = self.den.leading_coefficient()
        re = im = Fraction(0)
        for mon, coef in self.num.to_dict().items():
            v = Fraction(int(coef.p), int(coef.q))
            if mon[P.I]:
                im += v
            else:
                re += v
        dd = Fraction(int(d.p), int(d.q))
        return re / dd, im / dd

    def factored(self):
        """Text of the numerator as a product of irreducible factors (display only)."""
        from .parse import render

        if self.is_numeric() or not self.den.is_one():
            return render(self)
        const, facs = self.num.factor()
        if const == 1 and len(facs) == 1 and facs[0][1] == 1:
            return render(self)
        parts = []
        for f, e in facs:
            text = render(Scalar(f, _canonical=True))
            text = f"({text})" if len(f) > 1 else text
            parts.append(f"{text}^{e}" if e > 1 else text)
        if const != 1:
            parts.insert(0, render(Scalar.coerce(Fraction(int(const.p), int(const.q)))))
        return "*".join(parts)

    def to_fraction(self):
        re, im = self.parts()
        if im:
            raise ValueError("scalar is not real")
        return re

    def __complex__(self):
        re, im = self.parts()
        return complex(float(re), float(im))

    # arithmetic ---------------------------------------------------------
    def _bin(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return None
        a, b, c, d = P.align(self.num, self.den, other.num, other.den)
        return a, b, c, d

    def __add__(self, other):
        t = self._bin(other)
        if t is None:
            return NotImplemented
        a, b, c, d = t
        if b == d:
            return Scalar(a + c, b)
        return Scalar(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        t = self._bin(other)
        if t is None:
            return NotImplemented
        a, b, c, d = t
        if b == d:
            return Scalar(a - c, b)
        return Scalar(a * d - c * b, b * d)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        t = self._bin(other)
        if t is None:
            return NotImplemented
        a, b, c, d = t
        return Scalar(P.mul(a, c), b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        t = self._bin(other)
        if t is None:
            return NotImplemented
        a, b, c, d = t
        if c.is_zero():
            raise DivisionByZero("division by zero scalar")
        return Scalar(a * d, b * c)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(P.pow_(self.num, n), self.den ** n)

    def conjugate(self):
        return Scalar(P.conj(self.num), self.den, _canonical=True)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = P.align(self.num, self.den, other.num, other.den)
        return P.mul(a, d) == P.mul(c, b)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # substitution -------------------------------------------------------
    def subs(self, values):
        """Evaluate parameters at numbers (or other scalars)."""
        values = {k: Scalar.coerce(v) for k, v in values.items()}
        return _subs_poly(self.num, values) / _subs_poly(self.den, values)

    def sqrt(self):
        """An exact square root inside the field, or ``RootNotInField``."""
        if self.is_zero():
            return self
        num, den = self.num, self.den
        # make the denominator a square by multiplying through
        sd = P.try_sqrt(den)
        if sd is None:
            num, den = P.mul(num, den), den * den
            sd = den.sqrt()
        root = _poly_sqrt(num)
        if root is None:
            raise RootNotInField("square root not in the field", value=str(self))
        return Scalar(root, sd)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        from .parse import render_scalar

        return render_scalar(self)


def _subs_poly(p, values):
    ctx = p.context()
    names = ctx.names()
    out = Scalar(ctx.constant(0), _canonical=True)
    for mon, coef in p.to_dict().items():
        term = Scalar.coerce(Fraction(int(coef.p), int(coef.q)))
        rest = [0] * len(mon)
        for k, e in enumerate(mon):
            if not e:
                continue
            name = names[k]
            if k >= 2 and name in values:
                term = term * Scalar.coerce(values[name]) ** int(e)
            else:
                rest[k] = e
        out = out + term * Scalar(ctx.from_dict({tuple(rest): 1}))
    return out


def _poly_sqrt(p):
    """Square root of a polynomial in ``I`` and parameters modulo ``I^2+1``."""
    if not P.has_i(p):
        r = P.try_sqrt(p)
        if r is not None:
            return r
        if p.is_constant():
            return _gauss_sqrt(p)
        # a square over Q(i) need not be a square over Q, e.g. -c^2
        r = P.try_sqrt(-p)
        if r is None:
            return None
        return r * p.context().gen(P.I)
    if p.is_constant() or all(m[2:] == (0,) * (len(m) - 2) for m in p.monoms()):
        return _gauss_sqrt(p)
    # (x + yI)^2 = p with x, y free of I: x^2 - y^2 = re, 2xy = im.
    # Solve through the norm: x^2 = (re + sqrt(re^2 + im^2)) / 2.
    re = P.icoeff(p, 0)
    im = P.icoeff(p, 1)
    norm = re * re + im * im
    n = P.try_sqrt(norm)
    if n is None:
        return None
    for s in (n, -n):
        x = P.try_sqrt((re + s) / 2)
        if x is None or x.is_zero():
            continue
        y = P.try_div(im, 2 * x)
        if y is None:
            continue
        r = x + y * p.context().gen(P.I)
        if P.reduce_i(r * r) == p:
            return r
    return None


def _gauss_sqrt(p):
    """Square root of a Gaussian rational given as a constant poly in I."""
    ctx = p.context()
    re = Fraction(0)
    im = Fraction(0)
    for mon, coef in p.to_dict().items():
        v = Fraction(int(coef.p), int(coef.q))
        if mon[P.I]:
            im += v
        else:
            re += v
    r = gaussian_sqrt(re, im)
    if r is None:
        return None
    x, y = r
    return P.const(x, ctx) + P.const(y, ctx) * ctx.gen(P.I)


def _frac_sqrt(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = _isqrt_exact(n), _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def gaussian_sqrt(re, im):
    """Exact ``(x, y)`` with ``(x + y i)^2 = re + im i`` if it exists in Q(i)."""
    re, im = Fraction(re), Fraction(im)
    if im == 0:
        if re >= 0:
            r = _frac_sqrt(re)
            return None if r is None else (r, Fraction(0))
        r = _frac_sqrt(-re)
        return None if r is None else (Fraction(0), r)
    n = _frac_sqrt(re * re + im * im)
    if n is None:
        return None
    x = _frac_sqrt((re + n) / 2)
    if x is None or x == 0:
        return None
    return x, im / (2 * x)


I_UNIT = Scalar(P.context().gen(P.I), _canonical=True)
ZERO = Scalar(P.const(0), _canonical=True)
ONE = Scalar(P.const(1), _canonical=True)


def S(x):
    """Shorthand coercion used throughout the package."""
    return Scalar.coerce(x)
