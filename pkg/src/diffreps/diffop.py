"""Differential operators ``sum_j xi_j d^j`` with coefficients on the left."""

from __future__ import annotations

from math import comb

from .coeffs import RATIONAL, CoeffElem, Ring
from .errors import RingMismatch
from .scalar import Scalar

NEG_INF = float("-inf")


class DiffOp:
    """An element of Diff(V) in normal form.

    ``coeffs`` maps ``j >= 0`` to the nonzero coefficient of ``d^j``.  Operators
    are immutable; ``*`` is composition.
    """

    __slots__ = ("coeffs", "ring", "_ders")

    def __init__(self, coeffs, ring):
        self.coeffs = {j: c for j, c in coeffs.items() if not c.is_zero()}
        self.ring = ring
        self._ders = {}

    def derivatives(self, j, n):
        """``[xi_j, xi_j', ..., xi_j^(n)]`` (cached; operators are immutable)."""
        dl = self._ders.get(j)
        if dl is None:
            dl = self._ders[j] = [self.coeffs[j]]
        while len(dl) <= n:
            dl.append(dl[-1].derivative())
        return dl

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, ring=RATIONAL):
        return cls({}, ring)

    @classmethod
    def const(cls, x, ring=RATIONAL):
        return cls({0: ring.coerce(x)}, ring)

    @classmethod
    def mult(cls, f):
        """Multiplication by the function ``f``."""
        return cls({0: f}, f.ring)

    @classmethod
    def d(cls, ring=RATIONAL, power=1):
        return cls({power: ring.one()}, ring)

    @classmethod
    def from_coeffs(cls, coeffs, ring=RATIONAL):
        return cls({j: ring.coerce(c) for j, c in coeffs.items()}, ring)

    # queries ------------------------------------------------------------
    @property
    def order(self):
        return max(self.coeffs) if self.coeffs else NEG_INF

    @property
    def symbol(self):
        return self.coeffs[self.order] if self.coeffs else self.ring.zero()

    def coeff(self, j):
        return self.coeffs.get(j) or self.ring.zero()

    def is_zero(self):
        return not self.coeffs

    def scalar_value(self):
        """The operator as a Scalar if it is multiplication by a constant."""
        if not self.coeffs:
            return Scalar.coerce(0)
        if set(self.coeffs) != {0}:
            return None
        return self.coeffs[0].scalar_value()

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            if other.ring != self.ring:
                raise RingMismatch(
                    f"ring mismatch: {self.ring.tag} vs {other.ring.tag}",
                    left=self.ring.tag,
                    right=other.ring.tag,
                )
            return other
        if isinstance(other, CoeffElem):
            return DiffOp.mult(self.ring.coerce(other) if other.ring != self.ring else other)
        try:
            return DiffOp.const(other, self.ring)
        except TypeError:
            return None

    # linear structure ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for j, c in o.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return DiffOp(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp({j: -c for j, c in self.coeffs.items()}, self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        """Left multiplication by a scalar or function (no derivatives involved)."""
        if isinstance(s, int):
            if s == 1:
                return self
            return DiffOp({j: c * s for j, c in self.coeffs.items()}, self.ring)
        f = self.ring.coerce(s)
        return DiffOp({j: f * c for j, c in self.coeffs.items()}, self.ring)

    # algebra ------------------------------------------------------------
    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return compose(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return compose(o, self)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        acc = DiffOp.const(1, self.ring)
        for _ in range(n):
            acc = compose(acc, self)
        return acc

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except RingMismatch:
            return False
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def apply(self, f):
        return apply(self, f)

    def map_coeffs(self, fn, ring=None):
        ring = ring or self.ring
        return DiffOp({j: fn(c) for j, c in self.coeffs.items()}, ring)

    def subs(self, values):
        return self.map_coeffs(lambda c: c.subs(values))

    def to_ring(self, ring):
        return DiffOp({j: ring.coerce(c) for j, c in self.coeffs.items()}, ring)

    def __str__(self):
        from .parse import render

        return render(self)

    def __repr__(self):
        return f"DiffOp({self})"


def _derivs(f, n):
    out = [f]
    for _ in range(n):
        out.append(out[-1].derivative())
    return out


def compose(P, Q):
    """``P o Q`` via ``d^n f = sum_k C(n,k) f^(k) d^(n-k)``."""
    if P.ring != Q.ring:
        raise RingMismatch(f"ring mismatch: {P.ring.tag} vs {Q.ring.tag}")
    if not P.coeffs or not Q.coeffs:
        return DiffOp({}, P.ring)
    out = {}
    _leibniz(P, Q, out, 0, 1)
    return DiffOp(out, P.ring)


def _leibniz(P, Q, out, kmin, sign):
    top = max(P.coeffs)
    for i, a in P.coeffs.items():
        for j in Q.coeffs:
            dl = Q.derivatives(j, top)
            for k in range(kmin, i + 1):
                dk = dl[k]
                if dk.is_zero():
                    continue
                t = a * dk
                if k:
                    t = t * comb(i, k)
                if sign < 0:
                    t = -t
                e = i - k + j
                out[e] = out[e] + t if e in out else t


def bracket(P, Q):
    """``[P, Q]``; the k = 0 Leibniz terms cancel and are never formed."""
    if P.ring != Q.ring:
        raise RingMismatch(f"ring mismatch: {P.ring.tag} vs {Q.ring.tag}")
    out = {}
    if P.coeffs and Q.coeffs:
        _leibniz(P, Q, out, 1, 1)
        _leibniz(Q, P, out, 1, -1)
    return DiffOp(out, P.ring)


def apply(P, f):
    """``sum_j xi_j f^(j)``."""
    if not isinstance(f, CoeffElem):
        f = P.ring.coerce(f)
    elif f.ring != P.ring:
        raise RingMismatch(f"ring mismatch: {P.ring.tag} vs {f.ring.tag}")
    if not P.coeffs:
        return P.ring.zero()
    dl = _derivs(f, max(P.coeffs))
    acc = P.ring.zero()
    for j, c in P.coeffs.items():
        acc = acc + c * dl[j]
    return acc


def poly_in(L, coeffs):
    """``p(L)`` for ``p = sum coeffs[k] X^k`` (Horner); coeffs low degree first."""
    coeffs = list(coeffs)
    acc = DiffOp.zero(L.ring)
    for a in reversed(coeffs):
        acc = compose(acc, L) + DiffOp.const(a, L.ring)
    return acc


def poly_roots_in(L, roots):
    """``prod (L - r)`` over the given scalar roots, in order."""
    acc = DiffOp.const(1, L.ring)
    for r in roots:
        acc = compose(acc, L - DiffOp.const(r, L.ring))
    return acc


def order(P):
    return P.order


def symbol(P):
    return P.symbol


__all__ = [
    "DiffOp",
    "NEG_INF",
    "Ring",
    "apply",
    "bracket",
    "compose",
    "order",
    "poly_in",
    "poly_roots_in",
    "symbol",
]
