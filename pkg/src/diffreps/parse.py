"""Text front end: a small recursive-descent parser and the canonical printer.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/")? factor)*
    factor := unary ("^" sint)?
    atom   := num | "i" | param | "z" | "q" | "d" | "dq" | "(" expr ")" | "O(" var "^" sint ")"

Adjacent factors multiply.  ``d`` composes on the left, so ``d*z`` is read as the
operator ``z*d + 1``.  ``O(z^k)`` is only meaningful over a truncated series ring
and sets the precision of the result.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import _poly as P
from .coeffs import RATIONAL, CoeffElem, LaurentSeries, Ring
from .diffop import DiffOp
from .errors import (
    NonCommutativeDivision,
    ParseError,
    RingMismatch,
    TooManyParameters,
)
from .scalar import Scalar

MAX_PARAMS = 8

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[^\W\d]\w*)|(?P<op>[-+*/^()−∂]))", re.UNICODE
)


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < n and text[j].isspace():
                j += 1
            raise ParseError(f"unexpected character {text[j]!r}", position=j, expected=("operand",))
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        if val == "−":
            val = "-"
        if val == "∂":
            kind, val = "name", "d"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text, ring, max_params):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.max_params = max_params
        self.params = []
        self.prec = None

    # token helpers
    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise ParseError(f"unexpected {t[1] or 'end of input'!r}", position=t[2], expected=(val,))
        return t

    # grammar
    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", position=0, expected=("operand",))
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", position=t[2], expected=("+", "-", "*", "/", "end"))
        if self.prec is not None:
            v = v.map_coeffs(lambda c: c.truncate(self.prec))
        return v

    def expr(self):
        t = self.peek()
        if t[1] in ("+", "-"):
            self.take()
            v = self.term()
            if t[1] == "-":
                v = -v
        else:
            v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def _starts_factor(self, t):
        return t[0] in ("num", "name") or t[1] == "("

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t[1] == "*":
                self.take()
                v = v * self.factor()
            elif t[1] == "/":
                self.take()
                pos = self.peek()[2]
                w = self.factor()
                v = self._divide(v, w, pos)
            elif self._starts_factor(t):
                v = v * self.factor()
            else:
                return v

    def _divide(self, v, w, pos):
        if w.order > 0:
            raise NonCommutativeDivision("division by an expression containing d", position=pos)
        if w.is_zero():
            raise ParseError("division by zero", position=pos)
        return v * DiffOp.mult(self.ring.one() / w.coeff(0))

    def factor(self):
        base_pos = self.peek()[2]
        v = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] in ("-", "+"):
                sign = -1 if self.take()[1] == "-" else 1
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be an integer literal", position=t[2], expected=("integer",))
            k = sign * int(t[1])
            if k < 0:
                if v.order > 0:
                    raise NonCommutativeDivision("negative power of an expression containing d", position=base_pos)
                if v.is_zero():
                    raise ParseError("zero to a negative power", position=base_pos)
                return DiffOp.mult(v.coeff(0) ** k)
            if v.order <= 0:
                return DiffOp.mult(v.coeff(0) ** k) if not v.is_zero() else v
            return v ** k
        return v

    def atom(self):
        t = self.take()
        kind, val, pos = t
        ring = self.ring
        if kind == "num":
            return DiffOp.const(int(val), ring)
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "name":
            if val == "i":
                return DiffOp.const(Scalar.coerce(1j), ring)
            if val in ("z", "q"):
                if val != ring.var:
                    raise ParseError(
                        f"variable {val!r} does not belong to {ring.tag}", position=pos, expected=(ring.var,)
                    )
                return DiffOp.mult(ring.gen())
            if val in ("d", "dq"):
                want = "d" if ring.var == "z" else "dq"
                if val != want:
                    raise ParseError(f"{val!r} does not act on {ring.tag}", position=pos, expected=(want,))
                return DiffOp.d(ring)
            if val == "O" and self.peek()[1] == "(":
                return self.big_o(pos)
            if val in P.RESERVED:
                raise ParseError(f"reserved name {val!r}", position=pos, expected=("operand",))
            if val not in self.params:
                self.params.append(val)
                if len(self.params) > self.max_params:
                    raise TooManyParameters(
                        f"more than {self.max_params} parameters", limit=self.max_params, position=pos
                    )
            return DiffOp.const(Scalar.param(val), ring)
        raise ParseError(
            f"unexpected {val or 'end of input'!r}",
            position=pos,
            expected=("number", "name", "("),
        )

    def big_o(self, pos):
        if self.ring.kind != "series":
            raise ParseError("O(...) needs a series ring", position=pos)
        self.expect("(")
        t = self.take()
        if t == ("num", "1", t[2]):
            self.expect(")")
            self.prec = 0 if self.prec is None else min(self.prec, 0)
            return DiffOp.zero(self.ring)
        if t[1] != self.ring.var:
            raise ParseError("expected the series variable", position=t[2], expected=(self.ring.var,))
        k = 1
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be an integer literal", position=t[2], expected=("integer",))
            k = sign * int(t[1])
        self.expect(")")
        self.prec = k if self.prec is None else min(self.prec, k)
        return DiffOp.zero(self.ring)


_BIG_O = re.compile(r"O\(\s*\w+\s*(?:\^\s*([-−]?\d+))?\s*\)")


def parse_op(text, ring=RATIONAL, max_params=MAX_PARAMS):
    """Parse an operator expression into a normal-form DiffOp."""
    if ring.kind == "series":
        # an explicit O(z^k) tail fixes the working precision
        ks = [int((m.group(1) or "1").replace("−", "-")) for m in _BIG_O.finditer(text)]
        if ks:
            ring = ring.with_prec(min(ks))
    return _Parser(text, ring, max_params).parse()


def parse_coeff(text, ring=RATIONAL, max_params=MAX_PARAMS):
    op = parse_op(text, ring, max_params)
    if op.order > 0:
        raise ParseError("expected a function, got an operator", position=0)
    if op.is_zero():
        z = ring.zero()
        return z
    return op.coeff(0)


def parse_scalar(text, max_params=MAX_PARAMS):
    c = parse_coeff(text, RATIONAL, max_params)
    s = c.scalar_value()
    if s is None:
        raise ParseError("expected a constant", position=0)
    return s


def parse_value(text, ring=RATIONAL, max_params=MAX_PARAMS):
    """Scalar, coefficient or operator, whichever is the simplest fit."""
    op = parse_op(text, ring, max_params)
    if op.order > 0:
        return op
    return op.coeff(0)


# ---------------------------------------------------------------------------
# rendering


def _frac_str(q):
    q = Fraction(int(q.p), int(q.q))
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _term_key(mon):
    # ascending z-degree, then total parameter degree, then I, then exponents
    return (mon[P.Z], sum(mon[2:]), mon[P.I], tuple(-e for e in mon[2:]))


def _poly_terms(p, var="z", zshift=0):
    """List of (negative?, body) for the monomials of a polynomial."""
    names = p.context().names()
    out = []
    for mon, coef in sorted(p.to_dict().items(), key=lambda mc: _term_key(mc[0])):
        neg = coef < 0
        a = -coef if neg else coef
        if zshift:
            mon = (mon[0] + zshift,) + mon[1:]
        vs = _mono_str_shift(mon, names, var)
        cs = _frac_str(a)
        if not vs:
            body = cs
        elif cs == "1":
            body = vs
        else:
            body = f"{cs}*{vs}"
        out.append((neg, body))
    return out


def _mono_str_shift(mon, names, var):
    parts = []
    if mon[P.I]:
        parts.append("i")
    for k in range(2, len(mon)):
        e = mon[k]
        if e:
            parts.append(names[k] if e == 1 else f"{names[k]}^{e}")
    e = mon[P.Z]
    if e:
        parts.append(var if e == 1 else f"{var}^{e}")
    return "*".join(parts)


def _join(terms):
    if not terms:
        return "0"
    s = ""
    for k, (neg, body) in enumerate(terms):
        if k == 0:
            s = f"-{body}" if neg else body
        else:
            s += f" - {body}" if neg else f" + {body}"
    return s


def _poly_str(p, var="z"):
    return _join(_poly_terms(p, var))


def _primitive(p):
    """``(k, D)`` with ``p = k*D``, D integral and primitive, leading term positive."""
    from math import gcd, lcm

    cs = [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]
    den = lcm(*(c.denominator for c in cs))
    g = 0
    for c in cs:
        g = gcd(g, int(c * den))
    k = Fraction(g, den)
    if p.leading_coefficient() < 0:
        k = -k
    return k, p / P.to_fmpq(k)


def _scalar_parts(s):
    """Render a Scalar as (negative?, body, atomic?)."""
    num, den = s.num, s.den
    if not den.is_one():
        k, den = _primitive(den)
        num = num / P.to_fmpq(k)
        # keep the numerator integral: -1/2/(c + c^2) -> -1/(2*c + 2*c^2)
        q = _primitive(num)[0].denominator
        if q != 1:
            num, den = num * q, den * q
    if den.is_one():
        terms = _poly_terms(num)
        if len(terms) == 1:
            neg, body = terms[0]
            return neg, body, True
        return False, _join(terms), False
    nterms = _poly_terms(num)
    if len(nterms) == 1:
        neg, nb = nterms[0]
    else:
        neg, nb = False, f"({_join(nterms)})"
    dterms = _poly_terms(den)
    # a single monomial with unit coefficient and one variable can stay bare
    if len(dterms) == 1 and "*" not in dterms[0][1] and not dterms[0][0]:
        db = dterms[0][1]
    else:
        db = f"({_join(dterms)})"
    return neg, f"{nb}/{db}", True


def render_scalar(s):
    neg, body, _ = _scalar_parts(s)
    return f"-{body}" if neg else body


def _scaled(s, tail):
    """Terms for ``s * tail`` where tail is a product of atoms or empty."""
    if s.den.is_one():
        terms = _poly_terms(s.num)
        if not tail:
            return terms
        if len(terms) == 1:
            neg, body = terms[0]
            return [(neg, tail if body == "1" else f"{body}*{tail}")]
        return [(False, f"({_join(terms)})*{tail}")]
    neg, body, _ = _scalar_parts(s)
    return [(neg, f"{body}*{tail}" if tail else body)]


def _var_pow(var, k):
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}"


def _zsplit_den(d):
    """If ``d = z^v * D`` with D free of z, return (v, D); else None."""
    parts = P.zsplit(d)
    if len(parts) != 1:
        return None
    (v, D), = parts.items()
    return v, D


def _coeff_terms(f, dtail=""):
    """Terms for ``f * dtail`` where f is a coefficient element."""
    var = f.ring.var
    if isinstance(f, LaurentSeries):
        terms = []
        for k, c in f.terms().items():
            tail = "*".join(x for x in (_var_pow(var, k), dtail) if x)
            terms += _scaled(c, tail)
        return terms
    n, d = f.reduced()
    split = _zsplit_den(d)
    if split is not None:
        v, D = split
        if not D.is_one():
            k, D = _primitive(D)
            n = n / P.to_fmpq(k)
        terms = []
        for k, c in sorted(P.zsplit(n).items()):
            s = Scalar(c, D)
            tail = "*".join(x for x in (_var_pow(var, k - v), dtail) if x)
            terms += _scaled(s, tail)
        return terms
    # genuine rational function
    k, d = _primitive(d)
    n = n / P.to_fmpq(k)
    nterms = _poly_terms(n, var)
    if len(nterms) == 1:
        neg, nb = nterms[0]
    else:
        neg, nb = False, f"({_join(nterms)})"
    body = f"{nb}/({_poly_str(d, var)})"
    if dtail:
        body = f"{body}*{dtail}"
    return [(neg, body)]


def render_coeff(f):
    if isinstance(f, LaurentSeries):
        s = _join(_coeff_terms(f)) if not f.num.is_zero() else ""
        tail = f"O({_var_pow(f.ring.var, f.prec) or '1'})"
        if not s:
            return tail
        return f"{s} + {tail}"
    return _join(_coeff_terms(f))


def render_op(op):
    if op.is_zero():
        if op.ring.kind == "series":
            return render_coeff(op.ring.zero())
        return "0"
    dname = "d" if op.ring.var == "z" else "dq"
    terms = []
    prec = None
    for j in sorted(op.coeffs, reverse=True):
        c = op.coeffs[j]
        if isinstance(c, LaurentSeries):
            prec = c.prec if prec is None else min(prec, c.prec)
        terms += _coeff_terms(c, _var_pow(dname, j))
    s = _join(terms)
    if prec is not None:
        s = f"{s} + O({_var_pow(op.ring.var, prec) or '1'})"
    return s


def render(x):
    """Canonical text for a Scalar, coefficient element or operator."""
    if isinstance(x, DiffOp):
        return render_op(x)
    if isinstance(x, CoeffElem):
        return render_coeff(x)
    if isinstance(x, Scalar):
        return render_scalar(x)
    if isinstance(x, (int, Fraction)):
        return render_scalar(Scalar.coerce(x))
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(render(y) for y in x) + "]"
    return str(x)


__all__ = [
    "MAX_PARAMS",
    "NonCommutativeDivision",
    "ParseError",
    "RingMismatch",
    "parse_coeff",
    "parse_op",
    "parse_scalar",
    "parse_value",
    "render",
    "Ring",
]
