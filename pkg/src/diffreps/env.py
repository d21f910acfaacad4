"""Images of enveloping-algebra elements and surjectivity witnesses."""

from __future__ import annotations

from .coeffs import RATIONAL
from .diffop import DiffOp, compose
from .errors import CasimirOne, ConstraintViolated, IndexOutOfSupport
from .liealg import CASIMIR, PBWMonomial, algebra, pochhammer
from .reps import Representation
from .scalar import Scalar


class EnvElement:
    """Finite combination of words ``L_{i1} L_{i2} ...`` with Scalar coefficients.

    Words are tuples of generator indices read left to right.  For sl(2) the
    PBW basis is ``L_1^a L_0^b L_-1^g`` (indices in non-increasing order).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for w, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                out[tuple(w)] = c
        self.terms = out

    @classmethod
    def word(cls, *indices, coef=1):
        return cls({tuple(indices): coef})

    @classmethod
    def pbw(cls, alpha, beta, gamma, coef=1):
        return cls({PBWMonomial(alpha, beta, gamma).word(): coef})

    @classmethod
    def scalar(cls, s):
        return cls({(): s})

    @classmethod
    def casimir(cls):
        """``4((L_0 - 1/2)^2 - L_-1 L_1)``."""
        return cls({w: c for c, w in CASIMIR})

    def __add__(self, other):
        other = _env(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return EnvElement(out)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_env(other))

    def __rsub__(self, other):
        return _env(other) - self

    def __mul__(self, other):
        if not isinstance(other, EnvElement):
            s = Scalar.coerce(other)
            return EnvElement({w: c * s for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return EnvElement(out)

    def __rmul__(self, other):
        s = Scalar.coerce(other)
        return EnvElement({w: s * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        return not (self.pbw_normal_form() - other.pbw_normal_form()).terms

    __hash__ = None

    def pbw_normal_form(self, alg="Witt"):
        """Reorder every word to non-increasing indices using ``[L_i, L_j] = (i-j) L_{i+j}``."""
        alg = algebra(alg)
        out = {}
        todo = list(self.terms.items())
        while todo:
            w, c = todo.pop()
            k = next((k for k in range(len(w) - 1) if w[k] < w[k + 1]), None)
            if k is None:
                out[w] = out[w] + c if w in out else c
                continue
            a, b = w[k], w[k + 1]
            todo.append((w[:k] + (b, a) + w[k + 2:], c))
            if a + b not in alg:
                raise IndexOutOfSupport(f"L_{a + b} is not in {alg.name}", index=a + b)
            todo.append((w[:k] + (a + b,) + w[k + 2:], c * (a - b)))
        return EnvElement(out)

    def to_list(self):
        """``[(word text, coefficient text)]`` in a canonical order."""
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), [-i for i in kv[0]]))
        return [(_word_text(w), str(c)) for w, c in items]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{w}" for w, c in self.to_list())

    def __repr__(self):
        return f"EnvElement({self})"


def _word_text(w):
    return "*".join(f"L[{i}]" for i in w) if w else "1"


def _env(x):
    return x if isinstance(x, EnvElement) else EnvElement.scalar(x)


def env_image(e, r):
    """``rho(e)`` by composing the generator images along each word."""
    e = _env(e)
    acc = DiffOp.zero(r.ring)
    cache = {(): DiffOp.const(1, r.ring)}

    def word_op(w):
        if w in cache:
            return cache[w]
        op = compose(word_op(w[:-1]), r.image(w[-1]))
        cache[w] = op
        return op

    for w, c in e.terms.items():
        acc = acc + word_op(w).scale(r.ring.from_scalar(c))
    return acc


def pbw_closed_form(alpha, beta, gamma, r):
    """S1 closed form ``h^(a-g) P(L + c - a + g + 1, a) (L + g)^b P(L - c, g)``."""
    t = r.triple
    if t is None or t.family not in ("S1", "R1"):
        raise ValueError("the closed form applies to S1/R1 triples")
    L = r.image(0)
    c = t.c
    op = pochhammer(L + (c - alpha + gamma + 1), alpha)
    op = compose(op, (L + gamma) ** beta)
    op = compose(op, pochhammer(L - c, gamma))
    return op.scale(t.h ** (alpha - gamma))


def kernel_check(r, constant=None):
    """``rho(C - k) == 0`` with ``k = (2c+1)^2`` (or the supplied constant)."""
    if constant is None:
        if r.triple is None:
            raise ValueError("kernel_check needs the triple (or an explicit constant)")
        c = r.triple.c
        constant = (2 * c + 1) ** 2
    return env_image(EnvElement.casimir() - Scalar.coerce(constant), r).is_zero()


# ---------------------------------------------------------------------------
# surjectivity witnesses


def _quadratics(k, c):
    """Coefficient vectors (const, L, L^2) of the three quadratics for index k."""
    def q(a, b):
        return [a * b, a + b, Scalar.coerce(1)]

    return [
        q(-c - k - 1, (k + 1) * c),
        q(Scalar.coerce(-k), k * c),
        q(c - k + 1, (k - 1) * c),
    ]


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def quadratic_weights(k, c):
    """Scalars ``(x, y, w)`` with ``x q1 + y q2 + w q3 = 1`` as polynomials in L."""
    c = Scalar.coerce(c)
    qs = _quadratics(k, c)
    # columns are the quadratics, rows the powers of L
    m = [[qs[j][i] for j in range(3)] for i in range(3)]
    det = _det3(m)
    if det.is_zero():
        raise CasimirOne("the three quadratics are linearly dependent (Casimir = 1)", c=str(c), k=k)
    rhs = [Scalar.coerce(1), Scalar.coerce(0), Scalar.coerce(0)]
    sol = []
    for j in range(3):
        mj = [row[:] for row in m]
        for i in range(3):
            mj[i][j] = rhs[i]
        sol.append(_det3(mj) / det)
    return sol


def _quadratic_witness(k, c):
    x, y, w = quadratic_weights(k, c)
    return (
        EnvElement.word(-1, k + 1, coef=x)
        + EnvElement.word(0, k, coef=y)
        + EnvElement.word(1, k - 1, coef=w)
    )


def _check_casimir(c):
    if c.is_zero() or (c + 1).is_zero():
        raise CasimirOne("Casimir of the sl2 restriction is 1 (c in {0, -1})", c=str(c))


def _h_sign(t):
    z = t.ring.gen()
    if t.h == z:
        return 1
    if t.h == z.inverse():
        return -1
    return 0


def surjectivity_witness(r, target="z^k", k=0):
    """Element of U(Witt) whose image is ``z^k`` (or ``d``) for an S1/R1 triple with h = z^(+-1)."""
    t = r.triple
    if t is None or t.family not in ("S1", "R1"):
        raise ConstraintViolated("surjectivity witnesses need an S1/R1 triple")
    sign = _h_sign(t)
    if sign == 0:
        raise ConstraintViolated("h must be z (or 1/z over Laurent polynomials)", h=str(t.h))
    c = t.c
    _check_casimir(c)
    if target in ("d", "∂"):
        return _d_witness(r, t, c)
    m = k * sign
    if m < 0 and r.algebra.name != "Witt":
        raise IndexOutOfSupport("negative powers of h need the full Witt algebra", k=k)
    return _quadratic_witness(m, c)


def _d_witness(r, t, c):
    if _h_sign(t) != 1:
        raise ConstraintViolated("the d witness is built for h = z")
    # rho(L_-1) = -d + (b - c)/z, so d = -L_-1 + sum p_j z^j
    rest = (t.b - t.c) / t.h
    if not rest.is_polynomial():
        raise ConstraintViolated("(b - c)/z must be a polynomial (b(0) = c)", b=str(t.b))
    e = EnvElement.word(-1, coef=-1)
    n, d = rest.reduced()
    from . import _poly as P

    lc = Scalar(d)
    for j, coef in sorted(P.zsplit(n).items()):
        e = e + _quadratic_witness(j, c) * (Scalar(coef) / lc)
    return e


def verify_witness(e, r, target):
    """``env_image(e, r) == target`` for a DiffOp or coefficient target."""
    if not isinstance(target, DiffOp):
        target = DiffOp.mult(r.ring.coerce(target))
    return env_image(e, r) == target


def surjectivity_witness_R0(r, max_k=3):
    """Witnesses for ``h^k P(L - lam - k, k)`` (order k, symbol 1) for (1/z, b, c).

    Returns ``[(k, element, operator)]`` for ``k = 0..max_k``.
    """
    t = r.triple
    if t is None or t.family != "R0":
        raise ConstraintViolated("surjectivity_witness_R0 needs an R0 triple")
    z = t.ring.gen()
    if t.h != z.inverse():
        raise ConstraintViolated("h must be 1/z", h=str(t.h))
    if not t.b.is_polynomial():
        raise ConstraintViolated("b must be a polynomial", b=str(t.b))
    b0 = t.b.value_at_zero()
    if not (b0 * b0 - b0 - t.kappa).is_zero():
        raise ConstraintViolated("b(0)^2 - b(0) - c(c+1) must vanish", b0=str(b0), c=str(t.c))
    lam = t.lam
    _check_casimir(lam)
    out = []
    L = r.image(0)
    for k in range(max_k + 1):
        e = _quadratic_witness(k, lam)
        op = env_image(e, r)
        expect = pochhammer(L - (lam + k), k).scale(t.h ** k)
        if op != expect or op.order != k or not (op.symbol - 1).is_zero():
            raise ConstraintViolated("witness does not reproduce h^k P(L - lam - k, k)", k=k)
        out.append((k, e, op))
    return out


__all__ = [
    "EnvElement",
    "env_image",
    "kernel_check",
    "pbw_closed_form",
    "quadratic_weights",
    "surjectivity_witness",
    "surjectivity_witness_R0",
    "verify_witness",
    "Representation",
    "RATIONAL",
]
