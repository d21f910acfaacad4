"""Semilinear group action and normal forms over C[[z]].

An element ``g = (phi, s)`` acts on operators by ``gamma = A_phi o H_s`` where
``H_s`` is conjugation by multiplication with the unit ``s`` and ``A_phi`` is
the ring automorphism ``f -> f o phi^-1``.  On triples::

    (h, b, c) -> (h o psi, (b + (h/h') s'/s) o psi, c),   psi = phi^-1

i.e. the homothety acts first.  Products follow
``(phi1, s1)(phi2, s2) = (phi1 o phi2, (s1 o phi2) s2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import SERIES, CoeffElem, LaurentSeries, Ring, membership
from .diffop import DiffOp, compose
from .errors import (
    DiffRepsError,
    InsufficientPrecision,
    NoCanonicalForm,
    NonInvertibleSubstitution,
    NotOverPowerSeries,
    NotS1,
    RootNotInField,
    ValuationOutOfRange,
)
from .liealg import SL2, WITT_GT
from .reps import Representation, Triple, build, classify, normalize_c, semilevel_candidates
from .scalar import Scalar, gaussian_sqrt

# ---------------------------------------------------------------------------
# series helpers


def series_reversion(phi):
    """Compositional inverse of ``phi`` with ``nu(phi) = 1`` to phi's precision."""
    try:
        if phi.valuation() != 1:
            raise NonInvertibleSubstitution("phi must have valuation 1", valuation=phi.valuation())
    except InsufficientPrecision as e:
        raise NonInvertibleSubstitution("phi vanishes to the working precision") from e
    ring = phi.ring
    a1 = phi.coefficient(1)
    z = ring.gen().truncate(phi.prec)
    inv_a1 = ring.from_scalar(a1.inverse())
    psi = z * inv_a1
    # each step fixes at least one more coefficient
    for _ in range(phi.prec + 1):
        err = phi.compose(psi) - z
        if err.num.is_zero():
            break
        psi = psi - err * inv_a1
    return psi.truncate(phi.prec)


def series_exp_integral(g, prec=None):
    """The unit ``s`` with ``s(0) = 1`` and ``s'/s = g`` (g regular at 0)."""
    prec = prec if prec is not None else g.prec
    if not g.num.is_zero() and g.val < 0:
        raise NotOverPowerSeries("s'/s must lie in C[[z]]", valuation=g.val)
    gs = [g.coefficient(k) if k < g.prec else None for k in range(prec)]
    s = [Scalar.coerce(1)]
    for k in range(prec - 1):
        acc = Scalar.coerce(0)
        for j in range(k + 1):
            if gs[j] is None:
                raise InsufficientPrecision("s'/s is not known far enough", prec=g.prec)
            if not gs[j].is_zero():
                acc = acc + gs[j] * s[k - j]
        s.append(acc / (k + 1))
    ring = g.ring
    out = ring.zero()
    for k, c in enumerate(s):
        if not c.is_zero():
            out = out + ring.monomial(k, c)
    return out.truncate(prec)


def series_sqrt(u):
    """Square root of a series ``u`` with even valuation and a square leading term."""
    v = u.valuation()
    if v % 2:
        raise RootNotInField("odd valuation has no square root", valuation=v)
    lead = u.coefficient(v)
    re, im = lead.parts() if lead.is_numeric() else (None, None)
    r0 = gaussian_sqrt(re, im) if re is not None else None
    if r0 is None:
        raise RootNotInField("leading coefficient is not a square", leading=str(lead))
    r0 = Scalar.gaussian(*r0)
    n = u.prec - v
    us = [u.coefficient(v + k) for k in range(n)]
    r = [r0]
    for k in range(1, n):
        acc = us[k]
        for j in range(1, k):
            acc = acc - r[j] * r[k - j]
        r.append(acc / (2 * r0))
    ring = u.ring
    out = ring.zero()
    for k, c in enumerate(r):
        if not c.is_zero():
            out = out + ring.monomial(k + v // 2, c)
    return out.truncate(u.prec - v // 2)


def _is_identity(phi):
    z = phi.ring.gen()
    d = phi - z
    try:
        return d.is_zero()
    except InsufficientPrecision:
        return True


def _inverse_substitution(phi):
    ring = phi.ring
    if ring.kind == "series":
        return series_reversion(phi)
    if ring.kind == "laurent":
        terms = phi.laurent_terms()
        if len(terms) == 1:
            (k, a), = terms.items()
            if k == 1:
                return ring.monomial(1, a.inverse())
            if k == -1:
                return ring.monomial(-1, a)
        raise NonInvertibleSubstitution("automorphisms of C[z,1/z] are a*z^(+-1)", phi=str(phi))
    # rational: Moebius maps only
    n, d = phi.reduced()
    from . import _poly as P

    if P.zdeg(n) <= 1 and P.zdeg(d) <= 1:
        al, be = Scalar(P.zcoeff(n, 1)), Scalar(P.zcoeff(n, 0))
        ga, de = Scalar(P.zcoeff(d, 1)), Scalar(P.zcoeff(d, 0))
        if not (al * de - be * ga).is_zero():
            z = ring.gen()
            return (z * de - be) / (z * (-ga) + al)
    raise NonInvertibleSubstitution("only Moebius substitutions are invertible over C(z)", phi=str(phi))


# ---------------------------------------------------------------------------
# group elements


@dataclass
class SemilinearElem:
    """``(phi, s)``: homothety by ``s`` followed by the substitution ``f -> f o phi^-1``."""

    phi: CoeffElem | None = None
    s: CoeffElem | None = None
    phi_inv: CoeffElem | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.phi is not None and _is_identity(self.phi):
            self.phi = None
            self.phi_inv = None
        if self.s is not None:
            try:
                one = (self.s - 1).is_zero()
            except InsufficientPrecision:
                one = True
            if one:
                self.s = None
            elif self.s.ring.kind == "series" and self.s.valuation() != 0:
                raise NonInvertibleSubstitution("homothety ratio must be a unit", valuation=self.s.valuation())
        if self.phi is not None and self.phi_inv is None:
            self.phi_inv = _inverse_substitution(self.phi)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def homothety(cls, s):
        return cls(None, s)

    @classmethod
    def substitution(cls, phi, phi_inv=None):
        return cls(phi, None, phi_inv)

    def is_identity(self):
        return self.phi is None and self.s is None

    def __mul__(self, other):
        """``self o other`` as conjugations."""
        if self.phi is None and other.phi is None:
            phi = phi_inv = None
        elif self.phi is None:
            phi, phi_inv = other.phi, other.phi_inv
        elif other.phi is None:
            phi, phi_inv = self.phi, self.phi_inv
        else:
            phi = self.phi.compose(other.phi)
            phi_inv = other.phi_inv.compose(self.phi_inv)
        s1 = self.s
        if s1 is not None and other.phi is not None:
            s1 = s1.compose(other.phi)
        if s1 is None:
            s = other.s
        elif other.s is None:
            s = s1
        else:
            s = s1 * other.s
        return SemilinearElem(phi, s, phi_inv)

    def inverse(self):
        if self.phi is None:
            return SemilinearElem(None, self.s.inverse() if self.s is not None else None)
        s = self.s.compose(self.phi_inv).inverse() if self.s is not None else None
        return SemilinearElem(self.phi_inv, s, self.phi)

    def to_dict(self):
        from .parse import render

        return {
            "phi": render(self.phi) if self.phi is not None else "z",
            "s": render(self.s) if self.s is not None else "1",
        }


def act_on_triple(g, t):
    """Image of the triple under ``g`` (homothety shift first, then substitution)."""
    h, b = t.h, t.b
    if g.s is not None:
        b = b + (h / h.derivative()) * (g.s.derivative() / g.s)
    if g.phi is not None:
        h, b = h.compose(g.phi_inv), b.compose(g.phi_inv)
    return Triple(h, b, t.c, t.family, t.lam, t.checked)


def conjugate_op(g, P):
    """``gamma o P o gamma^-1`` for ``gamma = A_phi o H_s``."""
    ring = P.ring
    if g.s is not None:
        # s d^j s^-1 = (d - s'/s)^j
        D = DiffOp({1: ring.one(), 0: -(g.s.derivative() / g.s)}, ring)
        P = _substitute_d(P, D, lambda f: f)
    if g.phi is not None:
        psi = g.phi_inv
        D = DiffOp({1: g.phi.derivative().compose(psi)}, ring)
        P = _substitute_d(P, D, lambda f: f.compose(psi))
    return P


def _substitute_d(P, D, fmap):
    ring = P.ring
    acc = DiffOp.zero(ring)
    Dk = DiffOp.const(1, ring)
    for j in range(int(P.order) + 1 if not P.is_zero() else 0):
        if j:
            Dk = compose(Dk, D)
        if j in P.coeffs:
            acc = acc + compose(DiffOp.mult(fmap(P.coeffs[j])), Dk)
    return acc


def conjugate_rep(g, r):
    """``rho^gamma(L_k) = gamma o rho(L_k) o gamma^-1`` for every k."""
    src = r
    t = act_on_triple(g, r.triple) if r.triple is not None else None
    images = {i: conjugate_op(g, op) for i, op in r._images.items()}
    builder = (lambda i: conjugate_op(g, src.image(i))) if r._builder is not None else None
    out = Representation(r.algebra, r.ring, images, builder, t)
    if r.central_image is not None:
        out.central_image = conjugate_op(g, r.central_image)
    return out


def shift_S1(t, a):
    """``rho^a``: ``(h + a, (h + a)(b - c)/h + c, c)``; same image as ``rho``."""
    a = Scalar.coerce(a)
    h = t.h + a
    b = h * ((t.b - t.c) / t.h) + t.c
    return Triple(h, b, t.c, t.family)


# ---------------------------------------------------------------------------
# normal forms


@dataclass
class NormalForm:
    case: str
    triple: Triple
    element: SemilinearElem | None = None
    prepared: Triple | None = None
    data: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)

    def to_dict(self):
        from .parse import render

        d = {"case": self.case, "triple": self.triple.to_dict(), "data": {k: render(v) if not isinstance(v, (str, int, list, bool)) else v for k, v in self.data.items()}, "diagnostics": list(self.diagnostics)}
        if self.element is not None:
            d["element"] = self.element.to_dict()
        return d


def _triple_of(r, alg=SL2):
    if isinstance(r, Triple):
        return r
    if r.triple is not None:
        return r.triple
    idx = [i for i in (-1, 0, 1, 2) if i in r.algebra and r.has(i)]
    res = classify({i: r.image(i) for i in idx}, alg if alg != SL2 else r.algebra)
    if res.triple is None:
        raise NoCanonicalForm("could not recover a triple", kappa=str(res.kappa))
    return res.triple


def _images_of(r, indices):
    if isinstance(r, Triple):
        r = build(r) if r.family not in ("S0",) else build(r)
    return {i: r.image(i) for i in indices}


def _in_power_series(op):
    return all(membership(c, "C[[z]]") for c in op.coeffs.values())


def _series(ring):
    if ring.kind != "series":
        raise NotOverPowerSeries("representation is not over C[[z]]", ring=ring.tag)


def normal_form_S1(r):
    """Group element taking an S1 representation over C[[z]] to the triple (z, c, c)."""
    t = _triple_of(r)
    if t.family != "S1":
        raise NotS1("normal_form_S1 needs an S1 representation", family=t.family)
    _series(t.ring)
    diag = []
    for i, op in _images_of(t, (-1, 0, 1)).items():
        if not _in_power_series(op):
            raise NotOverPowerSeries(f"rho(L_{i}) does not preserve C[[z]]", index=i)
    theta = False
    if t.h.valuation() < 0:
        t = t.chevalley()
        theta = True
        diag.append("applied the Chevalley involution (same image)")
    a = -t.h.value_at_zero()
    if not a.is_zero():
        t = shift_S1(t, a)
        diag.append(f"shifted h by {a}")
    if t.h.valuation() != 1 or t.h.derivative().valuation() != 0:
        raise NotOverPowerSeries("expected nu(h) = 1 and nu(h') = 0 after reduction")
    phi = t.h
    psi = series_reversion(phi)
    b1 = t.b.compose(psi)
    z = t.ring.gen()
    g1 = (t.c - b1) / z
    s_tilde = series_exp_integral(g1)
    g = SemilinearElem(phi, s_tilde.compose(phi), psi)
    canon = Triple(t.ring.gen(), t.ring.from_scalar(t.c), t.c, "S1")
    return NormalForm("S1", canon, g, t, {"c": t.c, "theta": theta, "shift": a}, diag)


def normal_form_S0(r):
    """Canonical form of an S0 representation over C[[z]]: case1, case2(b) or case3(a, c)."""
    t = _triple_of(r)
    if t.family != "S0":
        raise ValuationOutOfRange("normal_form_S0 needs an S0 representation", family=t.family)
    _series(t.ring)
    for i, op in _images_of(t, (-1, 0, 1)).items():
        if not _in_power_series(op):
            raise ValuationOutOfRange(f"rho(L_{i}) does not preserve C[[z]]", index=i)
    h, b, ring = t.h, t.b, t.ring
    kappa = t.kappa
    nu = h.valuation()
    z = ring.gen()
    c = normalize_c(t.c)
    diag = [f"nu(h) = {nu}"]
    if nu == -2:
        b0 = b.value_at_zero()
        if b0 != Scalar.coerce(1) / 4:
            raise ValuationOutOfRange("case nu(h) = -2 forces b(0) = 1/4", b0=str(b0))
        canon = Triple(z ** -2, ring.from_scalar(Scalar.coerce(1) / 4), Scalar.coerce(-1) / 4, "S0")
        g = None
        try:
            phi = series_sqrt(h.inverse())
            psi = series_reversion(phi)
            b1 = b.compose(psi)
            g = SemilinearElem(phi, series_exp_integral((b1 - b0) * 2 / z).compose(phi), psi)
        except DiffRepsError as e:
            diag.append(f"no explicit element: {e}")
        return NormalForm("case1", canon, g, t, {}, diag)
    if nu == -1:
        phi = h.inverse()
        b0 = b.value_at_zero()
        if not (b0 * b0 - b0 - kappa).is_zero():
            raise ValuationOutOfRange("case nu(h) = -1 needs b^2 - b - c(c+1) = 0", b=str(b0))
        psi = series_reversion(phi)
        b1 = b.compose(psi)
        g = SemilinearElem(phi, series_exp_integral((b1 - b0) / z).compose(phi), psi)
        canon = Triple(z.inverse(), ring.from_scalar(b0), c, "S0")
        which = "-c" if b0 == -c else "c+1"
        return NormalForm("case2", canon, g, t, {"b": b0, "c_candidates": [str(x) for x in semilevel_candidates(c)], "b_is": which}, diag)
    if nu == 0:
        if h.derivative().valuation() != 0:
            raise ValuationOutOfRange("case nu(h) = 0 needs nu(h') = 0")
        a = h.value_at_zero().inverse()
        phi = h.inverse() - a
        psi = series_reversion(phi)
        b1 = b.compose(psi)
        g = SemilinearElem(phi, series_exp_integral(b1 / (z + a)).compose(phi), psi)
        canon = Triple((z + a).inverse(), ring.zero(), c, "S0")
        return NormalForm("case3", canon, g, t, {"a": a, "c_candidates": [str(x) for x in semilevel_candidates(c)]}, diag)
    raise ValuationOutOfRange("nu(h) must be -2, -1 or 0", valuation=nu)


# ---------------------------------------------------------------------------
# Witt_> over C[[z]]


def l2_cubic(L, lam):
    """``(L + 2 lam)(L - lam - 2)(L - lam - 1)``."""
    return compose(compose(L + 2 * lam, L - (lam + 2)), L - (lam + 1))


def obstruction_polynomials(b, lam):
    """``(A, B)``: free term and ``z d`` coefficient of ``rho(L_2) z^2`` for ``(1/z, b, c)``.

    ``rho(L_2)`` preserves C[[z]] iff both vanish.
    """
    from .coeffs import RATIONAL

    b, lam = Scalar.coerce(b), Scalar.coerce(lam)
    z = RATIONAL.gen()
    L = DiffOp({1: z, 0: RATIONAL.from_scalar(b)}, RATIONAL)
    op = l2_cubic(L, lam).scale(z ** -2)
    A = (op.coeff(0) * z * z).scalar_value()
    B = (op.coeff(1) * z).scalar_value()
    return A, B


R0_CASES = (
    ("(z^-1, 1, 0), lambda=-1", lambda c, b, lam: c == 0 and b == 1 and lam == -1),
    ("(z^-1, 1/2, -1/2), lambda=-1/2", lambda c, b, lam: c == Scalar.coerce(-1) / 2 and b == Scalar.coerce(1) / 2),
    ("(z^-1, 0, 0), lambda=0", lambda c, b, lam: c == 0 and b == 0 and lam == 0),
    ("(z^-1, c+1, c), lambda=c", lambda c, b, lam: b == c + 1 and lam == c),
    ("(z^-1, -c, c), lambda=-c-1", lambda c, b, lam: b == -c and lam == -c - 1),
)


def classify_witt_over_powerseries(r):
    """Canonical tag of a Witt_> representation over C[[z]]; NoCanonicalForm otherwise."""
    t = _triple_of(r, WITT_GT) if not isinstance(r, Triple) else r
    ring = t.ring
    _series(ring)
    images = _images_of(t, (-1, 0, 1, 2))
    preserves = {i: _in_power_series(op) for i, op in images.items()}
    if t.family == "R1":
        if not all(preserves.values()):
            raise NoCanonicalForm("R1 images do not preserve C[[z]]", preserves=str(preserves))
        if t.h.valuation() != 0 or t.h.derivative().valuation() != 0:
            raise NoCanonicalForm("R1 over C[[z]] needs nu(h) = nu(h') = 0")
        a = t.h.value_at_zero()
        z = ring.gen()
        return NormalForm("R1", Triple(z + a, ring.zero(), t.c, "R1"), None, t, {"a": a, "c": t.c})
    if t.family != "R0":
        raise NoCanonicalForm("expected an R0 or R1 representation of Witt_>", family=t.family)
    sl2 = Triple(t.h, t.b, t.c, "S0")
    try:
        nf = normal_form_S0(sl2)
    except ValuationOutOfRange as e:
        raise NoCanonicalForm(f"restriction to sl2 has no canonical form: {e}") from e
    lam = t.lam
    if nf.case == "case1":
        z = ring.gen()
        L = DiffOp({1: z / 2, 0: ring.from_scalar(Scalar.coerce(1) / 4)}, ring)
        top = l2_cubic(L, lam).scale(z ** -4)
        term = top.coeff(3)
        raise NoCanonicalForm(
            "rho(L_2) does not preserve C[[z]]",
            obstruction=f"({term})*d^3",
            lam=str(lam),
        )
    if nf.case == "case2":
        b = nf.data["b"]
        A, B = obstruction_polynomials(b, lam)
        if not (A.is_zero() and B.is_zero()):
            raise NoCanonicalForm("rho(L_2) does not preserve C[[z]]", A=str(A), B=str(B), b=str(b), lam=str(lam))
        c = nf.triple.c
        # pick the C_sl representative and match the listed triples
        for cc in semilevel_candidates(c):
            for name, test in R0_CASES:
                if test(cc, b, lam):
                    canon = Triple(nf.triple.h, nf.triple.b, cc, "R0", lam)
                    return NormalForm("R0", canon, nf.element, t, {"type": name, "A": A, "B": B})
        raise NoCanonicalForm("obstructions vanish but no listed triple matches", b=str(b), lam=str(lam))
    canon = Triple(nf.triple.h, nf.triple.b, nf.triple.c, "R0", lam)
    return NormalForm("R0", canon, nf.element, t, {"type": "((z+a)^-1, 0, c), lambda in {c, -c-1}", "a": nf.data["a"]})


__all__ = [
    "NormalForm",
    "SemilinearElem",
    "act_on_triple",
    "classify_witt_over_powerseries",
    "conjugate_op",
    "conjugate_rep",
    "normal_form_S0",
    "normal_form_S1",
    "obstruction_polynomials",
    "series_exp_integral",
    "series_reversion",
    "series_sqrt",
    "shift_S1",
    "SERIES",
    "LaurentSeries",
    "Ring",
]
