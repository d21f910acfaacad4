"""Dixmier automorphisms of the Weyl algebra and the transport to C[q, 1/q].

The transport sends ``d -> -1/q`` and ``z -> Z = -q^2 dq``; since
``[-1/q, Z] = 1`` it extends to an algebra map on operators written in
left-z normal form ``sum xi_j(z) d^j``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import LAURENT_Q, RATIONAL
from .diffop import DiffOp, compose
from .errors import ConstraintViolated, OrderViolation
from .liealg import SL2, WITT_GT, algebra
from .reps import Representation, classify
from .scalar import Scalar


def _poly_terms(f):
    """``{k: Scalar}`` for a polynomial coefficient; rejects anything else."""
    if not f.is_polynomial():
        raise ConstraintViolated("coefficients must be polynomials in z", coefficient=str(f))
    return f.laurent_terms()


def _substitute(P, Zop, Dop, ring):
    """``sum xi_j(Zop) o Dop^j`` (Horner in Zop, powers of Dop cached)."""
    acc = DiffOp.zero(ring)
    if P.is_zero():
        return acc
    Dpow = [DiffOp.const(1, ring)]
    for j in sorted(P.coeffs):
        while len(Dpow) <= j:
            Dpow.append(compose(Dpow[-1], Dop))
        terms = _poly_terms(P.coeffs[j])
        top = max(terms)
        xi = DiffOp.zero(ring)
        for k in range(top, -1, -1):
            xi = compose(xi, Zop)
            if k in terms:
                xi = xi + DiffOp.const(ring.from_scalar(terms[k]), ring)
        acc = acc + compose(xi, Dpow[j])
    return acc


@dataclass(frozen=True)
class WeylAuto:
    """``Phi_{n,a}: z -> z, d -> a z^n + d``; ``PhiPrime_{n,a}: z -> z + a d^n, d -> d``."""

    kind: str
    n: int
    alpha: Scalar

    def __post_init__(self):
        if self.kind not in ("Phi", "PhiPrime"):
            raise ValueError("kind must be 'Phi' or 'PhiPrime'")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        object.__setattr__(self, "alpha", Scalar.coerce(self.alpha))

    def generators(self, ring=RATIONAL):
        z = DiffOp.mult(ring.gen())
        d = DiffOp.d(ring)
        a = ring.from_scalar(self.alpha)
        if self.kind == "Phi":
            return z, d + DiffOp.mult(a * ring.gen() ** self.n)
        shift = DiffOp.d(ring, self.n).scale(a) if self.n else DiffOp.const(a, ring)
        return z + shift, d


def apply_weyl_auto(w, P):
    """Image of the operator P (polynomial coefficients) under the automorphism w."""
    Z, D = w.generators(P.ring)
    return _substitute(P, Z, D, P.ring)


def weyl_rep(w, rep):
    """``w o rho`` as a representation (built lazily)."""
    return Representation(rep.algebra, rep.ring, builder=lambda i: apply_weyl_auto(w, rep.image(i)))


def fourier_generators(ring=LAURENT_Q):
    q = ring.gen()
    Z = DiffOp({1: -(q * q)}, ring)
    D = DiffOp.mult(-q.inverse())
    return Z, D


def fourier_transport(P, ring=LAURENT_Q):
    """``d^n -> (-1/q)^n``, ``z^n -> (-q^2 dq)^n`` on left-z normal form."""
    Z, D = fourier_generators(ring)
    return _substitute(P, Z, D, ring)


def build_hat_rep(b, c, index_range=None, alg=WITT_GT):
    """``rho_hat(L_i) = Z^(i+1) o (1/q) + (b(Z) + i c) Z^i`` over C[q, 1/q].

    For ``i = -1`` the term ``(b(Z) - c) Z^-1`` is a differential operator only
    when ``b(0) = c``; it is then ``((b(z) - c)/z)(Z)``.
    """
    ring = LAURENT_Q
    bz = RATIONAL.coerce(b)
    bterms = _poly_terms(bz) if not bz.is_zero() else {}
    c = Scalar.coerce(c)
    Z, _ = fourier_generators(ring)
    inv_q = DiffOp.mult(ring.gen().inverse())

    def poly_in_Z(terms):
        acc = DiffOp.zero(ring)
        top = max(terms, default=-1)
        for k in range(top, -1, -1):
            acc = compose(acc, Z)
            if k in terms:
                acc = acc + DiffOp.const(ring.from_scalar(terms[k]), ring)
        return acc

    bZ = poly_in_Z(bterms)

    def rho(i):
        if i < -1:
            raise ValueError("rho_hat is defined for i >= -1")
        if i == -1:
            b0 = bterms.get(0, Scalar.coerce(0))
            if b0 != c:
                raise ConstraintViolated("rho_hat(L_-1) needs b(0) = c", b0=str(b0), c=str(c))
            shifted = {k - 1: v for k, v in bterms.items() if k >= 1}
            return inv_q + poly_in_Z(shifted)
        Zi = Z ** i
        return compose(Z ** (i + 1), inv_q) + compose(bZ + DiffOp.const(ring.from_scalar(i * c), ring), Zi)

    rep = Representation(algebra(alg), ring, builder=rho)
    rep.hat_data = {"b": bz, "c": c}
    if index_range is not None:
        for i in range(index_range[0], index_range[1] + 1):
            rep.image(i)
    return rep


def hat_order(deg_b, i):
    """Order of ``rho_hat(L_i)``: ``i + max(deg b, 1)``."""
    return i + max(deg_b, 1)


def classify_hat(images, alg=SL2):
    """Triple of a transported representation with first order ``rho_hat(L_0)``."""
    images = dict(images)
    if 0 in images and images[0].order != 1:
        raise OrderViolation(
            "rho_hat(L_0) has order > 1; the classification does not apply", n0=images[0].order
        )
    return classify(images, alg)


__all__ = [
    "WeylAuto",
    "apply_weyl_auto",
    "build_hat_rep",
    "classify_hat",
    "fourier_generators",
    "fourier_transport",
    "hat_order",
    "weyl_rep",
]
