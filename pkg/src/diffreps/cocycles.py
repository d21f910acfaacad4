"""Residues, the Gelfand-Fuks cocycle and its pullback along R1 representations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .coeffs import LaurentSeries, RatFunc
from .errors import InsufficientPrecision, NotProportional, RingMismatch
from .liealg import vir_cocycle
from .reps import casimir_value, central_charge_zero_check
from .scalar import Scalar


def residue(f):
    """Coefficient of ``z^-1``."""
    if isinstance(f, LaurentSeries):
        if f.prec <= -1:
            raise InsufficientPrecision("coefficient of z^-1 is not known", prec=f.prec)
        return f.coefficient(-1)
    if isinstance(f, RatFunc):
        if f.is_zero():
            return Scalar.coerce(0)
        if f.is_laurent():
            return f.coefficient(-1)
        return f.to_series(0).coefficient(-1)
    raise TypeError(f"no residue for {type(f).__name__}")


def gf_cocycle(P, Q):
    """``sum m! n!/(m+n+1)! Res(f^(n+1) g^(m))`` over the parts ``f d^m`` of P and ``g d^n`` of Q."""
    if P.ring != Q.ring:
        raise RingMismatch(f"ring mismatch: {P.ring.tag} vs {Q.ring.tag}")
    acc = Scalar.coerce(0)
    for m, f in P.coeffs.items():
        for n, g in Q.coeffs.items():
            r = residue(f.derive(n + 1) * g.derive(m))
            if not r.is_zero():
                acc = acc + r * Fraction(factorial(m) * factorial(n), factorial(m + n + 1))
    return acc


class CocycleTable(dict):
    """``(i, j) -> value`` of a pulled-back cocycle on generator pairs."""

    def to_json(self):
        return [{"i": i, "j": j, "value": str(v)} for (i, j), v in sorted(self.items())]

    def is_antisymmetric(self):
        return all((j, i) not in self or (self[(j, i)] + v).is_zero() for (i, j), v in self.items())


def pullback_table(rep, bound=4, diagonal_only=True):
    """``rho^* Psi_GF`` on generator pairs with ``|i|, |j| <= bound``."""
    t = CocycleTable()
    for i in range(-bound, bound + 1):
        for j in range(-bound, bound + 1):
            if diagonal_only and i + j != 0:
                continue
            t[(i, j)] = gf_cocycle(rep.image(i), rep.image(j))
    return t


@dataclass
class PullbackResult:
    coefficient: Scalar
    coboundary: Scalar
    v: int
    table: CocycleTable
    ratios: dict = field(default_factory=dict)
    first_form: Scalar | None = None
    second_form: Scalar | None = None

    def to_dict(self):
        return {
            "coefficient": str(self.coefficient),
            "coboundary": str(self.coboundary),
            "v(h)": self.v,
            "first_printed_form": str(self.first_form),
            "second_printed_form": str(self.second_form),
            "matches_first_form": self.coefficient == self.first_form,
            "matches_second_form": self.coefficient == self.second_form,
            "table": self.table.to_json(),
        }


def printed_forms(c, v):
    """The two closed forms ``-2(1 - 6c + 6c^2) v`` and ``(1 - 3(2c+1)^2) v``."""
    c = Scalar.coerce(c)
    first = -2 * (1 - 6 * c + 6 * c * c) * v
    second = (1 - 3 * (2 * c + 1) ** 2) * v
    return first, second


def pullback_coefficient(rep, bound=4):
    """Coefficient k with ``rho^* Psi_GF = k Psi + d(mu)`` on the pairs ``(i, -i)``.

    The pullback may differ from a multiple of Psi by the coboundary
    ``(L_i, L_-i) -> 2 i mu(L_0)``; its size is read off at ``i = 1`` (where
    Psi vanishes) and removed before the ratios at ``i = 2..bound`` are compared.
    """
    t = rep.triple
    if t is None or t.family != "R1":
        raise ValueError("pullback_coefficient needs an R1 representation")
    if t.ring.kind != "laurent":
        raise RingMismatch("pullback_coefficient works over C[z, 1/z]", ring=t.ring.tag)
    terms = t.h.laurent_terms()
    v = int(min(terms))
    table = pullback_table(rep, bound)
    cob = table[(1, -1)] / 2
    ratios = {}
    for i in range(2, bound + 1):
        ratios[i] = (table[(i, -i)] - 2 * i * cob) / vir_cocycle(i, -i)
    vals = list(ratios.values())
    if any(x != vals[0] for x in vals[1:]):
        raise NotProportional(
            "pullback is not proportional to Psi", ratios={i: str(x) for i, x in ratios.items()}
        )
    first, second = printed_forms(t.c, v)
    return PullbackResult(vals[0], cob, v, table, ratios, first, second)


def casimir_form(rep, v):
    """``(1 - 3 rho(C)) v`` with the Casimir evaluated on the representation."""
    return (1 - 3 * casimir_value(rep)) * v


__all__ = [
    "CocycleTable",
    "PullbackResult",
    "casimir_form",
    "central_charge_zero_check",
    "gf_cocycle",
    "printed_forms",
    "pullback_coefficient",
    "pullback_table",
    "residue",
]
