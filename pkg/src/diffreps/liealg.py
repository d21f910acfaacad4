"""Abstract data of sl(2), the Witt algebras and the Virasoro algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IndexOutOfSupport, NegativeOrderOperatorPochhammer, ScalarPoleInDenominator
from .scalar import Scalar

ALGEBRAS = ("sl2", "Witt_>", "Witt_<", "Witt", "Vir")


@dataclass(frozen=True)
class AlgebraTag:
    name: str

    def __post_init__(self):
        if self.name not in ALGEBRAS:
            raise ValueError(f"unknown algebra {self.name!r}; expected one of {ALGEBRAS}")

    def __contains__(self, i):
        return in_support(self.name, i)

    @property
    def has_central(self):
        return self.name == "Vir"

    def indices(self, lo, hi):
        """Support indices within ``[lo, hi]``."""
        return [i for i in range(lo, hi + 1) if i in self]

    def chevalley_image(self):
        return AlgebraTag({"Witt_>": "Witt_<", "Witt_<": "Witt_>"}.get(self.name, self.name))


SL2 = AlgebraTag("sl2")
WITT_GT = AlgebraTag("Witt_>")
WITT_LT = AlgebraTag("Witt_<")
WITT = AlgebraTag("Witt")
VIR = AlgebraTag("Vir")


def algebra(name):
    if isinstance(name, AlgebraTag):
        return name
    key = name.strip()
    return AlgebraTag(_ALIASES.get(key.lower(), key))


_ALIASES = {
    "sl2": "sl2",
    "sl(2)": "sl2",
    "witt_>": "Witt_>",
    "witt>": "Witt_>",
    "witt_<": "Witt_<",
    "witt<": "Witt_<",
    "witt": "Witt",
    "vir": "Vir",
}


def in_support(name, i):
    if name == "sl2":
        return -1 <= i <= 1
    if name == "Witt_>":
        return i >= -1
    if name == "Witt_<":
        return i <= 1
    return True


def structure_bracket(i, j, alg=WITT):
    """``[L_i, L_j] = (i - j) L_{i+j}`` as ``(coefficient, index)``."""
    alg = algebra(alg)
    for k in (i, j):
        if k not in alg:
            raise IndexOutOfSupport(f"L_{k} is not in {alg.name}", index=k, algebra=alg.name)
    return i - j, i + j


def vir_cocycle(i, j):
    """The Virasoro cocycle ``(i^3 - i)/12 * delta_{i+j,0}``."""
    if i + j != 0:
        return Scalar.coerce(0)
    return Scalar.coerce(Fraction(i ** 3 - i, 12))


def vir_bracket(i, j):
    """``[L_i, L_j]`` in Vir: ``(coefficient, index, central coefficient of K)``."""
    return i - j, i + j, vir_cocycle(i, j)


def chevalley(i):
    """``Theta(L_i) = (-1)^(i+1) L_{-i}``."""
    return (1 if (i + 1) % 2 == 0 else -1), -i


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """``L_1^alpha L_0^beta L_{-1}^gamma``."""

    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("PBW exponents must be non-negative")

    def word(self):
        return (1,) * self.alpha + (0,) * self.beta + (-1,) * self.gamma

    @property
    def degree(self):
        return self.alpha - self.gamma


# Casimir of sl(2): (h+1)^2 + 4fe with f -> L_-1, h -> -2 L_0, e -> -L_1,
# i.e. 4((L_0 - 1/2)^2 - L_-1 L_1).  Terms are (coefficient, word).
CASIMIR = ((4, (0, 0)), (-4, (0,)), (1, ()), (-4, (-1, 1)))
# the same element written as 4((L_0 + 1/2)^2 - L_1 L_-1); used as a cross-check
CASIMIR_ALT = ((4, (0, 0)), (4, (0,)), (1, ()), (-4, (1, -1)))

SL2_BASIS = {"f": (1, -1), "h": (-2, 0), "e": (-1, 1)}


def pochhammer(f, n):
    """``P(f, n)``: rising factorial for n >= 0, ``1/((f+n)...(f-1))`` for n < 0.

    ``f`` may be a Scalar (or number) or a DiffOp; operators only admit n >= 0.
    """
    from .diffop import DiffOp, compose

    if isinstance(f, DiffOp):
        if n < 0:
            raise NegativeOrderOperatorPochhammer(
                "operator Pochhammer symbols need n >= 0", n=n
            )
        acc = DiffOp.const(1, f.ring)
        for k in range(n):
            acc = compose(acc, f + k)
        return acc
    f = Scalar.coerce(f)
    if n >= 0:
        acc = Scalar.coerce(1)
        for k in range(n):
            acc = acc * (f + k)
        return acc
    acc = Scalar.coerce(1)
    for k in range(n, 0):
        t = f + k
        if t.is_zero():
            raise ScalarPoleInDenominator(f"P(f, {n}) has a pole: f + {k} = 0", n=n)
        acc = acc * t
    return acc.inverse()
