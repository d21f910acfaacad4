from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diffreps.errors import IndexOutOfSupport, NegativeOrderOperatorPochhammer, ScalarPoleInDenominator
from diffreps.liealg import (
    CASIMIR,
    CASIMIR_ALT,
    SL2,
    WITT,
    WITT_GT,
    WITT_LT,
    VIR,
    PBWMonomial,
    algebra,
    chevalley,
    pochhammer,
    structure_bracket,
    vir_cocycle,
)
from diffreps.diffop import DiffOp
from diffreps.scalar import Scalar

from conftest import C, scalars

IDX = range(-8, 9)


def test_supports():
    assert [i for i in range(-4, 5) if i in SL2] == [-1, 0, 1]
    assert -1 in WITT_GT and -2 not in WITT_GT and 7 in WITT_GT
    assert 1 in WITT_LT and 2 not in WITT_LT and -7 in WITT_LT
    assert all(i in WITT and i in VIR for i in IDX)
    assert VIR.has_central and not WITT.has_central
    assert algebra("witt_>") == WITT_GT


def test_structure_bracket_examples():
    assert structure_bracket(1, -1) == (2, 0)
    assert structure_bracket(3, 3) == (0, 6)
    assert structure_bracket(2, -2) == (4, 0)


def test_structure_bracket_support():
    with pytest.raises(IndexOutOfSupport):
        structure_bracket(2, 0, SL2)
    with pytest.raises(IndexOutOfSupport):
        structure_bracket(-2, 0, WITT_GT)


def _br(x, y):
    """Bracket of basis-combination dicts."""
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            k, n = structure_bracket(i, j)
            out[n] = out.get(n, 0) + a * b * k
    return {k: v for k, v in out.items() if v}


def test_antisymmetry_and_jacobi():
    for i in IDX:
        for j in IDX:
            assert structure_bracket(i, j)[0] == -structure_bracket(j, i)[0]
            for k in range(-8, 9, 3):
                x, y, w = {i: 1}, {j: 1}, {k: 1}
                tot = {}
                for part in (_br(x, _br(y, w)), _br(y, _br(w, x)), _br(w, _br(x, y))):
                    for n, v in part.items():
                        tot[n] = tot.get(n, 0) + v
                assert not any(tot.values())


def test_vir_cocycle_values():
    assert vir_cocycle(2, -2) == Fraction(1, 2)
    assert vir_cocycle(1, -1) == 0
    assert vir_cocycle(3, -3) == 2
    assert vir_cocycle(3, -2) == 0


def test_vir_cocycle_identity():
    for i in IDX:
        for j in IDX:
            k = -i - j
            if k not in IDX:
                continue
            # Psi([L_i, L_j], L_k) + cyclic = 0
            tot = Scalar.coerce(0)
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                coef, n = structure_bracket(a, b)
                tot = tot + coef * vir_cocycle(n, c)
            assert tot == 0


def test_chevalley_examples():
    assert chevalley(0) == (-1, 0)
    assert chevalley(1) == (1, -1)
    for i in range(-6, 7):
        s1, j = chevalley(i)
        s2, k = chevalley(j)
        assert k == i and s1 * s2 == 1


def test_chevalley_is_homomorphism():
    for i in IDX:
        for j in IDX:
            coef, n = structure_bracket(i, j)
            (si, ti), (sj, tj), (sn, tn) = chevalley(i), chevalley(j), chevalley(n)
            c2, n2 = structure_bracket(ti, tj)
            assert n2 == tn
            assert si * sj * c2 == coef * sn or coef == c2 == 0


def test_pochhammer_examples():
    f = Scalar.param("f")
    assert pochhammer(f, 0) == 1
    assert pochhammer(Scalar.coerce(3), 2) == 12
    assert pochhammer(f, -1) == 1 / (f - 1)


def test_pochhammer_errors():
    with pytest.raises(NegativeOrderOperatorPochhammer):
        pochhammer(DiffOp.d(), -1)
    with pytest.raises(ScalarPoleInDenominator):
        pochhammer(Scalar.coerce(2), -3)


@given(scalars(), st.integers(-4, 4), st.integers(-4, 4))
def test_pochhammer_product(f, m, n):
    f = f + C  # generic: the negative branch never hits a pole
    assert pochhammer(f, m + n) == pochhammer(f, m) * pochhammer(f + m, n)


def test_pbw_word_and_casimir_data():
    assert PBWMonomial(2, 1, 1).word() == (1, 1, 0, -1)
    assert PBWMonomial(0, 0, 0).word() == ()
    with pytest.raises(ValueError):
        PBWMonomial(-1, 0, 0)
    assert sum(c for c, _ in CASIMIR) == -3
    assert {w for _, w in CASIMIR_ALT} == {(0, 0), (0,), (), (1, -1)}
