"""Move a power-series triple to its canonical form and back."""

from diffreps.coeffs import SERIES
from diffreps.errors import NoCanonicalForm
from diffreps.group import classify_witt_over_powerseries, conjugate_rep, normal_form_S1
from diffreps.parse import render
from diffreps.reps import Triple, build
from diffreps.scalar import Scalar

c = Scalar.param("c")
S = SERIES.coerce

t = Triple(S("z + z^2 - 3*z^3"), S("c + 2*z"), c, "S1")
nf = normal_form_S1(t)
print("canonical:", render(nf.triple.h), "|", render(nf.triple.b))
print("element phi:", render(nf.element.phi))
print("element s:  ", render(nf.element.s)[:60], "...")

back = conjugate_rep(nf.element.inverse(), build(nf.triple))
src = build(nf.prepared)
print("re-conjugation reproduces the input:", all(back.image(i) == src.image(i) for i in (-1, 0, 1)))

# a Witt_> representation with no canonical form over C[[z]]
quarter = Scalar.coerce(1) / 4
try:
    classify_witt_over_powerseries(Triple(S("z^-2"), SERIES.from_scalar(quarter), -quarter, "R0", -quarter))
except NoCanonicalForm as e:
    print("obstruction:", e.details["obstruction"])
