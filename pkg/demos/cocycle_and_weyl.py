"""Pull back the Gelfand-Fuks cocycle, then move to the Fourier side."""

from diffreps.cocycles import pullback_coefficient
from diffreps.coeffs import LAURENT, RATIONAL
from diffreps.liealg import WITT
from diffreps.parse import parse_op, render
from diffreps.reps import Triple, build
from diffreps.scalar import Scalar
from diffreps.weyl import build_hat_rep, fourier_transport

c = Scalar.param("c")
zl = LAURENT.gen()

for h in (zl, zl.inverse()):
    res = pullback_coefficient(build(Triple(h, LAURENT.from_scalar(c), c, "R1"), alg=WITT))
    print(f"h = {render(h)}: coefficient {res.coefficient.factored()}, v(h) = {res.v}")
    print(f"  (1 - 3(2c+1)^2) v(h) = {render(res.second_form)}")

for text in ("-d", "-z*d - c", "-z^2*d - 2*c*z"):
    print(f"{text:>16}  ->  {render(fourier_transport(parse_op(text)))}")

hat = build_hat_rep(RATIONAL.coerce("c + z - z^2"), c, range(-1, 4))
for i in range(-1, 4):
    print(f"hat L[{i}] has order {hat.image(i).order}")
