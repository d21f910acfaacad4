"""Build several families on one h, check brackets and the Casimir."""

from diffreps.coeffs import RATIONAL
from diffreps.liealg import WITT
from diffreps.parse import render
from diffreps.reps import Triple, build, casimir_value, classify, verify_brackets
from diffreps.scalar import Scalar

c = Scalar.param("c")
h = RATIONAL.coerce("z/(1 + z^2)")
b = RATIONAL.coerce("c + z")

for family, lam, alg in (("S1", None, None), ("R1", None, WITT), ("R0", c, None), ("R0", -c - 1, None)):
    rep = build(Triple(h, b, c, family, lam), alg=alg)
    report = verify_brackets(rep, 3)
    print(f"{family} lambda={render(lam) if lam is not None else '-'} algebra={rep.algebra.name}")
    for i in (-1, 0, 1):
        P = rep.image(i)
        print(f"  L[{i}] order {P.order}: {render(P)}")
    print(f"  brackets ok: {report['ok']} ({len(report['pairs'])} pairs)")
    print(f"  casimir: {casimir_value(rep).factored()}")

# recover the triple from three images alone
rep = build(Triple(h, b, c, "S0"))
res = classify({i: rep.image(i) for i in (-1, 0, 1)})
print("classified as", res.family, "h =", render(res.triple.h), "c in", [render(x) for x in res.c_candidates])
