"""``diffreps`` command line: JSON reports over the library.

Every run prints one JSON object ``{command, status, payload, timing}``.
Exit codes: 0 ok, 1 a mathematical check failed, 2 bad input or a violated
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import cocycles, env, group, reps, weyl
from .coeffs import DEFAULT_PREC, LAURENT, LAURENT_Q, RATIONAL, series_ring
from .diffop import DiffOp
from .errors import DiffRepsError
from .liealg import algebra
from .parse import MAX_PARAMS, parse_coeff, parse_op, parse_scalar, render


class UsageError(DiffRepsError):
    code = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Fail(Exception):
    """Carries a payload whose mathematical check did not pass."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


_RINGS = {
    "rational": "rational", "C(z)": "rational",
    "laurent": "laurent", "C[z,1/z]": "laurent", "C[z,z^-1]": "laurent",
    "series": "series", "C((z))": "series", "C[[z]]": "series",
}


class Ctx:
    def __init__(self, args):
        self.args = args
        self.prec = args.prec
        self.max_params = args.max_params

    def ring(self, name=None):
        name = name or getattr(self.args, "ring", None) or "rational"
        kind = _RINGS.get(name)
        if kind is None:
            raise UsageError(f"unknown ring {name!r}", choices=", ".join(sorted(set(_RINGS))))
        if kind == "series":
            return series_ring(self.prec)
        return {"rational": RATIONAL, "laurent": LAURENT}[kind]

    def coeff(self, text, ring):
        return parse_coeff(text, ring, self.max_params)

    def scalar(self, text):
        return parse_scalar(text, self.max_params)

    def op(self, text, ring):
        return parse_op(text, ring, self.max_params)

    def triple(self, family=None):
        a = self.args
        family = family or a.family
        if family is None:
            raise UsageError("--family is required")
        if a.h is None or a.b is None or a.c is None:
            raise UsageError("--h, --b and --c are required")
        ring = self.ring()
        lam = self.scalar(a.lam) if a.lam is not None else None
        return reps.Triple(self.coeff(a.h, ring), self.coeff(a.b, ring), self.scalar(a.c), family, lam)

    def images(self):
        ring = self.ring()
        out = {}
        for item in self.args.image or ():
            if "=" not in item:
                raise UsageError(f"--image expects INDEX=OPERATOR, got {item!r}")
            i, text = item.split("=", 1)
            out[int(i)] = self.op(text, ring)
        return out


def _range(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as e:
        raise UsageError(f"range must look like LO..HI, got {text!r}") from e


def _op_entry(i, op):
    return {"i": i, "op": render(op), "order": op.order, "symbol": render(op.symbol) if not op.is_zero() else "0"}


def _indices(rep, lo, hi):
    return [i for i in range(lo, hi + 1) if i in rep.algebra]


def _alg_for(t, args):
    return algebra(args.algebra) if getattr(args, "algebra", None) else None


# ---------------------------------------------------------------------------
# rep


def cmd_rep_build(ctx):
    t = ctx.triple()
    rep = reps.build(t, alg=_alg_for(t, ctx.args))
    lo, hi = _range(ctx.args.range)
    return {
        "triple": t.to_dict(),
        "algebra": rep.algebra.name,
        "images": [_op_entry(i, rep.image(i)) for i in _indices(rep, lo, hi)],
    }


def _rep_from_args(ctx):
    if ctx.args.image:
        return reps.Representation.from_images(ctx.images(), ctx.args.algebra or "sl2", ctx.ring())
    t = ctx.triple()
    return reps.build(t, alg=_alg_for(t, ctx.args))


def cmd_rep_verify(ctx):
    rep = _rep_from_args(ctx)
    report = reps.verify_brackets(rep, ctx.args.max_index, ctx.args.lo)
    if not report["ok"]:
        raise _Fail(report)
    return report


def _read_batches(path):
    batches, cur = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                continue
            if not line:
                if cur:
                    batches.append(cur)
                cur = []
                continue
            cur.append(line)
    if cur:
        batches.append(cur)
    return batches


def cmd_rep_classify(ctx):
    alg = ctx.args.algebra or "sl2"
    if ctx.args.file:
        results = []
        for lines in _read_batches(ctx.args.file):
            ctx.args.image = lines
            try:
                res = reps.classify(ctx.images(), alg)
                results.append({"status": "ok", "classification": res.to_dict()})
            except DiffRepsError as e:
                results.append({"status": "error", "error": e.to_dict()})
        return {"results": results}
    if not ctx.args.image:
        raise UsageError("give --image INDEX=OPERATOR (repeatable) or --file")
    return reps.classify(ctx.images(), alg).to_dict()


def cmd_rep_casimir(ctx):
    rep = _rep_from_args(ctx)
    value = reps.casimir_value(rep)
    out = {"casimir": render(value), "factored": value.factored()}
    if rep.triple is not None:
        expected = (2 * rep.triple.c + 1) ** 2
        out["expected"] = render(expected)
        out["matches"] = value == expected
        if not out["matches"]:
            raise _Fail(out)
    return out


def cmd_rep_conjugate(ctx):
    t = ctx.triple()
    ring = t.ring
    phi = ctx.coeff(ctx.args.phi, ring) if ctx.args.phi else None
    s = ctx.coeff(ctx.args.s, ring) if ctx.args.s else None
    g = group.SemilinearElem(phi, s)
    new = group.act_on_triple(g, t)
    rep = reps.build(t)
    conj = group.conjugate_rep(g, rep)
    rebuilt = reps.build(new)
    lo, hi = _range(ctx.args.range)
    idx = _indices(rep, lo, hi)
    agree = all(conj.image(i) == rebuilt.image(i) for i in idx)
    out = {
        "element": g.to_dict(),
        "triple": new.to_dict(),
        "images": [_op_entry(i, conj.image(i)) for i in idx],
        "matches_rebuilt_triple": agree,
    }
    if not agree:
        raise _Fail(out)
    return out


def cmd_rep_normalize(ctx):
    kind = ctx.args.kind
    t = ctx.triple({"s1": "S1", "s0": "S0"}.get(kind, ctx.args.family))
    if kind == "s1":
        return group.normal_form_S1(t).to_dict()
    if kind == "s0":
        return group.normal_form_S0(t).to_dict()
    return group.classify_witt_over_powerseries(t).to_dict()


def cmd_rep_centralizer(ctx):
    rep = _rep_from_args(ctx)
    sols = reps.centralizer_check(rep, ctx.args.max_order, ctx.args.max_degree)
    out = {"basis": [render(s) for s in sols]}
    out["only_constants"] = all(s.order == 0 and s.scalar_value() is not None for s in sols)
    return out


def cmd_rep_companion(ctx):
    t = ctx.triple("R0")
    res = reps.companion_extension(reps.build(t), ctx.args.max_index)
    out = {
        "quadratic": [render(x) for x in res.quadratic],
        "roots": [render(x) for x in res.roots],
        "double_root": res.double_root,
        "extensions": [
            {"alpha": render(a), "triple": r.triple.to_dict() if r.triple else None, "verified": rep["ok"]}
            for a, r, rep in zip(res.roots, res.representations, res.reports)
        ],
    }
    if not all(e["verified"] for e in out["extensions"]):
        raise _Fail(out)
    return out


# ---------------------------------------------------------------------------
# env / cocycle / weyl / parse


def cmd_env(ctx):
    a = ctx.args
    t = ctx.triple()
    rep = reps.build(t)
    if a.action == "kernel":
        ok = env.kernel_check(rep)
        out = {"casimir_minus_constant_is_zero": ok, "constant": render((2 * t.c + 1) ** 2)}
        if not ok:
            raise _Fail(out)
        return out
    if a.action == "witness":
        target = "d" if a.target in ("d", "∂") else "z^k"
        e = env.surjectivity_witness(rep, target, a.k)
        goal = DiffOp.d(rep.ring) if target == "d" else DiffOp.mult(rep.ring.monomial(a.k))
        ok = env.verify_witness(e, rep, goal)
        out = {"target": render(goal), "element": e.to_list(), "verified": ok}
        if not ok:
            raise _Fail(out)
        return out
    alpha, beta, gamma = a.pbw
    op = env.env_image(env.EnvElement.pbw(alpha, beta, gamma), rep)
    return {"monomial": [alpha, beta, gamma], "image": render(op)}


def cmd_cocycle(ctx):
    if ctx.args.ring is None:
        ctx.args.ring = "laurent"
    t = ctx.triple("R1")
    res = cocycles.pullback_coefficient(reps.build(t), ctx.args.bound)
    out = res.to_dict()
    out["central_charge_zero"] = cocycles.central_charge_zero_check(reps.build(t))
    return out


def cmd_weyl(ctx):
    a = ctx.args
    if a.action == "auto":
        w = weyl.WeylAuto(a.kind, a.n, ctx.scalar(a.alpha))
        ops = [ctx.op(x, RATIONAL) for x in a.op]
        return {"automorphism": {"kind": w.kind, "n": w.n, "alpha": render(w.alpha)},
                "images": [{"op": render(p), "image": render(weyl.apply_weyl_auto(w, p))} for p in ops]}
    if a.action == "fourier":
        ops = [ctx.op(x, RATIONAL) for x in a.op]
        return {"images": [{"op": render(p), "image": render(weyl.fourier_transport(p))} for p in ops]}
    b = ctx.coeff(a.b, RATIONAL)
    c = ctx.scalar(a.c)
    lo, hi = _range(a.range)
    rep = weyl.build_hat_rep(b, c)
    idx = [i for i in range(lo, hi + 1) if i >= -1]
    out = {"ring": LAURENT_Q.tag, "images": [_op_entry(i, rep.image(i)) for i in idx]}
    report = reps.verify_brackets(rep, hi, lo)
    out["verify"] = report
    if not report["ok"]:
        raise _Fail(out)
    return out


def cmd_parse(ctx):
    ring = ctx.ring()
    op = ctx.op(ctx.args.expr, ring)
    return {"ring": ring.tag, "canonical": render(op), "order": op.order}


# ---------------------------------------------------------------------------
# argument parsing


def _triple_flags(p, ring_default=None):
    p.add_argument("--family", choices=reps.FAMILIES)
    p.add_argument("--h")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--ring", default=ring_default, help="rational | laurent | series")
    p.add_argument("--algebra", help="sl2 | Witt | Witt_> | Witt_< | Vir")


def build_parser():
    p = _Parser(prog="diffreps", description="Differential-operator representations of sl2 and Witt algebras.")
    p.add_argument("--prec", type=int, default=DEFAULT_PREC, help="power-series precision (default 24)")
    p.add_argument("--max-params", type=int, default=MAX_PARAMS, help="maximum number of formal parameters")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    rep = sub.add_parser("rep").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    q = rep.add_parser("build")
    _triple_flags(q)
    q.add_argument("--range", default="-1..1")
    q.set_defaults(func=cmd_rep_build)

    q = rep.add_parser("verify")
    _triple_flags(q)
    q.add_argument("--image", action="append", help="INDEX=OPERATOR, repeatable")
    q.add_argument("--max-index", type=int, default=6)
    q.add_argument("--lo", type=int)
    q.set_defaults(func=cmd_rep_verify)

    q = rep.add_parser("classify")
    q.add_argument("--image", action="append", help="INDEX=OPERATOR, repeatable")
    q.add_argument("--file", help="INDEX=OPERATOR per line; blank lines separate representations")
    q.add_argument("--ring")
    q.add_argument("--algebra")
    q.set_defaults(func=cmd_rep_classify)

    q = rep.add_parser("casimir")
    _triple_flags(q)
    q.add_argument("--image", action="append")
    q.set_defaults(func=cmd_rep_casimir)

    q = rep.add_parser("conjugate")
    _triple_flags(q)
    q.add_argument("--phi", help="substitution phi (the action uses phi^-1)")
    q.add_argument("--s", help="homothety ratio")
    q.add_argument("--range", default="-1..1")
    q.set_defaults(func=cmd_rep_conjugate)

    q = rep.add_parser("normalize")
    _triple_flags(q, ring_default="series")
    q.add_argument("--kind", choices=("s1", "s0", "witt"), required=True)
    q.set_defaults(func=cmd_rep_normalize)

    q = rep.add_parser("centralizer")
    _triple_flags(q)
    q.add_argument("--image", action="append")
    q.add_argument("--max-order", type=int, default=3)
    q.add_argument("--max-degree", type=int, default=6)
    q.set_defaults(func=cmd_rep_centralizer)

    q = rep.add_parser("companion")
    _triple_flags(q)
    q.add_argument("--max-index", type=int, default=6)
    q.set_defaults(func=cmd_rep_companion)

    q = sub.add_parser("env")
    q.add_argument("action", choices=("kernel", "witness", "pbw"))
    _triple_flags(q)
    q.add_argument("--target", default="z^k", help="z^k or d")
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--pbw", type=int, nargs=3, default=(1, 1, 1), metavar=("ALPHA", "BETA", "GAMMA"))
    q.set_defaults(func=cmd_env)

    q = sub.add_parser("cocycle")
    _triple_flags(q)
    q.add_argument("--bound", type=int, default=4)
    q.set_defaults(func=cmd_cocycle)

    q = sub.add_parser("weyl")
    q.add_argument("action", choices=("auto", "fourier", "hat"))
    q.add_argument("--kind", choices=("Phi", "PhiPrime"), default="Phi")
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--alpha", default="1")
    q.add_argument("--op", action="append", default=[])
    q.add_argument("--b", default="c")
    q.add_argument("--c", default="c")
    q.add_argument("--range", default="-1..4")
    q.set_defaults(func=cmd_weyl)

    q = sub.add_parser("parse")
    q.add_argument("expr")
    q.add_argument("--ring")
    q.set_defaults(func=cmd_parse)
    return p


def _attach_negative_values(argv):
    """``--b -c`` -> ``--b=-c``: values may start with a minus sign."""
    out, k = [], 0
    while k < len(argv):
        tok = argv[k]
        nxt = argv[k + 1] if k + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None
                and nxt.startswith("-") and not nxt.startswith("--") and nxt != "-h"):
            out.append(f"{tok}={nxt}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


def _echo(args):
    return "diffreps " + " ".join(args)


def run(argv=None):
    """Execute a command and return ``(report, exit_code)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(_attach_negative_values(argv))
        payload = args.func(Ctx(args))
        status, code = "ok", 0
    except _Fail as f:
        payload, status, code = f.payload, "fail", 1
    except DiffRepsError as e:
        payload, status, code = e.to_dict(), "error", 2
    except (ValueError, TypeError, ArithmeticError, OSError) as e:
        payload, status, code = {"error": type(e).__name__, "message": str(e)}, "error", 2
    report = {
        "command": _echo(argv),
        "status": status,
        "payload": payload,
        "timing": {"seconds": round(time.perf_counter() - start, 4)},
    }
    return report, code


def main(argv=None):
    report, code = run(argv)
    print(json.dumps(report, indent=2, ensure_ascii=False, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
