"""Command-line front end.

Exit codes: 0 for decided output (Equal, NotEqual or a computed report),
2 for Inconclusive, 1 for input errors.  Every report carries ``verdict``
and an ``evidence`` object with ``first_difference``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import literals, paper_suite
from .brauer import subgroup_equal
from .decision import EQUAL, INCONCLUSIVE, NOT_EQUAL, Decision, equal, not_equal
from .errors import QuadMotiveError
from .fields import parse_field, place_str
from .forms import (
    QuadraticForm,
    even_clifford,
    hasse_vector,
    is_isotropic,
    signature,
    signed_discriminant,
    witt_decompose,
)
from .motive import (
    enumerate_quadrics,
    grothendieck_equal_involutions,
    grothendieck_equal_quadrics,
    involution_isomorphic,
    motivic_class,
    quadric_fingerprint,
    scissor_recursion,
)
from .ncmot import (
    COEFFS,
    INTEGERS,
    ParityMatrix,
    cancellation_check,
    compose,
    hom_module,
    parity_determinant,
    u_iso_base,
    u_iso_quadratic_center,
    u_l_iso,
)
from .render import clifford_json, format_class, format_form

COMPUTED = "Computed"


class UsageError(QuadMotiveError):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


# -- literal helpers ---------------------------------------------------------


def _with_field(text: str, args) -> str:
    if "@" not in text and args.field:
        return f"{text}@{args.field}"
    return text


def _form(text: str, args) -> QuadraticForm:
    return literals.parse_form(_with_field(text, args), args.epsilon)


def _descriptor(text: str, args):
    if text.startswith(("form:", "conics:")) and "@" not in text and args.field:
        text = f"{text}@{args.field}"
    return literals.parse_descriptor(text, args.epsilon)


def _object(text: str, args):
    return literals.parse_object(_with_field(text, args), args.epsilon)


def _report(verdict: str, first_difference=None, **body) -> dict:
    return {"verdict": verdict, "evidence": {"first_difference": first_difference}, **body}


def _decision(d: Decision, **body) -> dict:
    out = d.to_json()
    out["evidence"] = {"first_difference": None, **out["evidence"]}
    out.update(body)
    return out


# -- verbs -------------------------------------------------------------------


def form_invariants(q: QuadraticForm) -> dict:
    w = witt_decompose(q)
    out = {
        "form": format_form(q),
        "dim": q.dim,
        "delta": signed_discriminant(q).token(),
        "hasse": {place_str(v): h for v, h in hasse_vector(q).items()},
        "signatures": {place_str(P): signature(q, P) for P in q.base.orderings},
        "isotropic": is_isotropic(q),
        "witt_index": w.witt_index,
        "anisotropic_kernel": format_form(w.kernel) if w.kernel.dim else None,
    }
    if q.dim >= 1:
        out["clifford"] = clifford_json(even_clifford(q))
    if q.dim >= 2:
        out["fingerprint"] = quadric_fingerprint(q).to_json()
    return out


def _invariants(args) -> dict:
    return _report(COMPUTED, invariants=form_invariants(_form(args.form, args)))


def _hypotheses(q: QuadraticForm, args) -> QuadraticForm:
    # the field flags are facts about k; the switches let a caller withdraw them
    base = dataclasses.replace(
        q.base,
        i3_torsion_free=q.base.i3_torsion_free and not args.no_i3_torsion_free,
        hasse_number_finite=q.base.hasse_number_finite and not args.no_hasse_number_finite,
    )
    return QuadraticForm(base, q.coeffs)


def _compare_quadrics(args) -> dict:
    q, q2 = (_hypotheses(_form(t, args), args) for t in (args.left, args.right))
    d = grothendieck_equal_quadrics(q, q2)
    return _decision(d, left=format_form(q), right=format_form(q2))


def _compare_involutions(args) -> dict:
    d, d2 = _descriptor(args.left, args), _descriptor(args.right, args)
    dec = grothendieck_equal_involutions(d, d2)
    iso = involution_isomorphic(d, d2)
    return _decision(
        dec,
        left=literals.format_descriptor(d),
        right=literals.format_descriptor(d2),
        isomorphism=iso.verdict,
    )


def _enumerate(args) -> dict:
    if not args.field:
        raise UsageError("enumerate needs --field")
    k = parse_field(args.field, args.epsilon)
    forms = enumerate_quadrics(k, args.pdim)
    rows = [{"form": format_form(q), **quadric_fingerprint(q).to_json()} for q in forms]
    return _report(COMPUTED, field=str(k), pdim=args.pdim, count=len(rows), rows=rows)


def _motive_class(args) -> dict:
    q = _form(args.form, args)
    cls = motivic_class(q)
    body = {"form": format_form(q), "class": cls.to_json()}
    if args.hyperbolic:
        body["with_hyperbolic"] = scissor_recursion(q, args.hyperbolic).to_json()
    return _report(COMPUTED, **body)


def _kollar(args) -> dict:
    a = literals.pair_classes(_with_field(args.left, args), args.epsilon)
    b = literals.pair_classes(_with_field(args.right, args), args.epsilon)
    if a[0].base != b[0].base:
        raise UsageError("pairs over different fields")
    gens = {"left": [format_class(c) for c in a], "right": [format_class(c) for c in b]}
    if subgroup_equal(a, b):
        return _decision(equal("kollar-subgroup", **gens))
    return _decision(not_equal("kollar-subgroup", first_difference="subgroup", **gens))


def _values(text: str | None, rank: int, default: int = 1) -> tuple:
    if text is None:
        return (default,) + (0,) * (rank - 1)
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad orbit values {text!r}") from None
    return vals


def _hom_json(mod) -> dict:
    return {
        "source": literals.format_object(mod.source),
        "target": literals.format_object(mod.target),
        "coeff": mod.coeff,
        "orbits": list(mod.orbits),
        "rank": mod.rank,
        "weight": mod.weight,
    }


def _ncmot(args) -> dict:
    sub = args.sub
    if sub == "hom":
        mod = hom_module(_object(args.source, args), _object(args.target, args), args.coeff)
        return _report(COMPUTED, hom=_hom_json(mod))
    if sub == "compose":
        M, N, P = (_object(t, args) for t in (args.source, args.middle, args.target))
        m1, m2 = hom_module(M, N, args.coeff), hom_module(N, P, args.coeff)
        f = m1.element(*_values(args.f, m1.rank))
        g = m2.element(*_values(args.g, m2.rank))
        h = compose(f, g)
        vals = [str(v) for v in h.values]
        return _report(COMPUTED, hom=_hom_json(h.module), f=list(map(str, f.values)), g=list(map(str, g.values)), result=vals)
    if sub == "iso":
        M, N = _object(args.left, args), _object(args.right, args)
        if M.base != N.base:
            raise UsageError("objects over different base fields")
        if (M.center is None) != (N.center is None):
            return _decision(not_equal("center-type", first_difference="center"))
        if M.center is None:
            rule, ok, diff = "class-over-base", u_iso_base(M, N), "class"
        elif not u_l_iso(M.center, N.center):
            rule, ok, diff = "quadratic-center-isomorphism", False, "center"
        else:
            rule, ok, diff = "class-over-center", u_iso_quadratic_center(M, N), "class"
        if ok:
            return _decision(equal(rule))
        return _decision(not_equal(rule, first_difference=diff))
    if sub == "parity-det":
        try:
            raw = json.loads(args.matrix)
            entries = tuple(tuple(tuple(int(x) for x in pair) for pair in row) for row in raw)
        except (ValueError, TypeError):
            raise UsageError("parity matrix must be JSON [[[a+,a-],...],...]") from None
        M = ParityMatrix(entries)
        return _report(COMPUTED, n=M.n, parity=parity_determinant(M))
    if sub == "cancel":
        try:
            spec = json.loads(args.spec)
        except ValueError:
            raise UsageError("cancel expects a JSON object") from None
        if not isinstance(spec, dict) or not {"A", "A2"} <= spec.keys():
            raise UsageError("cancel needs keys A and A2 (and optional NM, B, B2)")
        objs = {key: [_object(t, args) for t in spec.get(key, [])] for key in ("NM", "B", "B2")}
        dec = cancellation_check(objs["NM"], objs["B"], objs["B2"], _object(spec["A"], args), _object(spec["A2"], args))
        return _decision(dec)
    raise UsageError(f"unknown ncmot subcommand {sub!r}")


def _paper_suite(args) -> dict:
    results = paper_suite.run_suite()
    failed = [r["id"] for r in results if not r["passed"]]
    verdict = COMPUTED if not failed else "Failed"
    return _report(
        verdict,
        failed[0] if failed else None,
        check_ids=paper_suite.check_ids(),
        passed=len(results) - len(failed),
        failed=failed,
        results=results,
    )


# -- plumbing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", help="field spec: Q, R, Qp:5 (used when a literal has no @field)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--epsilon", type=int, help="non-residue used for the class e over Q_p")

    parser = _Parser(prog="quadmotive", description="Quadric and involution-variety invariants and class decisions.")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = verbs.add_parser("invariants", parents=[common], help="invariants of a diagonal form")
    p.add_argument("form")
    p.set_defaults(func=_invariants)

    p = verbs.add_parser("compare-quadrics", parents=[common], help="Grothendieck-class equality of two quadrics")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--no-i3-torsion-free", action="store_true", help="do not assume I(k)^3 is torsion-free")
    p.add_argument("--no-hasse-number-finite", action="store_true", help="do not assume a finite Hasse number")
    p.set_defaults(func=_compare_quadrics)

    p = verbs.add_parser("compare-involutions", parents=[common], help="class equality of two involution varieties")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_compare_involutions)

    p = verbs.add_parser("enumerate", parents=[common], help="quadrics in P^n up to isomorphism")
    p.add_argument("--pdim", type=int, required=True)
    p.set_defaults(func=_enumerate)

    p = verbs.add_parser("motive-class", parents=[common], help="class of the quadric as a polynomial in L")
    p.add_argument("form")
    p.add_argument("--hyperbolic", type=int, default=0, help="also add n hyperbolic planes by the scissor recursion")
    p.set_defaults(func=_motive_class)

    p = verbs.add_parser("kollar", parents=[common], help="compare products of conics (a,b)x(c,d)@F")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_kollar)

    p = verbs.add_parser("ncmot", parents=[common], help="hom calculus of motives of central simple algebras")
    subs = p.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = subs.add_parser("hom", parents=[common])
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--coeff", choices=COEFFS, default=INTEGERS)
    s = subs.add_parser("compose", parents=[common])
    s.add_argument("source")
    s.add_argument("middle")
    s.add_argument("target")
    s.add_argument("--f", help="orbit values of the first map, comma separated")
    s.add_argument("--g", help="orbit values of the second map, comma separated")
    s.add_argument("--coeff", choices=COEFFS, default=INTEGERS)
    s = subs.add_parser("iso", parents=[common])
    s.add_argument("left")
    s.add_argument("right")
    s = subs.add_parser("parity-det", parents=[common])
    s.add_argument("matrix", help="JSON grid of [a+, a-] pairs")
    s = subs.add_parser("cancel", parents=[common])
    s.add_argument("spec", help='JSON object {"NM": [...], "B": [...], "B2": [...], "A": obj, "A2": obj}')
    p.set_defaults(func=_ncmot)

    p = verbs.add_parser("paper-suite", parents=[common], help="run the golden checks of the worked examples")
    p.set_defaults(func=_paper_suite)
    return parser


def _table(report: dict) -> str:
    lines = [f"verdict: {report['verdict']}"]
    if "rows" in report:
        lines.append(f"count: {report['count']}")
        for i, row in enumerate(report["rows"], 1):
            lines.append(f"{i:>3}  {row['form']}")
    elif "results" in report:
        for r in report["results"]:
            lines.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['id']:<32} {r['anchor']}")
        lines.append(f"passed {report['passed']}/{len(report['results'])}")
    else:
        for key, value in report.items():
            if key == "verdict":
                continue
            if isinstance(value, dict):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def exit_code(report: dict) -> int:
    verdict = report["verdict"]
    if verdict == INCONCLUSIVE:
        return 2
    if verdict in (EQUAL, NOT_EQUAL, COMPUTED):
        return 0
    return 1


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute one command; returns the exit code and the rendered output."""
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        report = args.func(args)
    except QuadMotiveError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("token", "position"):
            if hasattr(exc, attr):
                err[attr] = getattr(exc, attr)
        text = json.dumps(err, sort_keys=True) if fmt == "json" else f"error: {exc}"
        return 1, text
    if fmt == "json":
        return exit_code(report), json.dumps(report, indent=2, sort_keys=True, default=str)
    return exit_code(report), _table(report)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == 1 and text.startswith(("{\"error\"", "error:")) else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
