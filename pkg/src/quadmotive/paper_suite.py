"""Golden checks reproducing the worked examples, runnable as ``quadmotive paper-suite``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import fields
from .brauer import BrauerClass2, EtaleQuadratic, quaternion_class, subgroup_equal
from .fields import INF, QQ, RR, padic, square_class
from .forms import QuadraticForm, even_clifford, is_isotropic, signature, signed_discriminant, similar, witt_clifford_invariant
from .motive import (
    enumerate_involutions_dim2,
    enumerate_quadrics,
    from_form,
    grothendieck_equal_involutions,
    grothendieck_equal_quadrics,
    involution_isomorphic,
    partition,
    product_of_conics,
    quadric_fingerprint,
)
from .ncmot import (
    RATIONALS,
    MotiveObject,
    cancellation_check,
    compose,
    endomorphism_system,
    hom_module,
    nrad_hom_f2,
    sum_match,
    u_iso_base,
    u_iso_quadratic_center,
    u_l_iso,
)

PRIMES = (3, 5, 7)


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    run: Callable[[], bool]


def _qp_rows(p: int) -> list[QuadraticForm]:
    """The six P^3 quadrics listed for Q_p, row by row, left then right."""
    k = padic(p)
    e = k.epsilon
    return [
        QuadraticForm(k, (1, -1, -1, 1)),
        QuadraticForm(k, (1, -e, -p, e * p)),
        QuadraticForm(k, (1, -1, -1, e)),
        QuadraticForm(k, (1, -1, -1, p)),
        QuadraticForm(k, (1, -1, -1, e * p)),
        QuadraticForm(k, (1, 1, -e, -p)),
    ]


def _all_p(pred: Callable[[int], bool]) -> Callable[[], bool]:
    return lambda: all(pred(p) for p in PRIMES)


def _hamilton_division() -> bool:
    return fields.hilbert_symbol(RR, -1, -1) == -1


def _conic_ep_nonsplit(p: int) -> bool:
    k = padic(p)
    return fields.hilbert_symbol(k, k.epsilon, p) == -1


def _real_p3_disc() -> bool:
    return not signed_discriminant(QuadraticForm(RR, (1, 1, 1, -1))).is_trivial


def _rows_discriminants(p: int) -> bool:
    rows = _qp_rows(p)
    trivial = [signed_discriminant(q).is_trivial for q in rows]
    return trivial[:2] == [True, True] and not any(trivial[2:])


def _real_conics_distinct() -> bool:
    a, b = QuadraticForm(RR, (1, 1, 1)), QuadraticForm(RR, (1, 1, -1))
    return not similar(a, b) and grothendieck_equal_quadrics(a, b).verdict == "NotEqual"


def _real_conic_data() -> bool:
    q = QuadraticForm(RR, (1, 1, 1))
    fp = quadric_fingerprint(q)
    h = quaternion_class(RR, -1, -1)
    return fp.dim_q == 3 and fp.delta_trivial is None and fp.clifford.classes == (h,) and fp.abs_signatures == ((INF, 3),)


def _split_p3_data(p: int) -> bool:
    k = padic(p)
    fp = quadric_fingerprint(QuadraticForm(k, (1, -1, -1, 1)))
    triv = BrauerClass2.trivial(k)
    return fp.delta_trivial is True and fp.clifford.center_kind == "split" and fp.clifford.classes == (triv, triv)


def _real_p3_distinct() -> bool:
    forms = [QuadraticForm(RR, c) for c in ((1, -1, -1, 1), (1, 1, 1, 1), (1, 1, 1, -1))]
    return all(grothendieck_equal_quadrics(a, b).verdict == "NotEqual" for a, b in itertools.combinations(forms, 2))


def _six_distinct(p: int) -> bool:
    rows = _qp_rows(p)
    return all(grothendieck_equal_quadrics(a, b).verdict == "NotEqual" for a, b in itertools.combinations(rows, 2))


def _row1_distinct(p: int) -> bool:
    a, b = _qp_rows(p)[:2]
    return not similar(a, b)


def _row2_distinct(p: int) -> bool:
    a, b = _qp_rows(p)[2:4]
    return not similar(a, b)


def _pair_product_split(p: int) -> bool:
    k = padic(p)
    q = QuadraticForm(k, (1, -k.epsilon, -p, k.epsilon * p))
    c = quaternion_class(k, k.epsilon, p)
    return witt_clifford_invariant(q) == c and even_clifford(q).classes == (c, c)


def _signature_four() -> bool:
    return abs(signature(QuadraticForm(RR, (1, 1, 1, 1)))) == 4


def _u_invariant(p: int) -> bool:
    k = padic(p)
    reps = sorted(fields.square_class_reps(k))
    return all(is_isotropic(QuadraticForm(k, c)) for c in itertools.combinations_with_replacement(reps, 5))


def _real_counts() -> bool:
    return all(len(enumerate_quadrics(RR, n)) == (n + 3) // 2 for n in range(1, 9))


def _qp_conic_count(p: int) -> bool:
    return len(enumerate_quadrics(padic(p), 2)) == 2


def _qp_p3_count(p: int) -> bool:
    return len(enumerate_quadrics(padic(p), 3)) == 6


def _q_infinite_family() -> bool:
    lams = (1, -1, 2, -2, 3, 5, 6, -7)
    forms = [QuadraticForm(QQ, (1, 1, 1, lam)) for lam in lams]
    return all(grothendieck_equal_quadrics(a, b).verdict == "NotEqual" for a, b in itertools.combinations(forms, 2))


def _ex_pair() -> tuple:
    d = product_of_conics(RR, (-1, -1), (1, 1))
    d2 = product_of_conics(RR, (-1, -1), (-1, -1))
    return d, d2


def _ex_kollar_equal() -> bool:
    d, d2 = _ex_pair()
    dec = grothendieck_equal_involutions(d, d2)
    return dec.verdict == "Equal" and dec.rule == "kollar-subgroup"


def _ex_fields_differ() -> bool:
    d, d2 = _ex_pair()
    sig = dict(d.signatures).get(INF), dict(d2.signatures).get(INF)
    return d.clifford != d2.clifford and d.algebra_class != d2.algebra_class and sig == (0, 4)


def _ex_not_isomorphic() -> bool:
    d, d2 = _ex_pair()
    return involution_isomorphic(d, d2).verdict == "NotEqual"


def _ex_adjoint_form() -> bool:
    _, d2 = _ex_pair()
    return from_form(QuadraticForm(RR, (1, 1, 1, 1))) == d2


def _real_subgroups() -> bool:
    h, t = quaternion_class(RR, -1, -1), BrauerClass2.trivial(RR)
    return subgroup_equal([h, t], [h, h])


def _qp_subgroups(p: int) -> bool:
    k = padic(p)
    d, t = quaternion_class(k, k.epsilon, p), BrauerClass2.trivial(k)
    return subgroup_equal([d, d], [d, t])


def _nine_iso(p: int) -> bool:
    descs = enumerate_involutions_dim2(padic(p))
    blocks = partition(descs, lambda a, b: involution_isomorphic(a, b).is_equal)
    return len(descs) == 9 and len(blocks) == 9


def _nine_classes(p: int) -> bool:
    descs = enumerate_involutions_dim2(padic(p))
    blocks = partition(descs, lambda a, b: grothendieck_equal_involutions(a, b).is_equal)
    merged = [sorted(x.label for x in b) for b in blocks if len(b) > 1]
    return len(blocks) == 8 and merged == [["C(e,p) x C(e,p)", "C(e,p) x P1"]]


def _conics_product_equal(p: int) -> bool:
    k = padic(p)
    ep = (k.epsilon, p)
    a = product_of_conics(k, ep, ep)
    b = product_of_conics(k, ep, (1, 1))
    return grothendieck_equal_involutions(a, b).is_equal


def _split_rows_match(p: int) -> bool:
    k = padic(p)
    descs = enumerate_involutions_dim2(k)
    split = [d for d in descs if d.algebra_class.is_trivial]
    rows = {from_form(q) for q in _qp_rows(p)}
    return set(split) == rows


def _k_l_pairing() -> bool:
    k = padic(5)
    ext = EtaleQuadratic(k, square_class(k, k.epsilon))
    K, L = MotiveObject.over_base(k), MotiveObject.over_field(ext)
    f = hom_module(K, L, RATIONALS).element(3)
    g = hom_module(L, K, RATIONALS).element(5)
    return hom_module(K, L, RATIONALS).rank == 1 and compose(f, g).values == (30,)


def _same_center_orbits() -> bool:
    k = padic(5)
    ext = EtaleQuadratic(k, square_class(k, "p"))
    A = MotiveObject.over_field(ext, BrauerClass2(ext, frozenset({(5, 0)})))
    return hom_module(A, A).rank == 2


def _different_fields_orbit() -> bool:
    k = padic(5)
    L = MotiveObject.over_field(EtaleQuadratic(k, square_class(k, "e")))
    L2 = MotiveObject.over_field(EtaleQuadratic(k, square_class(k, "p")))
    return hom_module(L, L2).rank == 1


def _u_iso_real() -> bool:
    h = MotiveObject.over_base(RR, quaternion_class(RR, -1, -1))
    return not u_iso_base(h, MotiveObject.over_base(RR))


def _l_iso_fails() -> bool:
    k = padic(5)
    return not u_l_iso(EtaleQuadratic(k, square_class(k, "e")), EtaleQuadratic(k, square_class(k, "p")))


def _endo_system() -> bool:
    return (1, 0, 1, 0) in endomorphism_system(1) and endomorphism_system(4) == []


def _center_iso() -> bool:
    k = padic(5)
    ext = EtaleQuadratic(k, square_class(k, "p"))
    A = MotiveObject.over_field(ext, BrauerClass2(ext, frozenset({(5, 0)})))
    T = MotiveObject.over_field(ext)
    return u_iso_quadratic_center(A, A) and not u_iso_quadratic_center(A, T)


def _nrad_zero() -> bool:
    k = padic(5)
    B = MotiveObject.over_base(k)
    A = MotiveObject.over_field(EtaleQuadratic(k, square_class(k, "e")))
    return nrad_hom_f2(B, A) == 0 and hom_module(B, A, RATIONALS).rank == 1


def _sum_mismatch() -> bool:
    h = MotiveObject.over_base(RR, quaternion_class(RR, -1, -1))
    return not sum_match([h, MotiveObject.over_base(RR)], [h, h])


def _cancel_paths() -> bool:
    k = padic(5)
    le, lp = (EtaleQuadratic(k, square_class(k, t)) for t in ("e", "p"))
    A = MotiveObject.over_field(lp, BrauerClass2(lp, frozenset({(5, 0)})))
    T = MotiveObject.over_field(lp)
    E = MotiveObject.over_field(le)
    centers = cancellation_check([], [], [], E, T)
    classes = cancellation_check([], [], [], A, T)
    return centers.rule == "quadratic-center-isomorphism" and not centers.is_equal and classes.rule == "class-over-center" and not classes.is_equal


CHECKS: tuple[Check, ...] = (
    Check("hilbert-hamilton-division", "Hamilton quaternions are a division algebra over R", _hamilton_division),
    Check("hilbert-conic-e-p", "the conic C(e,p) over Q_p has no point", _all_p(_conic_ep_nonsplit)),
    Check("disc-real-p3", "x^2+y^2+u^2-w^2 over R has non-trivial discriminant", _real_p3_disc),
    Check("disc-qp-rows", "first Q_p row trivial discriminant, other rows non-trivial", _all_p(_rows_discriminants)),
    Check("real-conics-two", "two real conics: P1 and C(H)", _real_conics_distinct),
    Check("real-conic-fingerprint", "C(H) fingerprint: base center, class H, signature 3", _real_conic_data),
    Check("qp-split-p3-fingerprint", "split P^3 quadric over Q_p: trivial disc, split center", _all_p(_split_p3_data)),
    Check("real-p3-distinct", "three real P^3 quadrics with distinct classes", _real_p3_distinct),
    Check("qp-first-row-distinct", "first Q_p row: split vs norm form of (e,p)", _all_p(_row1_distinct)),
    Check("qp-second-row-distinct", "second Q_p row: <1,-1,-1,e> vs <1,-1,-1,p>", _all_p(_row2_distinct)),
    Check("qp-six-classes-distinct", "six Q_p quadrics in P^3 with distinct classes", _all_p(_six_distinct)),
    Check("pair-norm-form-clifford", "<1,-a,-b,ab> has C_0 = (a,b) x (a,b)", _all_p(_pair_product_split)),
    Check("signature-four", "|sgn<1,1,1,1>| = 4", _signature_four),
    Check("qp-u-invariant", "u(Q_p) = 4: every 5-dimensional form is isotropic", _all_p(_u_invariant)),
    Check("real-count-formula", "floor((n+3)/2) real quadrics in P^n", _real_counts),
    Check("qp-conic-count", "two Q_p quadrics in P^2", _all_p(_qp_conic_count)),
    Check("qp-p3-count", "six Q_p quadrics in P^3", _all_p(_qp_p3_count)),
    Check("q-infinite-family", "<1,1,1,l> over Q: distinct square classes give distinct classes", _q_infinite_family),
    Check("kollar-real-equal", "[C(H) x P1] = [C(H) x C(H)] by Kollar", _ex_kollar_equal),
    Check("kollar-real-invariants-differ", "C_0, A and signature (0 vs 4) all differ", _ex_fields_differ),
    Check("kollar-real-not-isomorphic", "C(H) x P1 is not isomorphic to C(H) x C(H)", _ex_not_isomorphic),
    Check("kollar-real-adjoint", "(H,bar) tensor (H,bar) is adjoint to <1,1,1,1>", _ex_adjoint_form),
    Check("subgroup-real", "<[H],[(1,1)]> = <[H],[H]> in Br(R)", _real_subgroups),
    Check("subgroup-qp", "<[(e,p)],[(e,p)]> = <[(e,p)],[(1,1)]> in Br(Q_p)", _all_p(_qp_subgroups)),
    Check("qp-nine-involutions", "nine involution varieties of dimension 2 over Q_p", _all_p(_nine_iso)),
    Check("qp-eight-classes", "nine involution varieties give eight classes", _all_p(_nine_classes)),
    Check("qp-conic-products-equal", "[C(e,p) x C(e,p)] = [C(e,p) x P1]", _all_p(_conics_product_equal)),
    Check("qp-split-rows", "split-algebra involutions are the listed P^3 quadrics", _all_p(_split_rows_match)),
    Check("ncmot-pairing", "k -> l -> k composes to 2ab", _k_l_pairing),
    Check("ncmot-two-orbits", "G/H x G/H has two orbits", _same_center_orbits),
    Check("ncmot-transitive", "distinct quadratic fields: one orbit", _different_fields_orbit),
    Check("ncmot-real-noniso", "U(M_2(H)) is not U(M_4(R))", _u_iso_real),
    Check("ncmot-field-system", "U(l) = U(l') forces l = l'", _l_iso_fails),
    Check("ncmot-endo-system", "endomorphism system solvable only for index 1", _endo_system),
    Check("ncmot-center-iso", "U(A) = U(A') over l iff [A] = [A']", _center_iso),
    Check("ncmot-nrad-zero", "NRad hom from base to quadratic field vanishes over F_2", _nrad_zero),
    Check("ncmot-sum-mismatch", "{[H],[1]} and {[H],[H]} do not match", _sum_mismatch),
    Check("ncmot-cancellation", "cancellation fails through centers, then through classes", _cancel_paths),
)


def check_ids() -> list[str]:
    return [c.id for c in CHECKS]


def run_suite(checks: tuple[Check, ...] = CHECKS) -> list[dict]:
    results = []
    for c in checks:
        try:
            ok, error = bool(c.run()), None
        except Exception as exc:  # a crash is a failure of that check
            ok, error = False, f"{type(exc).__name__}: {exc}"
        row = {"id": c.id, "anchor": c.anchor, "passed": ok}
        if error:
            row["error"] = error
        results.append(row)
    return results
