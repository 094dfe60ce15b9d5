"""Acceptance criteria 1-10, one test and one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also collected in the terminal summary.
"""

import itertools
import json
import random

from _oracles import fraction_det, hensel_hilbert
from quadmotive.brauer import BrauerClass2, EtaleQuadratic, quaternion_class
from quadmotive.cli import run
from quadmotive.clifford_oracle import clifford_oracle
from quadmotive.fields import (
    INF,
    QQ,
    RR,
    hilbert_at,
    hilbert_reciprocity_defect,
    padic,
    square_class,
    square_class_reps,
)
from quadmotive.forms import (
    QuadraticForm,
    equivalent,
    even_clifford,
    hyperbolic,
    is_isotropic,
    signed_discriminant,
    witt_clifford_invariant,
    witt_decompose,
)
from quadmotive.literals import parse_form
from quadmotive.motive import (
    add_hyperbolic,
    enumerate_involutions_dim2,
    grothendieck_equal_involutions,
    grothendieck_equal_quadrics,
    motivic_class,
    partition,
    product_of_conics,
    quadric_fingerprint,
    scissor_recursion,
)
from quadmotive.ncmot import (
    MotiveObject,
    ParityMatrix,
    compose,
    endomorphism_system,
    groebner_certificate,
    hom_module,
    identity,
    iso_system,
    nrad_hom_f2,
    parity_determinant,
)

PRIMES = (3, 5, 7)
LOCAL = [RR, *(padic(p) for p in PRIMES)]


def _enumerate(field: str, n: int) -> list[QuadraticForm]:
    code, text = run(["enumerate", "--field", field, "--pdim", str(n)])
    assert code == 0
    return [parse_form(r["form"]) for r in json.loads(text)["rows"]]


def test_criterion_01_real_enumeration(criterion):
    failures = []
    for n in range(1, 9):
        forms = _enumerate("R", n)
        if len(forms) != (n + 3) // 2:
            failures.append(f"n={n}: {len(forms)} classes")
        for a, b in itertools.combinations(forms, 2):
            if grothendieck_equal_quadrics(a, b).verdict != "NotEqual":
                failures.append(f"n={n}: {a} vs {b} not NotEqual")
    criterion(1, failures, "R-enumeration gives floor((n+3)/2) pairwise distinct classes, n = 1..8")


def test_criterion_02_padic_enumeration(criterion):
    failures = []
    for p in PRIMES:
        for n in range(2, 9):
            expected = 2 if n % 2 == 0 else 6
            got = len(_enumerate(f"Qp:{p}", n))
            if got != expected:
                failures.append(f"p={p} n={n}: {got} != {expected}")
    criterion(2, failures, "Q_p-enumeration: 2 classes for n even, 6 for n odd, p in {3,5,7}")


def test_criterion_03_discriminants(criterion):
    failures = []
    for p in PRIMES:
        k = padic(p)
        e = k.epsilon
        rows = [(1, -1, -1, 1), (1, -e, -p, e * p), (1, -1, -1, e), (1, -1, -1, p), (1, -1, -1, e * p), (1, 1, -e, -p)]
        for i, c in enumerate(rows):
            trivial = signed_discriminant(QuadraticForm(k, c)).is_trivial
            if trivial != (i < 2):
                failures.append(f"p={p} row form {c}: trivial={trivial}")
    if signed_discriminant(QuadraticForm(RR, (1, 1, 1, -1))).is_trivial:
        failures.append("<1,1,1,-1> over R has trivial discriminant")
    criterion(3, failures, "first row trivial, other rows and <1,1,1,-1>/R non-trivial")


def test_criterion_04_involution_partition(criterion):
    failures = []
    for p in PRIMES:
        k = padic(p)
        descs = enumerate_involutions_dim2(k)
        if len(descs) != 9:
            failures.append(f"p={p}: {len(descs)} descriptors")
        blocks = partition(descs, lambda a, b: grothendieck_equal_involutions(a, b).is_equal)
        if len(blocks) != 8:
            failures.append(f"p={p}: {len(blocks)} classes")
        ep = (k.epsilon, p)
        wanted = {product_of_conics(k, ep, ep), product_of_conics(k, ep, (1, 1))}
        merged = [set(b) for b in blocks if len(b) > 1]
        if merged != [wanted]:
            failures.append(f"p={p}: merged blocks {[sorted(d.label for d in b) for b in merged]}")
    criterion(4, failures, "nine dimension-2 involution varieties over Q_p give 8 classes")


def test_criterion_05_kollar_real(criterion):
    failures = []
    h, t = quaternion_class(RR, -1, -1), BrauerClass2.trivial(RR)
    d = product_of_conics(RR, (-1, -1), (1, 1))
    d2 = product_of_conics(RR, (-1, -1), (-1, -1))
    if grothendieck_equal_involutions(d, d2).verdict != "Equal":
        failures.append("classes not Equal")
    if sorted(d.clifford.classes, key=str) != sorted((h, t), key=str) or d2.clifford.classes != (h, h):
        failures.append(f"clifford {d.clifford.classes} / {d2.clifford.classes}")
    if d.algebra_class == d2.algebra_class:
        failures.append("algebra classes agree")
    if (dict(d.signatures).get(INF), dict(d2.signatures).get(INF)) != (0, 4):
        failures.append(f"signatures {d.signatures} / {d2.signatures}")
    criterion(5, failures, "C(H) x P1 vs C(H) x C(H): Equal class, C_0, A and signatures differ")


def test_criterion_06_scissor(criterion):
    rnd = random.Random(6)
    failures = []
    for _ in range(50):
        k = rnd.choice(LOCAL)
        reps = square_class_reps(k)
        q = QuadraticForm(k, tuple(rnd.choice(reps) for _ in range(rnd.randint(2, 6))))
        for n in range(5):
            if motivic_class(add_hyperbolic(q, n)) != scissor_recursion(q, n):
                failures.append(f"{q} n={n}")
    criterion(6, failures, "motivic class of q + nH equals the n-fold scissor recursion (50 forms)")


def test_criterion_07_clifford_table(criterion):
    vals = (1, -1, 2, -2, 3, -3, 5, -5)
    failures, total = [], 0
    for d in range(2, 7):
        for c in itertools.combinations_with_replacement(vals, d):
            q = QuadraticForm(QQ, c)
            s = clifford_oracle(q)
            total += 1
            if witt_clifford_invariant(q) != s.clifford_class or even_clifford(q) != s.descriptor:
                failures.append(c)
    assert total > 300
    criterion(7, failures, f"Clifford invariant agrees with the algebra oracle on {total} forms over Q")


def test_criterion_08_hilbert(criterion):
    small = [x for x in range(-10, 11) if x]
    failures = []
    for p in (2, 3, 5, 7, 11, 13):
        for a, b in itertools.product(small, repeat=2):
            if hilbert_at(p, a, b) != hensel_hilbert(a, b, p):
                failures.append(f"({a},{b})_{p}")
    for a, b in itertools.product(small, repeat=2):
        if len(hilbert_reciprocity_defect(a, b)) % 2:
            failures.append(f"odd defect for ({a},{b})")
    criterion(8, failures, "Hilbert symbols match Hensel solubility for p <= 13, defects even")


def _random_parity(rnd: random.Random, n: int) -> ParityMatrix:
    rows = []
    for i in range(n):
        rows.append(tuple((2 * rnd.randint(-5, 5) + (i == j), 2 * rnd.randint(-5, 5)) for j in range(n)))
    return ParityMatrix(tuple(rows))


def test_criterion_09_hom_calculus(criterion):
    failures = []
    fields = [EtaleQuadratic(QQ, square_class(QQ, d)) for d in (2, 3, -1, -3, 5)]
    for l1, l2 in itertools.combinations(fields, 2):
        eqs, unknowns = iso_system(MotiveObject.over_field(l1), MotiveObject.over_field(l2))
        if groebner_certificate(eqs, unknowns) != [1]:
            failures.append(f"U({l1}) = U({l2}) system solvable")
    for ind in (1, 2, 4):
        solvable = bool(endomorphism_system(ind * ind, 8))
        if solvable != (ind == 1):
            failures.append(f"ind={ind}: solvable={solvable}")
    for k, d in ((QQ, 2), (QQ, -1), (padic(5), 2), (padic(7), 7)):
        l = EtaleQuadratic(k, square_class(k, d))
        for B in (MotiveObject.over_base(k), MotiveObject.over_base(k, quaternion_class(k, -1, -1) if k == QQ else BrauerClass2(k, frozenset({k.p})))):
            if nrad_hom_f2(B, MotiveObject.over_field(l)) != 0:
                failures.append(f"nrad over {k}")
    rnd = random.Random(9)
    for _ in range(500):
        M = _random_parity(rnd, rnd.randint(1, 4))
        det = fraction_det(M.expanded())
        if det % 2 == 0 or parity_determinant(M) != "Odd":
            failures.append(f"parity {M.entries}")
    criterion(9, failures, "hom calculus: no U(l) isomorphisms, index-1 endomorphisms, NRad = 0, parity Odd")


def test_criterion_10_properties(criterion):
    rnd = random.Random(10)
    failures = []
    for _ in range(150):
        k = rnd.choice([*LOCAL, QQ])
        reps = square_class_reps(k) if k != QQ else (-6, -3, -2, -1, 1, 2, 3, 5, 6, 7)
        q = QuadraticForm(k, tuple(rnd.choice(reps) for _ in range(rnd.randint(2, 6))))
        lam = rnd.choice(reps)
        if quadric_fingerprint(q) != quadric_fingerprint(QuadraticForm(k, tuple(lam * a for a in q.coeffs))):
            failures.append(f"fingerprint not similarity invariant: {q} * {lam}")
        w = witt_decompose(q)
        rebuilt = hyperbolic(k, w.witt_index)
        if w.kernel.dim:
            rebuilt = w.kernel.perp(rebuilt) if w.witt_index else w.kernel
        if not equivalent(q, rebuilt) or (w.kernel.dim and is_isotropic(w.kernel)):
            failures.append(f"Witt round trip: {q}")
    places = (2, 3, 5, 7, 11, INF)
    for _ in range(200):
        a, b, c = (BrauerClass2(QQ, frozenset(s) ^ ({INF} if len(s) % 2 else set()))
                   for s in (set(rnd.sample(places, rnd.randint(0, 4))) for _ in range(3)))
        zero = BrauerClass2.trivial(QQ)
        if (a + b) + c != a + (b + c) or a + b != b + a or a + a != zero or a + zero != a:
            failures.append(f"Brauer group law: {a}, {b}, {c}")
    l = EtaleQuadratic(QQ, square_class(QQ, 2))
    objs = [MotiveObject.over_base(QQ), MotiveObject.over_base(QQ, quaternion_class(QQ, -1, -1)),
            MotiveObject.over_field(l), MotiveObject.over_field(EtaleQuadratic(QQ, square_class(QQ, 3)))]
    for _ in range(300):
        M, N, P, R = (rnd.choice(objs) for _ in range(4))
        f, g, h = (hom_module(X, Y).element(*(rnd.randint(-3, 3) for _ in range(hom_module(X, Y).rank)))
                   for X, Y in ((M, N), (N, P), (P, R)))
        if compose(compose(f, g), h) != compose(f, compose(g, h)):
            failures.append(f"associativity {M}, {N}, {P}, {R}")
        if compose(identity(M), f) != f or compose(f, identity(N)) != f:
            failures.append(f"unit law {M} -> {N}")
    criterion(10, failures, "similarity invariance, Witt round trips, Brauer group laws, hom associativity/units")
