import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import hensel_hilbert, padic_isotropic, rational_zero
from quadmotive.brauer import BrauerClass2, EtaleQuadratic, quaternion_class
from quadmotive.clifford_oracle import clifford_oracle
from quadmotive.errors import DegenerateInput, DomainError, ResourceLimit
from quadmotive.fields import INF, QQ, RR, padic, square_class, square_class_reps
from quadmotive.forms import (
    EvenCliffordDescriptor,
    QuadraticForm,
    equivalent,
    even_clifford,
    hasse_invariant,
    hasse_vector,
    hyperbolic,
    is_isotropic,
    realize_form,
    signature,
    signed_discriminant,
    similar,
    similarity_factor,
    witt_clifford_invariant,
    witt_decompose,
)

QP = [padic(p) for p in (3, 5, 7)]
LOCAL = [RR, *QP]


def qf(k, *coeffs):
    return QuadraticForm(k, tuple(coeffs))


@st.composite
def local_forms(draw, max_dim=6, min_dim=1):
    k = draw(st.sampled_from(LOCAL))
    reps = square_class_reps(k)
    n = draw(st.integers(min_dim, max_dim))
    return QuadraticForm(k, tuple(draw(st.sampled_from(reps)) for _ in range(n)))


@st.composite
def rational_forms(draw, max_dim=5, min_dim=1):
    vals = [-15, -10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 11, 13]
    n = draw(st.integers(min_dim, max_dim))
    return QuadraticForm(QQ, tuple(draw(st.sampled_from(vals)) for _ in range(n)))


any_forms = st.one_of(local_forms(), rational_forms())


class TestConstruction:
    def test_canonical_coeffs(self):
        assert qf(QQ, 8, -12, 1).coeffs == (2, -3, 1)
        assert qf(padic(5), 50, 3).coeffs == (2, 2)

    def test_empty_rejected(self):
        with pytest.raises(DegenerateInput):
            QuadraticForm(QQ, ())

    def test_zero_rejected(self):
        with pytest.raises(DegenerateInput):
            qf(QQ, 1, 0)

    def test_hyperbolic(self):
        assert hyperbolic(QQ, 2).coeffs == (1, -1, 1, -1)


class TestDiscriminant:
    def test_examples(self):
        assert not signed_discriminant(qf(RR, 1, 1, 1, -1)).is_trivial
        for k in QP:
            e, p = k.epsilon, k.p
            assert signed_discriminant(qf(k, 1, -e, -p, e * p)).is_trivial
        for k in (QQ, RR, *QP):
            assert signed_discriminant(qf(k, 1, -1)).is_trivial

    def test_sign_convention(self):
        # (-1)^{d(d-1)/2} det
        assert signed_discriminant(qf(QQ, 1, 1)).rep == -1
        assert signed_discriminant(qf(QQ, 1, 1, 1)).rep == -1
        assert signed_discriminant(qf(QQ, 1, 1, 1, 1)).rep == 1
        assert signed_discriminant(qf(QQ, 2)).rep == 2


class TestHasse:
    def test_examples(self):
        assert hasse_invariant(qf(RR, 1, 1, 1)) == 1
        assert hasse_invariant(qf(RR, -1, -1)) == -1
        assert hasse_invariant(qf(QQ, 5), 5) == 1
        with pytest.raises(DomainError):
            hasse_invariant(qf(QQ, 1, 1))

    @pytest.mark.parametrize("k", QP, ids=str)
    def test_norm_form_against_oracle(self, k):
        e, p = k.epsilon, k.p
        coeffs = (1, -e, -p, e * p)
        expected = 1
        for a, b in itertools.combinations(coeffs, 2):
            expected *= hensel_hilbert(a, b, p)
        assert hasse_invariant(qf(k, *coeffs)) == expected == -1

    def test_rational_vector(self):
        h = hasse_vector(qf(QQ, 1, 2, -3))
        assert h == {2: -1, 3: -1, INF: 1}

    @given(rational_forms(max_dim=6))
    def test_product_formula(self, q):
        assert all(v in (1, -1) for v in hasse_vector(q).values())
        prod = 1
        for v in hasse_vector(q).values():
            prod *= v
        assert prod == 1


class TestSignature:
    def test_examples(self):
        assert signature(qf(RR, 1, 1, 1, 1)) == 4
        assert signature(qf(RR, 1, -1)) == 0
        assert signature(qf(QQ, 1, 1, 1, -1)) == 2

    def test_non_real(self):
        with pytest.raises(DomainError):
            signature(qf(padic(5), 1, 1))


class TestIsotropy:
    def test_examples(self):
        assert not is_isotropic(qf(RR, 1, 1, 1))
        assert is_isotropic(qf(QQ, 1, 1, 1, 1, -7))
        assert rational_zero((1, 1, 1, 1, -7), 2) is not None

    @pytest.mark.parametrize("k", QP, ids=str)
    def test_dim_five_always_isotropic(self, k):
        for c in itertools.combinations_with_replacement(square_class_reps(k), 5):
            assert is_isotropic(qf(k, *c))

    @pytest.mark.parametrize("p", (3, 5))
    def test_padic_oracle(self, p):
        k = padic(p)
        for n in (2, 3, 4):
            for c in itertools.combinations_with_replacement(square_class_reps(k), n):
                assert is_isotropic(qf(k, *c)) == padic_isotropic(c, p), c

    def test_rational_small_zero_implies_isotropic(self):
        vals = (-5, -3, -2, -1, 1, 2, 3, 5)
        for n in (2, 3):
            for c in itertools.combinations_with_replacement(vals, n):
                if rational_zero(c, 4) is not None:
                    assert is_isotropic(qf(QQ, *c)), c

    def test_rational_anisotropic_examples(self):
        assert not is_isotropic(qf(QQ, 1, 1, 1))
        assert not is_isotropic(qf(QQ, 1, 1, 1, 1))
        assert not is_isotropic(qf(QQ, 1, 1, -3))  # fails at 3
        assert is_isotropic(qf(QQ, 1, 1, -2))

    @given(local_forms())
    def test_real_springer_surrogate(self, q):
        if q.base == RR:
            s = signature(q)
            assert is_isotropic(q) == (-q.dim < s < q.dim)


class TestWitt:
    def test_examples(self):
        w = witt_decompose(qf(QQ, 1, -1, 1, -1))
        assert w.witt_index == 2 and w.kernel.dim == 0
        w = witt_decompose(qf(RR, 1, 1, 1, -1))
        assert w.witt_index == 1 and w.kernel.coeffs == (1, 1)

    @pytest.mark.parametrize("k", QP, ids=str)
    def test_norm_form(self, k):
        e, p = k.epsilon, k.p
        w = witt_decompose(qf(k, 1, -e, -p, e * p))
        assert w.witt_index == 0 and w.kernel.dim == 4

    @given(any_forms)
    def test_round_trip(self, q):
        w = witt_decompose(q)
        assert w.kernel.dim + 2 * w.witt_index == q.dim
        assert w.kernel.dim == 0 or not is_isotropic(w.kernel)
        rebuilt = w.kernel.perp(hyperbolic(q.base, w.witt_index)) if w.kernel.dim else hyperbolic(q.base, w.witt_index)
        assert equivalent(q, rebuilt)

    @given(local_forms())
    def test_padic_kernel_bound(self, q):
        if q.base.kind == "Qp":
            assert witt_decompose(q).kernel.dim <= 4


class TestEquivalence:
    def test_examples(self):
        assert equivalent(qf(QQ, 1, -1), qf(QQ, 2, -2))
        assert not equivalent(qf(RR, 1, 1), qf(RR, 1, -1))

    def test_q5_against_oracle(self):
        k = padic(5)
        same_det = square_class(k, 1) == square_class(k, 4)
        same_hasse = hensel_hilbert(1, 1, 5) == hensel_hilbert(2, 2, 5)
        assert equivalent(qf(k, 1, 1), qf(k, 2, 2)) == (same_det and same_hasse)

    def test_mixed_fields(self):
        with pytest.raises(DomainError):
            equivalent(qf(QQ, 1), qf(RR, 1))

    @given(any_forms, any_forms)
    def test_equivalent_implies_invariants(self, q, q2):
        if q.base != q2.base:
            return
        if equivalent(q, q2):
            assert similar(q, q2) and q.dim == q2.dim
            assert signed_discriminant(q) == signed_discriminant(q2)
            places = set(hasse_vector(q)) | set(hasse_vector(q2))
            if q.base == QQ:
                assert all(hasse_invariant(q, v) == hasse_invariant(q2, v) for v in places)
            else:
                assert hasse_vector(q) == hasse_vector(q2)
            for P in q.base.orderings:
                assert signature(q, P) == signature(q2, P)
        if similar(q, q2):
            assert q.dim == q2.dim


class TestSimilarity:
    def test_examples(self):
        assert similar(qf(RR, 1, 1, 1, 1), qf(RR, -1, -1, -1, -1))
        assert not similar(qf(RR, 1, 1, 1), qf(RR, 1, 1, -1))
        for k in QP:
            assert not similar(qf(k, 1, -1, -1, k.epsilon), qf(k, 1, -1, -1, k.p))

    def test_factor(self):
        assert similarity_factor(qf(RR, 1, 1, 1), qf(RR, -1, -1, -1)) == -1
        assert similarity_factor(qf(QQ, 1, 1), qf(QQ, 1, 2)) is None

    def test_dimension_mismatch(self):
        assert not similar(qf(QQ, 1, 1), qf(QQ, 1, 1, 1))

    @given(any_forms, st.integers(-30, 30).filter(bool))
    def test_scaling(self, q, lam):
        q2 = q.scale(lam)
        assert similar(q, q2)
        if q.dim % 2 == 0:
            assert even_clifford(q) == even_clifford(q2)

    @pytest.mark.parametrize("k", LOCAL, ids=str)
    def test_scaling_exhaustive_local(self, k):
        reps = square_class_reps(k)
        for n in (2, 3, 4):
            for c in itertools.combinations_with_replacement(reps, n):
                q = qf(k, *c)
                for lam in reps:
                    q2 = q.scale(lam)
                    assert similar(q, q2)
                    assert even_clifford(q) == even_clifford(q2)


class TestClifford:
    def test_witt_clifford_examples(self):
        assert witt_clifford_invariant(qf(RR, 1, 1, 1)) == quaternion_class(RR, -1, -1)
        assert witt_clifford_invariant(qf(QQ, 1, -1)).is_trivial
        for k in (QQ, RR, *QP):
            pairs = [(-1, -1), (2, 3)] if k.kind != "Qp" else [(k.epsilon, k.p), (k.epsilon, 1)]
            for a, b in pairs:
                q = qf(k, 1, -a, -b, a * b)
                assert witt_clifford_invariant(q) == quaternion_class(k, a, b)

    def test_even_clifford_examples(self):
        h = quaternion_class(RR, -1, -1)
        assert even_clifford(qf(RR, 1, 1, 1)) == EvenCliffordDescriptor(RR, None, (h,))
        for k, (a, b) in ((QQ, (2, 3)), (padic(5), (2, 5))):
            c = quaternion_class(k, a, b)
            d = even_clifford(qf(k, 1, -a, -b, a * b))
            assert d.center_kind == "split" and d.classes == (c, c)
        ext = EtaleQuadratic(RR, square_class(RR, -1))
        d = even_clifford(qf(RR, 1, 1, 1, -1))
        assert d.center == ext and d.classes == (BrauerClass2.trivial(ext),)

    def test_oracle_examples(self):
        s = clifford_oracle(qf(QQ, 1, 1, 1))
        assert s.center_dim == 1 and s.simple_factor_count == 1
        (f,) = s.even_factors
        assert (f.i_square, f.j_square) == (-1, -1)
        s = clifford_oracle(qf(QQ, 1, -1))
        assert s.center_dim == 2 and s.simple_factor_count == 2 and s.even_factors == ()
        s = clifford_oracle(qf(QQ, 1, 1, 1, 1))
        h = quaternion_class(QQ, -1, -1)
        assert s.center_dim == 2 and s.descriptor.classes == (h, h)

    def test_oracle_limits(self):
        with pytest.raises(ResourceLimit):
            clifford_oracle(qf(QQ, *([1] * 7)))
        with pytest.raises(DomainError):
            clifford_oracle(qf(RR, 1, 1))

    def test_table_sample(self):
        # the full validation grid lives in the acceptance suite
        for c in itertools.product((1, -1, 2, -3, 5), repeat=3):
            q = qf(QQ, *c)
            s = clifford_oracle(q)
            assert witt_clifford_invariant(q) == s.clifford_class
            assert even_clifford(q) == s.descriptor


class TestRealize:
    @given(any_forms)
    def test_realizes_invariants(self, q):
        det = q.coeffs[0]
        for a in q.coeffs[1:]:
            det *= a
        sig = signature(q) if q.base.formally_real else None
        r = realize_form(q.base, q.dim, det, hasse_vector(q), sig)
        assert equivalent(q, r)
