import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadmotive.brauer import BrauerClass2, EtaleQuadratic, quaternion_class
from quadmotive.errors import LiteralError
from quadmotive.fields import INF, QQ, RR, padic, square_class
from quadmotive.forms import QuadraticForm
from quadmotive.literals import (
    format_descriptor,
    format_object,
    pair_classes,
    parse_class,
    parse_descriptor,
    parse_etale,
    parse_form,
    parse_object,
    parse_pair,
)
from quadmotive.motive import enumerate_involutions_dim2, enumerate_quadrics, from_form
from quadmotive.render import format_class, format_etale, format_form

LOCAL = [RR, padic(3), padic(5), padic(7)]
QP = LOCAL[1:]


class TestForms:
    def test_tokens(self):
        q = parse_form("diag:1,-1,ep@Qp:5")
        k = padic(5)
        assert q == QuadraticForm(k, (1, square_class(k, -1).rep, 10))
        assert format_form(q) == "diag:1,1,ep@Qp:5"

    def test_fractions(self):
        assert parse_form("diag:1/2,3@Q").coeffs == (2, 3)

    def test_epsilon_override(self):
        q = parse_form("diag:e@Qp:7", epsilon=5)
        assert q.base.epsilon == 5 and q.coeffs == (5,)

    @given(st.lists(st.integers(-300, 300).filter(bool), min_size=1, max_size=6))
    def test_round_trip_rational(self, coeffs):
        q = QuadraticForm(QQ, tuple(coeffs))
        assert parse_form(format_form(q)) == q

    @pytest.mark.parametrize("k", LOCAL, ids=str)
    def test_round_trip_local(self, k):
        for n in (1, 2, 3):
            for q in enumerate_quadrics(k, n):
                assert parse_form(format_form(q)) == q

    @pytest.mark.parametrize(
        "text, token, position",
        [
            ("diag:1,x,3@Q", "x", 7),
            ("diag:1,0@Q", "0", 7),
            ("1,2@Q", "1,2@Q", 0),
            ("diag:1,2", "diag:1,2", 0),
            ("diag:1@Qp:4", "Qp:4", 7),
        ],
    )
    def test_errors(self, text, token, position):
        with pytest.raises(LiteralError) as exc:
            parse_form(text)
        assert exc.value.token == token and exc.value.position == position


class TestClasses:
    def test_examples(self):
        assert parse_class("ram{3,inf}@Q") == BrauerClass2(QQ, frozenset({3, INF}))
        assert parse_class("quat(-1,-3)@Q") == quaternion_class(QQ, -1, -3)
        assert parse_class("ram{}@R").is_trivial
        l = EtaleQuadratic(QQ, square_class(QQ, 2))
        assert parse_class("ram{7.1,7.2}@sqrt(2)@Q") == BrauerClass2(l, frozenset({(7, 1), (7, 2)}))

    def test_etale(self):
        assert parse_etale("split@Q").is_split
        assert parse_etale("sqrt(8)@Q") == parse_etale("sqrt(2)@Q")
        assert parse_etale("sqrt(e)@Qp:5").d.rep == 2

    @pytest.mark.parametrize(
        "text",
        ["ram{3}@Q", "ram{3,inf@Q", "quat(1)@Q", "ram{2,x}@Q", "ram{}@split@Q", "ram{5.3,inf}@sqrt(2)@Q", "sqrt(1)@Q"],
    )
    def test_errors(self, text):
        with pytest.raises(LiteralError):
            parse_class(text)

    @given(st.sets(st.sampled_from((2, 3, 5, 7, 11, INF)), max_size=5))
    def test_round_trip(self, places):
        if len(places) % 2:
            places ^= {INF}
        c = BrauerClass2(QQ, frozenset(places))
        assert parse_class(format_class(c)) == c

    def test_round_trip_extension(self):
        l = EtaleQuadratic(QQ, square_class(QQ, 2))
        for ram in (frozenset(), frozenset({(7, 1), (7, 2)}), frozenset({(3, 0), (7, 1)}), frozenset({(INF, 1), (INF, 2)})):
            c = BrauerClass2(l, ram)
            assert parse_class(format_class(c)) == c
        assert parse_etale(format_etale(l)) == l


class TestPairs:
    def test_pair(self):
        k, p1, p2 = parse_pair("(-1,-1)x(1,1)@R")
        assert k == RR and p1 == ("-1", "-1") and p2 == ("1", "1")
        c1, c2 = pair_classes("(-1,-1)x(1,1)@R")
        assert not c1.is_trivial and c2.is_trivial

    def test_bad_entry(self):
        with pytest.raises(LiteralError) as exc:
            parse_pair("(-1,y)x(1,1)@R")
        assert exc.value.token == "y" and exc.value.position == 4


class TestDescriptors:
    @pytest.mark.parametrize("k", QP, ids=str)
    def test_round_trip_nine(self, k):
        for d in enumerate_involutions_dim2(k):
            text = format_descriptor(d)
            back = parse_descriptor(text)
            assert format_descriptor(back) == text
            assert back.algebra_class == d.algebra_class and back.clifford == d.clifford

    @pytest.mark.parametrize(
        "form", ["diag:1,1,1,1@R", "diag:1,1,-1,-1@R", "diag:1,-1,-1,-1@R", "diag:1,2,3,5@Q", "diag:1,1,1@Q"]
    )
    def test_round_trip_forms(self, form):
        text = format_descriptor(from_form(parse_form(form)))
        assert format_descriptor(parse_descriptor(text)) == text

    def test_form_prefix(self):
        d = parse_descriptor("form:diag:1,1,1,1@R")
        assert format_descriptor(d) == format_descriptor(from_form(parse_form("diag:1,1,1,1@R")))

    def test_conics_prefix(self):
        assert parse_descriptor("conics:(-1,-1)x(-1,-1)@R").deg == 4

    def test_explicit(self):
        d = parse_descriptor("inv(deg=4;A=ram{};delta=1;c0=ram{}|ram{})@Qp:5")
        assert d.deg == 4 and d.clifford.center_kind == "split"

    @pytest.mark.parametrize(
        "text, token",
        [
            ("inv(deg=x;A=ram{};delta=1;c0=ram{}|ram{})@Qp:5", "x"),
            ("inv(A=ram{};delta=1;c0=ram{}|ram{})@Qp:5", "deg"),
            ("inv(deg=4;A=ram{};c0=ram{}|ram{})@Qp:5", "delta"),
            ("inv(deg=4;A=ram{};delta=1;c0=ram{}|ram{};zz=1)@Qp:5", "zz"),
            ("thing:1@Q", "thing:1@Q"),
        ],
    )
    def test_errors(self, text, token):
        with pytest.raises(LiteralError) as exc:
            parse_descriptor(text)
        assert exc.value.token == token


class TestObjects:
    def test_examples(self):
        M = parse_object("ram{2,inf}@Q;ind=4")
        assert M.ind == 4 and M.center is None
        assert parse_object("ram{}@sqrt(2)@Q").center is not None
        assert parse_object("quat(-1,-1)@Q").ind == 2

    @pytest.mark.parametrize("text", ["ram{2,inf}@Q;ind=6", "ram{2,inf}@Q;ind=x", "ram{}@Q;ind=2", "ram{}@split@Q"])
    def test_errors(self, text):
        with pytest.raises(LiteralError):
            parse_object(text)

    @pytest.mark.parametrize(
        "text", ["ram{}@Q", "ram{2,inf}@Q", "ram{2,inf}@Q;ind=8", "ram{7.1,7.2}@sqrt(2)@Q", "ram{5}@sqrt(e)@Qp:5"]
    )
    def test_round_trip(self, text):
        assert format_object(parse_object(text)) == text
