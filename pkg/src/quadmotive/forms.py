"""Diagonal quadratic forms and their classical invariants.

A form is stored with canonical square-class representatives as coefficients,
so ``<2, 8>`` over Q is kept as ``<2, 2>``.  Over local fields the
coefficients are the canonical representatives of the field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .brauer import BrauerClass2, EtaleQuadratic, restrict
from .errors import DegenerateInput, DomainError, ResourceLimit
from .fields import (
    INF,
    RATIONAL,
    REAL,
    FieldDescriptor,
    SquareClass,
    Value,
    canonical_rep,
    hilbert_at,
    is_local_square,
    prime_divisors,
    relevant_places,
    square_class,
    square_class_reps,
    squarefree_part,
)

REALIZE_BOUND = 10**5


@dataclass(frozen=True)
class QuadraticForm:
    """The diagonal form <a_1, ..., a_d> over a base field."""

    base: FieldDescriptor
    coeffs: tuple[int, ...]
    allow_empty: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        coeffs = tuple(canonical_rep(self.base, a) for a in self.coeffs)
        if not coeffs and not self.allow_empty:
            raise DegenerateInput("a quadratic form needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def diag(cls, base: FieldDescriptor, *values: Value) -> QuadraticForm:
        return cls(base, tuple(values))

    @classmethod
    def empty(cls, base: FieldDescriptor) -> QuadraticForm:
        return cls(base, (), allow_empty=True)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def perp(self, other: QuadraticForm) -> QuadraticForm:
        _same_base(self, other)
        return QuadraticForm(self.base, self.coeffs + other.coeffs, allow_empty=True)

    def scale(self, lam: Value) -> QuadraticForm:
        lam = canonical_rep(self.base, lam)
        return QuadraticForm(self.base, tuple(lam * a for a in self.coeffs), allow_empty=True)

    def __str__(self) -> str:
        from .fields import format_rep

        return "<" + ", ".join(format_rep(self.base, a) for a in self.coeffs) + f"> over {self.base}"


def hyperbolic(base: FieldDescriptor, n: int = 1) -> QuadraticForm:
    return QuadraticForm(base, (1, -1) * n, allow_empty=True)


def _same_base(q: QuadraticForm, q2: QuadraticForm) -> None:
    if q.base != q2.base:
        raise DomainError(f"forms over different fields: {q.base} and {q2.base}")


def _prod(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def determinant(q: QuadraticForm) -> SquareClass:
    return square_class(q.base, _prod(q.coeffs))


def signed_discriminant(q: QuadraticForm) -> SquareClass:
    d = q.dim
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return square_class(q.base, sign * _prod(q.coeffs))


def form_places(q: QuadraticForm, *others: QuadraticForm) -> list:
    """Places where the invariants of the given forms can be nontrivial."""
    if q.base.kind != RATIONAL:
        return [q.base.place]
    coeffs = [a for f in (q,) + others for a in f.coeffs]
    return relevant_places(*coeffs)


def _hasse(coeffs: tuple[int, ...], v) -> int:
    s = 1
    for a, b in itertools.combinations(coeffs, 2):
        s *= hilbert_at(v, a, b)
    return s


def _check_place_of(q: QuadraticForm, v) -> None:
    if not q.base.has_place(v):
        raise DomainError(f"{v!r} is not a place of {q.base}")


def hasse_invariant(q: QuadraticForm, v=None) -> int:
    """Product of (a_i, a_j)_v over i < j."""
    if v is None:
        v = q.base.place
    _check_place_of(q, v)
    return _hasse(q.coeffs, v)


def hasse_vector(q: QuadraticForm) -> dict:
    return {v: hasse_invariant(q, v) for v in form_places(q)}


def signature(q: QuadraticForm, ordering=INF) -> int:
    if not q.base.formally_real:
        raise DomainError(f"{q.base} has no orderings")
    if ordering not in q.base.orderings:
        raise DomainError(f"unknown ordering {ordering!r}")
    return sum(1 if a > 0 else -1 for a in q.coeffs)


def _isotropic_at(coeffs: tuple[int, ...], v) -> bool:
    n = len(coeffs)
    if v == INF:
        return any(a > 0 for a in coeffs) and any(a < 0 for a in coeffs)
    if n <= 1:
        return False
    if n >= 5:
        return True
    d = _prod(coeffs)
    h = _hasse(coeffs, v)
    if n == 2:
        return is_local_square(-d, v)
    if n == 3:
        return hilbert_at(v, -1, -d) == h
    return not is_local_square(d, v) or h == hilbert_at(v, -1, -1)


def is_isotropic(q: QuadraticForm) -> bool:
    """Whether q has a nontrivial zero over its base field."""
    n = q.dim
    if n <= 1:
        return False
    if q.base.kind != RATIONAL:
        return _isotropic_at(q.coeffs, q.base.place)
    if n == 2:
        return squarefree_part(-_prod(q.coeffs)) == 1
    if n >= 5:
        return _isotropic_at(q.coeffs, INF)
    return all(_isotropic_at(q.coeffs, v) for v in form_places(q))


def equivalent(q: QuadraticForm, q2: QuadraticForm) -> bool:
    """Isometry test through the complete invariants of the base field."""
    _same_base(q, q2)
    if q.dim != q2.dim:
        return False
    if q.base.kind == REAL:
        return signature(q) == signature(q2)
    if determinant(q) != determinant(q2):
        return False
    if q.base.kind == RATIONAL and signature(q) != signature(q2):
        return False
    return all(_hasse(q.coeffs, v) == _hasse(q2.coeffs, v) for v in form_places(q, q2))


def _similarity_factors(q: QuadraticForm, q2: QuadraticForm) -> Iterator[int]:
    k = q.base
    if k.kind != RATIONAL:
        yield from square_class_reps(k)
        return
    primes = {2}
    for a in q.coeffs + q2.coeffs:
        primes.update(prime_divisors(a))
    primes = sorted(primes)
    for r in range(len(primes) + 1):
        for subset in itertools.combinations(primes, r):
            m = _prod(subset)
            yield m
            yield -m


def similarity_factor(q: QuadraticForm, q2: QuadraticForm) -> int | None:
    """A square class lam with lam*q isometric to q2, or None."""
    _same_base(q, q2)
    if q.dim != q2.dim:
        return None
    for lam in _similarity_factors(q, q2):
        if equivalent(q.scale(lam), q2):
            return canonical_rep(q.base, lam)
    return None


def similar(q: QuadraticForm, q2: QuadraticForm) -> bool:
    return similarity_factor(q, q2) is not None


# Construction of forms with prescribed invariants.  Over Q the target is
# given by (dim, det, Hasse invariants, signature); a target is realizable iff
# the local conditions hold at every place and the Hasse invariants satisfy
# the product formula.


@dataclass
class _Target:
    n: int
    det: int
    hasse: dict
    sig: int | None

    def h(self, v) -> int:
        return self.hasse.get(v, 1)


def _real_ok(t: _Target) -> bool:
    if (t.n - t.sig) % 2 or abs(t.sig) > t.n:
        return False
    s = (t.n - t.sig) // 2
    if (t.det < 0) != (s % 2 == 1):
        return False
    return t.h(INF) == (-1 if (s * (s - 1) // 2) % 2 else 1)


def _feasible(base: FieldDescriptor, t: _Target) -> bool:
    if t.n == 0:
        return canonical_rep(base, t.det) == 1 and all(h == 1 for h in t.hasse.values())
    if base.kind == REAL:
        return _real_ok(t)
    if base.kind == RATIONAL:
        if not _real_ok(t):
            return False
        if _prod(t.hasse.values()) != 1:
            return False
    for v, h in t.hasse.items():
        if v == INF or h == 1:
            continue
        if t.n == 1:
            return False
        if t.n == 2 and is_local_square(-t.det, v):
            return False
    return True


def _squarefree_candidates(limit: int) -> Iterator[int]:
    yield 1
    yield -1
    for m in range(2, limit):
        if squarefree_part(m) == m:
            yield m
            yield -m


def _candidates(base: FieldDescriptor) -> Iterable[int]:
    if base.kind == RATIONAL:
        return _squarefree_candidates(REALIZE_BOUND)
    return square_class_reps(base)


def _peel(base: FieldDescriptor, t: _Target, b: int) -> _Target:
    det = canonical_rep(base, t.det * b)
    if base.kind == RATIONAL:
        places = set(t.hasse) | set(relevant_places(b, det))
    else:
        places = {base.place}
    hasse = {v: t.h(v) * hilbert_at(v, b, det) for v in places}
    sig = None if t.sig is None else t.sig - (1 if b > 0 else -1)
    return _Target(t.n - 1, det, hasse, sig)


def _realize(base: FieldDescriptor, t: _Target) -> QuadraticForm:
    if not _feasible(base, t):
        raise DomainError("no form with the requested invariants")
    coeffs = []
    while t.n > 1:
        for b in _candidates(base):
            rest = _peel(base, t, b)
            if _feasible(base, rest):
                coeffs.append(b)
                t = rest
                break
        else:
            raise ResourceLimit("no small coefficient completes the form")
    if t.n == 1:
        coeffs.append(canonical_rep(base, t.det))
    return QuadraticForm(base, tuple(coeffs), allow_empty=True)


def realize_form(base: FieldDescriptor, n: int, det: Value, hasse: dict | int, sig: int | None = None) -> QuadraticForm:
    """A diagonal form of dimension n with prescribed determinant and Hasse invariants.

    For local fields ``hasse`` may be a single sign.  Over Q and R the
    signature at the real place is required.
    """
    if isinstance(hasse, int):
        hasse = {base.place: hasse}
    if base.formally_real and sig is None:
        raise DomainError("a signature is required over ordered fields")
    det = canonical_rep(base, det)
    if base.kind == RATIONAL:
        hasse = dict(hasse)
        hasse.setdefault(INF, 1)
    return _realize(base, _Target(n, det, dict(hasse), sig))


@dataclass(frozen=True)
class WittDecomposition:
    witt_index: int
    kernel: QuadraticForm


def _real_witt(q: QuadraticForm) -> WittDecomposition:
    pos = sum(1 for a in q.coeffs if a > 0)
    neg = q.dim - pos
    n = min(pos, neg)
    kernel = (1,) * (pos - n) + (-1,) * (neg - n)
    return WittDecomposition(n, QuadraticForm(q.base, kernel, allow_empty=True))


def witt_decompose(q: QuadraticForm) -> WittDecomposition:
    """Split off hyperbolic planes until the remainder is anisotropic."""
    if q.base.kind == REAL:
        return _real_witt(q)
    base = q.base
    n = 0
    cur = q
    while is_isotropic(cur):
        # cur = H + q1 with det q1 = -det cur and s(q1) = s(cur) * (-1, det q1)
        det1 = canonical_rep(base, -_prod(cur.coeffs))
        hasse1 = {v: _hasse(cur.coeffs, v) * hilbert_at(v, -1, det1) for v in form_places(cur)}
        sig1 = signature(cur) if base.formally_real else None
        cur = _realize(base, _Target(cur.dim - 2, det1, hasse1, sig1))
        n += 1
    return WittDecomposition(n, cur)


def witt_index(q: QuadraticForm) -> int:
    return witt_decompose(q).witt_index


def _clifford_sign(q: QuadraticForm, v) -> int:
    d = _prod(q.coeffs)
    s = _hasse(q.coeffs, v)
    r = q.dim % 8
    if r in (3, 4):
        s *= hilbert_at(v, -1, -d)
    elif r in (5, 6):
        s *= hilbert_at(v, -1, -1)
    elif r in (7, 0):
        s *= hilbert_at(v, -1, d)
    return s


def witt_clifford_invariant(q: QuadraticForm) -> BrauerClass2:
    """Brauer class of C(q) for even dim and of C_0(q) for odd dim."""
    ram = frozenset(v for v in form_places(q) if _clifford_sign(q, v) == -1)
    return BrauerClass2(q.base, ram)


def _class_key(c: BrauerClass2):
    return (len(c.ram), [str(w) for w in c.sorted_ram()])


@dataclass(frozen=True)
class EvenCliffordDescriptor:
    """Center and Brauer data of an even Clifford algebra.

    ``center`` is None for the base field, an EtaleQuadratic field, or the
    split algebra.  For the split center ``classes`` holds the two factors in
    canonical order, so equality compares them as a multiset.
    """

    base: FieldDescriptor
    center: EtaleQuadratic | None
    classes: tuple[BrauerClass2, ...]

    def __post_init__(self):
        classes = tuple(self.classes)
        if self.center is None:
            if len(classes) != 1 or classes[0].base != self.base:
                raise DomainError("a central algebra carries one class over the base")
        elif self.center.base != self.base:
            raise DomainError("center over a different field")
        elif self.center.is_split:
            if len(classes) != 2 or any(c.base != self.base for c in classes):
                raise DomainError("a split center carries two classes over the base")
            classes = tuple(sorted(classes, key=_class_key))
        else:
            if len(classes) != 1 or classes[0].base != self.center:
                raise DomainError("a quadratic center carries one class over it")
        object.__setattr__(self, "classes", classes)

    @property
    def center_kind(self) -> str:
        if self.center is None:
            return "base"
        return "split" if self.center.is_split else "field"

    @classmethod
    def split(cls, c1: BrauerClass2, c2: BrauerClass2) -> EvenCliffordDescriptor:
        return cls(c1.base, EtaleQuadratic(c1.base), (c1, c2))


def even_clifford(q: QuadraticForm) -> EvenCliffordDescriptor:
    c = witt_clifford_invariant(q)
    if q.dim % 2:
        return EvenCliffordDescriptor(q.base, None, (c,))
    delta = signed_discriminant(q)
    if delta.is_trivial:
        return EvenCliffordDescriptor(q.base, EtaleQuadratic(q.base), (c, c))
    ext = EtaleQuadratic(q.base, delta)
    return EvenCliffordDescriptor(q.base, ext, (restrict(c, ext),))
