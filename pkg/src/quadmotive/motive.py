"""Grothendieck classes of quadrics and involution varieties.

Quadrics are compared through their forms, involution varieties through
descriptors that carry the invariants (degree, discriminant, algebra class,
even Clifford data and signatures).  The deciders return a three-valued
``Decision``; when a hypothesis of the underlying classification fails the
verdict is Inconclusive with the failed hypothesis as its reason.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .brauer import BrauerClass2, EtaleQuadratic, corestrict_local, quaternion_class, subgroup_equal
from .decision import FIELD_HYPOTHESES, Decision, equal, inconclusive, not_equal
from .errors import DegenerateInput, DomainError, ValidationError
from .fields import PADIC, RATIONAL, REAL, FieldDescriptor, SquareClass, place_str, square_class, square_class_reps
from .forms import (
    EvenCliffordDescriptor,
    QuadraticForm,
    even_clifford,
    hyperbolic,
    signature,
    signed_discriminant,
    similar,
    similarity_factor,
    witt_decompose,
)
from .render import clifford_json, format_class, format_clifford, format_form


def _sig_tuple(sigs) -> tuple:
    if isinstance(sigs, dict):
        sigs = sigs.items()
    return tuple(sorted((P, int(s)) for P, s in sigs))


def _sig_json(sigs: tuple) -> dict:
    return {place_str(P): s for P, s in sigs}


@dataclass(frozen=True)
class QuadricFingerprint:
    """Invariants preserved by equality of Grothendieck classes of quadrics."""

    dim_q: int
    delta_trivial: bool | None  # None in odd dimension
    clifford: EvenCliffordDescriptor
    abs_signatures: tuple = ()

    def to_json(self) -> dict:
        return {
            "dim_q": self.dim_q,
            "delta_trivial": self.delta_trivial,
            "clifford": clifford_json(self.clifford),
            "abs_signatures": _sig_json(self.abs_signatures),
        }


FINGERPRINT_FIELDS = ("dim_q", "delta_trivial", "clifford", "abs_signatures")


def quadric_fingerprint(q: QuadraticForm) -> QuadricFingerprint:
    if q.dim < 2:
        raise DegenerateInput("a quadric needs a form of dimension at least 2")
    delta = None if q.dim % 2 else signed_discriminant(q).is_trivial
    sigs = tuple((P, abs(signature(q, P))) for P in q.base.orderings)
    return QuadricFingerprint(q.dim, delta, even_clifford(q), sigs)


def _render(name: str, value) -> str:
    if name == "clifford":
        return format_clifford(value)
    if name == "algebra_class":
        return format_class(value)
    if name in ("abs_signatures", "signatures"):
        return str(_sig_json(value))
    if isinstance(value, SquareClass):
        return value.token()
    return str(value)


def _differences(a, b, names) -> list[dict]:
    out = []
    for name in names:
        x, y = getattr(a, name), getattr(b, name)
        if x != y:
            out.append({"invariant": name, "left": _render(name, x), "right": _render(name, y)})
    return out


def quadrics_isomorphic(q: QuadraticForm, q2: QuadraticForm) -> bool:
    return similar(q, q2)


def _flags_hold(k: FieldDescriptor, even: bool) -> bool:
    if not k.i3_torsion_free:
        return False
    return not (k.formally_real and even) or k.hasse_number_finite


def grothendieck_equal_quadrics(q: QuadraticForm, q2: QuadraticForm) -> Decision:
    if q.base != q2.base:
        raise DomainError("forms over different fields")
    diffs = _differences(quadric_fingerprint(q), quadric_fingerprint(q2), FINGERPRINT_FIELDS)
    if diffs:
        return not_equal("invariant-mismatch", first_difference=diffs[0]["invariant"], differences=diffs)
    lam = similarity_factor(q, q2)
    if q.dim <= 4 or _flags_hold(q.base, q.dim % 2 == 0):
        rule = "low-dimension" if q.dim <= 4 else "witt-ring-hypotheses"
        if lam is not None:
            return equal(rule, similarity_factor=lam)
        return not_equal(rule, first_difference="similarity", differences=[])
    if lam is not None:
        return equal("similar-forms", similarity_factor=lam)
    return inconclusive(FIELD_HYPOTHESES, "witt-ring-hypotheses", first_difference=None)


@dataclass(frozen=True)
class InvolutionDescriptor:
    """Invariants of a central simple algebra with orthogonal involution.

    ``delta`` is None in odd degree.  ``signatures`` holds |sgn_P| for every
    ordering of the base field.
    """

    base: FieldDescriptor
    deg: int
    algebra_class: BrauerClass2
    delta: SquareClass | None
    clifford: EvenCliffordDescriptor
    signatures: tuple = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "signatures", _sig_tuple(self.signatures))
        self._validate()

    def __eq__(self, other):
        if not isinstance(other, InvolutionDescriptor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return (self.base, self.deg, self.algebra_class, self.delta, self.clifford, self.signatures)

    def _validate(self) -> None:
        k = self.base
        if self.deg < 2:
            raise ValidationError("degree must be at least 2")
        if self.algebra_class.base != k:
            raise ValidationError("algebra class over a different field")
        if self.clifford.base != k:
            raise ValidationError("Clifford data over a different field")
        if self.deg % 2:
            if not self.algebra_class.is_trivial:
                raise ValidationError("odd degree forces a split algebra")
            if self.delta is not None or self.clifford.center is not None:
                raise ValidationError("odd degree has no discriminant and a central C_0")
        else:
            if self.delta is None or self.delta.base != k:
                raise ValidationError("even degree needs a discriminant over the base")
            c = self.clifford.center
            if self.delta.is_trivial:
                if c is None or not c.is_split:
                    raise ValidationError("trivial discriminant needs the split center")
                cp, cm = self.clifford.classes
                if self.deg % 4 == 0 and cp + cm != self.algebra_class:
                    raise ValidationError("the two Clifford classes must add up to the algebra class")
                if self.deg % 4 == 2 and (not self.algebra_class.is_trivial or cp != cm):
                    raise ValidationError(
                        "degree 2 mod 4 with trivial discriminant needs classes of order 4; out of scope"
                    )
            elif c is None or c.is_split or c.d != self.delta:
                raise ValidationError("the center must be k(sqrt delta)")
        orderings = set(k.orderings)
        if {P for P, _ in self.signatures} != orderings:
            raise ValidationError("one signature per ordering is required")
        for P, s in self.signatures:
            if s < 0 or s > self.deg:
                raise ValidationError(f"signature {s} out of range")
            if P in self.algebra_class.ram:
                if s != 0:
                    raise ValidationError("a nonsplit algebra at an ordering has signature 0")
            elif (s - self.deg) % 2:
                raise ValidationError("signature parity must match the degree")

    @property
    def delta_trivial(self) -> bool | None:
        return None if self.delta is None else self.delta.is_trivial

    @property
    def star(self) -> bool:
        """Degree 4, trivial discriminant and split algebra."""
        return self.deg == 4 and bool(self.delta_trivial) and self.algebra_class.is_trivial

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "deg": self.deg,
            "algebra_class": format_class(self.algebra_class),
            "delta": None if self.delta is None else self.delta.token(),
            "clifford": clifford_json(self.clifford),
            "signatures": _sig_json(self.signatures),
            "star": self.star,
        }


INVOLUTION_FIELDS = ("deg", "delta", "algebra_class", "clifford", "signatures")


def from_form(q: QuadraticForm, label: str = "") -> InvolutionDescriptor:
    """The split descriptor (M_n(k), adjoint involution of q)."""
    delta = None if q.dim % 2 else signed_discriminant(q)
    sigs = {P: abs(signature(q, P)) for P in q.base.orderings}
    return InvolutionDescriptor(
        q.base, q.dim, BrauerClass2.trivial(q.base), delta, even_clifford(q), sigs, label or format_form(q)
    )


def product_of_conics(k: FieldDescriptor, pair1, pair2, label: str = "") -> InvolutionDescriptor:
    """Descriptor of (Q1, bar) tensor (Q2, bar), whose variety is C(Q1) x C(Q2)."""
    q1 = quaternion_class(k, *pair1)
    q2 = quaternion_class(k, *pair2)
    a = q1 + q2
    sigs = {}
    for P in k.orderings:
        if (P in q1.ram) != (P in q2.ram):
            sigs[P] = 0
        else:
            sigs[P] = 4 if P in q1.ram else 0
    clifford = EvenCliffordDescriptor.split(q1, q2)
    label = label or f"C({pair1[0]},{pair1[1]}) x C({pair2[0]},{pair2[1]})"
    return InvolutionDescriptor(k, 4, a, square_class(k, 1), clifford, sigs, label)


def involution_isomorphic(d: InvolutionDescriptor, d2: InvolutionDescriptor) -> Decision:
    if d.base != d2.base:
        raise DomainError("descriptors over different fields")
    diffs = _differences(d, d2, INVOLUTION_FIELDS)
    if diffs:
        return not_equal("invariant-mismatch", first_difference=diffs[0]["invariant"], differences=diffs)
    if d.deg <= 4:
        return equal("low-degree-classification")
    if _flags_hold(d.base, d.deg % 2 == 0):
        return equal("witt-ring-hypotheses")
    return inconclusive(FIELD_HYPOTHESES, "witt-ring-hypotheses", first_difference=None)


def grothendieck_equal_involutions(d: InvolutionDescriptor, d2: InvolutionDescriptor) -> Decision:
    if d.base != d2.base:
        raise DomainError("descriptors over different fields")
    for name in ("deg", "delta_trivial"):
        if getattr(d, name) != getattr(d2, name):
            diffs = [{"invariant": name, "left": str(getattr(d, name)), "right": str(getattr(d2, name))}]
            return not_equal("invariant-mismatch", first_difference=name, differences=diffs)
    if d.deg == 4 and d.delta_trivial:
        if d.star and d2.star:
            return involution_isomorphic(d, d2)
        diffs = _differences(d, d2, INVOLUTION_FIELDS)
        same = subgroup_equal(d.clifford.classes, d2.clifford.classes)
        rule = "kollar-subgroup"
        if same:
            first = diffs[0]["invariant"] if diffs else None
            return equal(rule, first_difference=first, differences=diffs)
        return not_equal(rule, first_difference="clifford-subgroup", differences=diffs)
    diffs = _differences(d, d2, ("clifford", "algebra_class", "signatures"))
    if diffs:
        return not_equal("invariant-mismatch", first_difference=diffs[0]["invariant"], differences=diffs)
    return involution_isomorphic(d, d2)


# Classes in K_0(Var) written as polynomials in L plus an optional symbolic
# term [Q_kernel] * L^shift for an anisotropic kernel of dimension >= 2.


@dataclass(frozen=True, eq=False)
class LPolynomial:
    coeffs: tuple[int, ...]
    kernel: QuadraticForm | None = None
    shift: int = 0

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if any(c < 0 for c in coeffs):
            raise ValidationError("coefficients must be non-negative")
        if self.kernel is not None and self.kernel.dim < 2:
            raise ValidationError("kernels of dimension <= 1 contribute nothing")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __eq__(self, other):
        if not isinstance(other, LPolynomial):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        if self.kernel is None or other.kernel is None:
            return self.kernel is None and other.kernel is None
        return self.shift == other.shift and similar(self.kernel, other.kernel)

    def __hash__(self):
        return hash((self.coeffs, self.shift if self.kernel else None, self.kernel.dim if self.kernel else 0))

    @property
    def kernel_fingerprint(self) -> QuadricFingerprint | None:
        return None if self.kernel is None else quadric_fingerprint(self.kernel)

    def scissor_step(self, dim_q: int) -> LPolynomial:
        """[Q_{q + H}] = 1 + [Q_q] L + L^dim(q), given [Q_q] = self."""
        coeffs = [0] * (max(len(self.coeffs) + 1, dim_q + 1))
        coeffs[0] += 1
        for i, c in enumerate(self.coeffs):
            coeffs[i + 1] += c
        coeffs[dim_q] += 1
        return LPolynomial(tuple(coeffs), self.kernel, self.shift + 1 if self.kernel else 0)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else ("L" if i == 1 else f"L^{i}")
            terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}{mono}")
        if self.kernel is not None:
            k = format_form(self.kernel)
            s = "" if self.shift == 0 else ("*L" if self.shift == 1 else f"*L^{self.shift}")
            terms.append(f"[Q({k})]{s}")
        return " + ".join(terms) or "0"

    def to_json(self) -> dict:
        out = {"coeffs": list(self.coeffs), "text": str(self)}
        if self.kernel is not None:
            out["kernel"] = format_form(self.kernel)
            out["shift"] = self.shift
        return out


ZERO = LPolynomial(())


def lemma_polynomial(n: int, kernel_dim: int) -> tuple[int, ...]:
    """Polynomial part of [Q_{q + nH}] for an anisotropic q of the given dim."""
    coeffs = [0] * (kernel_dim + 2 * n + 1)
    for i in range(n):
        coeffs[i] += 1
    if n:
        for j in range(n - 1, 2 * (n - 1) + 1):
            coeffs[kernel_dim + j] += 1
    return tuple(coeffs)


def motivic_class(q: QuadraticForm) -> LPolynomial:
    if q.dim < 2:
        raise DegenerateInput("a quadric needs a form of dimension at least 2")
    w = witt_decompose(q)
    n, ker = w.witt_index, w.kernel
    coeffs = lemma_polynomial(n, ker.dim)
    if ker.dim >= 2:
        return LPolynomial(coeffs, ker, n)
    return LPolynomial(coeffs)


def scissor_recursion(q: QuadraticForm, n: int) -> LPolynomial:
    """n-fold application of the one-plane scissor step starting at [Q_q]."""
    cls = motivic_class(q)
    for i in range(n):
        cls = cls.scissor_step(q.dim + 2 * i)
    return cls


def add_hyperbolic(q: QuadraticForm, n: int) -> QuadraticForm:
    return QuadraticForm(q.base, q.perp(hyperbolic(q.base, n)).coeffs)


def _check_enumerable(k: FieldDescriptor) -> None:
    if k.kind == RATIONAL:
        raise DomainError("Q has infinitely many quadrics in each dimension")
    if k.kind not in (PADIC, REAL):
        raise DomainError(f"enumeration over {k} is not supported")


def enumerate_quadrics(k: FieldDescriptor, n: int) -> list[QuadraticForm]:
    """One diagonal form per similarity class of quadrics in P^n."""
    _check_enumerable(k)
    if n < 1:
        raise DomainError("projective dimension must be at least 1")
    reps = sorted(square_class_reps(k), key=lambda a: (abs(a), a < 0))
    found: list[QuadraticForm] = []
    for combo in itertools.combinations_with_replacement(reps, n + 1):
        q = QuadraticForm(k, combo)
        if any(similar(q, f) for f in found):
            continue
        found.append(q)
    return found


def enumerate_involutions_dim2(k: FieldDescriptor) -> list[InvolutionDescriptor]:
    """The degree-4 orthogonal involutions over Q_p, listed through C_0.

    C_0 is a quaternion algebra over an etale quadratic algebra l.  For the
    split l this is an unordered pair of classes of Q_p, for a field l one
    of the two classes of l.  The algebra class is the corestriction.
    """
    if k.kind != PADIC:
        raise DomainError("this enumeration is defined over Q_p with p odd")
    e, p = k.epsilon, k.p
    out = [
        product_of_conics(k, (1, 1), (1, 1), "P1 x P1"),
        product_of_conics(k, (e, p), (e, p), "C(e,p) x C(e,p)"),
        product_of_conics(k, (e, p), (1, 1), "C(e,p) x P1"),
    ]
    for token, d in (("e", e), ("p", p), ("ep", e * p)):
        ext = EtaleQuadratic(k, square_class(k, d))
        for name, ram in (("(1,1)", frozenset()), ("D", frozenset({(p, 0)}))):
            cls = BrauerClass2(ext, ram)
            clifford = EvenCliffordDescriptor(k, ext, (cls,))
            desc = InvolutionDescriptor(
                k, 4, corestrict_local(cls), square_class(k, d), clifford, (), f"{name} over Qp(sqrt {token})"
            )
            out.append(desc)
    return out


def partition(items: list, same) -> list[list]:
    """Blocks of an equivalence relation given by a predicate."""
    blocks: list[list] = []
    for x in items:
        for block in blocks:
            if same(block[0], x):
                block.append(x)
                break
        else:
            blocks.append([x])
    return blocks
