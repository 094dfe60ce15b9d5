"""Finite model of hom modules between motives of central simple algebras.

An object is a central simple algebra over k or over a quadratic field
extension l/k.  Its motive is indexed by the finite G-set G/H where l is the
fixed field of H: one coset over k, two cosets {0, 1} over l.  A morphism is
a G-invariant function on the product of coset sets; the Galois group acts on
the cosets of l = k(sqrt d) through the character attached to d, so two
objects over the same field have a diagonal and an off-diagonal orbit, while
objects over different fields have a single orbit.

Composition of f: M -> N and g: N -> P is

    (g . f)(x, z) = sum_y f(x, y) g(y, z) * w(M, N, P)

with w(M, N, P) = i(M, N) i(N, P) / i(M, P), where i(X, Y) is the index of
the difference of the two classes over the compositum of their centers.  For
P = M this is the square of the index, which is the round-trip weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .brauer import BrauerClass2, EtaleQuadratic, restrict
from .decision import Decision, equal, not_equal
from .errors import DomainError, ValidationError
from .fields import RATIONAL, FieldDescriptor

INTEGERS = "Z"
RATIONALS = "Q"
F2 = "F2"
COEFFS = (INTEGERS, RATIONALS, F2)


def _power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class MotiveObject:
    """U(A) for a central simple algebra A over k or over k(sqrt d)."""

    base: FieldDescriptor
    center: EtaleQuadratic | None
    cls: BrauerClass2
    ind_hint: int | None = None

    def __post_init__(self):
        if self.center is not None:
            if self.center.is_split:
                raise DomainError("objects over k x k split into two objects over k")
            if self.center.base != self.base:
                raise DomainError("center over a different field")
        if self.cls.base != (self.base if self.center is None else self.center):
            raise DomainError("class over a different center")
        ind = self.cls.index if self.ind_hint is None else self.ind_hint
        if not _power_of_two(ind):
            raise DomainError(f"index {ind} is not a power of 2")
        if (ind == 1) != self.cls.is_trivial:
            raise ValidationError("index 1 exactly for the trivial class")
        if self.base.kind != RATIONAL and ind != self.cls.index:
            raise ValidationError("over a local field the index is determined by the class")
        object.__setattr__(self, "ind_hint", ind)

    @property
    def cosets(self) -> tuple[int, ...]:
        return (0,) if self.center is None else (0, 1)

    @property
    def ind(self) -> int:
        return self.ind_hint

    @classmethod
    def over_base(cls, base: FieldDescriptor, c: BrauerClass2 | None = None) -> MotiveObject:
        return cls(base, None, c if c is not None else BrauerClass2.trivial(base))

    @classmethod
    def over_field(cls, ext: EtaleQuadratic, c: BrauerClass2 | None = None) -> MotiveObject:
        return cls(ext.base, ext, c if c is not None else BrauerClass2.trivial(ext))


def _same_field(M: MotiveObject, N: MotiveObject) -> bool:
    return M.center is not None and M.center == N.center


def pair_index(M: MotiveObject, N: MotiveObject) -> int:
    """Index of (A_M)^op tensor A_N over the compositum of the centers."""
    if M.base != N.base:
        raise DomainError("objects over different base fields")
    if M.center is None and N.center is None:
        return 1 if M.cls == N.cls else 2
    if M.center is None or N.center is None:
        obj_b, obj_l = (M, N) if M.center is None else (N, M)
        diff = restrict(obj_b.cls, obj_l.center) + obj_l.cls
        return diff.index
    if M.center == N.center:
        return (M.cls + N.cls).index
    # different quadratic fields: the compositum has degree 4
    if M.cls.is_trivial and N.cls.is_trivial:
        return 1
    if M.base.kind != RATIONAL:
        # a degree-4 extension of a local field splits every class of order 2
        return 1
    raise DomainError("classes over a biquadratic compositum of Q are not modelled")


def composition_weight(M: MotiveObject, N: MotiveObject, P: MotiveObject) -> int:
    num = pair_index(M, N) * pair_index(N, P)
    den = pair_index(M, P)
    assert num % den == 0
    return num // den


def _orbit(M: MotiveObject, N: MotiveObject, x: int, y: int) -> int:
    if _same_field(M, N):
        return 0 if x == y else 1
    return 0


@dataclass(frozen=True)
class HomModule:
    source: MotiveObject
    target: MotiveObject
    coeff: str

    def __post_init__(self):
        if self.coeff not in COEFFS:
            raise DomainError(f"unknown coefficients {self.coeff!r}")
        if self.source.base != self.target.base:
            raise DomainError("objects over different base fields")

    @property
    def orbits(self) -> tuple[str, ...]:
        if _same_field(self.source, self.target):
            return ("diagonal", "off-diagonal")
        return ("all",)

    @property
    def rank(self) -> int:
        return len(self.orbits)

    @property
    def weight(self) -> int:
        """Multiplier of the round trip source -> target -> source."""
        return pair_index(self.source, self.target) ** 2

    def element(self, *values) -> Morphism:
        if len(values) != self.rank:
            raise DomainError(f"expected {self.rank} orbit values, got {len(values)}")
        return Morphism(self, tuple(_reduce(self.coeff, v) for v in values))

    def elements(self, values) -> list[Morphism]:
        return [self.element(*vs) for vs in itertools.product(values, repeat=self.rank)]

    def all_elements_f2(self) -> list[Morphism]:
        if self.coeff != F2:
            raise DomainError("only F2 hom modules are finite")
        return self.elements((0, 1))


def _reduce(coeff: str, v):
    if coeff == F2 and isinstance(v, int):
        return v % 2
    if coeff == RATIONALS and isinstance(v, int):
        return Fraction(v)
    return v


@dataclass(frozen=True)
class Morphism:
    module: HomModule
    values: tuple

    def entry(self, x: int, y: int):
        return self.values[_orbit(self.module.source, self.module.target, x, y)]

    def matrix(self) -> list[list]:
        m = self.module
        return [[self.entry(x, y) for y in m.target.cosets] for x in m.source.cosets]


def hom_module(M: MotiveObject, N: MotiveObject, coeff: str = INTEGERS) -> HomModule:
    return HomModule(M, N, coeff)


def identity(M: MotiveObject, coeff: str = INTEGERS) -> Morphism:
    mod = HomModule(M, M, coeff)
    return mod.element(1, 0) if mod.rank == 2 else mod.element(1)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The composite M -> N -> P of f: M -> N followed by g: N -> P."""
    if f.module.target != g.module.source:
        raise DomainError("middle objects do not match")
    if f.module.coeff != g.module.coeff:
        raise DomainError("coefficient rings differ")
    M, N, P = f.module.source, f.module.target, g.module.target
    out = HomModule(M, P, f.module.coeff)
    w = composition_weight(M, N, P)
    values: dict[int, object] = {}
    for x in M.cosets:
        for z in P.cosets:
            total = sum(f.entry(x, y) * g.entry(y, z) for y in N.cosets) * w
            total = _reduce(out.coeff, total) if out.coeff == F2 else total
            o = _orbit(M, P, x, z)
            if o in values:
                if values[o] != total:
                    assert sympy.expand(values[o] - total) == 0, "composite is not G-invariant"
            else:
                values[o] = total
    return Morphism(out, tuple(values[i] for i in range(out.rank)))


def is_identity(f: Morphism) -> bool:
    return f.module.source == f.module.target and f.values == identity(f.module.source, f.module.coeff).values


def u_iso_base(M: MotiveObject, N: MotiveObject) -> bool:
    if M.center is not None or N.center is not None:
        raise DomainError("both objects must be over the base field")
    if M.base != N.base:
        raise DomainError("objects over different base fields")
    return M.cls == N.cls


def iso_system(M: MotiveObject, N: MotiveObject, coeff: str = RATIONALS) -> tuple[list, list]:
    """Equations for f: M -> N, g: N -> M with g . f the identity of M.

    Returns the polynomial equations (as expressions equal to zero) and the
    unknowns, built from the composition law itself.
    """
    mod_f, mod_g = HomModule(M, N, coeff), HomModule(N, M, coeff)
    a = sympy.symbols(f"a0:{mod_f.rank}")
    b = sympy.symbols(f"b0:{mod_g.rank}")
    comp = compose(Morphism(mod_f, tuple(a)), Morphism(mod_g, tuple(b)))
    ident = identity(M, coeff).values
    eqs = [sympy.expand(c - int(i)) for c, i in zip(comp.values, ident)]
    return eqs, list(a) + list(b)


def groebner_certificate(eqs: list, unknowns: list) -> list:
    """Reduced Groebner basis over Q; [1] certifies that there is no solution."""
    return list(sympy.groebner(eqs, *unknowns, order="lex", domain="QQ").exprs)


def u_l_iso(l1: EtaleQuadratic, l2: EtaleQuadratic, coeff: str = RATIONALS) -> bool:
    """U(l1) = U(l2) with rational coefficients iff l1 and l2 are isomorphic."""
    for ext in (l1, l2):
        if ext.is_split:
            raise DomainError("expected quadratic field extensions")
    if l1.base != l2.base:
        raise DomainError("extensions of different fields")
    if l1 == l2:
        return True
    eqs, unknowns = iso_system(MotiveObject.over_field(l1), MotiveObject.over_field(l2), coeff)
    basis = groebner_certificate(eqs, unknowns)
    assert basis == [1], f"expected an inconsistent system, got {basis}"
    return False


def endomorphism_system(w: int, box: int = 8) -> list[tuple[int, int, int, int]]:
    """Integer solutions in [-box, box]^4 of the round-trip identity system.

    (a+ b+ + a- b-) w = 1 and (a+ b- + a- b+) w = 0.
    """
    rng = range(-box, box + 1)
    sols = []
    for ap, am, bp, bm in itertools.product(rng, repeat=4):
        if (ap * bp + am * bm) * w == 1 and (ap * bm + am * bp) * w == 0:
            sols.append((ap, am, bp, bm))
    return sols


def u_iso_quadratic_center(M: MotiveObject, N: MotiveObject) -> bool:
    if M.center is None or N.center is None or M.center != N.center:
        raise DomainError("both objects need the same quadratic center")
    return M.cls == N.cls


def _invertible(x: Morphism) -> bool:
    M = x.module.source
    for h in HomModule(M, M, x.module.coeff).all_elements_f2():
        if is_identity(compose(x, h)) and is_identity(compose(h, x)):
            return True
    return False


def radical_elements(M: MotiveObject, N: MotiveObject) -> list[Morphism]:
    """f: M -> N over F2 with id - g.f invertible for every g: N -> M."""
    hom, back = HomModule(M, N, F2), HomModule(N, M, F2)
    one = identity(M, F2)
    out = []
    for f in hom.all_elements_f2():
        ok = True
        for g in back.all_elements_f2():
            gf = compose(f, g)
            diff = Morphism(gf.module, tuple((a - b) % 2 for a, b in zip(one.values, gf.values)))
            if not _invertible(diff):
                ok = False
                break
        if ok:
            out.append(f)
    return out


def radical_quotient_rank(M: MotiveObject, N: MotiveObject) -> int:
    """F2-dimension of Hom(M, N) modulo the radical ideal."""
    total = len(HomModule(M, N, F2).all_elements_f2())
    rad = len(radical_elements(M, N))
    assert total % rad == 0
    return (total // rad).bit_length() - 1


def nrad_hom_f2(B: MotiveObject, A: MotiveObject) -> int:
    if B.center is not None or A.center is None:
        raise DomainError("expected B over the base and A over a quadratic field")
    # the round trip pairing 2 a b ind^2 vanishes mod 2
    hom, back = HomModule(B, A, F2), HomModule(A, B, F2)
    for f in hom.all_elements_f2():
        for g in back.all_elements_f2():
            assert compose(f, g).values == (0,)
    rank = radical_quotient_rank(B, A)
    assert rank == 0
    return rank


def sum_match(Ms: list[MotiveObject], Ns: list[MotiveObject]) -> bool:
    """Whether two direct sums of base motives agree (2-torsion classes)."""
    for X in list(Ms) + list(Ns):
        if X.center is not None:
            raise DomainError("sum matching is defined for objects over the base")
    if len({X.base for X in list(Ms) + list(Ns)}) > 1:
        raise DomainError("objects over different base fields")
    if len(Ms) != len(Ns):
        return False
    key = lambda X: sorted(str(w) for w in X.cls.ram)  # noqa: E731
    return sorted(map(key, Ms)) == sorted(map(key, Ns))


@dataclass(frozen=True)
class ParityMatrix:
    """n x n entries (a+, a-) of a composite of split maps U(A)^n -> NM -> U(A)^n."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple((int(p), int(m)) for p, m in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValidationError("a square nonempty matrix is required")
        for i, j in itertools.product(range(n), repeat=2):
            p, m = rows[i][j]
            if i == j and p % 2 == 0:
                raise ValidationError(f"diagonal a+ at ({i},{j}) must be odd")
            if i != j and p % 2:
                raise ValidationError(f"off-diagonal a+ at ({i},{j}) must be even")
            if m % 2:
                raise ValidationError(f"a- at ({i},{j}) must be even")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def expanded(self) -> list[list[int]]:
        """The 2n x 2n matrix with 2 x 2 blocks diag(a+ + a-, a+ - a-)."""
        n = self.n
        out = [[0] * (2 * n) for _ in range(2 * n)]
        for i, j in itertools.product(range(n), repeat=2):
            p, m = self.entries[i][j]
            out[2 * i][2 * j] = p + m
            out[2 * i + 1][2 * j + 1] = p - m
        return out


def bareiss_det(mat: list[list[int]]) -> int:
    a = [row[:] for row in mat]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def parity_determinant(M: ParityMatrix) -> str:
    """``Odd`` or ``Even`` for the determinant of the expanded matrix."""
    return "Odd" if bareiss_det(M.expanded()) % 2 else "Even"


def cancellation_check(
    NM: list[MotiveObject],
    Bs: list[MotiveObject],
    Bs2: list[MotiveObject],
    A: MotiveObject,
    A2: MotiveObject,
) -> Decision:
    """Given NM + sum(Bs) + U(A) = NM + sum(Bs2) + U(A2), decide U(A) = U(A2).

    The isomorphism of the two sums is an input assumption; the verdict
    replays the cancellation argument on the descriptors.
    """
    objs = list(NM) + list(Bs) + list(Bs2) + [A, A2]
    if len({X.base for X in objs}) > 1:
        raise DomainError("objects over different base fields")
    for X in objs:
        if not _power_of_two(X.ind):
            raise DomainError("indices must be powers of 2")
    if any(X.center is not None for X in list(Bs) + list(Bs2)):
        raise ValidationError("the B summands live over the base field")
    if len(Bs) != len(Bs2):
        raise ValidationError("the B summands must have the same multiplicity")
    if A.center is None or A2.center is None:
        raise ValidationError("A and A' live over quadratic fields")
    if not u_l_iso(A.center, A2.center):
        return not_equal("quadratic-center-isomorphism", first_difference="center",
                         left=str(A.center), right=str(A2.center))
    if not u_iso_quadratic_center(A, A2):
        w = pair_index(A, A2) ** 2
        return not_equal("class-over-center", first_difference="class", index=pair_index(A, A2),
                         integer_solutions=len(endomorphism_system(w, 2)))
    return equal("class-over-center")
