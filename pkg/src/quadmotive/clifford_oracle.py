"""Brute-force structure of Clifford algebras of small diagonal forms.

This module does not use the invariant tables in ``forms``.  It multiplies
basis monomials e_S directly (e_i^2 = a_i, e_i e_j = -e_j e_i), finds the
center of C_0(q) by solving the linear commutation equations over Q, and
splits the algebra into quaternion factors by a symplectic reduction of
monomials whose squares and commutators are read off the multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .brauer import BrauerClass2, EtaleQuadratic, quaternion_class, restrict
from .errors import DomainError, ResourceLimit
from .fields import RATIONAL, SquareClass, square_class
from .forms import EvenCliffordDescriptor, QuadraticForm

MAX_DIM = 6

Element = dict  # bitmask -> Fraction


def _blade_product(s: int, t: int, a: tuple[int, ...]) -> tuple[Fraction, int]:
    """e_S * e_T = coef * e_{S xor T}."""
    swaps = 0
    for i in range(len(a)):
        if t >> i & 1:
            # e_i from T moves past the generators of S with larger index
            swaps += bin(s >> (i + 1)).count("1")
    coef = Fraction(-1 if swaps % 2 else 1)
    common = s & t
    for i in range(len(a)):
        if common >> i & 1:
            coef *= a[i]
    return coef, s ^ t


class CliffordAlgebra:
    """C(q) for q = <a_1, ..., a_d> with exact rational coefficients."""

    def __init__(self, coeffs: tuple[int, ...]):
        self.a = tuple(coeffs)
        self.d = len(coeffs)

    def mul(self, x: Element, y: Element) -> Element:
        out: dict[int, Fraction] = {}
        for s, cs in x.items():
            for t, ct in y.items():
                c, u = _blade_product(s, t, self.a)
                out[u] = out.get(u, Fraction(0)) + cs * ct * c
        return {u: c for u, c in out.items() if c != 0}

    def monomial(self, s: int, c=1) -> Element:
        return {s: Fraction(c)}

    def even_basis(self) -> list[int]:
        return [s for s in range(1 << self.d) if bin(s).count("1") % 2 == 0]


def _scalar(x: Element) -> Fraction | None:
    if not x:
        return Fraction(0)
    if set(x) == {0}:
        return x[0]
    return None


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(v)
    return basis


def even_center(alg: CliffordAlgebra) -> list[Element]:
    """Basis of the center of C_0 from the commutation equations."""
    basis = alg.even_basis()
    pos = {s: i for i, s in enumerate(basis)}
    gens = [0b1 | (1 << j) for j in range(1, alg.d)]
    rows = []
    for g in gens:
        eqs: dict[int, list[Fraction]] = {}
        for s in basis:
            c1, u1 = _blade_product(s, g, alg.a)
            c2, u2 = _blade_product(g, s, alg.a)
            for c, u in ((c1, u1), (-c2, u2)):
                row = eqs.setdefault(u, [Fraction(0)] * len(basis))
                row[pos[s]] += c
        rows.extend(r for r in eqs.values() if any(r))
    null = _nullspace(rows, len(basis))
    return [{basis[i]: c for i, c in enumerate(v) if c != 0} for v in null]


@dataclass(frozen=True)
class QuaternionFactor:
    i: int
    j: int
    i_square: Fraction
    j_square: Fraction


@dataclass(frozen=True)
class MonomialSplitting:
    factors: tuple[QuaternionFactor, ...]
    central: tuple[tuple[int, Fraction], ...]  # central monomials and their squares


def _commutes(alg: CliffordAlgebra, s: int, t: int) -> bool:
    c1, _ = _blade_product(s, t, alg.a)
    c2, _ = _blade_product(t, s, alg.a)
    if c1 == c2:
        return True
    assert c1 == -c2
    return False


def _square(alg: CliffordAlgebra, s: int) -> Fraction:
    sq = _scalar(alg.mul(alg.monomial(s), alg.monomial(s)))
    assert sq is not None
    return sq


def split_monomials(alg: CliffordAlgebra, gens: list[int]) -> MonomialSplitting:
    """Symplectic reduction of the group generated by the given monomials.

    Each step picks x, finds y anticommuting with x and makes every other
    generator commute with both by multiplying it by x or y.  Monomials are
    tracked as bitmasks; products of monomials stay monomials up to sign.
    """
    gens = list(gens)
    factors = []
    central = []
    while gens:
        x = gens.pop(0)
        partner = next((g for g in gens if not _commutes(alg, x, g)), None)
        if partner is None:
            central.append((x, _square(alg, x)))
            continue
        y = partner
        gens.remove(y)
        factors.append(QuaternionFactor(x, y, _square(alg, x), _square(alg, y)))
        new = []
        for g in gens:
            h = g
            if not _commutes(alg, g, y):
                h ^= x
            if not _commutes(alg, g, x):
                h ^= y
            assert _commutes(alg, h, x) and _commutes(alg, h, y)
            if h:
                new.append(h)
        gens = new
    return MonomialSplitting(tuple(factors), tuple(central))


def _factor_class(base, factors) -> BrauerClass2:
    cls = BrauerClass2.trivial(base)
    for f in factors:
        cls = cls + quaternion_class(base, f.i_square, f.j_square)
    return cls


@dataclass(frozen=True)
class OracleSummary:
    dim: int
    center_dim: int
    center_disc: SquareClass | None
    simple_factor_count: int
    even_factors: tuple[QuaternionFactor, ...]
    even_class: BrauerClass2
    clifford_class: BrauerClass2
    descriptor: EvenCliffordDescriptor

    def ramification(self) -> dict:
        """For each simple factor of C_0, the places where it is division-like."""
        return {i: c.sorted_ram() for i, c in enumerate(self.descriptor.classes)}


def _center_disc(alg: CliffordAlgebra, center: list[Element], k) -> SquareClass:
    z = next(e for e in center if set(e) != {0})
    z = {s: c for s, c in z.items() if s != 0} or z
    z2 = alg.mul(z, z)
    # z^2 = x + y z; the center is k[t]/(t^2 - y t - x)
    s0 = next(iter(z))
    y = z2.get(s0, Fraction(0)) / z[s0]
    x = z2.get(0, Fraction(0))
    rest = {s: c - y * z.get(s, 0) for s, c in z2.items() if s != 0}
    assert all(c == 0 for c in rest.values())
    return square_class(k, y * y + 4 * x)


def clifford_oracle(q: QuadraticForm) -> OracleSummary:
    """Structure of C_0(q), and the class of C(q) for even dimension."""
    if q.dim > MAX_DIM:
        raise ResourceLimit(f"the oracle handles dim <= {MAX_DIM}")
    if q.base.kind != RATIONAL:
        raise DomainError("the oracle works over Q")
    k = q.base
    alg = CliffordAlgebra(q.coeffs)
    d = q.dim
    center = even_center(alg)
    even_gens = [0b1 | (1 << j) for j in range(1, d)]
    even = split_monomials(alg, even_gens)
    even_class = _factor_class(k, even.factors)
    disc = None
    if len(center) == 1:
        count = 1
        desc = EvenCliffordDescriptor(k, None, (even_class,))
    else:
        assert len(center) == 2
        disc = _center_disc(alg, center, k)
        if disc.is_trivial:
            count = 2
            desc = EvenCliffordDescriptor(k, EtaleQuadratic(k), (even_class, even_class))
        else:
            count = 1
            ext = EtaleQuadratic(k, disc)
            desc = EvenCliffordDescriptor(k, ext, (restrict(even_class, ext),))
    if d % 2:
        full_class = even_class
    else:
        full = split_monomials(alg, [1 << j for j in range(d)])
        full_class = _factor_class(k, full.factors)
    return OracleSummary(d, len(center), disc, count, even.factors, even_class, full_class, desc)
