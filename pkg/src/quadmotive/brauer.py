"""2-torsion Brauer classes as sets of ramified places.

Over Q a class is the finite even set of places where its local invariant is
1/2.  Over R and Q_p it is a subset of the unique place.  Over a quadratic
field extension l = k(sqrt d) the places are labelled by pairs: ``(v, 0)`` for
the single place above a non-split v and ``(v, 1)``, ``(v, 2)`` for the two
places above a split v.  Classes over the split algebra k x k are plain pairs
of classes over k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import DomainError
from .fields import (
    INF,
    PADIC,
    PADIC2,
    RATIONAL,
    REAL,
    FieldDescriptor,
    SquareClass,
    hilbert_reciprocity_defect,
    hilbert_symbol,
    jacobi,
    place_key,
)


@dataclass(frozen=True)
class EtaleQuadratic:
    """k x k (``d is None``) or the field k(sqrt d) for nontrivial d."""

    base: FieldDescriptor
    d: SquareClass | None = None

    def __post_init__(self):
        if self.d is not None:
            if self.d.base != self.base:
                raise DomainError("square class over a different field")
            if self.d.is_trivial:
                raise DomainError("k(sqrt d) needs d nontrivial; use the split algebra")

    @property
    def is_split(self) -> bool:
        return self.d is None

    def __str__(self) -> str:
        return "split" if self.d is None else f"sqrt({self.d.token()})"


Base = Union[FieldDescriptor, EtaleQuadratic]


def splitting_type(d: int, v) -> str:
    """How the place v of Q behaves in Q(sqrt d), d squarefree and not 1.

    Returns one of ``split``, ``inert``, ``ramified`` for primes and
    ``split``/``complex`` for the real place.
    """
    if v == INF:
        return "split" if d > 0 else "complex"
    disc = d if d % 4 == 1 else 4 * d
    if disc % v == 0:
        return "ramified"
    if v == 2:
        return "split" if disc % 8 == 1 else "inert"
    return "split" if jacobi(disc, v) == 1 else "inert"


def places_above(ext: EtaleQuadratic, v) -> tuple:
    if ext.is_split:
        raise DomainError("places of the split algebra are not modelled")
    if ext.base.kind != RATIONAL:
        return ((v, 0),)
    if splitting_type(ext.d.rep, v) == "split":
        return ((v, 1), (v, 2))
    return ((v, 0),)


def _local_degree(ext: EtaleQuadratic, w) -> int:
    # the local degree at a place (v, i) of a quadratic field
    v, i = w
    return 1 if i else 2


def _ram_key(w):
    if isinstance(w, tuple):
        return (place_key(w[0]), w[1])
    return place_key(w)


@dataclass(frozen=True)
class BrauerClass2:
    """A class in Br(K)[2] given by its set of ramified places."""

    base: Base
    ram: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "ram", frozenset(self.ram))
        base = self.base
        if isinstance(base, FieldDescriptor):
            for v in self.ram:
                if not base.has_place(v):
                    raise DomainError(f"{v!r} is not a place of {base}")
            if base.kind == RATIONAL and len(self.ram) % 2:
                raise DomainError(f"odd ramification set {sorted(self.ram, key=place_key)} over Q")
            return
        if base.is_split:
            raise DomainError("classes over k x k are pairs of classes over k")
        k = base.base
        for w in self.ram:
            if not (isinstance(w, tuple) and len(w) == 2 and k.has_place(w[0])):
                raise DomainError(f"{w!r} is not a place of {base}@{k}")
            if w not in places_above(base, w[0]):
                raise DomainError(f"{w!r} is not a place of {base}@{k}")
            if w[0] == INF and (k.kind == REAL or splitting_type(base.d.rep, INF) == "complex"):
                raise DomainError("complex places carry no Brauer invariant")
        if k.kind == RATIONAL and len(self.ram) % 2:
            raise DomainError("odd ramification set over a number field")

    def __add__(self, other: BrauerClass2) -> BrauerClass2:
        if other.base != self.base:
            raise DomainError("Brauer classes over different bases")
        return BrauerClass2(self.base, self.ram ^ other.ram)

    @property
    def is_trivial(self) -> bool:
        return not self.ram

    @property
    def index(self) -> int:
        return 1 if self.is_trivial else 2

    def sorted_ram(self) -> list:
        return sorted(self.ram, key=_ram_key)

    @classmethod
    def trivial(cls, base: Base) -> BrauerClass2:
        return cls(base, frozenset())


def quaternion_class(base: Base, a, b) -> BrauerClass2:
    """Class of the quaternion algebra (a,b) over k or over k(sqrt d)."""
    if isinstance(base, EtaleQuadratic):
        cls = quaternion_class(base.base, a, b)
        if base.is_split:
            raise DomainError("use restrict() for the split algebra")
        return restrict(cls, base)
    if base.kind == RATIONAL:
        return BrauerClass2(base, hilbert_reciprocity_defect(a, b))
    ram = frozenset() if hilbert_symbol(base, a, b) == 1 else frozenset({base.place})
    return BrauerClass2(base, ram)


def restrict(cls: BrauerClass2, ext: EtaleQuadratic):
    """Restriction of a class of k to an etale quadratic k-algebra.

    The split algebra gives the pair (cls, cls).  For a field the local
    invariant is multiplied by the local degree, so it survives exactly at the
    places where v splits.
    """
    if not isinstance(cls.base, FieldDescriptor):
        raise DomainError("restriction starts from a class over the base field")
    if cls.base != ext.base:
        raise DomainError("extension over a different base")
    if ext.is_split:
        return (cls, cls)
    k = ext.base
    if k.kind in (REAL, PADIC, PADIC2):
        return BrauerClass2(ext, frozenset())
    ram = set()
    for v in cls.ram:
        for w in places_above(ext, v):
            if _local_degree(ext, w) == 1:
                ram.add(w)
    return BrauerClass2(ext, frozenset(ram))


def corestrict_local(cls: BrauerClass2) -> BrauerClass2:
    """Corestriction from a quadratic extension of R or Q_p down to the base.

    Locally corestriction preserves the invariant in Q/Z, so the nontrivial
    class of l maps to the nontrivial class of k.
    """
    ext = cls.base
    if not isinstance(ext, EtaleQuadratic) or ext.is_split:
        raise DomainError("corestriction needs a class over a quadratic field")
    k = ext.base
    if k.kind not in (REAL, PADIC, PADIC2):
        raise DomainError("corestriction is only modelled over local bases")
    return BrauerClass2(k, frozenset({k.place}) if cls.ram else frozenset())


def _span_basis(vectors: list[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for x in vectors:
        while x:
            top = x.bit_length() - 1
            if top not in basis:
                basis[top] = x
                break
            x ^= basis[top]
    return basis


def _in_span(basis: dict[int, int], x: int) -> bool:
    while x:
        top = x.bit_length() - 1
        if top not in basis:
            return False
        x ^= basis[top]
    return True


def subgroup_equal(gens: Iterable[BrauerClass2], gens2: Iterable[BrauerClass2]) -> bool:
    """Whether two lists of classes generate the same subgroup of Br[2]."""
    gens, gens2 = list(gens), list(gens2)
    bases = {g.base for g in gens + gens2}
    if len(bases) > 1:
        raise DomainError("classes over different bases")
    support = sorted(set().union(*(g.ram for g in gens + gens2)), key=_ram_key)
    index = {w: i for i, w in enumerate(support)}

    def vec(g):
        return sum(1 << index[w] for w in g.ram)

    b1 = _span_basis([vec(g) for g in gens])
    b2 = _span_basis([vec(g) for g in gens2])
    if len(b1) != len(b2):
        return False
    return all(_in_span(b1, x) for x in b2.values())

