"""Base fields, places, square classes and quadratic symbols.

Three kinds of base field are supported: the rationals, the reals and the
p-adic numbers.  Q_2 is available for Hilbert symbols only, which is what
rational forms need for their invariants at 2.

A place is a prime number or ``INF`` (the real place).  The real place is also
the identifier of the unique ordering of Q and R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy

from .errors import DegenerateInput, DomainError, ResourceLimit

INF = math.inf
Place = Union[int, float]

FACTOR_BOUND = 10**6

RATIONAL = "Q"
REAL = "R"
PADIC = "Qp"
PADIC2 = "Q2"

Value = Union[int, Fraction, str]


def place_str(v: Place) -> str:
    return "inf" if v == INF else str(v)


def place_key(v: Place) -> tuple[int, float]:
    # finite primes first, the real place last
    return (1, 0) if v == INF else (0, v)


def sorted_places(places) -> list:
    return sorted(places, key=place_key)


@lru_cache(maxsize=4096)
def _factor(n: int, bound: int) -> tuple[tuple[int, int], ...]:
    n = abs(n)
    if n <= 1:
        return ()
    fac = sympy.factorint(n, limit=bound)
    for q in fac:
        if q > bound and not sympy.isprime(q):
            raise ResourceLimit(f"cannot factor {n} with trial bound {bound}")
    return tuple(sorted(fac.items()))


def factorize(n: int, bound: int = FACTOR_BOUND) -> dict[int, int]:
    """Prime factorization of |n| with a trial-division bound."""
    return dict(_factor(int(n), bound))


def prime_divisors(n: int, bound: int = FACTOR_BOUND) -> list[int]:
    return [q for q, _ in _factor(int(n), bound)]


def squarefree_part(n: int, bound: int = FACTOR_BOUND) -> int:
    if n == 0:
        raise DegenerateInput("zero has no square class")
    out = 1
    for q, e in _factor(int(n), bound):
        if e % 2:
            out *= q
    return out if n > 0 else -out


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol of ``a`` modulo the odd prime ``p``."""
    if p % 2 == 0 or not is_prime(p):
        raise DomainError(f"legendre symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"jacobi symbol needs odd positive modulus, got {n}")
    return int(sympy.jacobi_symbol(a % n, n))


def least_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DegenerateInput("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class FieldDescriptor:
    """A base field: Q, R, Q_p (p odd) or Q_2 (symbols only)."""

    kind: str
    p: int | None = None
    epsilon: int | None = None
    i3_torsion_free: bool = True
    hasse_number_finite: bool = True

    def __post_init__(self):
        if self.kind in (RATIONAL, REAL):
            if self.p is not None or self.epsilon is not None:
                raise DomainError(f"{self.kind} takes no prime")
        elif self.kind == PADIC:
            if self.p is None or self.p == 2 or not is_prime(self.p):
                raise DomainError(f"Qp needs an odd prime, got {self.p}")
            if self.epsilon is None:
                object.__setattr__(self, "epsilon", least_nonresidue(self.p))
            elif legendre(self.epsilon, self.p) != -1:
                raise DomainError(f"epsilon={self.epsilon} is not a non-residue mod {self.p}")
        elif self.kind == PADIC2:
            object.__setattr__(self, "p", 2)
            if self.epsilon is not None:
                raise DomainError("Q2 has no epsilon parameter")
        else:
            raise DomainError(f"unknown field kind {self.kind!r}")

    @property
    def orderings(self) -> tuple:
        return (INF,) if self.kind in (RATIONAL, REAL) else ()

    @property
    def formally_real(self) -> bool:
        return bool(self.orderings)

    @property
    def is_local(self) -> bool:
        return self.kind != RATIONAL

    @property
    def place(self) -> Place:
        """The unique place of a local or real field."""
        if self.kind == RATIONAL:
            raise DomainError("Q has infinitely many places")
        return INF if self.kind == REAL else self.p

    def has_place(self, v: Place) -> bool:
        if self.kind == RATIONAL:
            return v == INF or (isinstance(v, int) and is_prime(v))
        return v == self.place

    def __str__(self) -> str:
        if self.kind == PADIC:
            if self.epsilon != least_nonresidue(self.p):
                return f"Qp:{self.p}:{self.epsilon}"
            return f"Qp:{self.p}"
        if self.kind == PADIC2:
            return "Qp:2"
        return self.kind


QQ = FieldDescriptor(RATIONAL)
RR = FieldDescriptor(REAL)


def padic(p: int, epsilon: int | None = None) -> FieldDescriptor:
    if p == 2:
        return FieldDescriptor(PADIC2)
    return FieldDescriptor(PADIC, p, epsilon)


def parse_field(text: str, epsilon: int | None = None) -> FieldDescriptor:
    """Parse ``Q``, ``R``, ``Qp:5`` or ``Qp:7:5`` (explicit epsilon)."""
    text = text.strip()
    if text in (RATIONAL, REAL):
        if epsilon is not None:
            raise DomainError("--epsilon only applies to p-adic fields")
        return FieldDescriptor(text)
    parts = text.split(":")
    if parts[0] != "Qp" or len(parts) not in (2, 3):
        raise DomainError(f"bad field spec {text!r}")
    try:
        p = int(parts[1])
        eps = int(parts[2]) if len(parts) == 3 else None
    except ValueError:
        raise DomainError(f"bad field spec {text!r}") from None
    if epsilon is not None:
        if eps is not None and eps != epsilon:
            raise DomainError("conflicting epsilon values")
        eps = epsilon
    return padic(p, eps)


def to_rational(k: FieldDescriptor, value: Value) -> Fraction:
    """Interpret an int, Fraction or token string as a nonzero rational."""
    if isinstance(value, str):
        text = value.strip()
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:]
        elif text.startswith("+"):
            text = text[1:]
        if k.kind == PADIC and text in ("e", "p", "ep", "pe"):
            x = {"e": k.epsilon, "p": k.p, "ep": k.epsilon * k.p, "pe": k.epsilon * k.p}[text]
        else:
            try:
                x = Fraction(text)
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"not a value over {k}: {value!r}") from None
        x = sign * Fraction(x)
    else:
        x = Fraction(value)
    if x == 0:
        raise DegenerateInput("zero is not allowed here")
    return x


def _as_integer(x: Fraction) -> int:
    # n/d and n*d differ by the square d^2
    return x.numerator * x.denominator


def canonical_rep(k: FieldDescriptor, value: Value) -> int:
    n = _as_integer(to_rational(k, value))
    if k.kind == RATIONAL:
        return squarefree_part(n)
    if k.kind == REAL:
        return 1 if n > 0 else -1
    p = k.p
    v = valuation(n, p)
    u = n // p**v
    if k.kind == PADIC:
        rep = 1 if legendre(u, p) == 1 else k.epsilon
    else:
        rep = {1: 1, 3: -5, 5: 5, 7: -1}[u % 8]
    return rep * p if v % 2 else rep


@dataclass(frozen=True)
class SquareClass:
    """An element of k^x/(k^x)^2 stored by its canonical representative."""

    base: FieldDescriptor
    rep: int

    def __post_init__(self):
        object.__setattr__(self, "rep", canonical_rep(self.base, self.rep))

    def __mul__(self, other: SquareClass) -> SquareClass:
        if other.base != self.base:
            raise DomainError("square classes over different fields")
        return SquareClass(self.base, self.rep * other.rep)

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1

    def token(self) -> str:
        return format_rep(self.base, self.rep)

    def __str__(self) -> str:
        return self.token()


def format_rep(k: FieldDescriptor, rep: int) -> str:
    if k.kind != PADIC:
        return str(rep)
    sign = "-" if rep < 0 else ""
    r = abs(rep)
    return sign + {1: "1", k.epsilon: "e", k.p: "p", k.epsilon * k.p: "ep"}.get(r, str(r))


def square_class(k: FieldDescriptor, value: Value) -> SquareClass:
    return SquareClass(k, canonical_rep(k, value))


def square_class_reps(k: FieldDescriptor) -> tuple[int, ...]:
    """All square classes of a local or real field."""
    if k.kind == REAL:
        return (1, -1)
    if k.kind == PADIC:
        return (1, k.epsilon, k.p, k.epsilon * k.p)
    if k.kind == PADIC2:
        return (1, -1, 5, -5, 2, -2, 10, -10)
    raise DomainError("Q has infinitely many square classes")


def _check_place(v: Place) -> None:
    if v == INF:
        return
    if not isinstance(v, int) or not is_prime(v):
        raise DomainError(f"unsupported place {v!r}")


def hilbert_at(v: Place, a: int, b: int) -> int:
    """Hilbert symbol (a,b)_v for nonzero integers a, b."""
    if a == 0 or b == 0:
        raise DegenerateInput("Hilbert symbol of zero")
    _check_place(v)
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    alpha, beta = valuation(a, v), valuation(b, v)
    u, w = a // v**alpha, b // v**beta
    if v == 2:
        e_u, e_w = ((u - 1) // 2) % 2, ((w - 1) // 2) % 2
        o_u, o_w = ((u * u - 1) // 8) % 2, ((w * w - 1) // 8) % 2
        expo = e_u * e_w + alpha * o_w + beta * o_u
        return -1 if expo % 2 else 1
    expo = (alpha * beta * ((v - 1) // 2)) % 2
    s = -1 if expo else 1
    if beta % 2:
        s *= legendre(u, v)
    if alpha % 2:
        s *= legendre(w, v)
    return s


def hilbert_symbol(where: FieldDescriptor | Place, a: Value, b: Value) -> int:
    """Hilbert symbol over a local field or at a place of Q."""
    if isinstance(where, FieldDescriptor):
        k = where
        v = k.place
    else:
        k = QQ
        v = where
    x = _as_integer(to_rational(k, a))
    y = _as_integer(to_rational(k, b))
    return hilbert_at(v, x, y)


def relevant_places(*values: int) -> list:
    """2, the real place and the primes dividing any of the given integers."""
    ps = {2}
    for x in values:
        ps.update(prime_divisors(x))
    return sorted_places(ps) + [INF]


def hilbert_reciprocity_defect(a: Value, b: Value) -> frozenset:
    """Places of Q where (a,b)_v = -1; always of even size."""
    x = _as_integer(to_rational(QQ, a))
    y = _as_integer(to_rational(QQ, b))
    out = frozenset(v for v in relevant_places(x, y) if hilbert_at(v, x, y) == -1)
    assert len(out) % 2 == 0, f"product formula fails for ({a},{b}): {out}"
    return out


def is_local_square(x: int, v: Place) -> bool:
    if x == 0:
        raise DegenerateInput("zero")
    if v == INF:
        return x > 0
    e = valuation(x, v)
    if e % 2:
        return False
    u = x // v**e
    if v == 2:
        return u % 8 == 1
    return legendre(u, v) == 1
