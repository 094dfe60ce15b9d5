"""Text literals for fields, forms, classes and descriptors.

Grammar (``F`` is a field spec such as ``Q``, ``R``, ``Qp:5``)::

    form        diag:1,-1,-1,ep@F
    class       ram{3,inf}@F | quat(a,b)@F | ram{3,5.1}@sqrt(2)@Q
    etale       split@F | sqrt(ep)@F
    pair        (a,b)x(c,d)@F                     product of two conics
    descriptor  form:<form> | conics:<pair> |
                inv(deg=4;A=ram{5};delta=ep;c0=ram{5}|ram{};sgn=inf:0)@F
    object      <class>[;ind=2]                   motive of a central simple algebra

Over a quadratic field the place ``v`` means the unique place above v and
``v.1``, ``v.2`` the two places above a split v.  Parse errors report the
offending token and its character position.
"""

from __future__ import annotations

import re

from .brauer import BrauerClass2, EtaleQuadratic, quaternion_class
from .errors import LiteralError, QuadMotiveError
from .fields import INF, FieldDescriptor, parse_field, square_class
from .forms import EvenCliffordDescriptor, QuadraticForm
from .motive import InvolutionDescriptor, from_form, product_of_conics
from .ncmot import MotiveObject
from .render import format_class, format_clifford, format_form, format_ram


def _fail(message: str, text: str, token: str, start: int = 0) -> LiteralError:
    pos = text.find(token, start)
    return LiteralError(message, token, max(pos, 0))


def _split_field(text: str, epsilon: int | None) -> tuple[str, FieldDescriptor, int]:
    """Split ``body@F`` at the last '@'; returns body, field and field offset."""
    at = text.rfind("@")
    if at < 0:
        raise LiteralError("missing '@field'", text, 0)
    spec = text[at + 1 :]
    try:
        k = parse_field(spec, epsilon)
    except QuadMotiveError:
        raise LiteralError("bad field spec", spec, at + 1) from None
    return text[:at], k, at + 1


def _split_top(body: str, sep: str) -> list[tuple[str, int]]:
    """Split at separators outside brackets; keeps each piece's offset."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((body[start:i], start))
            start = i + 1
    out.append((body[start:], start))
    return out


def parse_form(text: str, epsilon: int | None = None) -> QuadraticForm:
    text = text.strip()
    if not text.startswith("diag:"):
        raise LiteralError("a form literal starts with 'diag:'", text[:5] or text, 0)
    body, k, _ = _split_field(text, epsilon)
    coeffs = []
    for tok, off in _split_top(body[5:], ","):
        try:
            coeffs.append(square_class(k, tok).rep)
        except QuadMotiveError:
            raise LiteralError(f"bad coefficient over {k}", tok, 5 + off) from None
    return QuadraticForm(k, tuple(coeffs))


def parse_etale(text: str, epsilon: int | None = None) -> EtaleQuadratic:
    text = text.strip()
    body, k, _ = _split_field(text, epsilon)
    return _etale_body(body, k, text, 0)


def _etale_body(body: str, k: FieldDescriptor, text: str, offset: int) -> EtaleQuadratic:
    if body == "split":
        return EtaleQuadratic(k)
    m = re.fullmatch(r"sqrt\((.+)\)", body)
    if not m:
        raise LiteralError("expected 'split' or 'sqrt(d)'", body, offset)
    try:
        d = square_class(k, m.group(1))
        return EtaleQuadratic(k, d)
    except QuadMotiveError as exc:
        raise LiteralError(f"bad square class ({exc})", m.group(1), offset + 5) from None


def _parse_place(tok: str, text: str, pos: int):
    if tok == "inf":
        return INF
    try:
        return int(tok)
    except ValueError:
        raise LiteralError("bad place", tok, pos) from None


def _ram_items(inner: str, base, text: str, offset: int) -> frozenset:
    items = set()
    if not inner.strip():
        return frozenset()
    for tok, off in _split_top(inner, ","):
        tok = tok.strip()
        pos = offset + off
        if isinstance(base, FieldDescriptor):
            items.add(_parse_place(tok, text, pos))
        else:
            v, _, i = tok.partition(".")
            if i not in ("", "1", "2"):
                raise LiteralError("bad place label", tok, pos)
            items.add((_parse_place(v, text, pos), int(i or 0)))
    return frozenset(items)


def _ram(body: str, base, text: str, offset: int) -> BrauerClass2:
    m = re.fullmatch(r"ram\{(.*)\}", body.strip())
    if not m:
        raise LiteralError("expected 'ram{...}'", body, offset)
    ram = _ram_items(m.group(1), base, text, offset + 4)
    try:
        return BrauerClass2(base, ram)
    except QuadMotiveError as exc:
        raise LiteralError(f"invalid class ({exc})", body, offset) from None


def parse_class(text: str, epsilon: int | None = None) -> BrauerClass2:
    text = text.strip()
    body, k, _ = _split_field(text, epsilon)
    base = k
    if "@" in body:
        at = body.index("@")
        base = _etale_body(body[at + 1 :], k, text, at + 1)
        if base.is_split:
            raise LiteralError("classes over k x k are pairs", body[at + 1 :], at + 1)
        body = body[:at]
    m = re.fullmatch(r"quat\((.+)\)", body)
    if m:
        args = _split_top(m.group(1), ",")
        if len(args) != 2:
            raise LiteralError("quat takes two arguments", m.group(1), 5)
        try:
            return quaternion_class(base, args[0][0], args[1][0])
        except QuadMotiveError:
            raise LiteralError("bad quaternion entries", m.group(1), 5) from None
    return _ram(body, base, text, 0)


def parse_pair(text: str, epsilon: int | None = None) -> tuple[FieldDescriptor, tuple, tuple]:
    """``(a,b)x(c,d)@F`` -> field and the two pairs of entries."""
    text = text.strip()
    body, k, _ = _split_field(text, epsilon)
    m = re.fullmatch(r"\(([^()]+),([^()]+)\)x\(([^()]+),([^()]+)\)", body)
    if not m:
        raise LiteralError("expected '(a,b)x(c,d)'", body, 0)
    for g in range(1, 5):
        try:
            square_class(k, m.group(g))
        except QuadMotiveError:
            raise LiteralError(f"bad entry over {k}", m.group(g), m.start(g)) from None
    return k, (m.group(1), m.group(2)), (m.group(3), m.group(4))


def pair_classes(text: str, epsilon: int | None = None) -> list[BrauerClass2]:
    k, p1, p2 = parse_pair(text, epsilon)
    return [quaternion_class(k, *p1), quaternion_class(k, *p2)]


def _clifford(body: str, k: FieldDescriptor, delta, deg: int, text: str, offset: int) -> EvenCliffordDescriptor:
    if deg % 2:
        return EvenCliffordDescriptor(k, None, (_ram(body, k, text, offset),))
    if delta.is_trivial:
        parts = _split_top(body, "|")
        if len(parts) != 2:
            raise LiteralError("a split center needs two classes 'ram{..}|ram{..}'", body, offset)
        ext = EtaleQuadratic(k)
        return EvenCliffordDescriptor(k, ext, tuple(_ram(p, k, text, offset + o) for p, o in parts))
    ext = EtaleQuadratic(k, delta)
    return EvenCliffordDescriptor(k, ext, (_ram(body, ext, text, offset),))


def parse_descriptor(text: str, epsilon: int | None = None) -> InvolutionDescriptor:
    text = text.strip()
    if text.startswith("form:"):
        try:
            return from_form(parse_form(text[5:], epsilon))
        except LiteralError as exc:
            raise LiteralError("bad form", exc.token, exc.position + 5) from None
    if text.startswith("conics:"):
        try:
            k, p1, p2 = parse_pair(text[7:], epsilon)
        except LiteralError as exc:
            raise LiteralError("bad pair", exc.token, exc.position + 7) from None
        return product_of_conics(k, p1, p2)
    m = re.fullmatch(r"inv\((.*)\)@([^@]+)", text)
    if not m:
        raise LiteralError("expected 'form:', 'conics:' or 'inv(...)@F'", text.split("(")[0], 0)
    _, k, _ = _split_field(text, epsilon)
    fields = {}
    for part, off in _split_top(m.group(1), ";"):
        key, eq, val = part.partition("=")
        if not eq:
            raise LiteralError("expected key=value", part, 4 + off)
        fields[key.strip()] = (val.strip(), 4 + off + len(key) + 1)
    for key in fields:
        if key not in ("deg", "A", "delta", "c0", "sgn"):
            raise LiteralError("unknown descriptor key", key, text.find(key))
    try:
        deg_txt, deg_pos = fields["deg"]
        deg = int(deg_txt)
    except KeyError:
        raise LiteralError("missing key", "deg", 0) from None
    except ValueError:
        raise LiteralError("bad degree", fields["deg"][0], fields["deg"][1]) from None
    a_txt, a_pos = fields.get("A", ("ram{}", 0))
    algebra = _ram(a_txt, k, text, a_pos)
    delta = None
    if "delta" in fields:
        d_txt, d_pos = fields["delta"]
        try:
            delta = square_class(k, d_txt)
        except QuadMotiveError:
            raise LiteralError("bad discriminant", d_txt, d_pos) from None
    elif deg % 2 == 0:
        raise LiteralError("missing key", "delta", 0)
    if "c0" not in fields:
        raise LiteralError("missing key", "c0", 0)
    c_txt, c_pos = fields["c0"]
    clifford = _clifford(c_txt, k, delta, deg, text, c_pos)
    sigs = {}
    if "sgn" in fields:
        s_txt, s_pos = fields["sgn"]
        for tok, off in _split_top(s_txt, ","):
            place, _, val = tok.partition(":")
            try:
                sigs[_parse_place(place, text, s_pos + off)] = int(val)
            except ValueError:
                raise LiteralError("bad signature", tok, s_pos + off) from None
    try:
        return InvolutionDescriptor(k, deg, algebra, delta, clifford, sigs)
    except QuadMotiveError as exc:
        raise LiteralError(f"inconsistent descriptor ({exc})", m.group(1), 4) from None


def format_descriptor(d: InvolutionDescriptor) -> str:
    parts = [f"deg={d.deg}", "A=" + format_ram(d.algebra_class)]
    if d.delta is not None:
        parts.append(f"delta={d.delta.token()}")
    parts.append("c0=" + format_clifford(d.clifford).split(":", 1)[1])
    if d.signatures:
        parts.append("sgn=" + ",".join(f"{'inf' if P == INF else P}:{s}" for P, s in d.signatures))
    return "inv(" + ";".join(parts) + f")@{d.base}"


def parse_object(text: str, epsilon: int | None = None) -> MotiveObject:
    text = text.strip()
    ind = None
    if ";ind=" in text:
        text, _, ind_txt = text.partition(";ind=")
        try:
            ind = int(ind_txt)
        except ValueError:
            raise LiteralError("bad index", ind_txt, len(text) + 5) from None
    cls = parse_class(text, epsilon)
    try:
        if isinstance(cls.base, FieldDescriptor):
            return MotiveObject(cls.base, None, cls, ind)
        return MotiveObject(cls.base.base, cls.base, cls, ind)
    except QuadMotiveError as exc:
        raise LiteralError(f"invalid object ({exc})", text, 0) from None


def format_object(M: MotiveObject) -> str:
    return format_class(M.cls) + (f";ind={M.ind}" if M.ind > 2 else "")


__all__ = [
    "format_class",
    "format_descriptor",
    "format_form",
    "format_object",
    "parse_class",
    "parse_descriptor",
    "parse_etale",
    "parse_form",
    "parse_object",
    "parse_pair",
]
