"""Canonical text for fields, classes, forms and Clifford descriptors.

Every string produced here parses back with ``literals``.
"""

from __future__ import annotations

from .brauer import BrauerClass2, EtaleQuadratic
from .fields import FieldDescriptor, format_rep, place_str
from .forms import EvenCliffordDescriptor, QuadraticForm


def format_field(k: FieldDescriptor) -> str:
    return str(k)


def format_etale(ext: EtaleQuadratic) -> str:
    return f"{ext}@{ext.base}"


def format_ext_place(w) -> str:
    v, i = w
    return place_str(v) if i == 0 else f"{place_str(v)}.{i}"


def format_ram(cls: BrauerClass2) -> str:
    if isinstance(cls.base, FieldDescriptor):
        items = [place_str(v) for v in cls.sorted_ram()]
    else:
        items = [format_ext_place(w) for w in cls.sorted_ram()]
    return "ram{" + ",".join(items) + "}"


def format_class(cls: BrauerClass2) -> str:
    if isinstance(cls.base, FieldDescriptor):
        return f"{format_ram(cls)}@{cls.base}"
    return f"{format_ram(cls)}@{format_etale(cls.base)}"


def format_form(q: QuadraticForm) -> str:
    return "diag:" + ",".join(format_rep(q.base, a) for a in q.coeffs) + f"@{q.base}"


def format_clifford(c: EvenCliffordDescriptor) -> str:
    """``base:ram{..}``, ``split:ram{..}|ram{..}`` or ``sqrt(d):ram{..}``."""
    if c.center is None:
        return "base:" + format_ram(c.classes[0])
    if c.center.is_split:
        return "split:" + "|".join(format_ram(x) for x in c.classes)
    return f"{c.center}:" + format_ram(c.classes[0])


def clifford_json(c: EvenCliffordDescriptor) -> dict:
    center = "base" if c.center is None else str(c.center)
    return {"center": center, "classes": [format_ram(x) for x in c.classes]}
