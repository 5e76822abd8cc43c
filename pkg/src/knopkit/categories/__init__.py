"""Concrete finite regular categories and their descriptor strings.

Descriptors::

    sets  sets-op  vect:q=2  gsets:G=C2  gsets-op:G=C2  gsets-free-op:G=S3
    rep:G=C2,q=3   slice:inner=vect:q=2,base=1   gsets-op:G=perm:[(1 2),(1 2 3)]
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Dict

from ..fields import Mat
from ..groups import group
from .base import (Arrow, CategoryError, Classification, CompositionError, Product,
                   Pullback, RegularCategory, SizeError)
from .gsets import GSet, GSetCategory, bell, set_partitions
from .linear import LinearCategory, Module
from .opposite import Opposite, op
from .slice import SliceCategory, SliceObj

__all__ = [
    "Arrow", "CategoryError", "Classification", "CompositionError", "GSet", "GSetCategory",
    "LinearCategory", "Module", "Opposite", "Product", "Pullback", "RegularCategory",
    "SizeError", "SliceCategory", "SliceObj", "bell", "category", "op", "parse_object",
    "set_partitions", "DescriptorError",
]


class DescriptorError(ValueError):
    """A descriptor string failed to parse; ``token`` names the culprit."""

    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


def _params(body: str) -> Dict[str, str]:
    out = {}
    # group specs may contain commas inside brackets
    depth, cur, parts = 0, "", []
    for ch in body:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        parts.append(cur)
    for p in parts:
        if "=" not in p:
            raise DescriptorError(f"expected key=value, got {p!r}", p)
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


@lru_cache(maxsize=None)
def category(desc: str) -> RegularCategory:
    """Resolve a category descriptor string."""
    desc = desc.strip()
    if desc.startswith("slice:"):
        m = re.match(r"slice:inner=(.+),base=([^,]+)$", desc)
        if not m:
            raise DescriptorError(f"bad slice descriptor {desc!r}", desc)
        inner = category(m.group(1))
        base = parse_object(inner, m.group(2))
        return SliceCategory(inner, base, descriptor=desc)
    kind, _, body = desc.partition(":")
    params = _params(body) if body else {}
    try:
        if kind == "sets":
            return GSetCategory()
        if kind == "sets-op":
            return Opposite(GSetCategory(), "sets-op")
        if kind == "vect":
            return LinearCategory(int(params["q"]))
        if kind in ("gsets", "gsets-op", "gsets-free", "gsets-free-op"):
            gname = params["G"]
            inner = GSetCategory(group(gname), free="free" in kind, gname=gname)
            if kind.endswith("-op"):
                return Opposite(inner, f"{kind}:G={gname}")
            return inner
        if kind == "rep":
            return LinearCategory(int(params["q"]), group(params["G"]), gname=params["G"])
    except KeyError as exc:
        raise DescriptorError(f"missing parameter {exc} in {desc!r}", desc) from None
    except ValueError as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise DescriptorError(f"{exc} in {desc!r}", desc) from None
    raise DescriptorError(f"unknown category kind {kind!r}", kind)


def _gset_of(cat: GSetCategory, text: str) -> GSet:
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        n = int(text)
        if cat.free and n:
            raise DescriptorError("free G-sets are given as sums of 'free' orbits", text)
        return cat.set(n)
    parts = []
    for tok in text.split("+"):
        tok = tok.strip()
        m = re.fullmatch(r"(\d+)\*?([A-Za-z]\w*)", tok)
        count, label = (int(m.group(1)), m.group(2)) if m else (1, tok)
        try:
            parts.extend([cat.orbit_type(label)] * count)
        except CategoryError as exc:
            raise DescriptorError(str(exc), tok) from None
    return cat.sum_of(parts)


def _module_of(cat: LinearCategory, text: str) -> Module:
    from ..meataxe import find_irreducible, regular_module
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        return cat.space(int(text))
    if cat.G is None:
        raise DescriptorError(f"vector spaces are given by dimension, got {text!r}", text)
    parts = []
    for tok in text.split("+"):
        tok = tok.strip()
        if tok in ("reg", "regular"):
            parts.append(regular_module(cat))
            continue
        m = re.fullmatch(r"(\d+)\*(\S+)", tok)
        count, label = (int(m.group(1)), m.group(2)) if m else (1, tok)
        try:
            parts.extend([find_irreducible(cat, label).module] * count)
        except KeyError as exc:
            raise DescriptorError(str(exc), tok) from None
    return cat.direct_sum(parts)


def parse_object(cat: RegularCategory, text: str):
    """Parse an object descriptor for ``cat`` (see README for the grammar)."""
    if isinstance(cat, Opposite):
        return parse_object(cat.inner, text)
    if isinstance(cat, GSetCategory):
        return _gset_of(cat, text)
    if isinstance(cat, LinearCategory):
        return _module_of(cat, text)
    if isinstance(cat, SliceCategory):
        obj_text, _, map_text = text.partition("/")
        x = parse_object(cat.inner, obj_text)
        return SliceObj(x, _parse_structure_map(cat, x, map_text))
    raise DescriptorError(f"no object grammar for {cat.descriptor}", text)


def _parse_structure_map(cat: SliceCategory, x, text: str) -> Arrow:
    inner = cat.inner
    text = text.strip()
    if not text:
        homs = inner.morphisms(x, cat.base)
        if isinstance(inner, LinearCategory):
            return Arrow(x, cat.base, Mat([[0] * x.dim for _ in range(cat.base.dim)], x.dim))
        if not homs:
            raise DescriptorError("no structure map exists; give one explicitly", text)
        return homs[0]
    if isinstance(inner, LinearCategory):
        rows = [[int(v) for v in r.split(",")] for r in text.split(";")]
        f = Arrow(x, cat.base, Mat(rows, x.dim))
    elif isinstance(inner, GSetCategory):
        f = Arrow(x, cat.base, tuple(int(v) - 1 for v in text.split(",")))
    elif isinstance(inner, Opposite):
        u = Arrow(cat.base, x, tuple(int(v) - 1 for v in text.split(",")))
        f = op(u)
    else:
        raise DescriptorError(f"cannot parse structure maps for {inner.descriptor}", text)
    try:
        inner.check_arrow(f)
    except CategoryError as exc:
        raise DescriptorError(str(exc), text) from None
    return f
