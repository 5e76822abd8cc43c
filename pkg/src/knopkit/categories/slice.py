"""The slice category ``A/x0``: objects ``(x, p: x -> x0)``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, List, Optional, Tuple

from .base import Arrow, CategoryError, Product, Pullback, RegularCategory


@dataclass(frozen=True)
class SliceObj:
    x: Any
    p: Arrow


class SliceCategory(RegularCategory):

    def __init__(self, inner: RegularCategory, base, descriptor: Optional[str] = None,
                 base_label: str = ""):
        inner.check_object(base)
        self.inner = inner
        self.base = base
        self.object_bound = inner.object_bound
        self.descriptor = descriptor or f"slice:inner={inner.descriptor},base={base_label or inner.format_object(base)}"

    def obj(self, x, p: Arrow) -> SliceObj:
        o = SliceObj(x, p)
        self.check_object(o)
        return o

    def check_object(self, o) -> None:
        if not isinstance(o, SliceObj):
            raise CategoryError(f"{o!r} is not a slice object")
        if o.p.source != o.x or o.p.target != self.base:
            raise CategoryError("structure map must go from x to the base object")
        self.inner.check_arrow(o.p)

    def check_arrow(self, f: Arrow) -> None:
        u = f.data
        if u.source != f.source.x or u.target != f.target.x:
            raise CategoryError("underlying arrow has the wrong endpoints")
        self.inner.check_arrow(u)
        if self.inner.compose(f.target.p, u) != f.source.p:
            raise CategoryError("slice triangle does not commute")

    def arrow(self, a: SliceObj, b: SliceObj, u: Arrow) -> Arrow:
        f = Arrow(a, b, u)
        self.check_arrow(f)
        return f

    def object_size(self, o: SliceObj) -> int:
        return self.inner.object_size(o.x)

    def format_object(self, o: SliceObj) -> str:
        return f"({self.inner.format_object(o.x)}, {self.inner.format_arrow(o.p)})"

    def format_arrow(self, f: Arrow) -> str:
        return self.inner.format_arrow(f.data)

    def format_subobject(self, m: Arrow, left_size: Optional[int] = None) -> str:
        return self.inner.format_subobject(m.data, left_size)

    # structure -----------------------------------------------------------

    def identity(self, o: SliceObj) -> Arrow:
        return Arrow(o, o, self.inner.identity(o.x))

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        self._check_composable(f, g)
        return Arrow(g.source, f.target, self.inner.compose(f.data, g.data))

    def terminal(self) -> SliceObj:
        return SliceObj(self.base, self.inner.identity(self.base))

    def to_terminal(self, o: SliceObj) -> Arrow:
        return Arrow(o, self.terminal(), o.p)

    @lru_cache(maxsize=4096)
    def product(self, a: SliceObj, b: SliceObj) -> Product:
        pb = self.inner.pullback(a.p, b.p)
        if pb is None:
            raise CategoryError("inner pullback over the base does not exist")
        apex = SliceObj(pb.apex, self.inner.compose(a.p, pb.left))
        return Product(apex, Arrow(apex, a, pb.left), Arrow(apex, b, pb.right))

    def pair(self, prod: Product, f: Arrow, g: Arrow) -> Arrow:
        pb = self.inner.pullback(prod.left.target.p, prod.right.target.p)
        return Arrow(f.source, prod.apex, pb.mediate(f.data, g.data))

    def pullback(self, f: Arrow, g: Arrow) -> Optional[Pullback]:
        if f.target != g.target:
            raise CategoryError("pullback of a non-cospan")
        pb = self.inner.pullback(f.data, g.data)
        if pb is None:
            return None
        p = self.inner.compose(f.source.p, pb.left)
        apex = SliceObj(pb.apex, p)

        def mediate(a: Arrow, b: Arrow) -> Arrow:
            return Arrow(a.source, apex, pb.mediate(a.data, b.data))
        return Pullback(apex, Arrow(apex, f.source, pb.left), Arrow(apex, g.source, pb.right), mediate)

    def image(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        e, m = self.inner.image(f.data)
        sub = SliceObj(e.target, self.inner.compose(f.target.p, m))
        return Arrow(f.source, sub, e), Arrow(sub, f.target, m)

    def is_epi(self, f: Arrow) -> bool:
        return self.inner.is_epi(f.data)

    def is_mono(self, f: Arrow) -> bool:
        return self.inner.is_mono(f.data)

    def inverse(self, f: Arrow) -> Arrow:
        return Arrow(f.target, f.source, self.inner.inverse(f.data))

    def canonical_subobject(self, m: Arrow) -> Arrow:
        c = self.inner.canonical_subobject(m.data)
        sub = SliceObj(c.source, self.inner.compose(m.target.p, c))
        return Arrow(sub, m.target, c)

    def subobjects(self, o: SliceObj, bound: Optional[int] = None) -> List[Arrow]:
        out = []
        for m in self.inner.subobjects(o.x, bound):
            sub = SliceObj(m.source, self.inner.compose(o.p, m))
            out.append(Arrow(sub, o, m))
        return out

    def morphisms(self, a: SliceObj, b: SliceObj, bound: Optional[int] = None) -> List[Arrow]:
        return [Arrow(a, b, u) for u in self.inner.morphisms(a.x, b.x, bound)
                if self.inner.compose(b.p, u) == a.p]

    def objects(self, bound: int) -> List[SliceObj]:
        out = []
        for x in self.inner.objects(bound):
            for p in self.inner.morphisms(x, self.base):
                out.append(SliceObj(x, p))
        return out
