"""Formal opposite of a category with finite colimits.

Objects are shared with the underlying category.  An arrow ``x -> y`` of the
opposite wraps the underlying arrow ``y -> x`` in its ``data`` field; every
limit is answered by the dual colimit of the carrier.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Optional, Tuple

from .base import Arrow, CategoryError, Product, Pullback, RegularCategory


def op(u: Arrow) -> Arrow:
    return Arrow(u.target, u.source, u)


class Opposite(RegularCategory):

    def __init__(self, inner: RegularCategory, descriptor: Optional[str] = None):
        self.inner = inner
        self.descriptor = descriptor or f"op({inner.descriptor})"
        self.object_bound = inner.object_bound

    def underlying(self, f: Arrow) -> Arrow:
        return f.data

    def wrap(self, u: Arrow) -> Arrow:
        return op(u)

    # structure -----------------------------------------------------------

    def identity(self, x) -> Arrow:
        return op(self.inner.identity(x))

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        self._check_composable(f, g)
        return op(self.inner.compose(g.data, f.data))

    def terminal(self):
        return self.inner.initial()

    def to_terminal(self, x) -> Arrow:
        return op(self.inner.from_initial(x))

    @lru_cache(maxsize=4096)
    def product(self, x, y) -> Product:
        cop = self.inner.coproduct(x, y)
        return Product(cop.apex, op(cop.left), op(cop.right))

    def pair(self, prod: Product, a: Arrow, b: Arrow) -> Arrow:
        cop = Product(prod.apex, prod.left.data, prod.right.data)
        return op(self.inner.copair(cop, a.data, b.data))

    def pullback(self, f: Arrow, g: Arrow) -> Optional[Pullback]:
        if f.target != g.target:
            raise CategoryError("pullback of a non-cospan")
        po = self.inner.pushout(f.data, g.data)
        if po is None:
            return None

        def mediate(a: Arrow, b: Arrow) -> Arrow:
            return op(po.mediate(a.data, b.data))
        return Pullback(po.apex, op(po.left), op(po.right), mediate)

    def image(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        e_u, m_u = self.inner.coimage(f.data)
        return op(m_u), op(e_u)

    def is_epi(self, f: Arrow) -> bool:
        return self.inner.is_mono(f.data)

    def is_mono(self, f: Arrow) -> bool:
        return self.inner.is_epi(f.data)

    def inverse(self, f: Arrow) -> Arrow:
        return op(self.inner.inverse(f.data))

    def subobjects(self, x, bound: Optional[int] = None) -> List[Arrow]:
        return [op(q) for q in self.inner.quotients(x, bound)]

    def canonical_subobject(self, m: Arrow) -> Arrow:
        if not self.is_mono(m):
            raise CategoryError("canonical_subobject expects a monomorphism")
        return op(self.inner.canonical_quotient(m.data))

    def morphisms(self, x, y, bound: Optional[int] = None) -> List[Arrow]:
        return [op(u) for u in self.inner.morphisms(y, x, bound)]

    def objects(self, bound: int):
        return self.inner.objects(bound)

    def object_size(self, x) -> int:
        return self.inner.object_size(x)

    def check_object(self, x) -> None:
        self.inner.check_object(x)

    def check_arrow(self, f: Arrow) -> None:
        if not isinstance(f.data, Arrow) or f.data.source != f.target or f.data.target != f.source:
            raise CategoryError("opposite arrow must wrap an underlying arrow target -> source")
        self.inner.check_arrow(f.data)

    def format_object(self, x) -> str:
        return self.inner.format_object(x)

    def format_arrow(self, f: Arrow) -> str:
        return "op" + self.inner.format_arrow(f.data)

    def format_subobject(self, m: Arrow, left_size: Optional[int] = None) -> str:
        """Quotients of a finite set print as block partitions; with
        ``left_size`` given, points past it are primed (the second factor of
        a relation)."""
        q = m.data
        blocks = {}
        for i, b in enumerate(q.data):
            blocks.setdefault(b, []).append(i)
        parts = []
        for b in sorted(blocks):
            names = []
            for i in blocks[b]:
                if left_size is not None and i >= left_size:
                    names.append(f"{i - left_size + 1}'")
                else:
                    names.append(str(i + 1))
            parts.append("{" + ",".join(names) + "}")
        return "(" + ",".join(parts) + ")"
