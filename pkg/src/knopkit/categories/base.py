"""Common interface for the concrete finite regular categories.

Every category hands out immutable, hashable objects and :class:`Arrow`
values.  Subobjects are always returned in a canonical form, so two monos
with the same image compare equal after :meth:`RegularCategory.canonical_subobject`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, List, Optional, Tuple


class CategoryError(ValueError):
    pass


class CompositionError(CategoryError):
    pass


class SizeError(CategoryError):
    """An enumeration request exceeded the configured bound."""


def default_bound(fallback: int) -> int:
    env = os.environ.get("KNOPKIT_BOUND")
    return int(env) if env else fallback


@dataclass(frozen=True)
class Arrow:
    """A morphism ``source -> target``; ``data`` is category specific
    (function table, matrix, or a wrapped arrow for opposite/slice kinds)."""

    source: Any
    target: Any
    data: Any

    def key(self):
        d = self.data
        if isinstance(d, Arrow):
            return d.key()
        return d


@dataclass(frozen=True)
class Product:
    apex: Any
    left: Arrow
    right: Arrow


@dataclass(frozen=True)
class Pullback:
    """A pullback square: ``apex --left--> x``, ``apex --right--> y``."""

    apex: Any
    left: Arrow
    right: Arrow
    mediator: Callable[[Arrow, Arrow], Arrow] = field(compare=False, repr=False)

    def mediate(self, a: Arrow, b: Arrow) -> Arrow:
        """The unique arrow ``u`` with ``left u = a`` and ``right u = b``."""
        return self.mediator(a, b)


@dataclass(frozen=True)
class Classification:
    is_epi: bool
    is_mono: bool
    is_iso: bool


class RegularCategory:
    """Abstract base; concrete kinds override the primitive operations."""

    descriptor: str = "?"
    object_bound: int = 8

    # structure -----------------------------------------------------------

    def identity(self, x) -> Arrow:
        raise NotImplementedError

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        """``f o g`` (apply ``g`` first)."""
        raise NotImplementedError

    def terminal(self):
        raise NotImplementedError

    def to_terminal(self, x) -> Arrow:
        raise NotImplementedError

    def product(self, x, y) -> Product:
        raise NotImplementedError

    def pair(self, prod: Product, a: Arrow, b: Arrow) -> Arrow:
        raise NotImplementedError

    def pullback(self, f: Arrow, g: Arrow) -> Optional[Pullback]:
        """Pullback of a cospan; ``None`` when it does not exist."""
        raise NotImplementedError

    def image(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        """``(e, m)`` with ``f = m o e``, ``e`` epi, ``m`` the canonical mono."""
        raise NotImplementedError

    def is_epi(self, f: Arrow) -> bool:
        raise NotImplementedError

    def is_mono(self, f: Arrow) -> bool:
        raise NotImplementedError

    def inverse(self, f: Arrow) -> Arrow:
        raise NotImplementedError

    def subobjects(self, x) -> List[Arrow]:
        raise NotImplementedError

    def morphisms(self, x, y) -> List[Arrow]:
        raise NotImplementedError

    def objects(self, bound: int) -> List[Any]:
        """Representative objects of size at most ``bound`` (all isomorphism
        classes; sometimes more)."""
        raise NotImplementedError

    def object_size(self, x) -> int:
        raise NotImplementedError

    def check_object(self, x) -> None:
        pass

    def check_arrow(self, f: Arrow) -> None:
        pass

    def format_object(self, x) -> str:
        return str(x)

    def format_arrow(self, f: Arrow) -> str:
        return repr(f.key())

    def format_subobject(self, m: Arrow, left_size: Optional[int] = None) -> str:
        return repr(m.key())

    def to_json_arrow(self, f: Arrow):
        return _jsonable(f.key())

    # derived ---------------------------------------------------------------

    def classify(self, f: Arrow) -> Classification:
        epi, mono = self.is_epi(f), self.is_mono(f)
        return Classification(epi, mono, epi and mono)

    def is_iso(self, f: Arrow) -> bool:
        return self.is_epi(f) and self.is_mono(f)

    def canonical_subobject(self, m: Arrow) -> Arrow:
        if not self.is_mono(m):
            raise CategoryError("canonical_subobject expects a monomorphism")
        return self.image(m)[1]

    def image_factorization(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        return self.image(f)

    def epis(self, x, y) -> List[Arrow]:
        return [f for f in self.morphisms(x, y) if self.is_epi(f)]

    def same_category(self, other: "RegularCategory") -> bool:
        return self.descriptor == other.descriptor

    def __eq__(self, other):
        return isinstance(other, RegularCategory) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"<category {self.descriptor}>"

    def _check_composable(self, f: Arrow, g: Arrow):
        if g.target != f.source:
            raise CompositionError(
                f"cannot compose: target {self.format_object(g.target)} != "
                f"source {self.format_object(f.source)}")

    def _check_bound(self, size: int, bound: Optional[int] = None, what: str = "carrier"):
        # the environment can raise the built-in cap but never lower it
        b = bound if bound is not None else max(self.object_bound, default_bound(self.object_bound))
        if size > b:
            raise SizeError(f"{what} size {size} exceeds enumeration bound {b} "
                            f"(set KNOPKIT_BOUND to raise it)")


def _jsonable(k):
    if isinstance(k, tuple):
        return [_jsonable(v) for v in k]
    return k


def iter_pairs(items) -> Iterator:
    for a in items:
        for b in items:
            yield a, b
