"""The skeletal category T^0(A, delta).

Objects are the objects of ``A``.  A morphism ``[x] -> [y]`` is a finite
Scalar-linear combination of relations, i.e. subobjects of ``x * y`` kept
in canonical form.  Composition of basis elements multiplies the relation
product by the degree of the epimorphism from the pullback onto its image::

    <s> o <r> = delta(e) <r * s>,   e: r x_y s ->> im(r x_y s -> x * z)

and is zero when the pullback ``r x_y s`` does not exist.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from .categories import Arrow, RegularCategory
from .categories.base import CategoryError
from .degree import DegreeFn, degree_of
from .scalars import ONE, ZERO, Scalar

SCHEMA = "knopkit.formal-morphism/1"


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    """A subobject of ``source * target`` given by its canonical mono."""

    source: Any
    target: Any
    mono: Arrow

    @property
    def carrier(self):
        return self.mono.source

    def sort_key(self):
        return self.mono.key()


class FormalMorphism:
    """Immutable Scalar-linear combination of relations ``[source] -> [target]``."""

    __slots__ = ("source", "target", "_terms", "_hash")

    def __init__(self, source, target, terms: Mapping[Relation, Scalar] = None):
        self.source = source
        self.target = target
        clean = {}
        for r, c in (terms or {}).items():
            if r.source != source or r.target != target:
                raise DomainMismatch("relation endpoints differ from the morphism's")
            c = Scalar.coerce(c)
            if not c.is_zero():
                clean[r] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @property
    def terms(self) -> Dict[Relation, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, r: Relation) -> Scalar:
        return self._terms.get(r, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FormalMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, frozenset(self._terms.items())))
        return self._hash

    def _check_same(self, other):
        if self.source != other.source or self.target != other.target:
            raise DomainMismatch("morphisms have different source/target")

    def __add__(self, other: "FormalMorphism") -> "FormalMorphism":
        self._check_same(other)
        out = dict(self._terms)
        for r, c in other._terms.items():
            out[r] = out.get(r, ZERO) + c
        return FormalMorphism(self.source, self.target, out)

    def __neg__(self):
        return FormalMorphism(self.source, self.target, {r: -c for r, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FormalMorphism":
        c = Scalar.coerce(c)
        return FormalMorphism(self.source, self.target, {r: c * v for r, v in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def map_coefficients(self, fn) -> "FormalMorphism":
        return FormalMorphism(self.source, self.target, {r: fn(c) for r, c in self._terms.items()})

    def __repr__(self):
        inner = " + ".join(f"({c})<{r.mono.key()}>" for r, c in self._terms.items()) or "0"
        return f"FormalMorphism({inner})"


class T0:
    """The category T^0(A, delta) for a fixed degree function."""

    def __init__(self, delta: DegreeFn):
        self.delta = delta
        self.cat: RegularCategory = delta.category
        self.zero_branch_count = 0
        self._lock = threading.Lock()
        self._product_cache: Dict[Tuple[Relation, Relation], Optional[Tuple[Relation, Arrow]]] = {}
        self._basis_cache: Dict[Tuple[Any, Any], List[Relation]] = {}

    def __repr__(self):
        return f"T0({self.cat.descriptor}, {self.delta.describe()})"

    # relations -------------------------------------------------------------

    def relation(self, x, y, mono: Arrow) -> Relation:
        """Canonicalize a mono ``r -> x * y`` into a :class:`Relation`."""
        prod = self.cat.product(x, y)
        if mono.target != prod.apex:
            raise CategoryError("relation mono must land in the product x * y")
        return Relation(x, y, self.cat.canonical_subobject(mono))

    def legs(self, r: Relation) -> Tuple[Arrow, Arrow]:
        prod = self.cat.product(r.source, r.target)
        return self.cat.compose(prod.left, r.mono), self.cat.compose(prod.right, r.mono)

    def relation_from_span(self, a: Arrow, b: Arrow) -> Tuple[Relation, Arrow]:
        """Image of ``(a, b): w -> x * y`` with the epi ``w ->> image``."""
        cat = self.cat
        prod = cat.product(a.target, b.target)
        e, m = cat.image(cat.pair(prod, a, b))
        return Relation(a.target, b.target, m), e

    def hom_basis(self, x, y, bound: Optional[int] = None) -> List[Relation]:
        key = (x, y)
        with self._lock:
            if key in self._basis_cache and bound is None:
                return list(self._basis_cache[key])
        prod = self.cat.product(x, y)
        basis = [Relation(x, y, m) for m in self.cat.subobjects(prod.apex, bound)]
        with self._lock:
            self._basis_cache[key] = basis
        return list(basis)

    def relation_product(self, r: Relation, s: Relation) -> Optional[Tuple[Relation, Arrow]]:
        """``r * s = im(r x_y s -> x * z)`` with the epi used for the weight;
        ``None`` when the pullback does not exist."""
        if r.target != s.source:
            raise DomainMismatch("relations do not share the middle object")
        key = (r, s)
        with self._lock:
            if key in self._product_cache:
                return self._product_cache[key]
        cat = self.cat
        rx, ry = self.legs(r)
        sy, sz = self.legs(s)
        pb = cat.pullback(ry, sy)
        if pb is None:
            result = None
        else:
            a = cat.compose(rx, pb.left)
            b = cat.compose(sz, pb.right)
            result = self.relation_from_span(a, b)
        with self._lock:
            self._product_cache[key] = result
        return result

    # morphisms -------------------------------------------------------------

    def basis_morphism(self, r: Relation, coeff=ONE) -> FormalMorphism:
        return FormalMorphism(r.source, r.target, {r: coeff})

    def zero(self, x, y) -> FormalMorphism:
        return FormalMorphism(x, y)

    def compose(self, psi: FormalMorphism, phi: FormalMorphism) -> FormalMorphism:
        """``psi o phi`` (apply ``phi`` first)."""
        if phi.target != psi.source:
            raise DomainMismatch("cannot compose: middle objects differ")
        out: Dict[Relation, Scalar] = {}
        for r, a in phi.items():
            for s, b in psi.items():
                res = self.relation_product(r, s)
                if res is None:
                    with self._lock:
                        self.zero_branch_count += 1
                    continue
                rel, e = res
                out[rel] = out.get(rel, ZERO) + a * b * degree_of(self.delta, e)
        return FormalMorphism(phi.source, psi.target, out)

    def compose_many(self, *morphisms: FormalMorphism) -> FormalMorphism:
        """``m1 o m2 o ... o mk``."""
        acc = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            acc = self.compose(m, acc)
        return acc

    def gamma(self, f: Arrow) -> FormalMorphism:
        """``<graph of f>``."""
        cat = self.cat
        rel, _ = self.relation_from_span(cat.identity(f.source), f)
        return self.basis_morphism(rel)

    def identity(self, x) -> FormalMorphism:
        return self.gamma(self.cat.identity(x))

    def transpose(self, r: Relation) -> Relation:
        a, b = self.legs(r)
        rel, e = self.relation_from_span(b, a)
        if not self.cat.is_iso(e):
            raise CategoryError("transposed relation lost injectivity")
        return rel

    def dual(self, phi: FormalMorphism) -> FormalMorphism:
        return FormalMorphism(phi.target, phi.source,
                              {self.transpose(r): c for r, c in phi.items()})

    def tensor_relation(self, r: Relation, s: Relation) -> Relation:
        cat = self.cat
        rx, rx2 = self.legs(r)
        sy, sy2 = self.legs(s)
        P = cat.product(r.carrier, s.carrier)
        a = cat.compose(rx, P.left)
        b = cat.compose(sy, P.right)
        a2 = cat.compose(rx2, P.left)
        b2 = cat.compose(sy2, P.right)
        src = cat.pair(cat.product(r.source, s.source), a, b)
        tgt = cat.pair(cat.product(r.target, s.target), a2, b2)
        rel, e = self.relation_from_span(src, tgt)
        if not cat.is_iso(e):
            raise CategoryError("tensor of relations is not a relation")
        return rel

    def tensor(self, phi: FormalMorphism, psi: FormalMorphism) -> FormalMorphism:
        src = self.cat.product(phi.source, psi.source).apex
        tgt = self.cat.product(phi.target, psi.target).apex
        out: Dict[Relation, Scalar] = {}
        for r, a in phi.items():
            for s, b in psi.items():
                rel = self.tensor_relation(r, s)
                out[rel] = out.get(rel, ZERO) + a * b
        return FormalMorphism(src, tgt, out)

    def braiding(self, x, y) -> FormalMorphism:
        """``[x * y] -> [y * x]``, the graph of the factor swap."""
        cat = self.cat
        pxy, pyx = cat.product(x, y), cat.product(y, x)
        return self.gamma(cat.pair(pyx, pxy.right, pxy.left))

    def linear_combination(self, x, y, coeffs: Iterable[Tuple[Relation, Any]]) -> FormalMorphism:
        out: Dict[Relation, Scalar] = {}
        for r, c in coeffs:
            out[r] = out.get(r, ZERO) + Scalar.coerce(c)
        return FormalMorphism(x, y, out)

    # serialization -----------------------------------------------------------

    def format_relation(self, r: Relation) -> str:
        left = self.cat.object_size(r.source)
        return self.cat.format_subobject(r.mono, left_size=left)

    def to_json(self, phi: FormalMorphism) -> dict:
        return {
            "schema": SCHEMA,
            "category": self.cat.descriptor,
            "degree": self.delta.describe(),
            "source": self.cat.format_object(phi.source),
            "target": self.cat.format_object(phi.target),
            "terms": [{"relation": self.format_relation(r), "scalar": str(c)}
                      for r, c in phi.items()],
        }

    def dumps(self, phi: FormalMorphism) -> str:
        return json.dumps(self.to_json(phi), sort_keys=True)

    def from_json(self, data: dict, x, y) -> FormalMorphism:
        """Inverse of :meth:`to_json` given the endpoint objects."""
        lookup = {self.format_relation(r): r for r in self.hom_basis(x, y)}
        terms = {}
        for t in data["terms"]:
            if t["relation"] not in lookup:
                raise ValueError(f"unknown relation {t['relation']!r}")
            terms[lookup[t["relation"]]] = Scalar.parse(t["scalar"])
        return FormalMorphism(x, y, terms)


# presentation checks ---------------------------------------------------------

@dataclass
class PresentationReport:
    category: str
    degree: str
    bound: int
    passed: bool = True
    checked: Dict[str, int] = field(default_factory=dict)
    counterexample: Optional[dict] = None

    def fail(self, what, **details):
        if self.passed:
            self.passed = False
            self.counterexample = {"relation": what, **details}

    def to_json(self):
        return {"category": self.category, "degree": self.degree, "bound": self.bound,
                "passed": self.passed, "checked": self.checked,
                "counterexample": self.counterexample}


def check_epi_relation(T: T0, e: Arrow) -> bool:
    """``<Ge> o <Ge>^v == delta(e) Id``."""
    g = T.gamma(e)
    lhs = T.compose(g, T.dual(g))
    return lhs == T.identity(e.target).scale(degree_of(T.delta, e))


def check_cartesian_exchange(T: T0, f: Arrow, g: Arrow) -> Tuple[bool, Optional[Any]]:
    """For the pullback ``r`` of ``f: y -> z`` and ``g: x -> z`` with legs
    ``f': r -> x``, ``g': r -> y``: ``<Gf>^v o <Gg> == <Gg'> o <Gf'>^v``.

    Returns ``(holds, pullback)``; ``(True, None)`` when no pullback exists."""
    pb = T.cat.pullback(g, f)
    if pb is None:
        return True, None
    f_, g_ = pb.left, pb.right
    lhs = T.compose(T.dual(T.gamma(f)), T.gamma(g))
    rhs = T.compose(T.gamma(g_), T.dual(T.gamma(f_)))
    return lhs == rhs, pb


def exchange_probe(T: T0, f: Arrow, g: Arrow, f_: Arrow, g_: Arrow) -> dict:
    """For a commutative square ``f g' = g f'`` (not necessarily Cartesian)
    report whether the exchange law holds together with the data of the
    criterion: the canonical map ``r -> x x_z y`` is epi of degree 1."""
    cat = T.cat
    if cat.compose(f, g_) != cat.compose(g, f_):
        raise CategoryError("square does not commute")
    lhs = T.compose(T.dual(T.gamma(f)), T.gamma(g))
    rhs = T.compose(T.gamma(g_), T.dual(T.gamma(f_)))
    pb = cat.pullback(g, f)
    out = {"holds": lhs == rhs, "pullback_exists": pb is not None}
    if pb is not None:
        c = pb.mediate(f_, g_)
        out["canonical_is_epi"] = cat.is_epi(c)
        out["canonical_degree"] = str(degree_of(T.delta, c)) if out["canonical_is_epi"] else None
        out["criterion"] = out["canonical_is_epi"] and degree_of(T.delta, c) == ONE
    return out


def verify_presentation(T: T0, bound: int = 2) -> PresentationReport:
    """Check the defining relations of the generators ``<Gf>``, ``<Gf>^v``
    exhaustively over the objects of size at most ``bound``."""
    cat = T.cat
    rep = PresentationReport(cat.descriptor, T.delta.describe(), bound)
    objs = cat.objects(bound)
    homs = {(x, y): cat.morphisms(x, y) for x in objs for y in objs}
    fmt = cat.format_arrow
    n_func = n_cart = n_epi = 0
    for x in objs:
        for y in objs:
            for f1 in homs[(x, y)]:
                g1 = T.gamma(f1)
                for z in objs:
                    for f2 in homs[(y, z)]:
                        n_func += 1
                        g2 = T.gamma(f2)
                        g21 = T.gamma(cat.compose(f2, f1))
                        if T.compose(g2, g1) != g21:
                            rep.fail("gamma functoriality", f=fmt(f1), g=fmt(f2))
                        if T.compose(T.dual(g1), T.dual(g2)) != T.dual(g21):
                            rep.fail("dual functoriality", f=fmt(f1), g=fmt(f2))
    for z in objs:
        for x in objs:
            for g in homs[(x, z)]:
                for y in objs:
                    for f in homs[(y, z)]:
                        ok, pb = check_cartesian_exchange(T, f, g)
                        if pb is None:
                            continue
                        n_cart += 1
                        if not ok:
                            rep.fail("cartesian exchange", f=fmt(f), g=fmt(g))
    for x in objs:
        for y in objs:
            for e in homs[(x, y)]:
                if cat.is_epi(e):
                    n_epi += 1
                    if not check_epi_relation(T, e):
                        rep.fail("epi relation", e=fmt(e))
    rep.checked = {"functoriality": n_func, "cartesian": n_cart, "epi": n_epi}
    return rep
