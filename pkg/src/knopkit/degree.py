"""Degree functions on the epimorphisms of the concrete categories.

Each family returns monomials in the configured indeterminates; exponents are
computed combinatorially (complement sizes, orbit counts, kernel dimensions,
kernel multiplicities).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from .categories import (Arrow, GSetCategory, LinearCategory, Opposite, RegularCategory,
                         SliceCategory)
from .categories.base import CategoryError
from .scalars import ONE, Scalar


class DegreeSpecError(ValueError):
    pass


class DomainError(ValueError):
    """A degree function was applied to a non-epimorphism."""


class DegreeFn:
    """Base class: call with an epimorphism to obtain its degree."""

    kind = "?"

    def __init__(self, category: RegularCategory):
        self.category = category

    def __call__(self, e: Arrow) -> Scalar:
        return degree_of(self, e)

    def _value(self, e: Arrow) -> Scalar:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def __repr__(self):
        return f"<degree {self.describe()} on {self.category.descriptor}>"


def degree_of(delta: DegreeFn, e: Arrow) -> Scalar:
    if not delta.category.is_epi(e):
        raise DomainError("degree functions are only defined on epimorphisms")
    return delta._value(e)


class ConstantOne(DegreeFn):
    """``delta = 1``: composition is the plain relation product."""

    kind = "one"

    def _value(self, e):
        return ONE


class SetsOpT(DegreeFn):
    """``t^{|Y \\ e(X)|}`` for an injection ``e: X -> Y`` viewed in Sets^op."""

    kind = "sets_op_t"

    def __init__(self, category, t: Scalar):
        super().__init__(category)
        self.t = Scalar.coerce(t)

    def _value(self, e):
        u = e.data
        return self.t ** (u.target.n - u.source.n)

    def describe(self):
        return f"delta:t={self.t}"


class VectT(DegreeFn):
    """``t^{dim ker e}``."""

    kind = "vect_t"

    def __init__(self, category, t: Scalar):
        super().__init__(category)
        self.t = Scalar.coerce(t)

    def _value(self, e):
        return self.t ** (e.source.dim - e.target.dim)

    def describe(self):
        return f"delta:t={self.t}"


def _complement_orbits(cat: GSetCategory, u: Arrow) -> List[Tuple[int, ...]]:
    img = set(u.data)
    return [o for o in cat.orbits(u.target) if o[0] not in img]


class FreeOpT(DegreeFn):
    """``t^{|(Y \\ e(X))/G|}`` on free G-sets viewed opposite."""

    kind = "gsets_free_op_t"

    def __init__(self, category, t: Scalar):
        super().__init__(category)
        self.t = Scalar.coerce(t)

    def _value(self, e):
        return self.t ** len(_complement_orbits(self.category.inner, e.data))

    def describe(self):
        return f"delta:t={self.t}"


class PhiDegree(DegreeFn):
    """``prod phi(S)`` over the orbits ``S`` of ``Y \\ e(X)``."""

    kind = "gsets_op_phi"

    def __init__(self, category, phi: Mapping[str, Scalar]):
        super().__init__(category)
        labels = category.inner.G.subgroup_class_labels
        phi = {_orbit_alias(k): Scalar.coerce(v) for k, v in phi.items()}
        missing = [l for l in labels if l not in phi]
        if category.inner.free:
            missing = [l for l in missing if l == "free"]
        if missing:
            raise DegreeSpecError(f"phi is not total: missing {missing} (Tran(G) = {list(labels)})")
        unknown = [k for k in phi if k not in labels]
        if unknown:
            raise DegreeSpecError(f"unknown orbit types {unknown}")
        self.phi: Dict[str, Scalar] = phi

    def _value(self, e):
        cat = self.category.inner
        out = ONE
        for o in _complement_orbits(cat, e.data):
            out = out * self.phi[cat.orbit_label(e.data.target, o)]
        return out

    def describe(self):
        return "delta:phi={" + ",".join(f"{k}:{v}" for k, v in self.phi.items()) + "}"


class TauDegree(DegreeFn):
    """``prod tau(I)^{[ker e : I]}`` on Rep(G, F_q)."""

    kind = "rep_tau"

    def __init__(self, category, tau: Mapping[str, Scalar]):
        super().__init__(category)
        from .meataxe import find_irreducible, irreducibles
        labels = [i.label for i in irreducibles(category)]
        clean = {}
        for k, v in tau.items():
            try:
                clean[find_irreducible(category, k).label] = Scalar.coerce(v)
            except KeyError as exc:
                raise DegreeSpecError(str(exc)) from None
        missing = [l for l in labels if l not in clean]
        if missing:
            raise DegreeSpecError(f"tau is not total: missing {missing} (Irr(G) = {labels})")
        self.tau: Dict[str, Scalar] = {l: clean[l] for l in labels}

    def _value(self, e):
        from .meataxe import multiplicities
        ker = self.category.kernel(e).source
        out = ONE
        for label, k in multiplicities(self.category, ker).items():
            if k:
                out = out * self.tau[label] ** k
        return out

    def t_tau(self) -> Scalar:
        """``prod tau(I)^{dim I}``."""
        from .meataxe import irreducibles
        out = ONE
        for irr in irreducibles(self.category):
            out = out * self.tau[irr.label] ** irr.dim
        return out

    def describe(self):
        return "delta:tau={" + ",".join(f"{k}:{v}" for k, v in self.tau.items()) + "}"


class SliceInduced(DegreeFn):
    """``delta'(e) = delta(underlying e)`` on a slice category."""

    kind = "slice_induced"

    def __init__(self, category: SliceCategory, inner: DegreeFn):
        super().__init__(category)
        if inner.category != category.inner:
            raise DegreeSpecError("inner degree function lives on a different category")
        self.inner = inner

    def _value(self, e):
        return degree_of(self.inner, e.data)

    def describe(self):
        return self.inner.describe()


class Power(DegreeFn):
    """``inner`` with every indeterminate ``v`` replaced by ``v^k``."""

    kind = "power"

    def __init__(self, inner: DegreeFn, k: int):
        super().__init__(inner.category)
        self.inner, self.k = inner, k

    def _value(self, e):
        val = degree_of(self.inner, e)
        return val.substitute({v: Scalar.var(v) ** self.k for v in val.variables()})

    def describe(self):
        return f"{self.inner.describe()}^[{self.k}]"


def _orbit_alias(label: str) -> str:
    return {"fixed": "triv", "point": "triv", "regular": "free"}.get(label, label)


def tau_t(category: LinearCategory, t="t") -> Dict[str, Scalar]:
    """``tau_t(I) = t^{dim I}``."""
    from .meataxe import irreducibles
    t = Scalar.coerce(t)
    return {i.label: t ** i.dim for i in irreducibles(category)}


def tau_prime_t(category: LinearCategory, t="t") -> Dict[str, Scalar]:
    """``tau'_t(I) = t`` for the trivial module and ``1`` otherwise."""
    from .meataxe import irreducibles
    t = Scalar.coerce(t)
    return {i.label: (t if i.label == "1" else ONE) for i in irreducibles(category)}


def phi_constant(category, t="t") -> Dict[str, Scalar]:
    labels = category.inner.G.subgroup_class_labels
    return {l: Scalar.coerce(t) for l in labels}


def standard_degree(category: RegularCategory, t="t") -> DegreeFn:
    """The one-parameter family ``delta_t`` of each category (``tau_t`` on
    Rep, constant ``phi = t`` on G-Sets^op)."""
    t = Scalar.coerce(t)
    if isinstance(category, SliceCategory):
        return SliceInduced(category, standard_degree(category.inner, t))
    if isinstance(category, Opposite) and isinstance(category.inner, GSetCategory):
        inner = category.inner
        if inner.is_plain_sets:
            return SetsOpT(category, t)
        if inner.free:
            return FreeOpT(category, t)
        return PhiDegree(category, phi_constant(category, t))
    if isinstance(category, LinearCategory):
        if category.G is None:
            return VectT(category, t)
        return TauDegree(category, tau_t(category, t))
    if isinstance(category, GSetCategory):
        return ConstantOne(category)
    raise DegreeSpecError(f"no standard degree function on {category.descriptor}")


def _parse_mapping(body: str) -> Dict[str, str]:
    body = body.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise DegreeSpecError(f"expected {{label:value,...}}, got {body!r}")
    out = {}
    for item in filter(None, (s.strip() for s in body[1:-1].split(","))):
        k, sep, v = item.partition(":")
        if not sep:
            raise DegreeSpecError(f"expected label:value, got {item!r}")
        out[k.strip()] = v.strip()
    return out


def make_degree(category: RegularCategory, spec: str = "delta:t") -> DegreeFn:
    """Parse a degree descriptor.

    ``delta:t`` (or ``delta:t=<scalar>``) selects the standard family;
    ``delta:phi={...}`` and ``delta:tau={...}`` give explicit values;
    ``delta:tau=tau_t`` / ``delta:tau=tau'_t`` the two named families;
    ``delta:1`` the constant function.  A ``^k`` suffix (``delta:t^[3]``)
    substitutes ``v -> v^k`` for every indeterminate.
    """
    spec = spec.strip()
    m = re.fullmatch(r"(.*)\^\[(\d+)\]", spec)
    if m:
        return Power(make_degree(category, m.group(1)), int(m.group(2)))
    if not spec.startswith("delta:"):
        raise DegreeSpecError(f"degree descriptors start with 'delta:', got {spec!r}")
    body = spec[len("delta:"):]
    if isinstance(category, SliceCategory) and not body.startswith("1"):
        return SliceInduced(category, make_degree(category.inner, spec))
    if body == "1":
        return ConstantOne(category)
    if body == "t" or body.startswith("t="):
        t = body[2:] if body.startswith("t=") else "t"
        return standard_degree(category, Scalar.parse(t))
    if body.startswith("phi="):
        if not (isinstance(category, Opposite) and isinstance(category.inner, GSetCategory)):
            raise DegreeSpecError("phi degree functions live on G-Sets^op")
        return PhiDegree(category, {k: Scalar.parse(v) for k, v in _parse_mapping(body[4:]).items()})
    if body.startswith("tau="):
        if not (isinstance(category, LinearCategory) and category.G is not None):
            raise DegreeSpecError("tau degree functions live on Rep(G, F_q)")
        val = body[4:]
        named = re.fullmatch(r"tau(')?_(.+)", val)
        if named:
            fam = tau_prime_t if named.group(1) else tau_t
            return TauDegree(category, fam(category, Scalar.parse(named.group(2))))
        return TauDegree(category, {k: Scalar.parse(v) for k, v in _parse_mapping(val).items()})
    raise DegreeSpecError(f"unrecognised degree descriptor {spec!r}")


# axiom checks ---------------------------------------------------------------

@dataclass
class AxiomReport:
    degree: str
    bound: int
    passed: bool = True
    checked: Dict[str, int] = field(default_factory=dict)
    counterexample: Optional[dict] = None

    def fail(self, what: str, **details):
        if self.passed:
            self.passed = False
            self.counterexample = {"axiom": what, **details}

    def to_json(self) -> dict:
        return {"degree": self.degree, "bound": self.bound, "passed": self.passed,
                "checked": self.checked, "counterexample": self.counterexample}


def check_degree_axioms(delta: DegreeFn, bound: int = 3) -> AxiomReport:
    """Exhaustive check of ``delta(id) = 1``, multiplicativity and pullback
    invariance over all objects of size at most ``bound``."""
    cat = delta.category
    report = AxiomReport(delta.describe(), bound)
    objs = cat.objects(bound)
    fmt = cat.format_arrow
    n_id = n_mult = n_pb = 0
    epis = {(x, y): cat.epis(x, y) for x in objs for y in objs}
    for x in objs:
        n_id += 1
        if degree_of(delta, cat.identity(x)) != ONE:
            report.fail("identity", object=cat.format_object(x))
    for x in objs:
        for y in objs:
            for e in epis[(x, y)]:
                de = degree_of(delta, e)
                for z in objs:
                    for e2 in epis[(y, z)]:
                        n_mult += 1
                        lhs = degree_of(delta, cat.compose(e2, e))
                        rhs = de * degree_of(delta, e2)
                        if lhs != rhs:
                            report.fail("multiplicativity", first=fmt(e), second=fmt(e2),
                                        composite=str(lhs), product=str(rhs))
                for w in objs:
                    for g in cat.morphisms(w, y):
                        pb = cat.pullback(e, g)
                        if pb is None:
                            continue
                        n_pb += 1
                        e_pb = pb.right
                        if not cat.is_epi(e_pb):
                            report.fail("epi stability", epi=fmt(e), arrow=fmt(g))
                            continue
                        if degree_of(delta, e_pb) != de:
                            report.fail("pullback invariance", epi=fmt(e), arrow=fmt(g),
                                        original=str(de), pulled_back=str(degree_of(delta, e_pb)))
    report.checked = {"identity": n_id, "multiplicativity": n_mult, "pullback": n_pb}
    return report
