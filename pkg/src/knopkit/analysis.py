"""Numerical criteria attached to the families of T(A, delta).

* the poset of transitive G-sets and its Moebius function,
* semisimplicity conditions and their exact evaluation at rational points,
* automorphism groups of G-sets and of modules from their orbit or
  isotypic data,
* the functor to honest S_n-representations obtained by setting t = n.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from .categories import GSetCategory, LinearCategory, Opposite
from .degree import (DegreeFn, FreeOpT, PhiDegree, Power, SetsOpT, TauDegree, VectT)
from .groups import PermGroup
from .scalars import ONE, ZERO, AssignmentError, Scalar
from .t0 import T0, FormalMorphism

POSET_SCHEMA = "knopkit.poset/1"
VERDICT_SCHEMA = "knopkit.semisimplicity/1"
AUT_SCHEMA = "knopkit.aut/1"


class AnalysisError(ValueError):
    pass


# Tran(G) ----------------------------------------------------------------------

@dataclass(frozen=True)
class Poset:
    """Finite poset; ``geq[a][b]`` means ``a >= b``.  ``mobius[(a, b)]`` is
    defined for ``a >= b`` and satisfies sum_{a >= c >= b} mu(a, c) = [a == b]."""

    elements: Tuple[str, ...]
    geq: Dict[str, Dict[str, bool]]
    mobius: Dict[Tuple[str, str], int]

    def mu(self, a: str, b: str) -> int:
        return self.mobius.get((a, b), 0)

    def below(self, a: str) -> List[str]:
        return [b for b in self.elements if self.geq[a][b]]

    def check_inversion(self) -> bool:
        for a in self.elements:
            for b in self.elements:
                if not self.geq[a][b]:
                    continue
                s = sum(self.mu(a, c) for c in self.elements
                        if self.geq[a][c] and self.geq[c][b])
                if s != (1 if a == b else 0):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "schema": POSET_SCHEMA,
            "elements": list(self.elements),
            "order": [[a, b] for a in self.elements for b in self.elements
                      if self.geq[a][b] and a != b],
            "mobius": [{"a": a, "b": b, "mu": self.mu(a, b)} for a in self.elements
                       for b in self.elements if self.geq[a][b]],
        }


def mobius_table(elements: Sequence[str], geq) -> Dict[Tuple[str, str], int]:
    mu: Dict[Tuple[str, str], int] = {}
    # process pairs by increasing interval length
    for a in elements:
        below = [b for b in elements if geq[a][b]]
        below.sort(key=lambda b: sum(1 for c in elements if geq[c][b] and geq[a][c]))
        for b in below:
            if a == b:
                mu[(a, b)] = 1
                continue
            mu[(a, b)] = -sum(mu[(a, c)] for c in elements
                              if c != b and geq[a][c] and geq[c][b])
    return mu


def _subconjugate(G: PermGroup, H, K) -> bool:
    """Is ``H`` contained in some conjugate of ``K``?"""
    return any(H <= G.conjugate(K, g) for g in range(G.order))


_poset_lock = threading.Lock()
_poset_cache: Dict[str, Poset] = {}


def tran_poset(G: PermGroup) -> Poset:
    """Transitive G-sets ``G/H`` labelled by the conjugacy class of ``H``;
    ``G/H >= G/K`` when a G-map ``G/H -> G/K`` exists."""
    key = repr(G)
    with _poset_lock:
        if key in _poset_cache:
            return _poset_cache[key]
    labels = G.subgroup_class_labels
    reps = [cls[0] for cls in G.subgroup_classes]
    geq = {a: {b: _subconjugate(G, reps[i], reps[j]) for j, b in enumerate(labels)}
           for i, a in enumerate(labels)}
    poset = Poset(tuple(labels), geq, mobius_table(labels, geq))
    with _poset_lock:
        _poset_cache[key] = poset
    return poset


def _gset_category(cat) -> GSetCategory:
    if isinstance(cat, Opposite):
        cat = cat.inner
    if not isinstance(cat, GSetCategory):
        raise AnalysisError(f"{cat.descriptor} is not a category of G-sets")
    return cat


# membership tests -------------------------------------------------------------

def in_naturals(v: Fraction) -> bool:
    return v.denominator == 1 and v >= 0


def in_powers(v: Fraction, q: int) -> bool:
    """``v in q^N = {1, q, q^2, ...}``."""
    if v.denominator != 1 or v < 1:
        return False
    n = v.numerator
    while n % q == 0:
        n //= q
    return n == 1


def in_multiples(v: Fraction, m: int) -> bool:
    """``v in N*m``."""
    return in_naturals(v / m)


@dataclass
class Condition:
    label: str
    expr: Scalar
    forbidden: str
    test: Any = field(repr=False, default=None)
    decided: Optional[bool] = None  # True when the value lies in the forbidden set
    value: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {"label": self.label, "expr": str(self.expr), "forbidden_set": self.forbidden,
                "decided": self.decided,
                "value": None if self.value is None else str(self.value)}


@dataclass
class SemisimplicityVerdict:
    category: str
    degree: str
    conditions: List[Condition]
    point: Optional[Dict[str, Fraction]] = None

    @property
    def decided(self) -> bool:
        return all(c.decided is not None for c in self.conditions)

    @property
    def semisimple(self) -> Optional[bool]:
        """``None`` in symbolic mode or when some condition is undecided."""
        if self.point is None or not self.decided:
            return None
        return not any(c.decided for c in self.conditions)

    def to_json(self) -> dict:
        return {"schema": VERDICT_SCHEMA, "category": self.category, "degree": self.degree,
                "point": None if self.point is None else {k: str(v) for k, v in sorted(self.point.items())},
                "semisimple": self.semisimple,
                "conditions": [c.to_json() for c in self.conditions]}


def _conditions(delta: DegreeFn) -> List[Condition]:
    if isinstance(delta, Power):
        out = []
        for c in _conditions(delta.inner):
            sub = {v: Scalar.var(v) ** delta.k for v in c.expr.variables()}
            c.expr = c.expr.substitute(sub)
            out.append(c)
        return out
    if isinstance(delta, SetsOpT):
        return [Condition("t", delta.t, "N", in_naturals)]
    if isinstance(delta, VectT):
        q = delta.category.q
        return [Condition("t", delta.t, f"{q}^N", lambda v: in_powers(v, q))]
    if isinstance(delta, FreeOpT):
        n = delta.category.inner.G.order
        return [Condition("t", delta.t, f"N*{n}", lambda v: in_multiples(v, n))]
    if isinstance(delta, PhiDegree):
        G = delta.category.inner.G
        if delta.category.inner.free:
            n = G.order
            return [Condition("free", delta.phi["free"], f"N*{n}", lambda v: in_multiples(v, n))]
        poset = tran_poset(G)
        out = []
        for S in poset.elements:
            expr = ZERO
            for S2 in poset.below(S):
                expr = expr + Scalar.const(poset.mu(S, S2)) * delta.phi[S2]
            out.append(Condition(S, expr, "N", in_naturals))
        return out
    if isinstance(delta, TauDegree):
        from .meataxe import irreducibles
        out = []
        for irr in irreducibles(delta.category):
            Q = irr.field_size
            out.append(Condition(irr.label, delta.tau[irr.label], f"{Q}^N",
                                 lambda v, Q=Q: in_powers(v, Q)))
        return out
    raise AnalysisError(f"no semisimplicity rule for degree family {type(delta).__name__}")


def semisimplicity_check(delta: DegreeFn, point: Optional[Mapping[str, Any]] = None
                         ) -> SemisimplicityVerdict:
    """One condition ``expr not in forbidden`` per rule of the family; with
    ``point`` each is decided exactly."""
    conds = _conditions(delta)
    pt = None
    if point is not None:
        pt = {k: Fraction(v) for k, v in point.items()}
        for c in conds:
            try:
                c.value = c.expr.evaluate(pt)
            except AssignmentError:
                continue
            c.decided = bool(c.test(c.value))
    return SemisimplicityVerdict(delta.category.descriptor, delta.describe(), conds, pt)


# automorphism groups ------------------------------------------------------------

@dataclass
class AutStructure:
    factors: List[dict]
    order: int

    def to_json(self) -> dict:
        return {"schema": AUT_SCHEMA, "factors": self.factors, "order": self.order}


def gl_order(n: int, Q: int) -> int:
    out = 1
    for i in range(n):
        out *= Q ** n - Q ** i
    return out


def aut_structure(cat, x) -> AutStructure:
    """``prod_H S_{n_H} wr (N(H)/H)`` for G-sets and ``prod_I GL_{[V:I]}(F_I)``
    for modules."""
    if isinstance(cat, LinearCategory):
        from .meataxe import irreducibles, multiplicities
        if cat.G is None:
            return AutStructure([{"type": "GL", "params": {"field": cat.q}, "multiplicity": x.dim}],
                                gl_order(x.dim, cat.q))
        mult = multiplicities(cat, x)
        factors, order = [], 1
        for irr in irreducibles(cat):
            n = mult[irr.label]
            if n:
                factors.append({"type": "GL", "params": {"irreducible": irr.label,
                                                         "field": irr.field_size},
                                "multiplicity": n})
                order *= gl_order(n, irr.field_size)
        return AutStructure(factors, order)
    gcat = _gset_category(cat)
    G = gcat.G
    labels = G.subgroup_class_labels
    counts = {l: 0 for l in labels}
    for o in gcat.orbits(x):
        counts[gcat.orbit_label(x, o)] += 1
    factors, order = [], 1
    for cls, label in zip(G.subgroup_classes, labels):
        n = counts[label]
        if not n:
            continue
        H = cls[0]
        quotient = len(G.normalizer(H)) // len(H)
        factors.append({"type": "wreath", "params": {"orbit": label, "N(H)/H": quotient},
                        "multiplicity": n})
        order *= math.factorial(n) * quotient ** n
    return AutStructure(factors, order)


def brute_force_aut_count(cat, x) -> int:
    """Number of invertible endomorphisms, by enumeration."""
    inner = _gset_category(cat) if not isinstance(cat, LinearCategory) else cat
    return sum(1 for f in inner.morphisms(x, x) if inner.is_iso(f))


# phi and tau from objects ---------------------------------------------------------

def phi_from_gset(cat, X) -> Dict[str, Scalar]:
    """``phi(S)`` = number of orbits of ``X`` that receive a G-map from ``S``."""
    gcat = _gset_category(cat)
    G = gcat.G
    out = {}
    orbits = [gcat.sub_gset(X, o) for o in gcat.orbits(X)]
    for cls, label in zip(G.subgroup_classes, G.subgroup_class_labels):
        S = gcat.coset_space(cls[0])
        out[label] = Scalar.const(sum(1 for O in orbits if gcat.morphisms(S, O)))
    return out


def orbit_counts(cat, X) -> Dict[str, int]:
    gcat = _gset_category(cat)
    counts = {l: 0 for l in gcat.G.subgroup_class_labels}
    for o in gcat.orbits(X):
        counts[gcat.orbit_label(X, o)] += 1
    return counts


def phi_from_orbit_counts(G: PermGroup, counts: Mapping[str, int]) -> Dict[str, Scalar]:
    """``phi(S) = sum_{S' <= S} n(S')`` with ``n`` the orbit-type counts."""
    poset = tran_poset(G)
    return {S: Scalar.const(sum(counts.get(S2, 0) for S2 in poset.below(S)))
            for S in poset.elements}


def tau_from_module(cat: LinearCategory, V) -> Dict[str, Scalar]:
    """``tau(I) = |F_I|^{[V:I]}``."""
    from .meataxe import irreducibles, multiplicities
    mult = multiplicities(cat, V)
    return {irr.label: Scalar.const(irr.field_size ** mult[irr.label]) for irr in irreducibles(cat)}


# specialization to S_n -------------------------------------------------------------

MAX_SPECIAL_SIZE = 3
MAX_SPECIAL_N = 5


def sn_basis(n: int, k: int) -> List[Tuple[int, ...]]:
    """Functions ``k -> n`` as tuples, in lexicographic order."""
    return list(itertools.product(range(n), repeat=k))


def partition_matrix(n: int, blocks: Sequence[int], kx: int, ky: int) -> sympy.Matrix:
    """0/1 matrix of a partition of ``x + y`` (block labels ``blocks``):
    entry (b, a) is 1 when ``a + b`` is constant on every block."""
    cols = sn_basis(n, kx)
    rows = sn_basis(n, ky)
    M = sympy.zeros(len(rows), len(cols))
    for i, b in enumerate(rows):
        for j, a in enumerate(cols):
            vals = a + b
            seen: Dict[int, int] = {}
            ok = True
            for p, blk in enumerate(blocks):
                if seen.setdefault(blk, vals[p]) != vals[p]:
                    ok = False
                    break
            if ok:
                M[i, j] = 1
    return M


def specialize_to_Sn(T: T0, n: int, phi: FormalMorphism) -> sympy.Matrix:
    """Matrix of ``phi`` on ``Q^{Hom(x, n)} -> Q^{Hom(y, n)}`` at ``t = n``."""
    cat = T.cat
    if not (isinstance(cat, Opposite) and isinstance(cat.inner, GSetCategory) and cat.inner.is_plain_sets):
        raise AnalysisError("specialization to S_n needs T0(sets-op, delta_t)")
    kx, ky = phi.source.n, phi.target.n
    if max(kx, ky) > MAX_SPECIAL_SIZE or n > MAX_SPECIAL_N or n < 0:
        raise AnalysisError(f"sizes must be <= {MAX_SPECIAL_SIZE} and n <= {MAX_SPECIAL_N}")
    M = sympy.zeros(n ** ky, n ** kx)
    for r, c in phi.items():
        try:
            val = c.evaluate({"t": n})
        except AssignmentError as exc:
            raise AnalysisError(f"coefficient {c} has indeterminates other than t") from exc
        blocks = r.mono.data.data
        M += sympy.Rational(val.numerator, val.denominator) * partition_matrix(n, blocks, kx, ky)
    return M
