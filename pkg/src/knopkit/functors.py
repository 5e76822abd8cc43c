"""Functors between the base categories, their lifts to T^0 and adjunctions.

A functor that preserves epimorphisms, degrees and pullbacks induces
``[x] -> [F x]`` and ``<r> -> <F r>`` on the skeletal categories, where
``F r`` is viewed inside ``F x * F y`` through the canonical monomorphism
``F(x * y) -> F x * F y``.  Every hypothesis is checked exhaustively up to a
size bound, so the claims made by the reports are finitary.

Functor descriptors::

    linearize:q=2           wreath-ind:G=C2         wreath-res:G=C2
    rel-wreath-ind:G=S3,H=C2                        rel-wreath-res:G=S3,H=C2
    iter-wreath-ind:G=S3,H=C2                       iter-wreath-res:G=S3,H=C2
    rep-ind:G=C2,q=3        rep-res:G=C2,q=3
    slice-F:inner=vect:q=2,base=1                   slice-G:inner=vect:q=2,base=1
    trivial-T:G=C2          orbits-F:G=C2           invariants-G:G=C2
    quot-pullback:G=C4,N=C2 quot-orbits:G=C4,N=C2   quot-invariants:G=C4,N=C2
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import fields as la
from .categories import (Arrow, GSet, GSetCategory, LinearCategory, Module, Opposite, SliceCategory,
                         SliceObj, category, op, parse_object)
from .categories.base import CategoryError, RegularCategory
from .categories.gsets import _UnionFind
from .degree import (DegreeFn, FreeOpT, PhiDegree, Power, SetsOpT, SliceInduced, TauDegree, VectT,
                     degree_of, standard_degree, tau_t)
from .fields import Mat
from .groups import PermGroup, find_subgroup, group
from .scalars import ONE, Scalar
from .t0 import T0, FormalMorphism, Relation

REPORT_SCHEMA = "knopkit.functor-check/1"


class FunctorSpecError(ValueError):
    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


class LiftRefused(RuntimeError):
    def __init__(self, message: str, reports: Sequence["CheckReport"]):
        super().__init__(message)
        self.reports = list(reports)


# group helpers ---------------------------------------------------------------

def subgroup_as_group(G: PermGroup, H, name: str = "") -> Tuple[PermGroup, Tuple[int, ...]]:
    """``H`` (a set of element indices of ``G``) as a group of its own, with
    the inclusion map on element indices."""
    gens = [G.elements[h] for h in sorted(H)]
    K = PermGroup(gens, name=name or f"{G}>H")
    return K, tuple(G.index[p] for p in K.elements)


def trivial_group() -> PermGroup:
    return group("C1")


# carrier functors on G-sets ----------------------------------------------------

class CarrierFunctor:
    """Covariant functor between categories of G-sets, object and arrow maps."""

    source: GSetCategory
    target: GSetCategory

    def obj(self, x: GSet) -> GSet:
        raise NotImplementedError

    def arrow(self, f: Arrow) -> Arrow:
        raise NotImplementedError


class RestrictAlong(CarrierFunctor):
    """Pull the action back along a homomorphism ``rho: K -> G``."""

    def __init__(self, source: GSetCategory, target: GSetCategory, rho: Sequence[int]):
        self.source, self.target, self.rho = source, target, tuple(rho)

    def obj(self, x):
        return GSet(x.n, tuple(x.action[self.rho[k]] for k in range(self.target.G.order)))

    def arrow(self, f):
        return Arrow(self.obj(f.source), self.obj(f.target), f.data)


class InduceFrom(CarrierFunctor):
    """``Y -> (G x Y)/~`` with ``(g h, y) ~ (g, h y)`` for ``h`` in ``H``."""

    def __init__(self, source: GSetCategory, target: GSetCategory, incl: Sequence[int]):
        self.source, self.target, self.incl = source, target, tuple(incl)

    @lru_cache(maxsize=1024)
    def _classes(self, y: GSet):
        G = self.target.G
        n = y.n
        uf = _UnionFind(G.order * n)
        for g in range(G.order):
            for h_idx, h in enumerate(self.incl):
                for v in range(n):
                    uf.union(G.mul[g][h] * n + v, g * n + y.action[h_idx][v])
        roots: Dict[int, int] = {}
        label = []
        for i in range(G.order * n):
            r = uf.find(i)
            if r not in roots:
                roots[r] = len(roots)
            label.append(roots[r])
        return tuple(label), len(roots)

    def obj(self, y):
        G = self.target.G
        label, m = self._classes(y)
        n = y.n
        action = []
        for k in range(G.order):
            perm = [0] * m
            for g in range(G.order):
                for v in range(n):
                    perm[label[g * n + v]] = label[G.mul[k][g] * n + v]
            action.append(tuple(perm))
        return GSet(m, tuple(action))

    def arrow(self, f):
        G = self.target.G
        ls, m = self._classes(f.source)
        lt, _ = self._classes(f.target)
        n, n2 = f.source.n, f.target.n
        table = [0] * m
        for g in range(G.order):
            for v in range(n):
                table[ls[g * n + v]] = lt[g * n2 + f.data[v]]
        return Arrow(self.obj(f.source), self.obj(f.target), tuple(table))


class OrbitsOf(CarrierFunctor):
    """``X -> X/N`` as a ``G/N``-set (``qmap`` sends G to G/N)."""

    def __init__(self, source: GSetCategory, target: GSetCategory, N, qmap: Sequence[int]):
        self.source, self.target = source, target
        self.N, self.qmap = tuple(sorted(N)), tuple(qmap)
        self.lift = {}
        for g, c in enumerate(self.qmap):
            self.lift.setdefault(c, g)

    def _orbit_index(self, x: GSet):
        idx, reps = {}, []
        for i in range(x.n):
            if i in idx:
                continue
            for n in self.N:
                idx[x.action[n][i]] = len(reps)
            reps.append(i)
        return idx, reps

    def obj(self, x):
        idx, reps = self._orbit_index(x)
        Q = self.target.G
        action = tuple(tuple(idx[x.action[self.lift[c]][r]] for r in reps) for c in range(Q.order))
        return GSet(len(reps), action)

    def arrow(self, f):
        si, sreps = self._orbit_index(f.source)
        ti, _ = self._orbit_index(f.target)
        return Arrow(self.obj(f.source), self.obj(f.target), tuple(ti[f.data[r]] for r in sreps))


class InvariantsOf(CarrierFunctor):
    """``X -> X^N`` as a ``G/N``-set."""

    def __init__(self, source: GSetCategory, target: GSetCategory, N, qmap: Sequence[int]):
        self.source, self.target = source, target
        self.N, self.qmap = tuple(sorted(N)), tuple(qmap)
        self.lift = {}
        for g, c in enumerate(self.qmap):
            self.lift.setdefault(c, g)

    def _points(self, x):
        return [i for i in range(x.n) if all(x.action[n][i] == i for n in self.N)]

    def obj(self, x):
        pts = self._points(x)
        where = {p: k for k, p in enumerate(pts)}
        Q = self.target.G
        return GSet(len(pts), tuple(tuple(where[x.action[self.lift[c]][p]] for p in pts)
                                    for c in range(Q.order)))

    def arrow(self, f):
        pts = self._points(f.source)
        where = {p: k for k, p in enumerate(self._points(f.target))}
        return Arrow(self.obj(f.source), self.obj(f.target), tuple(where[f.data[p]] for p in pts))


# functors ------------------------------------------------------------------------

class Functor:
    """A functor ``source -> target`` with default degree functions."""

    kind = "functor"

    def __init__(self, descriptor: str, source: RegularCategory, target: RegularCategory):
        self.descriptor = descriptor
        self.source = source
        self.target = target

    def obj(self, x):
        raise NotImplementedError

    def arrow(self, f: Arrow) -> Arrow:
        raise NotImplementedError

    def default_degrees(self) -> Tuple[DegreeFn, DegreeFn]:
        return standard_degree(self.source), standard_degree(self.target)

    def __repr__(self):
        return f"Functor({self.descriptor})"


class OpFunctor(Functor):
    """Opposite of a carrier functor."""

    def __init__(self, descriptor, source: Opposite, target: Opposite, carrier: CarrierFunctor,
                 degrees: Optional[Callable[[], Tuple[DegreeFn, DegreeFn]]] = None):
        super().__init__(descriptor, source, target)
        self.carrier = carrier
        self._degrees = degrees

    def obj(self, x):
        return self.carrier.obj(x)

    def arrow(self, f):
        return op(self.carrier.arrow(f.data))

    def default_degrees(self):
        if self._degrees is not None:
            return self._degrees()
        return super().default_degrees()


class Linearize(Functor):
    """Finite set ``X`` to the space of ``F_q``-valued functions on it."""

    def obj(self, x):
        return self.target.space(x.n)

    def arrow(self, f):
        u = f.data  # u: Y -> X in Sets, f: X -> Y in Sets^op
        rows = [[1 if u.data[j] == i else 0 for i in range(u.target.n)] for j in range(u.source.n)]
        return Arrow(self.obj(f.source), self.obj(f.target), Mat(rows, u.target.n))


class RepInduce(Functor):
    """``V -> F[G] (x) V``; basis ``e_g (x) v_i`` at index ``g * dim V + i``."""

    def obj(self, x):
        G = self.target.G
        n = x.dim
        mats = []
        for h in range(G.order):
            rows = [[0] * (G.order * n) for _ in range(G.order * n)]
            for g in range(G.order):
                for i in range(n):
                    rows[G.mul[h][g] * n + i][g * n + i] = 1
            mats.append(Mat(rows, G.order * n))
        return Module(G.order * n, tuple(mats))

    def arrow(self, f):
        G = self.target.G
        return Arrow(self.obj(f.source), self.obj(f.target),
                     la.block_diag([f.data] * G.order) if f.data.nrows or f.data.ncols
                     else Mat([], 0))

    def default_degrees(self):
        tau = {irr: Scalar.var(f"tau({irr})") for irr in _irr_labels(self.target)}
        d_tgt = TauDegree(self.target, tau)
        return VectT(self.source, d_tgt.t_tau()), d_tgt


class RepRestrict(Functor):

    def obj(self, x):
        return self.target.space(x.dim)

    def arrow(self, f):
        return Arrow(self.obj(f.source), self.obj(f.target), f.data)

    def default_degrees(self):
        t = Scalar.var("t")
        return TauDegree(self.source, tau_t(self.source, t)), VectT(self.target, t)


class SliceTimes(Functor):
    """``x -> (x * x0, projection)``."""

    def obj(self, x):
        A = self.source
        prod = A.product(x, self.target.base)
        return SliceObj(prod.apex, prod.right)

    def arrow(self, f):
        A = self.source
        x0 = self.target.base
        P, Q = A.product(f.source, x0), A.product(f.target, x0)
        u = A.pair(Q, A.compose(f, P.left), P.right)
        return Arrow(self.obj(f.source), self.obj(f.target), u)

    def default_degrees(self):
        d = standard_degree(self.source)
        return d, SliceInduced(self.target, d)


class SliceForget(Functor):

    def obj(self, x):
        return x.x

    def arrow(self, f):
        return f.data

    def default_degrees(self):
        d = standard_degree(self.target)
        return SliceInduced(self.source, d), d


class IdentityFunctor(Functor):

    def obj(self, x):
        return x

    def arrow(self, f):
        return f


def _irr_labels(cat: LinearCategory) -> List[str]:
    from .meataxe import irreducibles
    return [i.label for i in irreducibles(cat)]


def _phi_symbolic(cat: Opposite) -> Dict[str, Scalar]:
    labels = cat.inner.G.subgroup_class_labels
    if cat.inner.free:
        labels = ("free",)
    return {l: Scalar.var(f"phi({l})") for l in labels}


def _gsets(G: PermGroup, gname: str, free: bool = False, opposite: bool = True):
    kind = "gsets-free" if free else "gsets"
    if G.order == 1 and not free:
        inner = GSetCategory()
        return Opposite(inner, "sets-op") if opposite else inner
    inner = GSetCategory(G, free=free, gname=gname)
    return Opposite(inner, f"{kind}-op:G={gname}") if opposite else inner


def transitive_map(F: CarrierFunctor, labels_from: Sequence[str]) -> Dict[str, str]:
    """Image of each transitive type under ``F`` (which must keep transitivity)."""
    src, tgt = F.source, F.target
    out = {}
    for label in labels_from:
        S = F.obj(src.orbit_type(label))
        orbs = tgt.orbits(S)
        if len(orbs) != 1:
            raise FunctorSpecError(f"image of {label} is not transitive")
        out[label] = tgt.orbit_label(S, orbs[0])
    return out


def restriction_multiplicities(F: CarrierFunctor, label: str) -> Dict[str, int]:
    """``[Res S : S']`` for the restriction functor ``F``."""
    S = F.obj(F.source.orbit_type(label))
    counts: Dict[str, int] = {}
    for o in F.target.orbits(S):
        l = F.target.orbit_label(S, o)
        counts[l] = counts.get(l, 0) + 1
    return counts


# catalog ---------------------------------------------------------------------------

def _kv(body: str) -> Dict[str, str]:
    out = {}
    depth, cur, parts = 0, "", []
    for ch in body:
        depth += ch in "[(" and 1 or 0
        depth -= ch in "])" and 1 or 0
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        parts.append(cur)
    for p in parts:
        k, sep, v = p.partition("=")
        if not sep:
            raise FunctorSpecError(f"expected key=value, got {p!r}", p)
        out[k.strip()] = v.strip()
    return out


def _need(params, *keys, desc=""):
    for k in keys:
        if k not in params:
            raise FunctorSpecError(f"missing parameter {k!r} in {desc!r}", desc)
    return [params[k] for k in keys]


@lru_cache(maxsize=None)
def make_functor(desc: str) -> Functor:
    """Resolve a functor descriptor (see the module docstring)."""
    desc = desc.strip()
    kind, _, body = desc.partition(":")
    if kind in ("slice-F", "slice-G"):
        m = re.fullmatch(r"inner=(.+),base=([^,]+)", body)
        if not m:
            raise FunctorSpecError(f"expected inner=<category>,base=<object> in {desc!r}", body)
        inner = category(m.group(1))
        base = parse_object(inner, m.group(2))
        sl = SliceCategory(inner, base, base_label=m.group(2))
        if kind == "slice-F":
            return SliceTimes(desc, inner, sl)
        return SliceForget(desc, sl, inner)
    params = _kv(body) if body else {}
    try:
        return _build(kind, params, desc)
    except (CategoryError, KeyError) as exc:
        if isinstance(exc, FunctorSpecError):
            raise
        raise FunctorSpecError(f"{exc} in {desc!r}", desc) from None


def _build(kind: str, params: Dict[str, str], desc: str) -> Functor:
    if kind == "linearize":
        (q,) = _need(params, "q", desc=desc)
        return Linearize(desc, category("sets-op"), category(f"vect:q={q}"))
    if kind in ("rep-ind", "rep-res"):
        g, q = _need(params, "G", "q", desc=desc)
        vect, rep = category(f"vect:q={q}"), category(f"rep:G={g},q={q}")
        if kind == "rep-ind":
            return RepInduce(desc, vect, rep)
        return RepRestrict(desc, rep, vect)
    if kind in ("wreath-ind", "wreath-res"):
        (g,) = _need(params, "G", desc=desc)
        G = group(g)
        sets, free = _gsets(trivial_group(), "C1"), _gsets(G, g, free=True)
        n = G.order
        if kind == "wreath-ind":
            carrier = InduceFrom(sets.inner, free.inner, (G.identity,))
            return OpFunctor(desc, sets, free, carrier,
                             lambda: (SetsOpT(sets, Scalar.var("t")), FreeOpT(free, Scalar.var("t"))))
        carrier = RestrictAlong(free.inner, sets.inner, (G.identity,))
        return OpFunctor(desc, free, sets, carrier,
                         lambda: (Power(FreeOpT(free, Scalar.var("t")), n), SetsOpT(sets, Scalar.var("t"))))
    if kind in ("rel-wreath-ind", "rel-wreath-res", "iter-wreath-ind", "iter-wreath-res"):
        g, h = _need(params, "G", "H", desc=desc)
        G = group(g)
        Hidx = find_subgroup(G, h)
        H, incl = subgroup_as_group(G, Hidx, name=h)
        free = kind.startswith("rel")
        cG, cH = _gsets(G, g, free=free), _gsets(H, h, free=free)
        index = G.order // H.order
        t = Scalar.var("t")
        if kind.endswith("ind"):
            carrier = InduceFrom(cH.inner, cG.inner, incl)
            if free:
                return OpFunctor(desc, cH, cG, carrier, lambda: (FreeOpT(cH, t), FreeOpT(cG, t)))

            def degrees():
                phi = _phi_symbolic(cG)
                ind = transitive_map(carrier, H.subgroup_class_labels)
                return PhiDegree(cH, {l: phi[ind[l]] for l in ind}), PhiDegree(cG, phi)
            return OpFunctor(desc, cH, cG, carrier, degrees)
        carrier = RestrictAlong(cG.inner, cH.inner, incl)
        if free:
            return OpFunctor(desc, cG, cH, carrier, lambda: (Power(FreeOpT(cG, t), index), FreeOpT(cH, t)))

        def degrees():
            phi_h = _phi_symbolic(cH)
            phi_g = {}
            for label in G.subgroup_class_labels:
                val = ONE
                for l2, k in restriction_multiplicities(carrier, label).items():
                    val = val * phi_h[l2] ** k
                phi_g[label] = val
            return PhiDegree(cG, phi_g), PhiDegree(cH, phi_h)
        return OpFunctor(desc, cG, cH, carrier, degrees)
    if kind in ("trivial-T", "orbits-F", "invariants-G"):
        (g,) = _need(params, "G", desc=desc)
        G = group(g)
        sets, cG = _gsets(trivial_group(), "C1"), _gsets(G, g)
        t = Scalar.var("t")
        const = lambda: PhiDegree(cG, {l: t for l in G.subgroup_class_labels})
        if kind == "trivial-T":
            carrier = RestrictAlong(sets.inner, cG.inner, (0,) * G.order)
            return OpFunctor(desc, sets, cG, carrier, lambda: (SetsOpT(sets, t), const()))
        qmap = (0,) * G.order
        cls = OrbitsOf if kind == "orbits-F" else InvariantsOf
        carrier = cls(cG.inner, sets.inner, range(G.order), qmap)
        return OpFunctor(desc, cG, sets, carrier, lambda: (const(), SetsOpT(sets, t)))
    if kind in ("quot-pullback", "quot-orbits", "quot-invariants"):
        g, n = _need(params, "G", "N", desc=desc)
        G = group(g)
        N = find_subgroup(G, n)
        if not G.is_normal(N):
            raise FunctorSpecError(f"{n} is not normal in {g}", n)
        Q, qmap = G.quotient(N)
        cG, cQ = _gsets(G, g), _gsets(Q, f"{g}/{n}")
        to_q = OrbitsOf(cG.inner, cQ.inner, N, qmap)

        def degrees():
            phi = _phi_symbolic(cQ)
            kappa = transitive_map(to_q, G.subgroup_class_labels)
            return PhiDegree(cG, {l: phi[kappa[l]] for l in kappa}), PhiDegree(cQ, phi)
        if kind == "quot-pullback":
            carrier = RestrictAlong(cQ.inner, cG.inner, qmap)
            return OpFunctor(desc, cQ, cG, carrier, lambda: tuple(reversed(degrees())))
        carrier = to_q if kind == "quot-orbits" else InvariantsOf(cG.inner, cQ.inner, N, qmap)
        return OpFunctor(desc, cG, cQ, carrier, degrees)
    if kind == "identity":
        (c,) = _need(params, "cat", desc=desc)
        cat = category(c)
        return IdentityFunctor(desc, cat, cat)
    raise FunctorSpecError(f"unknown functor kind {kind!r}", kind)


CATALOG = ("linearize", "wreath-ind", "wreath-res", "rel-wreath-ind", "rel-wreath-res",
           "iter-wreath-ind", "iter-wreath-res", "rep-ind", "rep-res", "slice-F", "slice-G",
           "trivial-T", "orbits-F", "invariants-G", "quot-pullback", "quot-orbits",
           "quot-invariants", "identity")


# preservation checks ------------------------------------------------------------

@dataclass
class CheckReport:
    check: str
    functor: str
    bound: int
    passed: bool = True
    checked: int = 0
    counterexample: Optional[dict] = None

    def fail(self, **witness):
        if self.passed:
            self.passed = False
            self.counterexample = witness

    @property
    def status(self) -> str:
        return f"verified-up-to-bound({self.bound})" if self.passed else "failed"

    def to_json(self) -> dict:
        return {"check": self.check, "functor": self.functor, "bound": self.bound,
                "passed": self.passed, "status": self.status, "checked": self.checked,
                "counterexample": self.counterexample}


def _objects(cat: RegularCategory, bound: int):
    return cat.objects(bound)


def square_preserved(F: Functor, f: Arrow, g: Arrow) -> Tuple[bool, dict]:
    """Does ``F`` send the pullback of ``f: x -> z <- y: g`` to a pullback?"""
    A, B = F.source, F.target
    pb = A.pullback(f, g)
    if pb is None:
        return True, {}
    Ff, Fg = F.arrow(f), F.arrow(g)
    witness = {"f": A.format_arrow(f), "g": A.format_arrow(g),
               "x": A.format_object(f.source), "y": A.format_object(g.source),
               "z": A.format_object(f.target), "pullback": A.format_object(pb.apex),
               "image_of_pullback": B.format_object(F.obj(pb.apex))}
    pb2 = B.pullback(Ff, Fg)
    if pb2 is None:
        witness["pullback_of_images"] = None
        return False, witness
    witness["pullback_of_images"] = B.format_object(pb2.apex)
    try:
        m = pb2.mediate(F.arrow(pb.left), F.arrow(pb.right))
    except CategoryError:
        return False, witness
    return B.is_iso(m), witness


def check_preserves_pullbacks(F: Functor, bound: int = 2) -> CheckReport:
    """Exhaustive over cospans of objects with size at most ``bound``; also
    checks that ``F(x * y) -> F x * F y`` is a monomorphism."""
    A, B = F.source, F.target
    rep = CheckReport("preserves_pullbacks", F.descriptor, bound)
    objs = _objects(A, bound)
    for z in objs:
        into = {x: A.morphisms(x, z) for x in objs}
        for x in objs:
            for f in into[x]:
                for y in objs:
                    for g in into[y]:
                        rep.checked += 1
                        ok, witness = square_preserved(F, f, g)
                        if not ok:
                            rep.fail(kind="square", **witness)
                            return rep
    for x in objs:
        for y in objs:
            P = A.product(x, y)
            Q = B.product(F.obj(x), F.obj(y))
            c = B.pair(Q, F.arrow(P.left), F.arrow(P.right))
            rep.checked += 1
            if not B.is_mono(c):
                rep.fail(kind="product_map_not_mono", x=A.format_object(x), y=A.format_object(y))
    return rep


def check_preserves_degree(F: Functor, delta: DegreeFn, delta2: DegreeFn, bound: int = 2) -> CheckReport:
    """``F`` keeps epimorphisms and ``delta2(F e) == delta(e)``."""
    A, B = F.source, F.target
    rep = CheckReport("preserves_degree", F.descriptor, bound)
    objs = _objects(A, bound)
    for x in objs:
        for y in objs:
            for e in A.morphisms(x, y):
                if not A.is_epi(e):
                    continue
                rep.checked += 1
                Fe = F.arrow(e)
                if not B.is_epi(Fe):
                    rep.fail(kind="epi_not_preserved", e=A.format_arrow(e))
                    continue
                a, b = degree_of(delta, e), degree_of(delta2, Fe)
                if a != b:
                    rep.fail(kind="degree_mismatch", e=A.format_arrow(e),
                             source=A.format_object(x), target=A.format_object(y),
                             delta=str(a), delta_of_image=str(b))
    return rep


def check_preserves_terminal(F: Functor) -> CheckReport:
    A, B = F.source, F.target
    rep = CheckReport("preserves_terminal", F.descriptor, 0, checked=1)
    img = F.obj(A.terminal())
    if not B.is_iso(B.to_terminal(img)):
        rep.fail(image_of_terminal=B.format_object(img), terminal=B.format_object(B.terminal()))
    return rep


# lifting ---------------------------------------------------------------------------

@dataclass
class LiftedFunctor:
    base: Functor
    delta: DegreeFn
    delta2: DegreeFn
    source_T: T0
    target_T: T0
    reports: Dict[str, CheckReport] = field(default_factory=dict)

    @property
    def monoidal(self) -> bool:
        return self.reports["preserves_terminal"].passed

    def flags(self) -> Dict[str, str]:
        return {k: r.status for k, r in self.reports.items()}

    def obj(self, x):
        return self.base.obj(x)

    def relation(self, r: Relation) -> Relation:
        A, B = self.base.source, self.base.target
        F = self.base
        P = A.product(r.source, r.target)
        Q = B.product(F.obj(r.source), F.obj(r.target))
        c = B.pair(Q, F.arrow(P.left), F.arrow(P.right))
        m = B.compose(c, F.arrow(r.mono))
        if not B.is_mono(m):
            raise CategoryError("image of a relation is not a relation")
        return Relation(F.obj(r.source), F.obj(r.target), B.canonical_subobject(m))

    def __call__(self, phi: FormalMorphism) -> FormalMorphism:
        return apply_lifted(self, phi)

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, "functor": self.base.descriptor,
                "degrees": [self.delta.describe(), self.delta2.describe()],
                "lifted": True, "monoidal": self.monoidal, "flags": self.flags(),
                "reports": [r.to_json() for r in self.reports.values()]}


def preservation_reports(F: Functor, delta: DegreeFn, delta2: DegreeFn, bound: int) -> Dict[str, CheckReport]:
    return {"preserves_degree": check_preserves_degree(F, delta, delta2, bound),
            "preserves_pullbacks": check_preserves_pullbacks(F, bound),
            "preserves_terminal": check_preserves_terminal(F)}


def lift_functor(F: Functor, delta: Optional[DegreeFn] = None, delta2: Optional[DegreeFn] = None,
                 bound: int = 2) -> LiftedFunctor:
    """Check the lifting hypotheses up to ``bound`` and build ``F-bar``;
    raises :class:`LiftRefused` carrying the failing reports."""
    if delta is None or delta2 is None:
        d1, d2 = F.default_degrees()
        delta, delta2 = delta or d1, delta2 or d2
    reports = preservation_reports(F, delta, delta2, bound)
    bad = [r for k, r in reports.items() if k != "preserves_terminal" and not r.passed]
    if bad:
        raise LiftRefused(f"cannot lift {F.descriptor}: " + ", ".join(r.check for r in bad), list(reports.values()))
    return LiftedFunctor(F, delta, delta2, T0(delta), T0(delta2), reports)


def apply_lifted(L: LiftedFunctor, phi: FormalMorphism) -> FormalMorphism:
    """``<r> -> <F r>`` termwise, coefficients unchanged."""
    out = {}
    for r, c in phi.items():
        rel = L.relation(r)
        out[rel] = out.get(rel, Scalar()) + c
    return FormalMorphism(L.obj(phi.source), L.obj(phi.target), out)


def check_lifted_functor(L: LiftedFunctor, bound: int = 1) -> CheckReport:
    """Functoriality, compatibility with duals and graphs, and (for monoidal
    lifts) with tensor products, over all basis pairs up to ``bound``."""
    A, B = L.base.source, L.base.target
    S, T = L.source_T, L.target_T
    rep = CheckReport("lifted_functor", L.base.descriptor, bound)
    objs = _objects(A, bound)
    basis = {(x, y): S.hom_basis(x, y) for x in objs for y in objs}
    for x in objs:
        for y in objs:
            for r in basis[(x, y)]:
                phi = S.basis_morphism(r)
                Fphi = L(phi)
                rep.checked += 1
                if L(S.dual(phi)) != T.dual(Fphi):
                    rep.fail(kind="dual", relation=S.format_relation(r))
                for z in objs:
                    for s in basis[(y, z)]:
                        psi = S.basis_morphism(s)
                        rep.checked += 1
                        if L(S.compose(psi, phi)) != T.compose(L(psi), Fphi):
                            rep.fail(kind="composition", first=S.format_relation(r),
                                     second=S.format_relation(s))
            for f in A.morphisms(x, y):
                rep.checked += 1
                if L(S.gamma(f)) != T.gamma(L.base.arrow(f)):
                    rep.fail(kind="graph", f=A.format_arrow(f))
    if L.monoidal:
        for x in objs:
            for y in objs:
                for r in basis[(x, x)][:3]:
                    for s in basis[(y, y)][:3]:
                        rep.checked += 1
                        lhs = L(S.tensor(S.basis_morphism(r), S.basis_morphism(s)))
                        rhs = T.tensor(L(S.basis_morphism(r)), L(S.basis_morphism(s)))
                        cx = _product_comparison(L.base, x, y)
                        if T.compose(T.gamma(cx), lhs) != T.compose(rhs, T.gamma(cx)):
                            rep.fail(kind="tensor", left=S.format_relation(r), right=S.format_relation(s))
    return rep


def _product_comparison(F: Functor, x, y) -> Arrow:
    A, B = F.source, F.target
    P = A.product(x, y)
    Q = B.product(F.obj(x), F.obj(y))
    return B.pair(Q, F.arrow(P.left), F.arrow(P.right))


# adjunctions -------------------------------------------------------------------------

@dataclass
class AdjunctionSpec:
    """``left: A' -> A`` left adjoint to ``right: A -> A'`` with unit
    ``eta_x': x' -> right(left(x'))`` and counit ``eps_x: left(right(x)) -> x``."""

    name: str
    left: Functor
    right: Functor
    unit: Callable[[Any], Arrow]
    counit: Callable[[Any], Arrow]
    degrees: Callable[[], Tuple[DegreeFn, DegreeFn]]  # (delta on A, delta' on A')

    @property
    def A(self):
        return self.right.source

    @property
    def A2(self):
        return self.left.source


def _slice_adjunction(inner_desc: str, base_text: str) -> AdjunctionSpec:
    desc = f"inner={inner_desc},base={base_text}"
    Fr = make_functor(f"slice-F:{desc}")
    Gl = make_functor(f"slice-G:{desc}")
    A = Fr.source

    def unit(o: SliceObj) -> Arrow:
        P = A.product(o.x, Fr.target.base)
        return Arrow(o, Fr.obj(o.x), A.pair(P, A.identity(o.x), o.p))

    def counit(x) -> Arrow:
        return A.product(x, Fr.target.base).left

    def degrees():
        d = standard_degree(A)
        return d, SliceInduced(Fr.target, d)
    return AdjunctionSpec(f"slice:{desc}", Gl, Fr, unit, counit, degrees)


def _quotient_adjunction(name: str, left: Functor, right: OpFunctor) -> AdjunctionSpec:
    """``q^* -| (-)/N`` style pairs: identity unit, counit the orbit map."""
    A = right.source
    Bc = right.target

    def unit(x) -> Arrow:
        return Bc.identity(x)

    def counit(x) -> Arrow:
        orbits = right.carrier
        idx, _ = orbits._orbit_index(x)
        up = left.obj(right.obj(x))
        return op(Arrow(x, up, tuple(idx[i] for i in range(x.n))))

    def degrees():
        d_src, d_tgt = right.default_degrees()
        return d_src, d_tgt
    return AdjunctionSpec(name, left, right, unit, counit, degrees)


def _identity_adjunction(cat_desc: str) -> AdjunctionSpec:
    I = make_functor(f"identity:cat={cat_desc}")
    cat = I.source
    return AdjunctionSpec(f"identity:cat={cat_desc}", I, I, cat.identity, cat.identity,
                          lambda: (standard_degree(cat), standard_degree(cat)))


def make_adjunction(desc: str) -> AdjunctionSpec:
    """``slice:inner=vect:q=2,base=1``, ``trivial-orbits:G=C2``,
    ``quot:G=C4,N=C2`` or ``identity:cat=sets-op``."""
    desc = desc.strip()
    kind, _, body = desc.partition(":")
    if kind == "slice":
        m = re.fullmatch(r"inner=(.+),base=([^,]+)", body)
        if not m:
            raise FunctorSpecError(f"expected inner=<category>,base=<object> in {desc!r}", body)
        return _slice_adjunction(m.group(1), m.group(2))
    params = _kv(body) if body else {}
    if kind == "trivial-orbits":
        (g,) = _need(params, "G", desc=desc)
        return _quotient_adjunction(desc, make_functor(f"trivial-T:G={g}"), make_functor(f"orbits-F:G={g}"))
    if kind == "quot":
        g, n = _need(params, "G", "N", desc=desc)
        return _quotient_adjunction(desc, make_functor(f"quot-pullback:G={g},N={n}"),
                                    make_functor(f"quot-orbits:G={g},N={n}"))
    if kind == "identity":
        (c,) = _need(params, "cat", desc=desc)
        return _identity_adjunction(c)
    raise FunctorSpecError(f"unknown adjunction {kind!r}", kind)


def check_triangles(adj: AdjunctionSpec, bound: int = 2) -> CheckReport:
    """Base triangle identities of the adjunction."""
    A, A2 = adj.A, adj.A2
    G, F = adj.left, adj.right
    rep = CheckReport("triangles", adj.name, bound)
    for x in _objects(A, bound):
        rep.checked += 1
        lhs = A2.compose(F.arrow(adj.counit(x)), adj.unit(F.obj(x)))
        if lhs != A2.identity(F.obj(x)):
            rep.fail(kind="F-triangle", x=A.format_object(x))
    for x2 in _objects(A2, bound):
        rep.checked += 1
        lhs = A.compose(adj.counit(G.obj(x2)), G.arrow(adj.unit(x2)))
        if lhs != A.identity(G.obj(x2)):
            rep.fail(kind="G-triangle", x=A2.format_object(x2))
    return rep


def _is_cartesian(cat: RegularCategory, top: Arrow, left: Arrow, right: Arrow, bottom: Arrow) -> bool:
    """Square ``right o top == bottom o left`` with corner ``top.source``."""
    pb = cat.pullback(bottom, right)
    if pb is None:
        return False
    try:
        return cat.is_iso(pb.mediate(left, top))
    except CategoryError:
        return False


def eta_square_cartesian(adj: AdjunctionSpec, f2: Arrow) -> bool:
    A2 = adj.A2
    FG = lambda a: adj.right.arrow(adj.left.arrow(a))
    return _is_cartesian(A2, adj.unit(f2.source), f2, FG(f2), adj.unit(f2.target))


def eps_square_cartesian(adj: AdjunctionSpec, f: Arrow) -> bool:
    A = adj.A
    GF = adj.left.arrow(adj.right.arrow(f))
    return _is_cartesian(A, adj.counit(f.source), GF, f, adj.counit(f.target))


def check_adjunction_squares(adj: AdjunctionSpec, bound: int = 2) -> Dict[str, CheckReport]:
    """Cartesianness of the unit and counit naturality squares."""
    A, A2 = adj.A, adj.A2
    eta = CheckReport("eta_squares", adj.name, bound)
    eps = CheckReport("eps_squares", adj.name, bound)
    objs2 = _objects(A2, bound)
    for x in objs2:
        for y in objs2:
            for f2 in A2.morphisms(x, y):
                eta.checked += 1
                if not eta_square_cartesian(adj, f2):
                    eta.fail(f=A2.format_arrow(f2), source=A2.format_object(x), target=A2.format_object(y))
    objs = _objects(A, bound)
    for x in objs:
        for y in objs:
            for f in A.morphisms(x, y):
                eps.checked += 1
                if not eps_square_cartesian(adj, f):
                    eps.fail(f=A.format_arrow(f), source=A.format_object(x), target=A.format_object(y))
    return {"triangles": check_triangles(adj, bound), "eta_squares": eta, "eps_squares": eps}


@dataclass
class AdjunctionReport:
    name: str
    bound: int
    reports: Dict[str, CheckReport]
    refused: Optional[str] = None
    # not a requirement of an adjunction, reported alongside
    info: Dict[str, CheckReport] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.refused is None and all(r.passed for r in self.reports.values())

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, "adjunction": self.name, "bound": self.bound,
                "passed": self.passed, "refused": self.refused,
                "reports": {k: r.to_json() for k, r in self.reports.items()},
                "info": {k: r.to_json() for k, r in self.info.items()}}


def verify_lifted_adjunction(adj: AdjunctionSpec, bound: int = 2,
                             degrees: Optional[Tuple[DegreeFn, DegreeFn]] = None) -> AdjunctionReport:
    """Lift both functors and check, in T^0, the four naturality squares of
    ``Gamma(eta)`` and ``Gamma(eps)`` and the two snake identities.

    The unit-side checks are carried out even when the counit squares fail,
    so a report can show a natural unit isomorphism next to a failed counit."""
    delta, delta2 = degrees or adj.degrees()
    A, A2 = adj.A, adj.A2
    squares = check_adjunction_squares(adj, bound)
    out = AdjunctionReport(adj.name, bound, dict(squares))
    try:
        Fb = lift_functor(adj.right, delta, delta2, bound)
        Gb = lift_functor(adj.left, delta2, delta, bound)
    except LiftRefused as exc:
        out.refused = str(exc)
        for r in exc.reports:
            out.reports[f"lift:{r.check}"] = r
        return out
    T, T2 = Fb.source_T, Gb.source_T
    unit_nat = CheckReport("unit_naturality", adj.name, bound)
    unit_iso = CheckReport("unit_iso", adj.name, bound)
    counit_nat = CheckReport("counit_naturality", adj.name, bound)
    snakes = CheckReport("snakes", adj.name, bound)
    FG = lambda phi: Fb(Gb(phi))
    GF = lambda phi: Gb(Fb(phi))
    objs2, objs = _objects(A2, bound), _objects(A, bound)
    for x in objs2:
        unit_iso.checked += 1
        if not A2.is_iso(adj.unit(x)):
            unit_iso.fail(x=A2.format_object(x))
        for y in objs2:
            for f2 in A2.morphisms(x, y):
                g = T2.gamma(f2)
                ex, ey = T2.gamma(adj.unit(x)), T2.gamma(adj.unit(y))
                unit_nat.checked += 2
                if T2.compose(FG(g), ex) != T2.compose(ey, g):
                    unit_nat.fail(kind="graph", f=A2.format_arrow(f2))
                if T2.compose(FG(T2.dual(g)), ey) != T2.compose(ex, T2.dual(g)):
                    unit_nat.fail(kind="dual", f=A2.format_arrow(f2))
    for x in objs:
        for y in objs:
            for f in A.morphisms(x, y):
                g = T.gamma(f)
                ex, ey = T.gamma(adj.counit(x)), T.gamma(adj.counit(y))
                counit_nat.checked += 2
                if T.compose(g, ex) != T.compose(ey, GF(g)):
                    counit_nat.fail(kind="graph", f=A.format_arrow(f))
                if T.compose(T.dual(g), ey) != T.compose(ex, GF(T.dual(g))):
                    counit_nat.fail(kind="dual", f=A.format_arrow(f))
    for x in objs:
        snakes.checked += 1
        lhs = T2.compose(Fb(T.gamma(adj.counit(x))), T2.gamma(adj.unit(adj.right.obj(x))))
        if lhs != T2.identity(adj.right.obj(x)):
            snakes.fail(kind="F", x=A.format_object(x))
    for x2 in objs2:
        snakes.checked += 1
        lhs = T.compose(T.gamma(adj.counit(adj.left.obj(x2))), Gb(T2.gamma(adj.unit(x2))))
        if lhs != T.identity(adj.left.obj(x2)):
            snakes.fail(kind="G", x=A2.format_object(x2))
    out.reports.update({"unit_naturality": unit_nat, "counit_naturality": counit_nat, "snakes": snakes})
    out.info["unit_iso"] = unit_iso
    return out
