"""Finite G-sets (and finite sets as the trivial-group case).

An object is a :class:`GSet`: ``n`` points ``0..n-1`` and, for every group
element (by canonical index), the permutation it induces.  Arrows carry a
function table ``data[i] = image of point i``.

Besides the limits used directly, this category exposes the colimit side
(initial object, coproducts, pushouts, canonical quotients) consumed by
:class:`~knopkit.categories.opposite.Opposite`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..groups import PermGroup, group
from .base import Arrow, CategoryError, Product, Pullback, RegularCategory


@dataclass(frozen=True, order=True)
class GSet:
    n: int
    action: Tuple[Tuple[int, ...], ...]

    def __str__(self):
        return f"GSet({self.n})"


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def restricted_growth(labels: Sequence) -> Tuple[int, ...]:
    """Relabel blocks by order of first appearance."""
    seen: Dict = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


def set_partitions(n: int):
    """Restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, mx):
        if i == n:
            yield tuple(rgs)
            return
        for v in range(mx + 2):
            rgs[i] = v
            yield from rec(i + 1, max(mx, v))
    rgs[0] = 0
    yield from rec(1, 0)


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


class GSetCategory(RegularCategory):
    """``G-Sets`` (``free=False``) or ``G-Sets_free`` (``free=True``).

    With the trivial group this is ``Sets``."""

    object_bound = 8

    def __init__(self, G: Optional[PermGroup] = None, free: bool = False, gname: str = ""):
        self.G = G if G is not None else group("C1")
        self.free = free
        self.gname = gname or str(self.G)
        if self.G.order == 1 and not free:
            self.descriptor = "sets"
        else:
            self.descriptor = f"gsets{'-free' if free else ''}:G={self.gname}"

    @property
    def is_plain_sets(self) -> bool:
        return self.G.order == 1

    # objects -----------------------------------------------------------

    def trivial_action(self, n: int) -> Tuple[Tuple[int, ...], ...]:
        ident = tuple(range(n))
        return tuple(ident for _ in range(self.G.order))

    def set(self, n: int) -> GSet:
        """``n`` points with trivial action."""
        return GSet(n, self.trivial_action(n))

    def from_generators(self, n: int, gen_images: Sequence[Sequence[int]]) -> GSet:
        """Build the action from the images of the group generators."""
        G = self.G
        if len(gen_images) != len(G.gen_indices):
            raise CategoryError("one permutation per generator required")
        gens = [tuple(p) for p in gen_images]
        action = []
        for w in G.words:
            p = tuple(range(n))
            for gi in reversed(w):
                p = tuple(gens[gi][i] for i in p)
            action.append(p)
        x = GSet(n, tuple(action))
        self.check_object(x)
        return x

    def coset_space(self, H) -> GSet:
        """The transitive G-set ``G/H`` on left cosets in canonical order."""
        G = self.G
        cosets = G.cosets(H)
        where = {g: i for i, c in enumerate(cosets) for g in c}
        action = tuple(tuple(where[G.mul[g][min(c)]] for c in cosets) for g in range(G.order))
        return GSet(len(cosets), action)

    def orbit_type(self, label: str) -> GSet:
        labels = self.G.subgroup_class_labels
        aliases = {"fixed": "triv", "point": "triv", "regular": "free"}
        label = aliases.get(label, label)
        if label not in labels:
            raise CategoryError(f"unknown orbit type {label!r}; known: {list(labels)}")
        return self.coset_space(self.G.subgroup_classes[labels.index(label)][0])

    def sum_of(self, parts: Sequence[GSet]) -> GSet:
        out = GSet(0, self.trivial_action(0))
        for p in parts:
            out = self.coproduct(out, p).apex
        return out

    def check_object(self, x) -> None:
        if not isinstance(x, GSet):
            raise CategoryError(f"{x!r} is not a G-set")
        G = self.G
        if len(x.action) != G.order:
            raise CategoryError("action table must list every group element")
        for p in x.action:
            if sorted(p) != list(range(x.n)):
                raise CategoryError("action entries must be permutations")
        if x.action[G.identity] != tuple(range(x.n)):
            raise CategoryError("identity must act trivially")
        for a in range(G.order):
            for b in G.gen_indices:
                ab = G.mul[a][b]
                if x.action[ab] != tuple(x.action[a][x.action[b][i]] for i in range(x.n)):
                    raise CategoryError("action table is not a group action")
        if self.free and not self.is_free(x):
            raise CategoryError("object is not a free G-set")

    def is_free(self, x: GSet) -> bool:
        return all(x.action[g][i] != i for i in range(x.n)
                   for g in range(self.G.order) if g != self.G.identity)

    def object_size(self, x: GSet) -> int:
        return x.n

    def orbits(self, x: GSet) -> List[Tuple[int, ...]]:
        seen, out = set(), []
        for i in range(x.n):
            if i in seen:
                continue
            orb = tuple(sorted({x.action[g][i] for g in range(self.G.order)}))
            seen.update(orb)
            out.append(orb)
        return out

    def stabilizer(self, x: GSet, i: int):
        return frozenset(g for g in range(self.G.order) if x.action[g][i] == i)

    def orbit_label(self, x: GSet, orbit: Sequence[int]) -> str:
        cls = self.G.class_of_subgroup(self.stabilizer(x, orbit[0]))
        return self.G.subgroup_class_labels[cls]

    def format_object(self, x: GSet) -> str:
        if self.is_plain_sets:
            return str(x.n)
        if x.n == 0:
            return "0"
        return "+".join(self.orbit_label(x, o) for o in self.orbits(x))

    # arrows --------------------------------------------------------------

    def arrow(self, x: GSet, y: GSet, table: Sequence[int]) -> Arrow:
        f = Arrow(x, y, tuple(table))
        self.check_arrow(f)
        return f

    def check_arrow(self, f: Arrow) -> None:
        x, y, t = f.source, f.target, f.data
        if len(t) != x.n or any(not (0 <= v < y.n) for v in t):
            raise CategoryError("function table is not total")
        for g in self.G.gen_indices:
            if any(t[x.action[g][i]] != y.action[g][t[i]] for i in range(x.n)):
                raise CategoryError("map is not equivariant")

    def identity(self, x: GSet) -> Arrow:
        return Arrow(x, x, tuple(range(x.n)))

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        self._check_composable(f, g)
        return Arrow(g.source, f.target, tuple(f.data[i] for i in g.data))

    def is_epi(self, f: Arrow) -> bool:
        return len(set(f.data)) == f.target.n

    def is_mono(self, f: Arrow) -> bool:
        return len(set(f.data)) == len(f.data)

    def inverse(self, f: Arrow) -> Arrow:
        if not self.is_iso(f):
            raise CategoryError("not an isomorphism")
        inv = [0] * f.target.n
        for i, j in enumerate(f.data):
            inv[j] = i
        return Arrow(f.target, f.source, tuple(inv))

    # limits --------------------------------------------------------------

    def terminal(self) -> GSet:
        return GSet(1, self.trivial_action(1))

    def to_terminal(self, x: GSet) -> Arrow:
        return Arrow(x, self.terminal(), (0,) * x.n)

    def initial(self) -> GSet:
        return GSet(0, self.trivial_action(0))

    def from_initial(self, x: GSet) -> Arrow:
        return Arrow(self.initial(), x, ())

    @lru_cache(maxsize=4096)
    def product(self, x: GSet, y: GSet) -> Product:
        n, m = x.n, y.n
        action = tuple(tuple(x.action[g][i] * m + y.action[g][j] for i in range(n) for j in range(m))
                       for g in range(self.G.order))
        apex = GSet(n * m, action)
        left = Arrow(apex, x, tuple(i for i in range(n) for _ in range(m)))
        right = Arrow(apex, y, tuple(j for _ in range(n) for j in range(m)))
        return Product(apex, left, right)

    def pair(self, prod: Product, a: Arrow, b: Arrow) -> Arrow:
        m = prod.right.target.n
        return Arrow(a.source, prod.apex, tuple(i * m + j for i, j in zip(a.data, b.data)))

    def pullback(self, f: Arrow, g: Arrow) -> Pullback:
        if f.target != g.target:
            raise CategoryError("pullback of a non-cospan")
        x, y = f.source, g.source
        pairs = [(i, j) for i in range(x.n) for j in range(y.n) if f.data[i] == g.data[j]]
        index = {p: k for k, p in enumerate(pairs)}
        action = tuple(tuple(index[(x.action[h][i], y.action[h][j])] for i, j in pairs)
                       for h in range(self.G.order))
        apex = GSet(len(pairs), action)
        left = Arrow(apex, x, tuple(i for i, _ in pairs))
        right = Arrow(apex, y, tuple(j for _, j in pairs))

        def mediate(a: Arrow, b: Arrow) -> Arrow:
            try:
                return Arrow(a.source, apex, tuple(index[(i, j)] for i, j in zip(a.data, b.data)))
            except KeyError:
                raise CategoryError("not a cone over the cospan") from None
        return Pullback(apex, left, right, mediate)

    def image(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        pts = sorted(set(f.data))
        where = {v: k for k, v in enumerate(pts)}
        y = f.target
        sub = GSet(len(pts), tuple(tuple(where[y.action[g][v]] for v in pts)
                                   for g in range(self.G.order)))
        e = Arrow(f.source, sub, tuple(where[v] for v in f.data))
        m = Arrow(sub, y, tuple(pts))
        return e, m

    def coimage(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        """``(e, m)`` with ``e`` the canonical quotient (restricted growth)."""
        rgs = restricted_growth(f.data)
        k = max(rgs) + 1 if rgs else 0
        rep = [0] * k
        for i, b in enumerate(rgs):
            rep[b] = f.data[i]
        x = f.source
        firsts = {}
        for i, b in enumerate(rgs):
            firsts.setdefault(b, i)
        q = GSet(k, tuple(tuple(rgs[x.action[g][firsts[b]]] for b in range(k))
                          for g in range(self.G.order)))
        e = Arrow(x, q, rgs)
        m = Arrow(q, f.target, tuple(rep))
        return e, m

    # colimits (for the opposite category) --------------------------------

    @lru_cache(maxsize=4096)
    def coproduct(self, x: GSet, y: GSet) -> Product:
        n = x.n
        action = tuple(x.action[g] + tuple(n + v for v in y.action[g]) for g in range(self.G.order))
        apex = GSet(n + y.n, action)
        return Product(apex, Arrow(x, apex, tuple(range(n))),
                       Arrow(y, apex, tuple(range(n, n + y.n))))

    def copair(self, cop: Product, a: Arrow, b: Arrow) -> Arrow:
        return Arrow(cop.apex, a.target, a.data + b.data)

    def pushout(self, f: Arrow, g: Arrow) -> Optional[Pullback]:
        """Pushout of ``x <-f- z -g-> y``; legs are ``x -> P`` and ``y -> P``.

        In the free variant ``None`` is returned when the quotient of
        ``x + y`` acquires fixed points: no free cocone exists then."""
        if f.source != g.source:
            raise CategoryError("pushout of a non-span")
        x, y = f.target, g.target
        n = x.n
        uf = _UnionFind(n + y.n)
        for a, b in zip(f.data, g.data):
            uf.union(a, n + b)
        roots = [uf.find(i) for i in range(n + y.n)]
        rgs = restricted_growth(roots)
        k = max(rgs) + 1 if rgs else 0
        glued = self.coproduct(x, y).apex
        firsts = {}
        for i, b in enumerate(rgs):
            firsts.setdefault(b, i)
        apex = GSet(k, tuple(tuple(rgs[glued.action[h][firsts[b]]] for b in range(k))
                             for h in range(self.G.order)))
        if self.free and not self.is_free(apex):
            return None
        left = Arrow(x, apex, rgs[:n])
        right = Arrow(y, apex, rgs[n:])

        def mediate(a: Arrow, b: Arrow) -> Arrow:
            w = a.target
            table = [None] * k
            for i, blk in enumerate(rgs):
                v = a.data[i] if i < n else b.data[i - n]
                if table[blk] is None:
                    table[blk] = v
                elif table[blk] != v:
                    raise CategoryError("not a cocone over the span")
            return Arrow(apex, w, tuple(table))
        return Pullback(apex, left, right, mediate)

    # enumeration -----------------------------------------------------------

    def subobjects(self, x: GSet, bound: Optional[int] = None) -> List[Arrow]:
        self._check_bound(x.n, bound)
        orbs = self.orbits(x)
        out = []
        for r in range(len(orbs) + 1):
            for combo in itertools.combinations(orbs, r):
                pts = tuple(sorted(p for o in combo for p in o))
                out.append(Arrow(self.sub_gset(x, pts), x, pts))
        out.sort(key=lambda m: (len(m.data), m.data))
        return out

    def sub_gset(self, x: GSet, pts: Sequence[int]) -> GSet:
        """The invariant subset ``pts`` (sorted) as a G-set of its own."""
        pts = tuple(sorted(pts))
        where = {v: k for k, v in enumerate(pts)}
        return GSet(len(pts), tuple(tuple(where[x.action[g][v]] for v in pts)
                                    for g in range(self.G.order)))

    def quotients(self, x: GSet, bound: Optional[int] = None) -> List[Arrow]:
        """Canonical surjections out of ``x`` (G-invariant partitions)."""
        self._check_bound(x.n, bound)
        out = []
        G = self.G
        for rgs in self._invariant_partitions(x):
            e, _ = self.coimage(Arrow(x, GSet(max(rgs) + 1 if rgs else 0, ()), rgs))
            if self.free and not self.is_free(e.target):
                continue
            out.append(e)
        return out

    def _invariant_partitions(self, x: GSet):
        gens = [x.action[g] for g in self.G.gen_indices]
        n = x.n
        if self.G.order == 1:
            yield from set_partitions(n)
            return
        for rgs in set_partitions(n):
            ok = True
            for p in gens:
                # block of p(i) must be determined by block of i
                img: Dict[int, int] = {}
                for i in range(n):
                    b, c = rgs[i], rgs[p[i]]
                    if img.setdefault(b, c) != c:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield rgs

    def canonical_quotient(self, e: Arrow) -> Arrow:
        return self.coimage(e)[0]

    def morphisms(self, x: GSet, y: GSet, bound: Optional[int] = None) -> List[Arrow]:
        self._check_bound(max(x.n, y.n), bound)
        G = self.G
        orbs = self.orbits(x)
        choices = []
        for o in orbs:
            r = o[0]
            stab = self.stabilizer(x, r)
            choices.append([v for v in range(y.n) if all(y.action[g][v] == v for g in stab)])
        out = []
        for pick in itertools.product(*choices):
            table = [None] * x.n
            for o, v in zip(orbs, pick):
                r = o[0]
                for g in range(G.order):
                    table[x.action[g][r]] = y.action[g][v]
            out.append(Arrow(x, y, tuple(table)))
        out.sort(key=lambda f: f.data)
        return out

    def objects(self, bound: int) -> List[GSet]:
        """All G-sets with at most ``bound`` points up to isomorphism, as sums
        of canonical coset spaces."""
        types = [self.coset_space(cls[0]) for cls in self.G.subgroup_classes]
        if self.free:
            types = types[:1]
        out = [self.initial()]

        def rec(start, current, size):
            for i in range(start, len(types)):
                t = types[i]
                if size + t.n <= bound:
                    nxt = current + [t]
                    out.append(self.sum_of(nxt))
                    rec(i, nxt, size + t.n)
        rec(0, [], 0)
        out.sort(key=lambda o: (o.n, o))
        return out

    def format_arrow(self, f: Arrow) -> str:
        return "[" + ",".join(str(v + 1) for v in f.data) + "]"
