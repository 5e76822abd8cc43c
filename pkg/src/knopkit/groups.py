"""Small finite permutation groups: element closure, subgroups, conjugacy.

Permutations are tuples ``p`` on ``range(degree)`` with ``p[i]`` the image of
``i``.  Elements are enumerated once by closure under the generators and
stored in sorted order, so element indices are canonical.
"""

from __future__ import annotations

import itertools
import os
import re
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple

Perm = Tuple[int, ...]

DEFAULT_GROUP_BOUND = 12


class GroupError(ValueError):
    pass


def compose_perm(p: Perm, q: Perm) -> Perm:
    """``p o q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def invert_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_sign(p: Perm) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def parse_cycles(text: str, degree: int = 0) -> Perm:
    """Parse cycle notation with 1-based points, e.g. ``"(1 2)(3 4 5)"``."""
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles and text.strip() not in ("", "()"):
        raise GroupError(f"bad cycle notation {text!r}")
    pts = [[int(v) - 1 for v in re.split(r"[\s,]+", c.strip()) if v] for c in cycles]
    n = max([degree] + [max(c) + 1 for c in pts if c])
    p = list(range(n))
    for c in pts:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


class PermGroup:
    """A permutation group given by generators."""

    def __init__(self, generators: Sequence[Perm], name: str = "", bound: int = None):
        gens = [tuple(g) for g in generators]
        degree = max([len(g) for g in gens] + [1])
        gens = [g + tuple(range(len(g), degree)) for g in gens]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise GroupError(f"{g} is not a permutation")
        self.degree = degree
        self.generators: Tuple[Perm, ...] = tuple(gens)
        self.name = name
        bound = bound if bound is not None else int(os.environ.get("KNOPKIT_GROUP_BOUND", DEFAULT_GROUP_BOUND))
        e = tuple(range(degree))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = compose_perm(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > bound:
                            raise GroupError(f"group order exceeds bound {bound}")
            frontier = nxt
        self.elements: Tuple[Perm, ...] = tuple(sorted(seen))
        self.index: Dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        self.identity = self.index[e]
        n = len(self.elements)
        self.mul = tuple(tuple(self.index[compose_perm(a, b)] for b in self.elements)
                         for a in self.elements)
        self.inv = tuple(self.index[invert_perm(a)] for a in self.elements)
        self.gen_indices = tuple(self.index[g] for g in gens)
        self._n = n

    def __len__(self):
        return self._n

    @property
    def order(self) -> int:
        return self._n

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"PermGroup({self.name or self.generators})"

    def __str__(self):
        return self.name or "<" + ",".join(map(str, self.generators)) + ">"

    # words: each element as a product of generator indices, for building
    # actions from generator images
    @cached_property
    def words(self) -> Tuple[Tuple[int, ...], ...]:
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, g in enumerate(self.gen_indices):
                    y = self.mul[g][x]
                    if y not in words:
                        words[y] = (gi,) + words[x]
                        nxt.append(y)
            frontier = nxt
        return tuple(words[i] for i in range(self._n))

    def sign(self, i: int) -> int:
        return perm_sign(self.elements[i])

    # subgroups -----------------------------------------------------------

    def generated(self, elems) -> FrozenSet[int]:
        sub = {self.identity}
        frontier = list(sub)
        gens = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[g][x]
                    if y not in sub:
                        sub.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(sub)

    @cached_property
    def subgroups(self) -> Tuple[FrozenSet[int], ...]:
        found = {frozenset([self.identity])}
        frontier = list(found)
        while frontier:
            nxt = []
            for H in frontier:
                for g in range(self._n):
                    if g not in H:
                        K = self.generated(set(H) | {g})
                        if K not in found:
                            found.add(K)
                            nxt.append(K)
            frontier = nxt
        return tuple(sorted(found, key=lambda H: (len(H), sorted(H))))

    def conjugate(self, H, g: int) -> FrozenSet[int]:
        gi = self.inv[g]
        return frozenset(self.mul[self.mul[g][h]][gi] for h in H)

    def normalizer(self, H) -> FrozenSet[int]:
        H = frozenset(H)
        return frozenset(g for g in range(self._n) if self.conjugate(H, g) == H)

    def is_normal(self, H) -> bool:
        return len(self.normalizer(H)) == self._n

    @cached_property
    def subgroup_classes(self) -> Tuple[Tuple[FrozenSet[int], ...], ...]:
        """Conjugacy classes of subgroups, each sorted, classes ordered by
        (order, canonical representative)."""
        seen = set()
        classes = []
        for H in self.subgroups:
            if H in seen:
                continue
            cls = sorted({self.conjugate(H, g) for g in range(self._n)}, key=sorted)
            seen.update(cls)
            classes.append(tuple(cls))
        classes.sort(key=lambda c: (len(c[0]), sorted(c[0])))
        return tuple(classes)

    def class_of_subgroup(self, H) -> int:
        H = frozenset(H)
        for i, cls in enumerate(self.subgroup_classes):
            if H in cls:
                return i
        raise GroupError("not a subgroup")

    @cached_property
    def subgroup_class_labels(self) -> Tuple[str, ...]:
        """``free`` for the trivial subgroup, ``triv`` for the whole group,
        ``sub<order><letter>`` otherwise."""
        labels = []
        by_order: Dict[int, int] = {}
        counts: Dict[int, int] = {}
        for cls in self.subgroup_classes:
            counts[len(cls[0])] = counts.get(len(cls[0]), 0) + 1
        for cls in self.subgroup_classes:
            k = len(cls[0])
            if k == 1:
                labels.append("free")
            elif k == self._n:
                labels.append("triv")
            else:
                idx = by_order.get(k, 0)
                by_order[k] = idx + 1
                suffix = "abcdefghijklmnopqrstuvwxyz"[idx] if counts[k] > 1 else ""
                labels.append(f"sub{k}{suffix}")
        if self._n == 1:
            labels = ["free"]
        return tuple(labels)

    def cosets(self, H) -> List[FrozenSet[int]]:
        """Left cosets gH in canonical order (by minimum element)."""
        H = frozenset(H)
        seen, out = set(), []
        for g in range(self._n):
            if g in seen:
                continue
            c = frozenset(self.mul[g][h] for h in H)
            seen |= c
            out.append(c)
        return out

    def quotient(self, N) -> Tuple["PermGroup", Tuple[int, ...]]:
        """``G/N`` as a permutation group on the cosets of ``N`` together with
        the quotient map (element index of G -> element index of G/N)."""
        N = frozenset(N)
        if not self.is_normal(N):
            raise GroupError("subgroup is not normal")
        cosets = self.cosets(N)
        where = {g: i for i, c in enumerate(cosets) for g in c}
        gens = [tuple(where[self.mul[g][min(c)]] for c in cosets) for g in self.gen_indices]
        Q = PermGroup(gens or [tuple(range(len(cosets)))], name=f"{self}/N")
        qmap = tuple(Q.index[tuple(where[self.mul[g][min(c)]] for c in cosets)]
                     for g in range(self._n))
        return Q, qmap


def _cyclic(n: int) -> Perm:
    return tuple(list(range(1, n)) + [0])


PRESETS = {
    "C1": lambda: PermGroup([(0,)], "C1"),
    "C2": lambda: PermGroup([(1, 0)], "C2"),
    "C3": lambda: PermGroup([_cyclic(3)], "C3"),
    "C4": lambda: PermGroup([_cyclic(4)], "C4"),
    "C6": lambda: PermGroup([_cyclic(6)], "C6"),
    "V4": lambda: PermGroup([(1, 0, 3, 2), (2, 3, 0, 1)], "V4"),
    "S3": lambda: PermGroup([(1, 0, 2), (1, 2, 0)], "S3"),
}


@lru_cache(maxsize=None)
def group(spec: str) -> PermGroup:
    """Resolve ``C2``/``S3``/... or ``perm:[(1 2),(1 2 3)]``."""
    spec = spec.strip()
    if spec in PRESETS:
        return PRESETS[spec]()
    if spec.startswith("perm:"):
        body = spec[5:].strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        gens = [parse_cycles(m) for m in re.findall(r"\([^()]*\)(?:\([^()]*\))*", body)]
        if not gens:
            raise GroupError(f"no generators in {spec!r}")
        degree = max(len(g) for g in gens)
        gens = [g + tuple(range(len(g), degree)) for g in gens]
        return PermGroup(gens, name=spec)
    raise GroupError(f"unknown group {spec!r}; presets are {sorted(PRESETS)}")


def find_subgroup(G: PermGroup, spec: str) -> FrozenSet[int]:
    """Locate a subgroup of ``G`` by preset name (``C2``, ``C3``, ...), by
    class label, or by ``perm:`` generators living inside ``G``.  For preset
    names the first matching subgroup (canonical order) is returned."""
    if spec in G.subgroup_class_labels:
        return G.subgroup_classes[G.subgroup_class_labels.index(spec)][0]
    if spec.startswith("perm:"):
        H = group(spec)
        idx = []
        for p in H.generators:
            p = p + tuple(range(len(p), G.degree))
            if p not in G.index:
                raise GroupError(f"{p} is not in {G}")
            idx.append(G.index[p])
        return G.generated(idx)
    if spec in PRESETS:
        target = PRESETS[spec]()
        for H in G.subgroups:
            if len(H) == target.order and _isomorphic_small(G, H, target):
                return H
        raise GroupError(f"{G} has no subgroup isomorphic to {spec}")
    raise GroupError(f"cannot resolve subgroup {spec!r} of {G}")


def _isomorphic_small(G: PermGroup, H, target: PermGroup) -> bool:
    # for the preset sizes, order statistics determine the isomorphism type
    def stats(mul, elems, ident):
        out = []
        for g in elems:
            k, x = 1, g
            while x != ident:
                x = mul[g][x]
                k += 1
            out.append(k)
        return sorted(out)
    return stats(G.mul, sorted(H), G.identity) == stats(target.mul, range(target.order), target.identity)


def all_permutations(n: int):
    return itertools.permutations(range(n))
