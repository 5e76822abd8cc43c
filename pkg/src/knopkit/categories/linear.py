"""Finite-dimensional F_q-linear representations of a finite group.

``Vect_q`` is the case without a group.  Objects are :class:`Module` values
(dimension plus one matrix per group element); arrows carry ``m x n``
matrices for maps ``F_q^n -> F_q^m``.  Subobjects are canonical column bases
(their transposes are in reduced row echelon form).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .. import fields as la
from ..fields import GF, Mat, field
from ..groups import PermGroup
from .base import Arrow, CategoryError, Product, Pullback, RegularCategory


@dataclass(frozen=True)
class Module:
    dim: int
    mats: Tuple[Mat, ...] = ()

    def __str__(self):
        return f"F^{self.dim}"


class LinearCategory(RegularCategory):
    object_bound = 4

    def __init__(self, q: int, G: Optional[PermGroup] = None, gname: str = ""):
        self.F: GF = field(q)
        self.q = q
        self.G = G
        if G is None:
            self.descriptor = f"vect:q={q}"
        else:
            if gcd(q, G.order) != 1:
                raise CategoryError(
                    f"modular case not supported: gcd(q={q}, |G|={G.order}) != 1")
            self.gname = gname or str(G)
            self.descriptor = f"rep:G={self.gname},q={q}"

    # objects -------------------------------------------------------------

    def space(self, n: int) -> Module:
        """``F_q^n`` (trivial action in the group case)."""
        if self.G is None:
            return Module(n)
        ident = la.identity(n)
        return Module(n, tuple(ident for _ in range(self.G.order)))

    def module(self, gen_mats: Sequence[Sequence[Sequence[int]]]) -> Module:
        """Build a representation from one matrix per group generator."""
        G = self.G
        if G is None:
            raise CategoryError("vector spaces carry no action")
        mats = [Mat(m) for m in gen_mats]
        n = mats[0].nrows if mats else 0
        out = []
        for w in G.words:
            acc = la.identity(n)
            for gi in w:
                acc = la.matmul(self.F, acc, mats[gi])
            out.append(acc)
        x = Module(n, tuple(out))
        self.check_object(x)
        return x

    def check_object(self, x) -> None:
        if not isinstance(x, Module):
            raise CategoryError(f"{x!r} is not a module")
        if self.G is None:
            if x.mats:
                raise CategoryError("vector spaces carry no action")
            return
        G, F = self.G, self.F
        if len(x.mats) != G.order:
            raise CategoryError("one matrix per group element required")
        if x.mats[G.identity] != la.identity(x.dim):
            raise CategoryError("identity must act trivially")
        for a in range(G.order):
            for b in G.gen_indices:
                if la.matmul(F, x.mats[a], x.mats[b]) != x.mats[G.mul[a][b]]:
                    raise CategoryError("matrices do not satisfy the group relations")

    def object_size(self, x: Module) -> int:
        return x.dim

    def gens(self, x: Module) -> List[Mat]:
        if self.G is None:
            return []
        return [x.mats[g] for g in self.G.gen_indices]

    def format_object(self, x: Module) -> str:
        if self.G is None:
            return str(x.dim)
        from ..meataxe import describe_module
        return describe_module(self, x)

    # arrows --------------------------------------------------------------

    def arrow(self, x: Module, y: Module, rows) -> Arrow:
        f = Arrow(x, y, Mat(rows, x.dim))
        self.check_arrow(f)
        return f

    def check_arrow(self, f: Arrow) -> None:
        M = f.data
        if M.shape != (f.target.dim, f.source.dim):
            raise CategoryError("matrix shape does not match source/target")
        for a, b in zip(self.gens(f.source), self.gens(f.target)):
            if la.matmul(self.F, M, a) != la.matmul(self.F, b, M):
                raise CategoryError("map is not equivariant")

    def identity(self, x: Module) -> Arrow:
        return Arrow(x, x, la.identity(x.dim))

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        self._check_composable(f, g)
        return Arrow(g.source, f.target, la.matmul(self.F, f.data, g.data))

    def is_epi(self, f: Arrow) -> bool:
        return la.rank(self.F, f.data) == f.target.dim

    def is_mono(self, f: Arrow) -> bool:
        return la.rank(self.F, f.data) == f.source.dim

    def inverse(self, f: Arrow) -> Arrow:
        return Arrow(f.target, f.source, la.inverse(self.F, f.data))

    # helpers ---------------------------------------------------------------

    def submodule(self, x: Module, basis: Mat) -> Module:
        """Module structure on the span of a canonical column basis."""
        if self.G is None:
            return Module(basis.ncols)
        _, pivots = la.rref(self.F, basis.transpose())
        mats = []
        for g in x.mats:
            gb = la.matmul(self.F, g, basis)
            mats.append(Mat([gb[p] for p in pivots], basis.ncols) if pivots else Mat([], 0))
        return Module(basis.ncols, tuple(mats))

    def is_invariant(self, x: Module, basis: Mat) -> bool:
        if self.G is None or basis.ncols == 0:
            return True
        k = basis.ncols
        for g in self.gens(x):
            gb = la.matmul(self.F, g, basis)
            if la.rank(self.F, la.hstack([basis, gb], x.dim)) != k:
                return False
        return True

    def _coords(self, basis: Mat, v: Mat) -> Mat:
        _, pivots = la.rref(self.F, basis.transpose())
        return Mat([v[p] for p in pivots], v.ncols) if pivots else Mat([], v.ncols)

    def kernel(self, f: Arrow) -> Arrow:
        """Canonical mono ``ker f -> source``."""
        N = la.nullspace(self.F, f.data)
        B = N.transpose() if N.nrows else Mat([[] for _ in range(f.source.dim)], 0)
        return Arrow(self.submodule(f.source, B), f.source, B)

    # limits --------------------------------------------------------------

    def terminal(self) -> Module:
        return self.space(0)

    def to_terminal(self, x: Module) -> Arrow:
        return Arrow(x, self.terminal(), Mat([], x.dim))

    def initial(self) -> Module:
        return self.space(0)

    def from_initial(self, x: Module) -> Arrow:
        return Arrow(self.initial(), x, Mat([[] for _ in range(x.dim)], 0))

    @lru_cache(maxsize=4096)
    def product(self, x: Module, y: Module) -> Product:
        n, m = x.dim, y.dim
        if self.G is None:
            apex = Module(n + m)
        else:
            apex = Module(n + m, tuple(la.block_diag([a, b]) for a, b in zip(x.mats, y.mats)))
        left = Arrow(apex, x, Mat([[1 if j == i else 0 for j in range(n + m)] for i in range(n)], n + m))
        right = Arrow(apex, y, Mat([[1 if j == n + i else 0 for j in range(n + m)] for i in range(m)], n + m))
        return Product(apex, left, right)

    def pair(self, prod: Product, a: Arrow, b: Arrow) -> Arrow:
        return Arrow(a.source, prod.apex, la.vstack([a.data, b.data], a.source.dim))

    def pullback(self, f: Arrow, g: Arrow) -> Pullback:
        if f.target != g.target:
            raise CategoryError("pullback of a non-cospan")
        F = self.F
        x, y = f.source, g.source
        n, m = x.dim, y.dim
        combined = la.hstack([f.data, la.scale(F, F.neg(1), g.data)], f.target.dim)
        N = la.nullspace(F, combined)
        B = N.transpose() if N.nrows else Mat([[] for _ in range(n + m)], 0)
        apex = self.submodule(self.product(x, y).apex, B)
        left = Arrow(apex, x, Mat(B[:n], B.ncols))
        right = Arrow(apex, y, Mat(B[n:], B.ncols))

        def mediate(a: Arrow, b: Arrow) -> Arrow:
            v = la.vstack([a.data, b.data], a.source.dim)
            u = self._coords(B, v)
            if la.matmul(F, B, u) != v:
                raise CategoryError("not a cone over the cospan")
            return Arrow(a.source, apex, u)
        return Pullback(apex, left, right, mediate)

    def image(self, f: Arrow) -> Tuple[Arrow, Arrow]:
        B = la.column_space(self.F, f.data)
        sub = self.submodule(f.target, B)
        e = Arrow(f.source, sub, self._coords(B, f.data))
        return e, Arrow(sub, f.target, B)

    # enumeration ---------------------------------------------------------

    def subobjects(self, x: Module, bound: Optional[int] = None) -> List[Arrow]:
        self._check_bound(x.dim, bound, "dimension")
        out = []
        for B in _subspaces_cached(self.q, x.dim):
            if self.is_invariant(x, B):
                out.append(Arrow(self.submodule(x, B), x, B))
        return out

    def hom_basis(self, x: Module, y: Module) -> List[Mat]:
        """Basis of Hom_G(x, y) as matrices."""
        n, m = x.dim, y.dim
        F = self.F
        if self.G is None:
            basis = []
            for i in range(m):
                for j in range(n):
                    basis.append(Mat([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(m)], n))
            return basis
        # unknown M (m x n) flattened row-major; constraints M a - b M = 0
        eqs = []
        for a, b in zip(self.gens(x), self.gens(y)):
            for r in range(m):
                for c in range(n):
                    row = [0] * (m * n)
                    for k in range(n):  # (M a)[r][c] = sum_k M[r][k] a[k][c]
                        if a[k][c]:
                            row[r * n + k] = F.add(row[r * n + k], a[k][c])
                    for k in range(m):  # (b M)[r][c] = sum_k b[r][k] M[k][c]
                        if b[r][k]:
                            row[k * n + c] = F.sub(row[k * n + c], b[r][k])
                    eqs.append(row)
        if not eqs or m * n == 0:
            if m * n == 0:
                return []
            eqs = [[0] * (m * n)]
        N = la.nullspace(F, Mat(eqs, m * n))
        return [Mat([vec[r * n:(r + 1) * n] for r in range(m)], n) for vec in N]

    def morphisms(self, x: Module, y: Module, bound: Optional[int] = None) -> List[Arrow]:
        self._check_bound(max(x.dim, y.dim), bound, "dimension")
        F = self.F
        basis = self.hom_basis(x, y)
        out = []
        zero = la.zeros(y.dim, x.dim)
        for coeffs in itertools.product(range(self.q), repeat=len(basis)):
            M = zero
            for c, B in zip(coeffs, basis):
                if c:
                    M = la.matadd(F, M, la.scale(F, c, B))
            out.append(Arrow(x, y, M))
        out.sort(key=lambda f: tuple(f.data))
        return out

    def objects(self, bound: int) -> List[Module]:
        if self.G is None:
            return [self.space(n) for n in range(bound + 1)]
        from ..meataxe import irreducibles
        irr = irreducibles(self)
        out = [self.space(0)]

        def rec(start, parts, size):
            for i in range(start, len(irr)):
                d = irr[i].module.dim
                if size + d <= bound:
                    nxt = parts + [irr[i].module]
                    out.append(self.direct_sum(nxt))
                    rec(i, nxt, size + d)
        rec(0, [], 0)
        return out

    def direct_sum(self, parts: Sequence[Module]) -> Module:
        out = self.space(0)
        for p in parts:
            out = self.product(out, p).apex
        return out

    def format_arrow(self, f: Arrow) -> str:
        return "[" + ";".join(",".join(map(str, r)) for r in f.data) + "]"

    def format_subobject(self, m: Arrow, left_size: Optional[int] = None) -> str:
        R = m.data.transpose()
        return "[" + ";".join("".join(map(str, r)) for r in R) + "]"


@lru_cache(maxsize=None)
def _subspaces_cached(q: int, n: int) -> Tuple[Mat, ...]:
    return tuple(la.subspaces(field(q), n))
