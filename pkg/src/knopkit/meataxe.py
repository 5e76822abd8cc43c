"""Decomposition of semisimple F_q[G]-modules into irreducibles.

A module is split along the kernel of a singular, nonzero element of its
endomorphism algebra; a complement comes from averaging a projection over
the group (possible because ``q`` is prime to ``|G|``).  A module is
irreducible exactly when its endomorphism algebra is a field, which is
decided by checking commutativity and that the Frobenius map ``a -> a^q``
fixes only the scalars.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Dict, List, Tuple

from . import fields as la
from .fields import Mat

SEED = 20240611
_MAX_TRIES = 20000
_lock = threading.Lock()
_irr_cache: Dict[str, Tuple["Irreducible", ...]] = {}


class MeataxeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Irreducible:
    label: str
    module: "object"
    end_dim: int  # dim_F End_G(I)
    field_size: int  # |F_I| = q^end_dim

    @property
    def dim(self) -> int:
        return self.module.dim


def endomorphism_basis(cat, x) -> List[Mat]:
    return cat.hom_basis(x, x)


def _combine(F, basis, coeffs, n):
    M = la.zeros(n, n)
    for c, B in zip(coeffs, basis):
        if c:
            M = la.matadd(F, M, la.scale(F, c, B))
    return M


def _frobenius_fixed_dim(cat, basis: List[Mat], n: int) -> int:
    F = cat.F
    d = len(basis)
    # coordinates of an endomorphism in ``basis`` via a linear solve
    flat = Mat([[b[r][c] for b in basis] for r in range(n) for c in range(n)], d)
    R, pivots = la.rref(F, flat.transpose())

    def coords(M):
        v = Mat([[M[r][c]] for r in range(n) for c in range(n)], 1)
        aug = la.hstack([flat, v], n * n)
        RR, _ = la.rref(F, aug)
        out = [0] * d
        for row in RR:
            lead = next(i for i, val in enumerate(row) if val)
            if lead < d:
                out[lead] = row[d]
        return out

    cols = []
    for b in basis:
        p = b
        for _ in range(cat.q - 1):
            p = la.matmul(F, p, b)
        cols.append(coords(p))
    frob = Mat([[cols[j][i] for j in range(d)] for i in range(d)], d)
    diff = la.matsub(F, frob, la.identity(d))
    return d - la.rank(F, diff)


def is_irreducible(cat, x) -> bool:
    if x.dim == 0:
        return False
    F = cat.F
    basis = endomorphism_basis(cat, x)
    for a in basis:
        for b in basis:
            if la.matmul(F, a, b) != la.matmul(F, b, a):
                return False
    return _frobenius_fixed_dim(cat, basis, x.dim) == 1


def _maschke_complement(cat, x, W: Mat) -> Mat:
    """Canonical basis of a G-stable complement of the span of ``W``."""
    F, G = cat.F, cat.G
    n, k = x.dim, W.ncols
    # extend W by standard basis vectors to a basis of F^n
    cols = [W.column(j) for j in range(k)]
    ext = []
    for i in range(n):
        e = tuple(1 if r == i else 0 for r in range(n))
        trial = Mat(list(zip(*(cols + ext + [e]))), len(cols) + len(ext) + 1)
        if la.rank(F, trial) == len(cols) + len(ext) + 1:
            ext.append(e)
    Bfull = Mat(list(zip(*(cols + ext))), n)
    Binv = la.inverse(F, Bfull)
    # projection onto W along span(ext)
    D = Mat([[1 if (i == j and i < k) else 0 for j in range(n)] for i in range(n)], n)
    P = la.matmul(F, la.matmul(F, Bfull, D), Binv)
    acc = la.zeros(n, n)
    for g in range(G.order):
        gi = G.inv[g]
        acc = la.matadd(F, acc, la.matmul(F, la.matmul(F, x.mats[g], P), x.mats[gi]))
    avg = la.scale(F, F.inv(F.from_int(G.order)), acc)
    N = la.nullspace(F, avg)
    return N.transpose() if N.nrows else Mat([[] for _ in range(n)], 0)


def split(cat, x, rng: random.Random):
    """Return two canonical column bases spanning complementary submodules,
    or ``None`` if ``x`` is irreducible."""
    if is_irreducible(cat, x):
        return None
    F = cat.F
    basis = endomorphism_basis(cat, x)
    n = x.dim
    for _ in range(_MAX_TRIES):
        coeffs = [rng.randrange(cat.q) for _ in basis]
        a = _combine(F, basis, coeffs, n)
        r = la.rank(F, a)
        if 0 < r < n:
            N = la.nullspace(F, a)
            W = N.transpose()
            return W, _maschke_complement(cat, x, W)
    raise MeataxeError("no splitting endomorphism found")


def decompose(cat, x, seed: int = SEED) -> List[Tuple[Mat, object]]:
    """Irreducible summands of ``x`` as ``(column basis in x, module)``."""
    rng = random.Random(seed)
    out = []
    stack = [(la.identity(x.dim), x)]
    while stack:
        B, m = stack.pop()
        if m.dim == 0:
            continue
        parts = split(cat, m, rng)
        if parts is None:
            out.append((B, m))
            continue
        for W in parts:
            W = la.column_space(cat.F, W)
            sub = cat.submodule(m, W)
            stack.append((la.matmul(cat.F, B, W), sub))
    out.sort(key=lambda p: (p[1].dim, tuple(p[0].transpose())))
    return out


def regular_module(cat):
    G = cat.G
    n = G.order
    mats = []
    for g in range(n):
        mats.append(Mat([[1 if G.mul[g][h] == r else 0 for h in range(n)] for r in range(n)], n))
    return type(cat.space(0))(n, tuple(mats))


def hom_dim(cat, x, y) -> int:
    return len(cat.hom_basis(x, y))


def irreducibles(cat) -> Tuple[Irreducible, ...]:
    """Irreducible modules of ``cat`` (a Rep category), labelled ``1`` for
    the trivial module, ``sgn`` for the sign character (when distinct), and
    ``<dim><letter>`` otherwise, sorted by (dim, |F_I|, discovery order)."""
    key = cat.descriptor
    with _lock:
        if key in _irr_cache:
            return _irr_cache[key]
    G, F = cat.G, cat.F
    reg = regular_module(cat)
    reps = []
    for order, (_, m) in enumerate(decompose(cat, reg)):
        if any(hom_dim(cat, m, r) for r, _ in reps):
            continue
        reps.append((m, order))
    triv = cat.space(1)
    sign_mats = tuple(Mat([[F.from_int(G.sign(g))]], 1) for g in range(G.order))
    sgn = type(triv)(1, sign_mats)
    entries = []
    for m, order in reps:
        e = len(endomorphism_basis(cat, m))
        if hom_dim(cat, m, triv):
            tag, m = "1", triv
        elif sgn != triv and hom_dim(cat, m, sgn):
            tag, m = "sgn", sgn
        else:
            tag = None
        entries.append((tag, m, e, order))
    entries.sort(key=lambda t: (t[0] != "1", t[0] != "sgn", t[1].dim, t[2], t[3]))
    labelled = []
    counters: Dict[int, int] = {}
    for tag, m, e, _ in entries:
        if tag is None:
            idx = counters.get(m.dim, 0)
            counters[m.dim] = idx + 1
            tag = f"{m.dim}{'abcdefghijklmnop'[idx]}"
        labelled.append(Irreducible(tag, m, e, cat.q ** e))
    result = tuple(labelled)
    total = sum(hom_dim(cat, i.module, reg) // i.end_dim * i.dim for i in result)
    if total != G.order:
        raise MeataxeError(f"regular module decomposition inconsistent ({total} != {G.order})")
    with _lock:
        _irr_cache[key] = result
    return result


def find_irreducible(cat, label: str) -> Irreducible:
    for irr in irreducibles(cat):
        if irr.label == label:
            return irr
    aliases = {"triv": "1", "trivial": "1", "sign": "sgn"}
    if label in aliases:
        return find_irreducible(cat, aliases[label])
    raise KeyError(f"unknown irreducible {label!r}; known: {[i.label for i in irreducibles(cat)]}")


def multiplicities(cat, x) -> Dict[str, int]:
    """``[x : I]`` for every irreducible ``I``."""
    out = {}
    for irr in irreducibles(cat):
        h = hom_dim(cat, irr.module, x)
        if h % irr.end_dim:
            raise MeataxeError("hom dimension not divisible by dim End(I)")
        out[irr.label] = h // irr.end_dim
    return out


def describe_module(cat, x) -> str:
    if x.dim == 0:
        return "0"
    mult = multiplicities(cat, x)
    parts = []
    for label, k in mult.items():
        parts.extend([label] * k)
    return "+".join(parts)
