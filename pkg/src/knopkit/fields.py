"""Finite fields GF(q) and dense linear algebra over them.

Field elements are the integers ``0 .. q-1``.  For a prime ``q`` these are
residues; for ``q = p^k`` an element encodes the coefficient vector of a
polynomial in ``F_p[X]`` modulo a fixed irreducible of degree ``k`` (base-p
digits, least significant first).

Matrices are tuples of row tuples.  A morphism ``F_q^n -> F_q^m`` is an
``m x n`` matrix; an ``m x 0`` or ``0 x n`` matrix is kept with explicit
shape through :class:`Mat`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple


def factor_prime_power(q: int) -> Tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


class GF:
    """The finite field with ``q`` elements."""

    def __init__(self, q: int):
        p, k = factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self._mul = None
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
        else:
            self.modulus = _find_irreducible(p, k)
            self._add_t = [[_vec_add(a, b, p, k) for b in range(q)] for a in range(q)]
            self._mul = [[_poly_mulmod(a, b, p, k, self.modulus) for b in range(q)]
                         for a in range(q)]
            self._inv = [0] * q
            for a in range(1, q):
                for b in range(1, q):
                    if self._mul[a][b] == 1:
                        self._inv[a] = b
                        break
            self._neg = [self._sub_raw(0, a) for a in range(q)]

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    @property
    def elements(self) -> range:
        return range(self.q)

    def _sub_raw(self, a, b):
        p, out, place = self.p, 0, 1
        for _ in range(self.k):
            out += ((a % p - b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self._mul is None:
            return (a + b) % self.q
        return self._add_t[a][b]

    def neg(self, a: int) -> int:
        if self._mul is None:
            return (-a) % self.q
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is None:
            return (a * b) % self.q
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._inv[a]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F_q."""
        return (n % self.p)

    def power(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r


def _vec_add(a, b, p, k):
    out, place = 0, 1
    for _ in range(k):
        out += ((a % p + b % p) % p) * place
        a //= p
        b //= p
        place *= p
    return out


def _digits(a, p, k):
    d = []
    for _ in range(k):
        d.append(a % p)
        a //= p
    return d


def _poly_mulmod(a, b, p, k, modulus):
    da, db = _digits(a, p, k), _digits(b, p, k)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic of degree k, given as list of k+1 coefficients
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return sum(prod[i] * p ** i for i in range(k))


def _find_irreducible(p, k):
    for tail in itertools.product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        if all(_poly_eval(poly, x, p) for x in range(p)) and _irreducible(poly, p):
            return poly
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


def _poly_eval(poly, x, p):
    return sum(c * x ** i for i, c in enumerate(poly)) % p


def _irreducible(poly, p):
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if _poly_rem(poly, divisor, p) == [0] * d:
                return False
    return True


def _poly_rem(num, den, p):
    num = list(num)
    d = len(den) - 1
    for deg in range(len(num) - 1, d - 1, -1):
        c = num[deg]
        if c:
            for i in range(d + 1):
                num[deg - d + i] = (num[deg - d + i] - c * den[i]) % p
    return num[:d]


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


# matrices -------------------------------------------------------------------

class Mat(tuple):
    """Immutable matrix with explicit shape (rows may be empty)."""

    def __new__(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("shape of an empty matrix must be given")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self = super().__new__(cls, rows)
        self.ncols = ncols
        return self

    def __reduce__(self):
        return (Mat, (tuple(self), self.ncols))

    @property
    def nrows(self) -> int:
        return len(self)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self), self.ncols)

    def __eq__(self, other):
        if isinstance(other, Mat):
            return self.shape == other.shape and tuple.__eq__(self, other)
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((tuple(self), self.ncols))

    def __repr__(self):
        return f"Mat({list(map(list, self))!r}, {self.ncols})"

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self)

    def transpose(self) -> "Mat":
        return Mat([self.column(j) for j in range(self.ncols)], len(self))


def zeros(m: int, n: int) -> Mat:
    return Mat([[0] * n for _ in range(m)], n)


def identity(n: int) -> Mat:
    return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


def matmul(F: GF, A: Mat, B: Mat) -> Mat:
    if A.ncols != B.nrows:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    n = B.ncols
    Bt = [B.column(j) for j in range(n)]
    if F.k == 1:
        q = F.q
        rows = [[sum(a * b for a, b in zip(row, col)) % q for col in Bt] for row in A]
    else:
        rows = []
        for row in A:
            out = []
            for col in Bt:
                s = 0
                for a, b in zip(row, col):
                    if a and b:
                        s = F.add(s, F.mul(a, b))
                out.append(s)
            rows.append(out)
    return Mat(rows, n)


def matadd(F: GF, A: Mat, B: Mat) -> Mat:
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    return Mat([[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(A, B)], A.ncols)


def matsub(F: GF, A: Mat, B: Mat) -> Mat:
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    return Mat([[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(A, B)], A.ncols)


def scale(F: GF, c: int, A: Mat) -> Mat:
    return Mat([[F.mul(c, a) for a in r] for r in A], A.ncols)


def hstack(blocks: Sequence[Mat], nrows: int) -> Mat:
    rows = [[] for _ in range(nrows)]
    ncols = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("row count mismatch")
        for i, r in enumerate(b):
            rows[i].extend(r)
        ncols += b.ncols
    return Mat(rows, ncols)


def vstack(blocks: Sequence[Mat], ncols: int) -> Mat:
    rows: List[Tuple[int, ...]] = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("column count mismatch")
        rows.extend(b)
    return Mat(rows, ncols)


def block_diag(blocks: Sequence[Mat]) -> Mat:
    total_c = sum(b.ncols for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b:
            rows.append([0] * offset + list(r) + [0] * (total_c - offset - b.ncols))
        offset += b.ncols
    return Mat(rows, total_c)


def rref(F: GF, A: Mat) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (zero rows dropped)."""
    rows = [list(r) for r in A]
    pivots = []
    r = 0
    for c in range(A.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return Mat(rows[:r], A.ncols), tuple(pivots)


def rank(F: GF, A: Mat) -> int:
    return len(rref(F, A)[1])


def nullspace(F: GF, A: Mat) -> Mat:
    """Basis of {v : A v = 0}, returned as the rows of a matrix in RREF."""
    R, pivots = rref(F, A)
    n = A.ncols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        basis.append(v)
    if not basis:
        return Mat([], n)
    return rref(F, Mat(basis, n))[0]


def inverse(F: GF, A: Mat) -> Mat:
    n = A.nrows
    if A.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = hstack([A, identity(n)], n)
    R, pivots = rref(F, aug)
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return Mat([r[n:] for r in R], n)


def determinant(F: GF, A: Mat) -> int:
    n = A.nrows
    rows = [list(r) for r in A]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                f = F.mul(rows[i][c], inv)
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[c])]
    return det


def column_space(F: GF, A: Mat) -> Mat:
    """Canonical basis of the column space: an ``m x k`` matrix whose
    transpose is in RREF."""
    R, _ = rref(F, A.transpose())
    return Mat([list(col) for col in zip(*R)] if R else [[] for _ in range(A.nrows)], len(R))


def solve_in_basis(F: GF, B: Mat, v: Mat) -> Mat:
    """Coordinates ``u`` with ``B u = v`` where ``B`` is a canonical column
    basis (transpose in RREF).  Raises ``ValueError`` if ``v`` is not in the
    span."""
    Bt, pivots = rref(F, B.transpose())
    if Bt != B.transpose():
        Bt_check = B.transpose()
        raise ValueError(f"basis not canonical: {Bt_check!r}")
    # pivot rows of B form an identity block
    u = Mat([v[p] for p in pivots], v.ncols) if pivots else Mat([], v.ncols)
    if matmul(F, B, u) != v:
        raise ValueError("vector not in span")
    return u


def all_vectors(F: GF, n: int):
    return itertools.product(range(F.q), repeat=n)


def subspaces(F: GF, n: int, dim: Optional[int] = None) -> List[Mat]:
    """All subspaces of F_q^n as canonical column bases (``n x k``), ordered
    by dimension and then lexicographically by RREF rows."""
    out = []
    dims = range(n + 1) if dim is None else [dim]
    for k in dims:
        for R in _rref_matrices(F, k, n):
            out.append(Mat([list(col) for col in zip(*R)] if R else [[] for _ in range(n)], k))
    return out


def _rref_matrices(F: GF, k: int, n: int):
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        # free positions: (row i, col c) with c > pivots[i], c not a pivot
        free = [(i, c) for i in range(k) for c in range(pivots[i] + 1, n) if c not in pivots]
        for vals in itertools.product(range(F.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def galois_number(n: int, q: int) -> int:
    """Number of subspaces of F_q^n via the recurrence G(n+1) = 2G(n) + (q^n - 1)G(n-1)."""
    if n == 0:
        return 1
    prev, cur = 1, 2
    for m in range(1, n):
        prev, cur = cur, 2 * cur + (q ** m - 1) * prev
    return cur
