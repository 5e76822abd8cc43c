"""Additive Karoubi completion of T^0(A, delta).

An object is a finite list of summands ``[x_1], ..., [x_n]`` with an
idempotent matrix ``e`` whose entry ``e[i][j]`` is a morphism
``[x_j] -> [x_i]``.  Hom spaces are cut out as ``e_Y o Hom o e_X``.

Coefficients stay polynomial, so idempotents that need an inverted
indeterminate (``Pi / t`` and the like) are rejected.  Ranks of spanning
sets are computed after specializing every indeterminate to a generic
rational value; the answer is exact away from finitely many bad points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from .scalars import Scalar, ScalarParseError
from .t0 import T0, FormalMorphism, Relation

SCHEMA = "knopkit.karoubi-hom/1"
GENERIC_T = Fraction(17, 5)

Matrix = Tuple[Tuple[FormalMorphism, ...], ...]


class KaroubiError(ValueError):
    pass


class NonPolynomialScalar(KaroubiError):
    """A coefficient would need an inverted indeterminate."""


def polynomial_scalar(text) -> Scalar:
    if isinstance(text, Scalar):
        return text
    try:
        return Scalar.parse(str(text))
    except ScalarParseError as exc:
        raise NonPolynomialScalar(
            f"coefficient {text!r} is not a polynomial; idempotents needing "
            f"inverted scalars are not supported ({exc})") from None


def _shape_check(mat: Sequence[Sequence[FormalMorphism]], sources, targets):
    if len(mat) != len(targets) or any(len(row) != len(sources) for row in mat):
        raise KaroubiError(f"matrix shape does not match {len(targets)}x{len(sources)} summands")
    for i, row in enumerate(mat):
        for j, m in enumerate(row):
            if m.source != sources[j] or m.target != targets[i]:
                raise KaroubiError(f"entry ({i},{j}) has the wrong source/target")


def matrix_compose(T: T0, A: Matrix, B: Matrix, middle, sources, targets) -> Matrix:
    """``A o B`` where ``B: sources -> middle`` and ``A: middle -> targets``."""
    out = []
    for i, y in enumerate(targets):
        row = []
        for k, x in enumerate(sources):
            acc = T.zero(x, y)
            for j in range(len(middle)):
                acc = acc + T.compose(A[i][j], B[j][k])
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def identity_matrix(T: T0, summands) -> Matrix:
    return tuple(tuple(T.identity(x) if i == j else T.zero(x, y)
                       for j, x in enumerate(summands))
                 for i, y in enumerate(summands))


@dataclass(frozen=True)
class KaroubiObject:
    summands: Tuple[Any, ...]
    idempotent: Matrix


@dataclass(frozen=True)
class KaroubiMorphism:
    source: KaroubiObject
    target: KaroubiObject
    matrix: Matrix


def karoubi_object(T: T0, summands: Sequence, idempotent: Optional[Sequence[Sequence[FormalMorphism]]] = None
                   ) -> KaroubiObject:
    """Build an object, checking ``e o e == e`` exactly."""
    summands = tuple(summands)
    if idempotent is None:
        return KaroubiObject(summands, identity_matrix(T, summands))
    e = tuple(tuple(row) for row in idempotent)
    _shape_check(e, summands, summands)
    if matrix_compose(T, e, e, summands, summands, summands) != e:
        raise KaroubiError("matrix is not idempotent")
    return KaroubiObject(summands, e)


def formal_from_terms(T: T0, x, y, terms: Mapping[Relation, Any]) -> FormalMorphism:
    """A morphism from ``{relation: coefficient}``; string coefficients are
    parsed and must be polynomial."""
    return FormalMorphism(x, y, {r: polynomial_scalar(c) for r, c in terms.items()})


def karoubi_compose(T: T0, f: KaroubiMorphism, g: KaroubiMorphism) -> KaroubiMorphism:
    """``f o g``."""
    if g.target != f.source:
        raise KaroubiError("cannot compose: middle objects differ")
    mat = matrix_compose(T, f.matrix, g.matrix, g.target.summands,
                         g.source.summands, f.target.summands)
    return KaroubiMorphism(g.source, f.target, mat)


def identity_morphism(X: KaroubiObject) -> KaroubiMorphism:
    return KaroubiMorphism(X, X, X.idempotent)


def karoubi_tensor(T: T0, X: KaroubiObject, Y: KaroubiObject) -> KaroubiObject:
    """Summands ``x_i * y_k`` in lexicographic order, idempotent ``e_X (x) e_Y``."""
    cat = T.cat
    summands = tuple(cat.product(x, y).apex for x in X.summands for y in Y.summands)
    n, m = len(X.summands), len(Y.summands)
    rows = []
    for i in range(n):
        for k in range(m):
            rows.append(tuple(T.tensor(X.idempotent[i][j], Y.idempotent[k][l])
                              for j in range(n) for l in range(m)))
    return KaroubiObject(summands, tuple(rows))


def generic_point(variables, overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Fraction]:
    """``t = 17/5`` and distinct nearby values for other indeterminates."""
    point = {}
    overrides = {k: Fraction(v) for k, v in (overrides or {}).items()}
    for i, v in enumerate(sorted(variables)):
        if v in overrides:
            point[v] = overrides[v]
        elif v == "t":
            point[v] = GENERIC_T
        else:
            point[v] = GENERIC_T + Fraction(i + 1, 7)
    return point


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in rows]).rank()


@dataclass
class KaroubiHom:
    source: KaroubiObject
    target: KaroubiObject
    spanning: List[KaroubiMorphism]
    coordinates: List[Tuple[int, int, Relation]]
    vectors: List[List[Scalar]]
    rank: int
    point: Dict[str, Fraction]

    def to_json(self, T: T0) -> dict:
        cat = T.cat
        return {
            "schema": SCHEMA,
            "summands": {"source": [cat.format_object(x) for x in self.source.summands],
                         "target": [cat.format_object(y) for y in self.target.summands]},
            "idempotent_matrix": {"source": _matrix_json(T, self.source.idempotent),
                                  "target": _matrix_json(T, self.target.idempotent)},
            "hom_rank": self.rank,
            "spanning_size": len(self.spanning),
            "generic_point": {k: str(v) for k, v in sorted(self.point.items())},
            "caveat": "rank evaluated at the generic point; exact outside finitely many values",
        }


def _matrix_json(T: T0, mat: Matrix):
    return [[[{"relation": T.format_relation(r), "scalar": str(c)} for r, c in m.items()]
             for m in row] for row in mat]


def karoubi_hom(T: T0, X: KaroubiObject, Y: KaroubiObject,
                point: Optional[Mapping[str, Any]] = None) -> KaroubiHom:
    """Spanning set ``{e_Y o E(r) o e_X}`` of ``Hom(X, Y)`` and its rank."""
    coords: List[Tuple[int, int, Relation]] = []
    for i, y in enumerate(Y.summands):
        for j, x in enumerate(X.summands):
            for r in T.hom_basis(x, y):
                coords.append((i, j, r))
    spanning = []
    for i, j, r in coords:
        mat = tuple(tuple(T.basis_morphism(r) if (a, b) == (i, j) else T.zero(x, y)
                          for b, x in enumerate(X.summands))
                    for a, y in enumerate(Y.summands))
        m = KaroubiMorphism(X, Y, mat)
        m = karoubi_compose(T, identity_morphism(Y), karoubi_compose(T, m, identity_morphism(X)))
        spanning.append(m)
    vectors = [[m.matrix[i][j].coefficient(r) for (i, j, r) in coords] for m in spanning]
    variables = set()
    for vec in vectors:
        for c in vec:
            variables |= c.variables()
    pt = generic_point(variables | {"t"}, point)
    numeric = [[c.evaluate(pt) for c in vec] for vec in vectors]
    return KaroubiHom(X, Y, spanning, coords, vectors, rational_rank(numeric), pt)
