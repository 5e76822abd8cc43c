"""Exact sparse multivariate polynomials over the rationals.

A :class:`Scalar` is an immutable mapping from monomials to nonzero
:class:`fractions.Fraction` coefficients.  A monomial is a tuple of
``(name, exponent)`` pairs sorted by name.  Indeterminate names are free-form
strings such as ``"t"``, ``"phi(free)"`` or ``"tau(sgn)"``.

Textual form::

    >>> Scalar.parse("t^2 - 3*t + 1")
    Scalar('t^2 - 3*t + 1')
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Number = Union[int, Fraction]


class ContextError(ValueError):
    """Raised when scalars from different indeterminate contexts are combined."""


class AssignmentError(KeyError):
    """Raised when an evaluation point does not cover every indeterminate."""


class ScalarParseError(ValueError):
    pass


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_order_key(m: Monomial):
    # graded lex: higher total degree first, then lexicographic by name with
    # larger exponents of earlier names first
    return (-_mono_degree(m), tuple((name, -e) for name, e in m))


class Context:
    """A fixed set of legal indeterminate names."""

    def __init__(self, names: Iterable[str], label: str = ""):
        self.names = frozenset(names)
        self.label = label

    def __repr__(self):
        return f"Context({sorted(self.names)!r})"

    def var(self, name: str) -> "Scalar":
        if name not in self.names:
            raise ContextError(f"{name!r} is not an indeterminate of {self!r}")
        return Scalar({((name, 1),): Fraction(1)}, context=self)

    def parse(self, text: str) -> "Scalar":
        s = Scalar.parse(text)
        unknown = s.variables() - self.names
        if unknown:
            raise ContextError(f"unknown indeterminates {sorted(unknown)} in {text!r}")
        return Scalar(s._terms, context=self)


class Scalar:
    __slots__ = ("_terms", "_hash", "context")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None,
                 context: Optional[Context] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(sorted((n, e) for n, e in m if e))] = c
        self._terms = clean
        self._hash = None
        self.context = context

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "Scalar":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "Scalar":
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {value!r} to Scalar")

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return _Parser(text).parse()

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def variables(self) -> frozenset:
        return frozenset(n for m in self._terms for n, _ in m)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # arithmetic -----------------------------------------------------------

    def _ctx(self, other: "Scalar") -> Optional[Context]:
        a, b = self.context, other.context
        if a is not None and b is not None and a is not b and a.names != b.names:
            raise ContextError(f"cannot combine scalars over {a!r} and {b!r}")
        return a if a is not None else b

    def __add__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        ctx = self._ctx(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Scalar(out, ctx)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({m: -c for m, c in self._terms.items()}, self.context)

    def __sub__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        ctx = self._ctx(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Scalar(out, ctx)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Scalar.const(1)
        result.context = self.context
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def ring_op(self, other, op: str) -> "Scalar":
        if op == "add":
            return self + other
        if op == "sub":
            return self - other
        if op == "mul":
            return self * other
        raise ValueError(f"unknown ring operation {op!r}")

    # evaluation -----------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        missing = self.variables() - set(assignment)
        if missing:
            raise AssignmentError(f"no value for {sorted(missing)}")
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for name, e in m:
                v *= Fraction(assignment[name]) ** e
            total += v
        return total

    def substitute(self, mapping: Mapping[str, "Scalar"]) -> "Scalar":
        """Replace indeterminates by scalars (partial substitution allowed)."""
        result = Scalar()
        for m, c in self._terms.items():
            term = Scalar.const(c)
            for name, e in m:
                if name in mapping:
                    term = term * (Scalar.coerce(mapping[name]) ** e)
                else:
                    term = term * Scalar({((name, e),): 1})
            result = result + term
        return result

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # formatting -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=_mono_order_key):
            c = self._terms[m]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    return NotImplemented


ZERO = Scalar()
ONE = Scalar.const(1)


# parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*(?:\([^()\s]*\))?)|(?P<op>[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                raise ScalarParseError(f"unexpected character at {pos} in {text!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ScalarParseError(f"expected {value or 'token'} at {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ScalarParseError("empty scalar expression")
        s = self.expr()
        if self.i != len(self.tokens):
            raise ScalarParseError(f"trailing input at {self.peek()[2]} in {self.text!r}")
        return s

    def expr(self) -> Scalar:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Scalar:
        acc = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ScalarParseError(f"division by non-constant or zero in {self.text!r}")
                acc = acc * Scalar.const(1 / rhs.constant_value())
        return acc

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ScalarParseError(f"exponent must be a non-negative integer at {pos}")
            base = base ** int(val)
        return base

    def atom(self) -> Scalar:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Scalar.const(int(val))
        if kind == "name":
            self.take()
            return Scalar.var(val)
        if val == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if val == "-":
            self.take()
            return -self.atom()
        raise ScalarParseError(f"unexpected {val!r} at {pos} in {self.text!r}")
