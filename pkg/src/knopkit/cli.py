"""Command line interface: ``knopkit <verb> [options]``.

Morphisms are written as sums of basis relations, either by index in
``hom_basis`` order (``r0``) or by printed name, each with an optional
coefficient: ``"2*r0 + (t-1)*r3"``, ``"({1},{1'})"`` or ``id``.  A
morphism can also be read from a JSON file with ``@path``.

Exit status: 0 on success, 1 when a check fails (the witness is printed),
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .categories import DescriptorError, category, parse_object
from .categories.base import CategoryError, default_bound
from .categories.gsets import bell
from .degree import DegreeSpecError, check_degree_axioms, make_degree
from .fields import galois_number
from .groups import GroupError, group
from .scalars import ONE, Scalar, ScalarParseError
from .karoubi import KaroubiError, polynomial_scalar
from .t0 import T0, FormalMorphism, verify_presentation

SCHEMA_PREFIX = "knopkit."


class UsageError(ValueError):
    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


# parsing helpers ---------------------------------------------------------------

def _split_top(text: str, sep: str) -> List[str]:
    depth, cur, out = 0, "", []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def _obj(cat, text: str):
    try:
        return parse_object(cat, text)
    except CategoryError as exc:
        raise UsageError(str(exc), text) from None


def parse_morphism(T: T0, x, y, text: str) -> FormalMorphism:
    """Morphism grammar described in the module docstring."""
    text = text.strip()
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                return T.from_json(json.load(fh), x, y)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read morphism: {exc}", text) from None
    basis = T.hom_basis(x, y)
    names = {T.format_relation(r): r for r in basis}
    out = T.zero(x, y)
    for raw in _split_top(text.replace(" - ", " + -"), "+"):
        term = raw.strip()
        if not term:
            raise UsageError("empty term in morphism", text)
        coef, rel = "1", term
        m = re.fullmatch(r"(.*?)\*?(r\d+|id)", term) or re.fullmatch(r"(.*)\*(.+)", term)
        if m and (m.group(2) in names or re.fullmatch(r"r\d+|id", m.group(2))):
            coef, rel = m.group(1) or "1", m.group(2)
        if coef in ("-", "+"):
            coef += "1"
        try:
            c = polynomial_scalar(coef)
        except KaroubiError as exc:
            raise UsageError(str(exc), coef) from None
        if rel == "id":
            if x != y:
                raise UsageError("id needs equal source and target", rel)
            out = out + T.identity(x).scale(c)
        elif re.fullmatch(r"r\d+", rel):
            k = int(rel[1:])
            if k >= len(basis):
                raise UsageError(f"relation index {k} out of range (dimension {len(basis)})", rel)
            out = out + T.basis_morphism(basis[k], c)
        elif rel in names:
            out = out + T.basis_morphism(names[rel], c)
        else:
            raise UsageError(f"unknown relation {rel!r}; known: {sorted(names)}", rel)
    return out


def parse_point(items: Optional[Sequence[str]]) -> Optional[Dict[str, Fraction]]:
    if not items:
        return None
    out = {}
    for item in items:
        for part in item.split(","):
            k, sep, v = part.partition("=")
            if not sep:
                raise UsageError("points are given as name=value", part)
            try:
                out[k.strip()] = Fraction(v.strip())
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad rational {v!r}", v) from None
    return out


# output ----------------------------------------------------------------------------

def emit(args, data: dict, text_lines: Optional[List[str]] = None, csv_rows=None):
    fmt = args.format
    if fmt == "json":
        sys.stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        if csv_rows is None:
            raise UsageError(f"{args.verb} has no csv output", "csv")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    else:
        lines = text_lines if text_lines is not None else [json.dumps(data, ensure_ascii=False)]
        sys.stdout.write("\n".join(lines) + "\n")


def _setup(args):
    cat = category(args.cat)
    delta = make_degree(cat, args.delta)
    return cat, delta, T0(delta)


def _morphism_json(T: T0, phi: FormalMorphism) -> dict:
    return T.to_json(phi)


def _morphism_text(T: T0, phi: FormalMorphism) -> List[str]:
    if phi.is_zero():
        return ["0"]
    out = []
    for r, c in phi.items():
        c = str(c)
        if re.search(r".[+-]", c):
            c = f"({c})"
        out.append(f"{c} * {T.format_relation(r)}")
    return out


# verbs -------------------------------------------------------------------------------

def cmd_hom_basis(args):
    cat, delta, T = _setup(args)
    x, y = _obj(cat, args.x), _obj(cat, args.y)
    basis = T.hom_basis(x, y)
    rels = [T.format_relation(r) for r in basis]
    data = {"schema": "knopkit.hom-basis/1", "category": cat.descriptor,
            "x": cat.format_object(x), "y": cat.format_object(y),
            "dimension": len(basis), "relations": rels}
    emit(args, data, [f"r{i}\t{r}" for i, r in enumerate(rels)],
         [["index", "relation"]] + [[i, r] for i, r in enumerate(rels)])
    return 0


def cmd_compose(args):
    cat, delta, T = _setup(args)
    x, y, z = _obj(cat, args.x), _obj(cat, args.y), _obj(cat, args.z)
    phi = parse_morphism(T, x, y, args.first)
    psi = parse_morphism(T, y, z, args.second)
    out = T.compose(psi, phi)
    emit(args, _morphism_json(T, out), _morphism_text(T, out))
    return 0


def cmd_tensor(args):
    cat, delta, T = _setup(args)
    x, y = _obj(cat, args.x), _obj(cat, args.y)
    x2, y2 = _obj(cat, args.x2), _obj(cat, args.y2)
    out = T.tensor(parse_morphism(T, x, y, args.phi), parse_morphism(T, x2, y2, args.psi))
    emit(args, _morphism_json(T, out), _morphism_text(T, out))
    return 0


def cmd_dual(args):
    cat, delta, T = _setup(args)
    x, y = _obj(cat, args.x), _obj(cat, args.y)
    out = T.dual(parse_morphism(T, x, y, args.phi))
    emit(args, _morphism_json(T, out), _morphism_text(T, out))
    return 0


def _report_text(rep: dict) -> List[str]:
    lines = [f"passed: {rep['passed']}"]
    for k, v in rep.items():
        if k not in ("passed", "schema"):
            lines.append(f"{k}: {json.dumps(v, ensure_ascii=False)}")
    return lines


def cmd_presentation_check(args):
    cat, delta, T = _setup(args)
    rep = verify_presentation(T, args.bound)
    data = {"schema": "knopkit.presentation-check/1", **rep.to_json()}
    emit(args, data, _report_text(data))
    return 0 if rep.passed else 1


def cmd_degree_check(args):
    cat = category(args.cat)
    rep = check_degree_axioms(make_degree(cat, args.delta), args.bound)
    data = {"schema": "knopkit.degree-check/1", "category": cat.descriptor, **rep.to_json()}
    emit(args, data, _report_text(data))
    return 0 if rep.passed else 1


def _oracle(cat, x, y) -> Optional[int]:
    desc = cat.descriptor
    if desc == "sets-op":
        return bell(x.n + y.n)
    m = re.fullmatch(r"vect:q=(\d+)", desc)
    if m:
        return galois_number(x.dim + y.dim, int(m.group(1)))
    return None


def cmd_hom_dim_table(args):
    cat, delta, T = _setup(args)
    objs = cat.objects(args.bound)
    labels = [cat.format_object(o) for o in objs]
    table = [[len(T.hom_basis(x, y)) for y in objs] for x in objs]
    oracle = [[_oracle(cat, x, y) for y in objs] for x in objs]
    has_oracle = all(v is not None for row in oracle for v in row)
    data = {"schema": "knopkit.hom-dim-table/1", "category": cat.descriptor, "bound": args.bound,
            "objects": labels, "dimensions": table}
    if has_oracle:
        data["oracle"] = "bell" if cat.descriptor == "sets-op" else "galois"
        data["oracle_agrees"] = oracle == table
    rows = [["x\\y"] + labels] + [[labels[i]] + table[i] for i in range(len(objs))]
    text = ["\t".join(str(c) for c in row) for row in rows]
    if args.figure:
        from .plotting import hom_dim_heatmap
        hom_dim_heatmap(table, labels, labels, args.figure, title=f"dim Hom in T0({cat.descriptor})")
        data["figure"] = args.figure
    emit(args, data, text, rows)
    if has_oracle and oracle != table:
        return 1
    return 0


def cmd_gram(args):
    cat, delta, T = _setup(args)
    x, y = _obj(cat, args.x), _obj(cat, args.y)
    basis = T.hom_basis(x, y)
    diag = T.identity(x)
    (d_rel,) = [r for r, _ in diag.items()]
    gram = []
    for r in basis:
        row = []
        for s in basis:
            prod = T.compose(T.dual(T.basis_morphism(r)), T.basis_morphism(s))
            row.append(str(prod.coefficient(d_rel)))
        gram.append(row)
    header = ("diagnostic pairing (not a trace form): entry (i,j) is the coefficient of the "
              "diagonal relation of x in dual(b_i) o b_j")
    data = {"schema": "knopkit.gram/1", "note": header, "category": cat.descriptor,
            "degree": delta.describe(), "x": cat.format_object(x), "y": cat.format_object(y),
            "basis": [T.format_relation(r) for r in basis], "matrix": gram}
    emit(args, data, ["# " + header] + ["\t".join(row) for row in gram],
         [["#" + header]] + gram)
    return 0


def cmd_semisimple(args):
    from .analysis import semisimplicity_check
    cat = category(args.cat)
    verdict = semisimplicity_check(make_degree(cat, args.delta), parse_point(args.point))
    data = verdict.to_json()
    lines = [f"semisimple: {data['semisimple']}"] + [
        f"{c['label']}: {c['expr']} not in {c['forbidden_set']}"
        + (f"  value={c['value']} violated={c['decided']}" if c["value"] is not None else "")
        for c in data["conditions"]]
    emit(args, data, lines)
    return 0


def cmd_tran_poset(args):
    from .analysis import tran_poset
    G = group(args.group)
    P = tran_poset(G)
    data = P.to_json()
    data["group"] = args.group
    data["inversion_holds"] = P.check_inversion()
    lines = [f"elements: {' '.join(P.elements)}"] + [
        f"mu({m['a']},{m['b']}) = {m['mu']}" for m in data["mobius"]]
    if args.figure:
        from .plotting import hasse_diagram
        hasse_diagram(P, args.figure, title=f"Tran({args.group})")
        data["figure"] = args.figure
    emit(args, data, lines,
         [["a", "b", "mu"]] + [[m["a"], m["b"], m["mu"]] for m in data["mobius"]])
    return 0 if data["inversion_holds"] else 1


def cmd_aut(args):
    from .analysis import aut_structure, brute_force_aut_count
    cat = category(args.cat)
    x = _obj(cat, args.x)
    aut = aut_structure(cat, x)
    data = aut.to_json()
    data["object"] = cat.format_object(x)
    status = 0
    if args.brute_force:
        count = brute_force_aut_count(cat, x)
        data["brute_force_order"] = count
        status = 0 if count == aut.order else 1
    emit(args, data, [f"order: {aut.order}"] + [json.dumps(f) for f in aut.factors])
    return status


def cmd_lift_check(args):
    from .functors import LiftRefused, check_lifted_functor, lift_functor, make_functor
    F = make_functor(args.functor)
    d1 = make_degree(F.source, args.delta) if args.delta else None
    d2 = make_degree(F.target, args.delta2) if args.delta2 else None
    try:
        L = lift_functor(F, d1, d2, args.bound)
    except LiftRefused as exc:
        data = {"schema": "knopkit.functor-check/1", "functor": F.descriptor, "lifted": False,
                "reason": str(exc), "reports": [r.to_json() for r in exc.reports]}
        emit(args, data, _report_text({"passed": False, **data}))
        return 1
    data = L.to_json()
    status = 0
    if args.lifted_bound > 0:
        rep = check_lifted_functor(L, args.lifted_bound)
        data["lifted_checks"] = rep.to_json()
        status = 0 if rep.passed else 1
    emit(args, data, _report_text({"passed": status == 0, **data}))
    return status


def _adjunction_descriptor(args) -> str:
    adj = args.adj
    if ":" in adj:
        return adj
    if adj == "slice":
        if not (args.inner and args.base):
            raise UsageError("slice adjunction needs --inner and --base", adj)
        return f"slice:inner={args.inner},base={args.base}"
    if adj == "trivial-orbits":
        return f"trivial-orbits:G={args.group or 'C2'}"
    if adj == "quot":
        if not (args.group and args.normal):
            raise UsageError("quot adjunction needs --group and --normal", adj)
        return f"quot:G={args.group},N={args.normal}"
    if adj == "identity":
        return f"identity:cat={args.inner or 'sets-op'}"
    raise UsageError(f"unknown adjunction {adj!r}", adj)


def cmd_adjunction_check(args):
    from .functors import make_adjunction, verify_lifted_adjunction
    adj = make_adjunction(_adjunction_descriptor(args))
    rep = verify_lifted_adjunction(adj, args.bound)
    data = rep.to_json()
    emit(args, data, _report_text(data))
    return 0 if rep.passed else 1


def cmd_specialize_sn(args):
    from .analysis import specialize_to_Sn
    cat, delta, T = _setup(args)
    x, y = _obj(cat, args.x), _obj(cat, args.y)
    M = specialize_to_Sn(T, args.n, parse_morphism(T, x, y, args.phi))
    rows = [[str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    data = {"schema": "knopkit.specialize-sn/1", "n": args.n, "x": cat.format_object(x),
            "y": cat.format_object(y), "shape": [M.rows, M.cols], "matrix": rows}
    emit(args, data, [" ".join(r) for r in rows], rows)
    return 0


def _karoubi_object(T: T0, summands_text: str, idem_text: Optional[str]):
    from .karoubi import karoubi_object
    cat = T.cat
    summands = [_obj(cat, s) for s in summands_text.split(";")]
    if idem_text is None:
        return karoubi_object(T, summands)
    try:
        raw = json.loads(idem_text)
    except ValueError:
        raise UsageError("idempotent must be a JSON matrix of morphism strings", idem_text) from None
    mat = [[parse_morphism(T, summands[j], summands[i], str(raw[i][j])) for j in range(len(summands))]
           for i in range(len(summands))]
    return karoubi_object(T, summands, mat)


def cmd_karoubi_hom(args):
    from .karoubi import karoubi_hom
    cat, delta, T = _setup(args)
    X = _karoubi_object(T, args.x, args.ex)
    Y = _karoubi_object(T, args.y, args.ey)
    H = karoubi_hom(T, X, Y, parse_point(args.point))
    data = H.to_json(T)
    emit(args, data, [f"hom_rank: {H.rank}", f"spanning_size: {len(H.spanning)}",
                      f"generic_point: {data['generic_point']}", data["caveat"]])
    return 0


# argument parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knopkit", description="Exact computations in T0(A, delta).")
    p.add_argument("--version", action="version", version=f"knopkit {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, cat=True, delta=True, bound=None):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--seed", type=int, default=0, help="random seed (all verbs are deterministic)")
        if cat:
            sp.add_argument("--cat", default="sets-op", help="category descriptor")
        if delta:
            sp.add_argument("--delta", default="delta:t", help="degree descriptor")
        if bound is not None:
            sp.add_argument("--bound", type=int, default=default_bound(bound),
                            help="object size bound (KNOPKIT_BOUND overrides the default)")
        return sp

    sp = verb("hom-basis", cmd_hom_basis, "list the relations spanning Hom([x],[y])")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)

    sp = verb("compose", cmd_compose, "second o first")
    for k in ("x", "y", "z", "first", "second"):
        sp.add_argument(f"--{k}", required=True)

    sp = verb("tensor", cmd_tensor, "phi (x) psi")
    for k in ("x", "y", "phi", "x2", "y2", "psi"):
        sp.add_argument(f"--{k}", required=True)

    sp = verb("dual", cmd_dual, "transpose of a morphism")
    for k in ("x", "y", "phi"):
        sp.add_argument(f"--{k}", required=True)

    verb("presentation-check", cmd_presentation_check, "check the generator relations", bound=2)
    verb("degree-check", cmd_degree_check, "check the degree function axioms", bound=3)

    sp = verb("hom-dim-table", cmd_hom_dim_table, "dimensions of Hom([x],[y]) up to a bound", bound=3)
    sp.add_argument("--figure", help="write a heatmap to this file")

    sp = verb("gram", cmd_gram, "diagnostic pairing matrix on Hom([x],[y])")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)

    sp = verb("semisimple", cmd_semisimple, "semisimplicity conditions")
    sp.add_argument("--point", action="append", help="evaluate at e.g. t=1/2")

    sp = verb("tran-poset", cmd_tran_poset, "poset of transitive G-sets with Moebius values",
              cat=False, delta=False)
    sp.add_argument("--group", "-G", default="C2")
    sp.add_argument("--figure", help="write a Hasse diagram to this file")

    sp = verb("aut", cmd_aut, "automorphism group of an object", delta=False)
    sp.add_argument("--x", required=True)
    sp.add_argument("--brute-force", action="store_true", help="also count automorphisms directly")

    sp = verb("lift-check", cmd_lift_check, "check a functor's lifting hypotheses", cat=False,
              delta=False, bound=2)
    sp.add_argument("--functor", required=True)
    sp.add_argument("--delta", help="degree on the source (default: the catalog's pair)")
    sp.add_argument("--delta2", help="degree on the target")
    sp.add_argument("--lifted-bound", type=int, default=1,
                    help="bound for the checks on the lifted functor (0 skips them)")

    sp = verb("adjunction-check", cmd_adjunction_check, "verify a lifted adjunction", cat=False,
              delta=False, bound=2)
    sp.add_argument("--adj", required=True, help="slice, trivial-orbits, quot, identity or a full descriptor")
    sp.add_argument("--inner")
    sp.add_argument("--base")
    sp.add_argument("--group", "-G")
    sp.add_argument("--normal", "-N")

    sp = verb("specialize-sn", cmd_specialize_sn, "matrix of a morphism on the S_n permutation modules")
    for k in ("x", "y", "phi"):
        sp.add_argument(f"--{k}", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = verb("karoubi-hom", cmd_karoubi_hom, "rank of Hom between Karoubi objects")
    sp.add_argument("--x", required=True, help="summands separated by ';'")
    sp.add_argument("--y", required=True)
    sp.add_argument("--ex", help="idempotent on x as a JSON matrix of morphism strings")
    sp.add_argument("--ey", help="idempotent on y")
    sp.add_argument("--point", action="append", help="override the generic point, e.g. t=7/3")
    return p


_PARSE_ERRORS = (UsageError, DescriptorError, DegreeSpecError, ScalarParseError, GroupError, CategoryError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .analysis import AnalysisError
    from .functors import FunctorSpecError
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    try:
        return args.fn(args)
    except _PARSE_ERRORS + (FunctorSpecError, KaroubiError, AnalysisError) as exc:
        token = getattr(exc, "token", "") or ""
        msg = f"knopkit {args.verb}: error: {exc}"
        if token:
            msg += f"\n  offending token: {token!r}"
        sys.stderr.write(msg + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
