"""The ten acceptance criteria, one test each.

Run under pytest for a PASS/FAIL summary line per criterion, or directly
with ``python tests/test_acceptance.py``.
"""

import itertools
import os
import subprocess
import sys
from fractions import Fraction

import sympy

from knopkit.analysis import (aut_structure, brute_force_aut_count, semisimplicity_check,
                              specialize_to_Sn, tran_poset)
from knopkit.categories import category, parse_object
from knopkit.degree import (FreeOpT, PhiDegree, Power, SetsOpT, TauDegree, VectT, check_degree_axioms,
                            make_degree, standard_degree, tau_prime_t)
from knopkit.functors import (check_adjunction_squares, make_adjunction, make_functor,
                              preservation_reports, verify_lifted_adjunction)
from knopkit.groups import group
from knopkit.scalars import Scalar
from knopkit.t0 import T0


# independent oracles --------------------------------------------------------------

def bell_triangle(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n, q):
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def blocks_of(labels):
    out = {}
    for i, b in enumerate(labels):
        out.setdefault(b, set()).add(i)
    return frozenset(frozenset(v) for v in out.values())


def stack_diagrams(p, q, nx, ny, nz):
    """Compose partition diagrams: ``p`` on x+y, ``q`` on y+z.  Returns the
    partition of x+z and the number of closed components in the middle."""
    # points: x -> ("x", i), y -> ("y", j), z -> ("z", k)
    parent = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            a = parent[a]
        return a

    def union(a, b):
        parent[find(a)] = find(b)

    def name(i, first, second, n_first):
        return (first, i) if i < n_first else (second, i - n_first)

    for block in p:
        pts = [name(i, "x", "y", nx) for i in block]
        for a in pts[1:]:
            union(pts[0], a)
    for block in q:
        pts = [name(i, "y", "z", ny) for i in block]
        for a in pts[1:]:
            union(pts[0], a)
    comps = {}
    for pt in [("x", i) for i in range(nx)] + [("y", j) for j in range(ny)] + [("z", k) for k in range(nz)]:
        comps.setdefault(find(pt), []).append(pt)
    closed = sum(1 for c in comps.values() if all(s == "y" for s, _ in c))
    outer = []
    for c in comps.values():
        idx = {i if s == "x" else nx + i for s, i in c if s != "y"}
        if idx:
            outer.append(frozenset(idx))
    return frozenset(outer), closed


# criteria ---------------------------------------------------------------------------

def test_criterion_1_composition_rule(acceptance):
    cases = [("sets-op", "delta:t", 4), ("vect:q=2", "delta:t", 2), ("gsets-op:G=C2", "delta:t", 4),
             ("gsets-op:G=C2", "delta:phi={free:a,triv:b}", 3), ("gsets-free-op:G=C3", "delta:t", 6),
             ("rep:G=C2,q=3", "delta:tau={1:a,sgn:b}", 2), ("slice:inner=sets-op,base=1", "delta:t", 3),
             ("gsets-op:G=S3", "delta:t", 3)]
    checked, bad = 0, []
    for desc, spec, bound in cases:
        cat = category(desc)
        T = T0(make_degree(cat, spec))
        objs = cat.objects(bound)
        for x in objs:
            for y in objs:
                for e in cat.epis(x, y):
                    checked += 1
                    g = T.gamma(e)
                    if T.compose(g, T.dual(g)) != T.identity(y).scale(T.delta(e)):
                        bad.append((desc, cat.format_arrow(e)))
    ok = not bad and checked > 0
    acceptance(1, "<Ge> o <Ge>^v = delta(e) Id", ok, f"{checked} epimorphisms, {len(cases)} pairs")
    assert ok, bad[:3]


def test_criterion_2_partition_algebra(acceptance):
    cat = category("sets-op")
    T = T0(standard_degree(cat))
    t = Scalar.var("t")
    sets = [parse_object(cat, str(k)) for k in range(3)]
    pairs = mismatches = 0
    for x, y, z in itertools.product(sets, repeat=3):
        for r in T.hom_basis(x, y):
            for s in T.hom_basis(y, z):
                pairs += 1
                got = T.compose(T.basis_morphism(s), T.basis_morphism(r))
                part, closed = stack_diagrams(blocks_of(r.mono.data.data), blocks_of(s.mono.data.data),
                                              x.n, y.n, z.n)
                want = {part: t ** closed}
                have = {blocks_of(rel.mono.data.data): c for rel, c in got.items()}
                if have != want:
                    mismatches += 1
    dims_ok = all(len(T.hom_basis(parse_object(cat, str(m)), parse_object(cat, str(n)))) == bell_triangle(m + n)
                  for m in range(9) for n in range(9 - m))
    ok = mismatches == 0 and dims_ok
    acceptance(2, "partition diagram stacking and Bell dimensions", ok,
               f"{pairs} composable pairs, Bell(m+n) for m+n<=8")
    assert ok


def test_criterion_3_subspace_counts(acceptance):
    cat = category("vect:q=2")
    T = T0(standard_degree(cat))
    table = {}
    for m in range(5):
        for n in range(5 - m):
            table[(m, n)] = len(T.hom_basis(cat.space(m), cat.space(n)))
    ok = all(v == subspace_count(m + n, 2) for (m, n), v in table.items())
    ok = ok and table[(1, 1)] == 5 and table[(2, 2)] == 67
    acceptance(3, "dim Hom in T0(Vect_2) = subspace counts", ok,
               f"{len(table)} pairs, Hom([2],[2]) = {table[(2, 2)]}")
    assert ok


def test_criterion_4_degree_axioms(acceptance):
    deltas = [
        SetsOpT(category("sets-op"), Scalar.var("t")),
        VectT(category("vect:q=2"), Scalar.var("t")),
        FreeOpT(category("gsets-free-op:G=C2"), Scalar.var("t")),
        PhiDegree(category("gsets-op:G=S3"), {"free": "a", "sub2": "b", "sub3": "c", "triv": "d"}),
        TauDegree(category("rep:G=C2,q=3"), {"1": "a", "sgn": "b"}),
        make_degree(category("slice:inner=vect:q=2,base=1"), "delta:t"),
        Power(SetsOpT(category("sets-op"), Scalar.var("t")), 3),
    ]
    bounds = [3, 2, 4, 3, 2, 2, 3]
    reports = [check_degree_axioms(d, b) for d, b in zip(deltas, bounds)]
    ok = all(r.passed for r in reports)
    n = sum(sum(r.checked.values()) for r in reports)
    acceptance(4, "degree axioms (identity, multiplicativity, pullback invariance)", ok,
               f"{len(deltas)} degree functions, {n} instances")
    assert ok, [r.counterexample for r in reports if not r.passed]


def test_criterion_5_semisimplicity(acceptance):
    checks = []
    sets = make_degree(category("sets-op"), "delta:t")
    for t in range(6):
        checks.append(semisimplicity_check(sets, {"t": t}).semisimple is False)
    checks.append(semisimplicity_check(sets, {"t": Fraction(1, 2)}).semisimple is True)
    vect = make_degree(category("vect:q=2"), "delta:t")
    window = [Fraction(k) for k in range(0, 17)] + [Fraction(1, 2), Fraction(3, 2), Fraction(-2)]
    violated = {v for v in window if semisimplicity_check(vect, {"t": v}).semisimple is False}
    checks.append(violated == {Fraction(k) for k in (1, 2, 4, 8, 16)})
    for desc in ("rep:G=C2,q=3", "rep:G=S3,q=5"):
        cat = category(desc)
        d = TauDegree(cat, tau_prime_t(cat, "t"))
        for t in (Fraction(1, 2), Fraction(7, 3), Fraction(3), Fraction(10), Fraction(-1)):
            checks.append(semisimplicity_check(d, {"t": t}).semisimple is False)
    P = tran_poset(group("C2"))
    checks.append(P.mu("free", "triv") == -1 and P.check_inversion())
    phi = PhiDegree(category("gsets-op:G=C2"), {"free": "a", "triv": "b"})
    conds = {c.label: c.expr for c in semisimplicity_check(phi).conditions}
    a, b = Scalar.var("a"), Scalar.var("b")
    checks.append(conds == {"free": a - b, "triv": b})
    ok = all(checks)
    acceptance(5, "semisimplicity verdicts at specialized points", ok, f"{len(checks)} verdicts")
    assert ok, checks


def test_criterion_6_automorphism_orders(acceptance):
    gset_cases = [("gsets-op:G=C2", 4), ("gsets-op:G=C3", 4), ("gsets-op:G=S3", 5)]
    module_cases = [("rep:G=C2,q=3", 2), ("rep:G=S3,q=5", 3)]
    n_g = n_m = 0
    bad = []
    for desc, bound in gset_cases + module_cases:
        cat = category(desc)
        for x in cat.objects(bound):
            if cat.object_size(x) == 0:
                continue
            # enumeration of End(x) must stay small: at most 5^4 matrices
            if desc.startswith("rep") and cat.q ** len(cat.hom_basis(x, x)) > 5 ** 4:
                continue
            if aut_structure(cat, x).order != brute_force_aut_count(cat, x):
                bad.append((desc, cat.format_object(x)))
            if desc.startswith("rep"):
                n_m += 1
            else:
                n_g += 1
    ok = not bad and n_g >= 20 and n_m >= 10
    acceptance(6, "automorphism group orders vs enumeration", ok, f"{n_g} G-sets, {n_m} modules")
    assert ok, bad


def test_criterion_7_specialization(acceptance):
    cat = category("sets-op")
    T = T0(standard_degree(cat))
    sets = [parse_object(cat, str(k)) for k in range(3)]
    pairs = 0
    ok = True
    for n in (2, 3, 4):
        for x, y, z in itertools.product(sets, repeat=3):
            for r in T.hom_basis(x, y):
                phi = T.basis_morphism(r)
                Mphi = specialize_to_Sn(T, n, phi)
                for s in T.hom_basis(y, z):
                    psi = T.basis_morphism(s)
                    pairs += 1
                    if specialize_to_Sn(T, n, T.compose(psi, phi)) != specialize_to_Sn(T, n, psi) * Mphi:
                        ok = False
        one = sets[1]
        Pi = [r for r in T.hom_basis(one, one) if len(set(r.mono.data.data)) == 2][0]
        M = specialize_to_Sn(T, n, T.basis_morphism(Pi))
        ok = ok and M == sympy.ones(n, n) and M * M == n * M
        PiPi = T.compose(T.basis_morphism(Pi), T.basis_morphism(Pi))
        ok = ok and PiPi == T.basis_morphism(Pi, Scalar.var("t"))
    acceptance(7, "specialization to S_n is multiplicative", ok, f"{pairs} pairs, n in 2..4")
    assert ok


def test_criterion_8_functor_catalog(acceptance):
    positive = [
        ("linearize:q=2", 3), ("wreath-ind:G=C2", 3), ("wreath-res:G=C2", 4),
        ("rel-wreath-ind:G=S3,H=C2", 6), ("rel-wreath-res:G=S3,H=C2", 6),
        ("iter-wreath-ind:G=S3,H=C2", 3), ("iter-wreath-res:G=S3,H=C2", 3),
        ("rep-ind:G=C2,q=3", 2), ("rep-res:G=C2,q=3", 2),
        ("slice-F:inner=vect:q=2,base=1", 2), ("slice-G:inner=vect:q=2,base=1", 2),
        ("trivial-T:G=C2", 3), ("orbits-F:G=C2", 3),
        ("quot-pullback:G=C4,N=C2", 3), ("quot-orbits:G=C4,N=C2", 3),
    ]
    results = {}
    for desc, bound in positive:
        F = make_functor(desc)
        d1, d2 = F.default_degrees()
        results[desc] = preservation_reports(F, d1, d2, bound)
    # slice_G keeps pullbacks and degrees but not the terminal object
    good = all(r["preserves_degree"].passed and r["preserves_pullbacks"].passed for r in results.values())
    terminal = {d: r["preserves_terminal"].passed for d, r in results.items()}
    good = good and all(v for d, v in terminal.items() if not d.startswith("slice-G"))
    good = good and not terminal["slice-G:inner=vect:q=2,base=1"]

    wr = make_functor("wreath-res:G=C2")
    t = Scalar.var("t")
    plain = preservation_reports(wr, FreeOpT(wr.source, t), SetsOpT(wr.target, t), 3)
    power = preservation_reports(wr, Power(FreeOpT(wr.source, t), 2), SetsOpT(wr.target, t), 3)
    neg1 = not plain["preserves_degree"].passed and power["preserves_degree"].passed
    w = plain["preserves_degree"].counterexample
    neg1 = neg1 and w["delta"] == "t" and w["delta_of_image"] == "t^2"

    inv = make_functor("invariants-G:G=C2")
    d1, d2 = inv.default_degrees()
    rep = preservation_reports(inv, d1, d2, 3)["preserves_pullbacks"]
    w = rep.counterexample or {}
    # pushout of (point <- free orbit -> point) is a point; after taking
    # invariants the span is (point <- empty -> point) with pushout 2 points
    neg2 = (not rep.passed and w.get("z") == "free" and w.get("x") == "triv" and w.get("y") == "triv"
            and w.get("image_of_pullback") == "1" and w.get("pullback_of_images") == "2")
    ok = good and neg1 and neg2
    acceptance(8, "functor catalog claims and both counterexamples", ok,
               f"{len(positive)} positive entries, 2 negative claims")
    assert ok, (good, neg1, neg2)


def test_criterion_9_adjunctions(acceptance):
    slice_adj = make_adjunction("slice:inner=vect:q=2,base=1")
    squares = check_adjunction_squares(slice_adj, 2)
    lifted = verify_lifted_adjunction(slice_adj, 2)
    slice_ok = all(r.passed for r in squares.values()) and lifted.passed

    tf = make_adjunction("trivial-orbits:G=C2")
    rep = verify_lifted_adjunction(tf, 2)
    eps = rep.reports["eps_squares"]
    w = eps.counterexample or {}
    tf_ok = (rep.info["unit_iso"].passed and rep.reports["unit_naturality"].passed
             and rep.reports["eta_squares"].passed and not eps.passed
             and w.get("source") == "free" and w.get("target") == "0" and w.get("f") == "op[]")
    ok = slice_ok and tf_ok
    acceptance(9, "slice adjunction lifts; trivial/orbits counit squares fail", ok)
    assert ok, (slice_ok, tf_ok)


CLI_RUNS = [
    ["hom-basis", "--cat", "sets-op", "--x", "2", "--y", "1"],
    ["compose", "--x", "1", "--y", "1", "--z", "1", "--first", "r1", "--second", "r1", "--seed", "7"],
    ["semisimple", "--cat", "gsets-op:G=S3", "--point", "t=5/2"],
    ["tran-poset", "-G", "V4", "--format", "text"],
    ["hom-dim-table", "--cat", "vect:q=2", "--bound", "2", "--format", "csv", "--seed", "3"],
    ["aut", "--cat", "rep:G=S3,q=5", "--x", "1+2a"],
    ["lift-check", "--functor", "invariants-G:G=C2", "--bound", "2"],
    ["karoubi-hom", "--x", "1;2", "--y", "1"],
]


def _run_cli(args, tmp):
    env = dict(os.environ)
    env.pop("KNOPKIT_BOUND", None)
    return subprocess.run([sys.executable, "-m", "knopkit.cli", *args], capture_output=True, env=env,
                          cwd=tmp, timeout=120)


def test_criterion_10_determinism(acceptance, tmp_path):
    same = True
    for args in CLI_RUNS:
        a, b = _run_cli(args, tmp_path), _run_cli(args, tmp_path)
        same = same and a.stdout == b.stdout and a.returncode == b.returncode and a.stdout
    figs = []
    for k in range(2):
        path = tmp_path / f"poset{k}.png"
        _run_cli(["tran-poset", "-G", "S3", "--figure", str(path), "--format", "text"], tmp_path)
        figs.append(path.read_bytes())
    same = bool(same) and figs[0] == figs[1]
    acceptance(10, "repeated CLI runs are byte-identical", same, f"{len(CLI_RUNS)} commands and a figure")
    assert same


if __name__ == "__main__":
    import tempfile
    import time
    from pathlib import Path

    def record(n, title, ok, detail=""):
        print(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    start = time.time()
    failed = 0
    for name, fn in sorted(globals().items(), key=lambda kv: int(kv[0].split("_")[2]) if kv[0].startswith("test_criterion_") else 0):
        if not name.startswith("test_criterion_"):
            continue
        try:
            if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    fn(record, Path(d))
            else:
                fn(record)
        except AssertionError:
            failed += 1
    print(f"{10 - failed}/10 criteria passed in {time.time() - start:.1f}s")
    sys.exit(1 if failed else 0)
