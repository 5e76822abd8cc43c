from fractions import Fraction

import pytest
import sympy

from knopkit.analysis import (AnalysisError, aut_structure, brute_force_aut_count, gl_order,
                              in_multiples, in_naturals, in_powers, orbit_counts, phi_from_gset,
                              phi_from_orbit_counts, semisimplicity_check, specialize_to_Sn,
                              tau_from_module, tran_poset)
from knopkit.categories import category, parse_object
from knopkit.degree import make_degree, standard_degree
from knopkit.groups import group
from knopkit.scalars import Scalar
from knopkit.t0 import T0


def test_mobius_values():
    assert tran_poset(group("C2")).mu("free", "triv") == -1
    P = tran_poset(group("S3"))
    assert (P.mu("free", "sub2"), P.mu("free", "sub3"), P.mu("free", "triv")) == (-1, -1, 1)
    assert tran_poset(group("C4")).mu("free", "triv") == 0
    assert tran_poset(group("V4")).mu("free", "triv") == 2


@pytest.mark.parametrize("g", ["C1", "C2", "C3", "C4", "V4", "S3"])
def test_mobius_inversion(g):
    P = tran_poset(group(g))
    assert P.check_inversion()
    assert all(P.mu(a, a) == 1 for a in P.elements)


def test_forbidden_sets():
    assert in_naturals(Fraction(0)) and in_naturals(Fraction(3))
    assert not in_naturals(Fraction(-1)) and not in_naturals(Fraction(1, 2))
    assert in_powers(Fraction(1), 2) and in_powers(Fraction(8), 2) and not in_powers(Fraction(6), 2)
    assert in_multiples(Fraction(0), 3) and in_multiples(Fraction(6), 3) and not in_multiples(Fraction(4), 3)


def test_undecided_without_point():
    v = semisimplicity_check(make_degree(category("sets-op"), "delta:t"))
    assert v.semisimple is None
    assert v.to_json()


@pytest.mark.parametrize("desc,obj,order", [
    ("gsets-op:G=C2", "2*free", 8),
    ("gsets-op:G=S3", "free", 6),
    ("gsets-op:G=S3", "sub2+triv", 1),
    ("rep:G=C2,q=3", "1+sgn", 4),
    ("rep:G=C2,q=3", "2*1", 48),
    ("vect:q=2", "2", 6),
])
def test_automorphism_orders(desc, obj, order):
    cat = category(desc)
    x = parse_object(cat, obj)
    assert aut_structure(cat, x).order == order
    assert brute_force_aut_count(cat, x) == order


def test_gl_order():
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48
    assert gl_order(0, 7) == 1


def test_phi_from_gset_matches_orbit_counts():
    cat = category("gsets-op:G=S3")
    for text in ("free", "sub2+triv", "2*sub3+free", "triv"):
        X = parse_object(cat, text)
        assert phi_from_gset(cat, X) == phi_from_orbit_counts(group("S3"), orbit_counts(cat, X))
    X = parse_object(cat, "sub2+triv")
    assert phi_from_gset(cat, X) == {"free": Scalar.const(2), "sub2": Scalar.const(2),
                                     "sub3": Scalar.const(1), "triv": Scalar.const(1)}


def test_tau_from_module():
    cat = category("rep:G=C2,q=3")
    assert tau_from_module(cat, parse_object(cat, "sgn")) == {"1": Scalar.const(1), "sgn": Scalar.const(3)}
    assert tau_from_module(cat, parse_object(cat, "2*1+sgn")) == {"1": Scalar.const(9), "sgn": Scalar.const(3)}


def test_specialize_projection():
    cat = category("sets-op")
    T = T0(standard_degree(cat))
    one = parse_object(cat, "1")
    Pi = [r for r in T.hom_basis(one, one) if len(set(r.mono.data.data)) == 2][0]
    assert specialize_to_Sn(T, 3, T.basis_morphism(Pi)) == sympy.ones(3, 3)
    assert specialize_to_Sn(T, 3, T.identity(one)) == sympy.eye(3)


def test_specialize_rejects_other_categories():
    cat = category("vect:q=2")
    T = T0(standard_degree(cat))
    x = cat.space(1)
    with pytest.raises(AnalysisError):
        specialize_to_Sn(T, 2, T.identity(x))
    sets = category("sets-op")
    T2 = T0(standard_degree(sets))
    with pytest.raises(AnalysisError):
        specialize_to_Sn(T2, 6, T2.identity(parse_object(sets, "1")))
