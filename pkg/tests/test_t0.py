import json

import pytest
from hypothesis import given, strategies as st

from knopkit.categories import category, parse_object
from knopkit.degree import make_degree
from knopkit.scalars import Scalar
from knopkit.t0 import T0, DomainMismatch, FormalMorphism, check_epi_relation, verify_presentation

t = Scalar.var("t")
SETTINGS = {
    "sets-op": ["0", "1", "2"],
    "vect:q=2": ["0", "1", "2"],
    "gsets-op:G=C2": ["triv", "free", "free+triv"],
    "rep:G=C2,q=3": ["1", "sgn", "1+sgn"],
}


def setup(desc):
    cat = category(desc)
    T = T0(make_degree(cat))
    return cat, T, [parse_object(cat, s) for s in SETTINGS[desc]]


coeffs = st.sampled_from([Scalar.const(1), Scalar.const(-2), t, t - 1, Scalar.const(0)])


@st.composite
def morphism(draw, T, x, y):
    basis = T.hom_basis(x, y)
    return FormalMorphism(x, y, {r: draw(coeffs) for r in basis})


@pytest.mark.parametrize("desc", sorted(SETTINGS))
@given(data=st.data())
def test_composition_is_associative(desc, data):
    cat, T, objs = setup(desc)
    x, y, z, w = (data.draw(st.sampled_from(objs)) for _ in range(4))
    f = data.draw(morphism(T, x, y))
    g = data.draw(morphism(T, y, z))
    h = data.draw(morphism(T, z, w))
    assert T.compose(h, T.compose(g, f)) == T.compose(T.compose(h, g), f)


@pytest.mark.parametrize("desc", sorted(SETTINGS))
@given(data=st.data())
def test_dual_is_an_involutive_antihomomorphism(desc, data):
    cat, T, objs = setup(desc)
    x, y, z = (data.draw(st.sampled_from(objs)) for _ in range(3))
    f = data.draw(morphism(T, x, y))
    g = data.draw(morphism(T, y, z))
    assert T.dual(T.dual(f)) == f
    assert T.dual(T.compose(g, f)) == T.compose(T.dual(f), T.dual(g))


@pytest.mark.parametrize("desc", sorted(SETTINGS))
@given(data=st.data())
def test_identity_and_linearity(desc, data):
    cat, T, objs = setup(desc)
    x, y, z = (data.draw(st.sampled_from(objs)) for _ in range(3))
    f, f2 = data.draw(morphism(T, x, y)), data.draw(morphism(T, x, y))
    g = data.draw(morphism(T, y, z))
    assert T.compose(T.identity(y), f) == f == T.compose(f, T.identity(x))
    assert T.compose(g, f + f2) == T.compose(g, f) + T.compose(g, f2)
    assert T.compose(g, f.scale(t)) == T.compose(g, f).scale(t)


@pytest.mark.parametrize("desc", ["sets-op", "gsets-op:G=C2"])
@given(data=st.data())
def test_tensor_is_functorial(desc, data):
    cat, T, objs = setup(desc)
    small = objs[:2]
    x, y, z, x2, y2, z2 = (data.draw(st.sampled_from(small)) for _ in range(6))
    f, g = data.draw(morphism(T, x, y)), data.draw(morphism(T, y, z))
    f2, g2 = data.draw(morphism(T, x2, y2)), data.draw(morphism(T, y2, z2))
    lhs = T.tensor(T.compose(g, f), T.compose(g2, f2))
    rhs = T.compose(T.tensor(g, g2), T.tensor(f, f2))
    assert lhs == rhs


def test_braiding_is_symmetric_and_natural():
    cat, T, objs = setup("sets-op")
    x, y = objs[1], objs[2]
    c = T.braiding(x, y)
    assert T.compose(T.braiding(y, x), c) == T.identity(cat.product(x, y).apex)
    f = T.hom_basis(x, x)
    g = T.hom_basis(y, y)
    for r in f:
        for s in g:
            a, b = T.basis_morphism(r), T.basis_morphism(s)
            assert T.compose(c, T.tensor(a, b)) == T.compose(T.tensor(b, a), c)


def test_gamma_is_a_functor():
    cat, T, objs = setup("gsets-op:G=C2")
    for x in objs:
        for y in objs:
            for z in objs:
                for f in cat.morphisms(x, y):
                    for g in cat.morphisms(y, z):
                        assert T.gamma(cat.compose(g, f)) == T.compose(T.gamma(g), T.gamma(f))


def test_small_compositions_by_hand():
    cat, T, objs = setup("sets-op")
    one = objs[1]
    delta, pi = T.hom_basis(one, one)
    assert T.identity(one) == T.basis_morphism(delta)
    assert T.compose(T.basis_morphism(pi), T.basis_morphism(pi)) == T.basis_morphism(pi, t)
    assert T.format_relation(pi) == "({1},{1'})"


def test_vect_hom_dimensions():
    V = category("vect:q=2")
    T = T0(make_degree(V))
    assert [len(T.hom_basis(V.space(m), V.space(1))) for m in range(3)] == [2, 5, 16]


def test_mismatched_composition():
    cat, T, objs = setup("sets-op")
    f = T.identity(objs[1])
    g = T.identity(objs[2])
    with pytest.raises(DomainMismatch):
        T.compose(g, f)


def test_json_round_trip():
    cat, T, objs = setup("gsets-op:G=C2")
    x, y = objs[2], objs[1]
    phi = FormalMorphism(x, y, {r: Scalar.parse(f"{i}*t + 1") for i, r in enumerate(T.hom_basis(x, y))})
    data = json.loads(T.dumps(phi))
    assert data["schema"] == "knopkit.formal-morphism/1"
    assert T.from_json(data, x, y) == phi


def test_epi_relations():
    cat, T, objs = setup("vect:q=2")
    for x in objs:
        for y in objs:
            for e in cat.epis(x, y):
                assert check_epi_relation(T, e)


@pytest.mark.parametrize("desc,bound", [("sets-op", 3), ("vect:q=2", 2), ("gsets-op:G=C2", 3),
                                        ("gsets-free-op:G=C2", 4), ("slice:inner=sets-op,base=1", 2),
                                        ("rep:G=C2,q=3", 1)])
def test_presentation(desc, bound):
    report = verify_presentation(T0(make_degree(category(desc))), bound)
    assert report.passed, report.counterexample


def test_zero_branch_in_free_gsets():
    # some relation products have no free pushout; those terms vanish and
    # composition stays associative
    cat = category("gsets-free-op:G=C2")
    T = T0(make_degree(cat))
    objs = cat.objects(4)
    mats = {(x, y): [T.basis_morphism(r) for r in T.hom_basis(x, y)] for x in objs for y in objs}
    for x in objs:
        for y in objs:
            for z in objs:
                for a in mats[(x, y)]:
                    for b in mats[(y, z)]:
                        ba = T.compose(b, a)
                        for c in mats[(z, x)][:3]:
                            assert T.compose(c, ba) == T.compose(T.compose(c, b), a)
    assert T.zero_branch_count > 0
