import itertools

import pytest

from knopkit.categories import (CategoryError, DescriptorError, bell, category, op, parse_object,
                                set_partitions)
from knopkit.categories.base import Arrow

SMALL = [("sets", 3), ("sets-op", 3), ("vect:q=2", 2), ("vect:q=3", 1), ("gsets:G=C2", 3),
         ("gsets-op:G=C2", 3), ("gsets-op:G=S3", 3), ("gsets-free-op:G=C2", 4), ("rep:G=C2,q=3", 2),
         ("slice:inner=vect:q=2,base=1", 2), ("slice:inner=sets-op,base=1", 2)]


def bell_oracle(n):
    # Bell numbers by the recurrence B(n+1) = sum C(n,k) B(k)
    from math import comb
    b = [1]
    for m in range(n):
        b.append(sum(comb(m, k) * b[k] for k in range(m + 1)))
    return b[n]


@pytest.mark.parametrize("n", range(8))
def test_set_partitions_are_counted_by_bell(n):
    parts = list(set_partitions(n))
    assert len(parts) == bell(n) == bell_oracle(n)
    assert len({tuple(p) for p in parts}) == len(parts)


@pytest.mark.parametrize("desc,bound", SMALL)
def test_category_laws(desc, bound):
    cat = category(desc)
    objs = cat.objects(bound)
    assert objs
    homs = {(x, y): cat.morphisms(x, y) for x in objs for y in objs}
    one = cat.terminal()
    for x in objs:
        assert len(cat.morphisms(x, one)) == 1
        assert cat.is_iso(cat.identity(x))
    for (x, y), fs in homs.items():
        for f in fs:
            assert cat.compose(f, cat.identity(x)) == f == cat.compose(cat.identity(y), f)
            e, m = cat.image(f)
            assert cat.is_epi(e) and cat.is_mono(m)
            assert cat.compose(m, e) == f
            assert cat.is_iso(f) == (cat.is_epi(f) and cat.is_mono(f))


@pytest.mark.parametrize("desc,bound", SMALL)
def test_pullbacks_are_universal(desc, bound):
    cat = category(desc)
    objs = cat.objects(1 if desc.startswith("rep") else min(bound, 2))
    for z, x, y in itertools.product(objs, repeat=3):
        for f in cat.morphisms(x, z)[:4]:
            for g in cat.morphisms(y, z)[:4]:
                pb = cat.pullback(f, g)
                if pb is None:
                    continue
                assert cat.compose(f, pb.left) == cat.compose(g, pb.right)
                # every cone from a small object factors uniquely
                for w in objs[:3]:
                    for a in cat.morphisms(w, x):
                        for b in cat.morphisms(w, y):
                            if cat.compose(f, a) != cat.compose(g, b):
                                continue
                            m = pb.mediate(a, b)
                            assert cat.compose(pb.left, m) == a and cat.compose(pb.right, m) == b


@pytest.mark.parametrize("desc,bound", SMALL)
def test_epis_stable_under_pullback(desc, bound):
    cat = category(desc)
    objs = cat.objects(min(bound, 2))
    for z, x, y in itertools.product(objs, repeat=3):
        for e in cat.epis(x, z):
            for g in cat.morphisms(y, z)[:4]:
                pb = cat.pullback(e, g)
                if pb is not None:
                    assert cat.is_epi(pb.right)


def test_subobject_counts():
    assert len(category("sets").subobjects(parse_object(category("sets"), "3"))) == 8
    V = category("vect:q=2")
    assert len(V.subobjects(V.space(2))) == 5
    # quotients of a 3-point set are its partitions
    S = category("sets-op")
    assert len(S.subobjects(parse_object(S, "3"))) == 5


def test_free_pushout_can_fail():
    C = category("gsets-free-op:G=C2")
    inner = C.inner
    free = parse_object(C, "free")
    two = inner.sum_of([free, free])
    swap = Arrow(free, free, (1, 0))
    # identify the two copies once directly and once with a twist
    f = inner.copair(inner.coproduct(free, free), inner.identity(free), inner.identity(free))
    g = inner.copair(inner.coproduct(free, free), inner.identity(free), swap)
    assert f.source == two
    assert inner.pushout(f, g) is None


def test_opposite_reverses_arrows():
    C = category("sets-op")
    x, y = parse_object(C, "1"), parse_object(C, "2")
    assert len(C.morphisms(y, x)) == 2 and len(C.morphisms(x, y)) == 1
    u = C.inner.morphisms(x, y)[0]
    assert op(u).source == y and op(u).target == x


@pytest.mark.parametrize("desc,text", [("gsets-op:G=C2", "3*free+triv"), ("rep:G=S3,q=5", "1+2a"),
                                       ("rep:G=C2,q=3", "reg"), ("slice:inner=vect:q=2,base=1", "2")])
def test_object_descriptors(desc, text):
    cat = category(desc)
    x = parse_object(cat, text)
    cat.check_object(x)


@pytest.mark.parametrize("desc", ["vect", "gsets:G=Q8", "wat:q=2", "slice:inner=sets"])
def test_bad_descriptors(desc):
    with pytest.raises((DescriptorError, CategoryError, ValueError)):
        category(desc)


def test_bad_object():
    with pytest.raises(DescriptorError):
        parse_object(category("gsets-op:G=C2"), "sub7")
