import itertools

import pytest
from hypothesis import given, strategies as st

from knopkit import fields as la
from knopkit.fields import field, galois_number, subspaces
from knopkit.groups import GroupError, find_subgroup, group


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    F = field(q)
    els = list(F.elements)
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in els[1:]:
        assert F.mul(a, F.inv(a)) == 1
    # the multiplicative group is cyclic of order q - 1
    assert any(len({F.power(g, k) for k in range(q - 1)}) == q - 1 for g in els[1:])


@given(st.sampled_from([4, 9]), st.data())
def test_distributivity(q, data):
    F = field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def gaussian(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q,n", [(2, 0), (2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_subspace_enumeration_matches_gaussian_binomials(q, n):
    F = field(q)
    for k in range(n + 1):
        assert len(subspaces(F, n, k)) == gaussian(n, k, q)
    assert galois_number(n, q) == sum(gaussian(n, k, q) for k in range(n + 1))


def test_linear_algebra_basics():
    F = field(3)
    A = la.Mat([[1, 2], [0, 1]], 2)
    Ai = la.inverse(F, A)
    assert la.matmul(F, A, Ai) == la.identity(2)
    assert la.rank(F, la.Mat([[1, 2], [2, 1]], 2)) == 1
    assert la.determinant(F, A) == 1


@pytest.mark.parametrize("name,order,classes", [
    ("C1", 1, 1), ("C2", 2, 2), ("C3", 3, 2), ("C4", 4, 3), ("V4", 4, 5), ("S3", 6, 4), ("C6", 6, 4)])
def test_presets(name, order, classes):
    G = group(name)
    assert G.order == order
    assert len(G.subgroup_classes) == classes
    assert G.subgroup_class_labels[0] == "free" or order == 1
    assert G.subgroup_class_labels[-1] == "triv" or order == 1


def test_permutation_generators():
    G = group("perm:[(1 2),(1 2 3)]")
    assert G.order == 6
    assert len(G.subgroup_classes) == 4


def test_group_tables_are_consistent():
    G = group("S3")
    e = G.identity
    for a in range(G.order):
        assert G.mul[a][G.inv[a]] == e
        for b in range(G.order):
            for c in range(G.order):
                assert G.mul[G.mul[a][b]][c] == G.mul[a][G.mul[b][c]]


def test_quotient_and_cosets():
    G = group("C4")
    N = find_subgroup(G, "sub2")
    Q, qmap = G.quotient(N)
    assert Q.order == 2
    assert all(Q.mul[qmap[a]][qmap[b]] == qmap[G.mul[a][b]] for a in range(4) for b in range(4))
    assert len(G.cosets(N)) == 2
    S3 = group("S3")
    with pytest.raises(GroupError):
        S3.quotient(find_subgroup(S3, "sub2"))


def test_unknown_group():
    with pytest.raises(GroupError):
        group("Q8")
