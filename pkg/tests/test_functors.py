import pytest

from knopkit.categories import category, parse_object
from knopkit.degree import PhiDegree, Power
from knopkit.functors import (CATALOG, FunctorSpecError, LiftRefused, check_adjunction_squares,
                              check_lifted_functor, check_preserves_pullbacks, check_preserves_terminal,
                              lift_functor, make_adjunction, make_functor, verify_lifted_adjunction)
from knopkit.scalars import Scalar


def test_linearize_object():
    F = make_functor("linearize:q=2")
    x = parse_object(category("sets-op"), "2")
    assert F.obj(x).dim == 2


def test_slice_times_object():
    F = make_functor("slice-F:inner=vect:q=2,base=1")
    img = F.obj(category("vect:q=2").space(2))
    assert F.target.format_object(img).startswith("(3,")


def test_quotient_orbits_of_free_orbit():
    F = make_functor("quot-orbits:G=C4,N=C2")
    img = F.obj(parse_object(F.source, "free"))
    assert F.target.object_size(img) == 2
    assert F.target.format_object(img) == "free"


def test_iterated_wreath_restriction_degree():
    F = make_functor("iter-wreath-res:G=S3,H=C2")
    d1, _ = F.default_degrees()
    assert isinstance(d1, PhiDegree)
    pf, pt = Scalar.var("phi(free)"), Scalar.var("phi(triv)")
    assert d1.phi == {"free": pf ** 3, "sub2": pf * pt, "sub3": pf, "triv": pt}


def test_relative_wreath_restriction_uses_index_power():
    d1, _ = make_functor("rel-wreath-res:G=S3,H=C2").default_degrees()
    assert isinstance(d1, Power) and d1.k == 3


def test_catalog_descriptors_resolve():
    examples = {
        "linearize": "linearize:q=2", "wreath-ind": "wreath-ind:G=C2", "wreath-res": "wreath-res:G=C2",
        "rel-wreath-ind": "rel-wreath-ind:G=S3,H=C2", "rel-wreath-res": "rel-wreath-res:G=S3,H=C2",
        "iter-wreath-ind": "iter-wreath-ind:G=S3,H=C2", "iter-wreath-res": "iter-wreath-res:G=S3,H=C2",
        "rep-ind": "rep-ind:G=C2,q=3", "rep-res": "rep-res:G=C2,q=3",
        "slice-F": "slice-F:inner=vect:q=2,base=1", "slice-G": "slice-G:inner=vect:q=2,base=1",
        "trivial-T": "trivial-T:G=C2", "orbits-F": "orbits-F:G=C2", "invariants-G": "invariants-G:G=C2",
        "quot-pullback": "quot-pullback:G=C4,N=C2", "quot-orbits": "quot-orbits:G=C4,N=C2",
        "quot-invariants": "quot-invariants:G=C4,N=C2", "identity": "identity:cat=sets-op",
    }
    assert set(examples) == set(CATALOG)
    for desc in examples.values():
        assert make_functor(desc).descriptor == desc


@pytest.mark.parametrize("desc", ["frobnicate:G=C2", "wreath-ind", "quot-orbits:G=S3,N=C2",
                                  "slice-F:inner=vect:q=2"])
def test_bad_descriptors(desc):
    with pytest.raises(FunctorSpecError):
        make_functor(desc)


@pytest.mark.parametrize("desc,bound", [("linearize:q=2", 1), ("wreath-ind:G=C2", 2), ("trivial-T:G=C2", 2)])
def test_lifted_functor_is_compatible(desc, bound):
    L = lift_functor(make_functor(desc), bound=bound)
    assert L.monoidal
    rep = check_lifted_functor(L, bound)
    assert rep.passed and rep.checked > 0, rep.counterexample


def test_slice_forget_lifts_without_monoidality():
    L = lift_functor(make_functor("slice-G:inner=vect:q=2,base=1"), bound=1)
    assert not L.monoidal
    assert L.flags()["preserves_terminal"] == "failed"
    assert check_lifted_functor(L, 1).passed


def test_lifted_identity_is_identity():
    L = lift_functor(make_functor("wreath-ind:G=C2"), bound=1)
    S, T = L.source_T, L.target_T
    x = parse_object(L.base.source, "2")
    assert L(S.identity(x)) == T.identity(L.obj(x))


def test_invariants_lift_is_refused():
    with pytest.raises(LiftRefused) as info:
        lift_functor(make_functor("invariants-G:G=C2"), bound=2)
    failed = {r.check for r in info.value.reports if not r.passed}
    assert "preserves_pullbacks" in failed


def test_pullback_report_json():
    rep = check_preserves_pullbacks(make_functor("orbits-F:G=C2"), 2)
    data = rep.to_json()
    assert rep.passed and data["status"] == "verified-up-to-bound(2)"
    assert not check_preserves_terminal(make_functor("slice-G:inner=vect:q=2,base=1")).passed


def test_identity_adjunction():
    adj = make_adjunction("identity:cat=sets-op")
    assert all(r.passed for r in check_adjunction_squares(adj, 2).values())
    assert verify_lifted_adjunction(adj, 1).passed


def test_quotient_adjunction_counit_squares_fail_at_bound_four():
    adj = make_adjunction("quot:G=C4,N=C2")
    squares = check_adjunction_squares(adj, 4)
    assert squares["triangles"].passed and squares["eta_squares"].passed
    assert not squares["eps_squares"].passed
