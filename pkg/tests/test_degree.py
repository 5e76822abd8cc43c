import pytest

from knopkit.categories import category, parse_object
from knopkit.categories.base import Arrow
from knopkit.degree import (ConstantOne, DegreeSpecError, DomainError, FreeOpT, PhiDegree, Power, SetsOpT,
                            SliceInduced, TauDegree, VectT, check_degree_axioms, make_degree, tau_prime_t,
                            tau_t)
from knopkit.scalars import ONE, Scalar

t = Scalar.var("t")


def test_sets_op_degree_counts_missed_points():
    C = category("sets-op")
    x, y = parse_object(C, "1"), parse_object(C, "3")
    # an epimorphism 3 -> 1 in Sets^op is an injection 1 -> 3
    e = [f for f in C.epis(y, x)][0]
    assert make_degree(C)(e) == t ** 2


def test_vect_degree_is_t_to_kernel_dimension():
    V = category("vect:q=3")
    e = V.epis(V.space(2), V.space(1))[0]
    assert VectT(V, t)(e) == t


def test_phi_degree_multiplies_orbit_values():
    C = category("gsets-op:G=C2")
    d = make_degree(C, "delta:phi={free:a,triv:b}")
    x = parse_object(C, "free+triv+triv")
    e = C.epis(x, parse_object(C, "triv"))
    values = sorted(str(d(f)) for f in e)
    assert values == ["a*b", "a*b"]


def test_tau_families():
    R = category("rep:G=S3,q=5")
    assert tau_t(R, t) == {"1": t, "sgn": t, "2a": t ** 2}
    assert tau_prime_t(R, t) == {"1": t, "sgn": ONE, "2a": ONE}
    d = TauDegree(R, tau_t(R, t))
    # prod tau(I)^{dim I} = t^(1 + 1 + 2*2) = t^|G|
    assert d.t_tau() == t ** 6


def test_power_substitutes_each_variable():
    C = category("gsets-free-op:G=C3")
    d = Power(FreeOpT(C, t), 3)
    e = C.epis(parse_object(C, "free"), parse_object(C, "0"))[0]
    assert d(e) == t ** 3


def test_non_epimorphism_is_rejected():
    C = category("sets-op")
    x, y = parse_object(C, "2"), parse_object(C, "1")
    f = C.morphisms(y, x)[0]  # a surjection 2 -> 1 read backwards: mono in Sets^op
    with pytest.raises(DomainError):
        make_degree(C)(f)


@pytest.mark.parametrize("spec", ["delta:phi={free:1}", "delta:phi={free:1,triv:1,foo:2}", "phi:t",
                                  "delta:tau={1:t}"])
def test_bad_specs(spec):
    with pytest.raises(DegreeSpecError):
        make_degree(category("gsets-op:G=C2"), spec)


@pytest.mark.parametrize("desc,spec,bound", [
    ("sets-op", "delta:t", 3), ("sets-op", "delta:1", 2), ("vect:q=2", "delta:t", 2),
    ("gsets-op:G=C3", "delta:phi={free:a,triv:b}", 3), ("gsets-free-op:G=S3", "delta:t", 6),
    ("rep:G=S3,q=5", "delta:tau=tau'_t", 1), ("slice:inner=sets-op,base=2", "delta:t", 2),
    ("sets-op", "delta:t^[2]", 3)])
def test_axioms_hold(desc, spec, bound):
    report = check_degree_axioms(make_degree(category(desc), spec), bound)
    assert report.passed, report.counterexample
    assert report.checked["identity"] > 0


def test_axiom_checker_finds_a_bad_degree():
    C = category("sets-op")

    class Broken(SetsOpT):
        def _value(self, e):
            return self.t + 1 if e.data.target.n > e.data.source.n else ONE

    report = check_degree_axioms(Broken(C, t), 3)
    assert not report.passed
    assert report.counterexample["axiom"] == "multiplicativity"
