import pytest
from hypothesis import given

from strategies import filtered, filtered_pairs
from decalage.checkers import (
    check_cellular_vanishing,
    check_e1_differential_is_triple_map,
    check_decale_pair,
    check_p_equals_decf,
    check_sta,
)
from decalage.complexes import CochainComplex
from decalage.filtrations import BifilteredComplex, bete_filtration, decale, trivial_filtration
from decalage.linalg import IntMatrix
from decalage.simplicial import (
    ClosedSubcomplexFlag,
    FlagError,
    circle,
    flag_filtration_F,
    skeletal_flag,
    torus,
)
from decalage.spectral import SpectralSequence


def times_two():
    return CochainComplex(0, 1, {0: 1, 1: 1}, {0: IntMatrix.from_rows([[2]])})


def marked_circle():
    X = circle()
    return flag_filtration_F(X, None, ClosedSubcomplexFlag(X, (frozenset({(0,)}),)))


def test_sta_on_zero_complex():
    C = CochainComplex.zero()
    assert check_sta(BifilteredComplex.of(trivial_filtration(C), trivial_filtration(C))).passed


def test_sta_violation_by_hand():
    C = times_two()
    rep = check_sta(BifilteredComplex.of(bete_filtration(C), trivial_filtration(C, 0)))
    assert not rep.passed
    assert [(v["r"], v["a"], v["b"], v["groupText"]) for v in rep.violations] == [(1, 0, 1, "Z")]


def test_pdec_refuses_without_precondition():
    C = times_two()
    rep = check_p_equals_decf(BifilteredComplex.of(bete_filtration(C), trivial_filtration(C, 0)))
    assert not rep.passed and rep.refused
    assert rep.to_json()["detail"]["sta"]["violations"]


def test_pdec_with_literal_decale():
    F = bete_filtration(times_two())
    assert check_p_equals_decf(BifilteredComplex.of(decale(F), F)).passed


def test_cellular_examples():
    X = circle()
    from decalage.simplicial import sheaf_cochains

    C = sheaf_cochains(X)
    assert check_cellular_vanishing(bete_filtration(C)).passed
    assert check_cellular_vanishing(marked_circle()).passed
    rep = check_cellular_vanishing(trivial_filtration(C, 0))
    assert not rep.passed and len(rep.violations) == 1
    with pytest.raises(ValueError):
        check_cellular_vanishing(bete_filtration(C), mode="sideways")


def test_e1_triples_requires_flag_tag():
    with pytest.raises(FlagError):
        check_e1_differential_is_triple_map(bete_filtration(times_two()))


def test_e1_triples_examples():
    X = circle()
    empty = flag_filtration_F(X, None, ClosedSubcomplexFlag(X, ()))
    rep = check_e1_differential_is_triple_map(empty)
    assert rep.passed and rep.detail["maps"] == 0
    skel = check_e1_differential_is_triple_map(flag_filtration_F(X, None, skeletal_flag(X)))
    assert skel.passed and skel.detail["maps"] == 1
    T = torus()
    rep = check_e1_differential_is_triple_map(flag_filtration_F(T, None, skeletal_flag(T)))
    assert rep.passed and rep.detail["maps"] >= 2


@given(filtered)
def test_decale_pair_vanishing(F):
    rep = check_decale_pair(F)
    assert rep.passed, rep.violations[:3]


@given(filtered)
def test_pdec_on_decale(F):
    rep = check_p_equals_decf(BifilteredComplex.of(decale(F), F))
    assert rep.passed, rep.failures[:3]


@given(filtered_pairs())
def test_pdec_whenever_sta_holds(pair):
    F, P = pair
    B = BifilteredComplex.of(P, F)
    rep = check_p_equals_decf(B)
    assert rep.passed == check_sta(B).passed, rep.failures[:3]


@given(filtered)
def test_cellular_vanishing_is_single_row(F):
    ss = SpectralSequence(F)
    single_row = all(q == 0 for (p, q) in ss.page(1).nonzero())
    assert check_cellular_vanishing(F).passed == single_row
