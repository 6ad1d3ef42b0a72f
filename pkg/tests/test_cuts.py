import pytest
from hypothesis import given, strategies as st

from szczarba import presets
from szczarba.cuts import (
    IntervalCut,
    InvalidSplit,
    cut_faces,
    cuts_above,
    cuts_below,
    enumerate_cuts,
    epsilon,
    epsilon_closed,
    epsilon_sign,
    maximal_refinement,
    refine,
    refinements,
    suspended_cooperation,
)


def all_cuts(nmax=7):
    for n in range(nmax + 1):
        for k in range(0, n + 1):
            yield from enumerate_cuts(n, k)


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("k", range(4))
def test_cut_counts_match_brute_force(oracles, n, k):
    assert len(enumerate_cuts(n, k)) == oracles["cut_counts"][f"{n},{k}"]


def test_small_enumeration():
    assert [c.bounds for c in enumerate_cuts(2, 1)] == [(0, 0, 1, 2), (0, 0, 2, 2), (0, 1, 2, 2)]


def test_invalid_cuts():
    with pytest.raises(ValueError):
        IntervalCut(3, (0, 1, 1, 3))     # empty labelled interval
    with pytest.raises(ValueError):
        IntervalCut(3, (0, 2, 1, 3))
    with pytest.raises(InvalidSplit):
        refine(IntervalCut(2, (0, 0, 2, 2)), 1, 0)


def test_labels_and_refinement_example():
    p = IntervalCut(3, (0, 0, 1, 3))
    assert p.labels() == "0→(2)0→(1)1→(2)3"
    top = maximal_refinement(p)
    assert top.q == (1, 1, 1)
    assert top.ell == 0
    assert epsilon_sign(p) == 1


def test_closed_formula_example():
    p = IntervalCut(4, (0, 0, 2, 2, 4, 4))
    assert p.q == (2, 2) and p.ell == 0
    assert epsilon_sign(p) == -1


def test_one_refinement_two_positions():
    p = IntervalCut(3, (0, 0, 1, 3))
    assert sum(1 for r in refinements(p) if r.k == 2 and r.final(1) != p.final(1)) == 2


def test_epsilon_equals_closed_formula_when_no_final_length():
    for p in all_cuts():
        if p.ell == 0:
            assert epsilon(p) == epsilon_closed(p)


def test_epsilon_refinement_invariant():
    for p in all_cuts():
        for r in refinements(p):
            assert epsilon(r) == epsilon(p), (p, r)
        assert epsilon(p) == epsilon_closed(maximal_refinement(p))


def test_counts_above_and_below():
    for p in all_cuts(6):
        assert len(cuts_above(p)) == 2 ** p.ell
        assert len(cuts_below(p)) == 2 ** p.ell1


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_last_face_shared_by_comparable_cuts(nk):
    n, k = nk
    X = presets.standard_simplex(n)
    x = X.basis(n)[-1]
    for p in enumerate_cuts(n, k)[:20]:
        for q in cuts_above(p):
            assert cut_faces(X, x, q)[-1] == cut_faces(X, x, p)[-1]


def test_cut_faces_vertex_lists():
    X = presets.standard_simplex(3)
    x = X.simplex("v0123")
    p = IntervalCut(3, (0, 0, 2, 2, 3, 3))
    assert [X.format_simplex(y) for y in cut_faces(X, x, p)] == ["012", "23", "023"]
    X2 = presets.standard_simplex(2)
    y = X2.simplex("v012")
    assert [X2.format_simplex(z) for z in cut_faces(X2, y, IntervalCut(2, (0, 0, 2, 2)))] == ["012", "02"]
    assert [X2.format_simplex(z) for z in cut_faces(X2, y, IntervalCut(2, (0, 1, 2, 2)))] == ["12", "012"]


def test_cooperation_on_one_reduced_2_simplex_vanishes():
    X = presets.collapsed_simplex(2, 1)
    assert not suspended_cooperation(X, X.simplex("x012"), 1)


def test_cooperation_on_3_simplex_six_terms():
    X = presets.standard_simplex(3)
    out = suspended_cooperation(X, X.simplex("v0123"), 1)
    assert len(out) == len(enumerate_cuts(3, 1)) == 6
