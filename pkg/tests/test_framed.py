import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from legendrian_calculus.errors import (
    InvalidGaussCode,
    InvalidLadder,
    InvalidPath,
    MoveNotApplicable,
    UnderlyingMismatch,
)
from legendrian_calculus.framed import (
    R3,
    CrossingChange,
    FramedDiagram,
    FramingLadder,
    KinkAbsorb,
    KnotDiagram,
    MoveSequence,
    OffsetTrade,
    Rotate,
    SingularFramedDiagram,
    Visit,
    applicable_moves,
    apply_move,
    concat_paths,
    crossing_change,
    delta_I,
    delta_I_filtered,
    discriminant_invariant,
    framed_homotopic_parity,
    framing_obstruction,
    is_loop,
    ladder_classes,
    loop_words,
    path_states,
    random_move,
    reverse_path,
    self_linking,
    shift_framing,
    singular_at,
    writhe,
)
from legendrian_calculus.topology.double_points import WordPair, alpha_nu


def _alpha_nu(snapshot):
    return alpha_nu(loop_words(snapshot))


@pytest.mark.parametrize("name,expected", [
    ("unknot", 0),
    ("unknot_minus_one", -1),
    ("positive_kink", 0),
    ("negative_kink", 0),
    ("trefoil", 3),
    ("r3_tangle", 3),
])
def test_self_linking(corpus, name, expected):
    assert self_linking(corpus.framed[name]) == expected


def test_gauss_code_checks():
    with pytest.raises(InvalidGaussCode):
        KnotDiagram((Visit(1, True, 1),))
    with pytest.raises(InvalidGaussCode):
        KnotDiagram((Visit(1, True, 1), Visit(1, True, 1)))
    with pytest.raises(InvalidGaussCode):
        KnotDiagram((Visit(1, True, 1), Visit(1, False, -1)))
    with pytest.raises(InvalidGaussCode):
        KnotDiagram((Visit(1, True, 2), Visit(1, False, 2)))
    with pytest.raises(InvalidGaussCode):
        KnotDiagram((Visit(1, True, 1), Visit(1, False, 1)), closed_word="a")


def test_same_as_ignores_base_point(corpus):
    trefoil = corpus.framed["trefoil"]
    rotated = Rotate(2).apply(trefoil)
    assert rotated != trefoil
    assert rotated.diagram.same_as(trefoil.diagram)
    assert not trefoil.diagram.same_as(corpus.framed["r3_tangle"].diagram)


def test_loop_word(corpus):
    assert corpus.framed["looped_kink"].diagram.loop_word() == "ab"
    assert KnotDiagram((), "aA").loop_word() == ""


def test_framing_obstruction(corpus):
    unknot = corpus.framed["unknot"]
    assert framing_obstruction(unknot, corpus.framed["unknot_minus_one"]) == 1
    assert not framed_homotopic_parity(unknot, corpus.framed["unknot_minus_one"])
    assert framed_homotopic_parity(shift_framing(unknot, 4), unknot)
    with pytest.raises(UnderlyingMismatch):
        framing_obstruction(unknot, corpus.framed["trefoil"])


@settings(max_examples=50, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_obstructions_add_up(a, b, c):
    k = FramedDiagram(KnotDiagram((Visit(1, True, 1), Visit(1, False, 1))))
    k1, k2, k3 = shift_framing(k, a), shift_framing(k, b), shift_framing(k, c)
    assert framing_obstruction(k1, k3) == framing_obstruction(k1, k2) + framing_obstruction(k2, k3)
    assert framing_obstruction(k1, k2) == a - b


def test_framing_ladder(corpus):
    base = corpus.framed["unknot"]
    ladder = FramingLadder(base, m_k=4)
    assert self_linking(ladder.rung(-3)) == -3
    assert ladder_classes(ladder, [-1, 0, 5]) == {-1: 3, 0: 0, 5: 1}
    assert ladder_classes(FramingLadder(base), [-1, 5]) == {-1: -1, 5: 5}
    with pytest.raises(InvalidLadder):
        FramingLadder(base, m_k=3)
    with pytest.raises(InvalidLadder):
        FramingLadder(base, m_k=0)


def test_singular_diagrams(corpus):
    s = corpus.singular["kink_written_negative"]
    assert s.diagram.signs() == {1: 1}
    assert s.visit_view() == [(1, None, None), (1, None, None)]
    assert corpus.singular["two_kinks_one_marked"].visit_view()[2:] == [(2, True, 1), (2, False, 1)]
    with pytest.raises(InvalidGaussCode):
        SingularFramedDiagram(corpus.framed["negative_kink"].diagram, frozenset({1}))
    with pytest.raises(InvalidGaussCode):
        SingularFramedDiagram(corpus.framed["trefoil"].diagram, frozenset({4}))


def test_singular_at(corpus):
    s = singular_at(corpus.framed["negative_kink"], 1)
    assert s.order == 1
    assert s.offset == 1
    assert s == corpus.singular["kink_written_negative"]


def test_loop_words(corpus):
    assert loop_words(corpus.singular["looped_kink"]) == WordPair("a", "b")
    assert loop_words(corpus.singular["kink"]) == WordPair("", "")
    with pytest.raises(InvalidPath):
        loop_words(corpus.singular["two_kinks"])


def test_r3_on_the_tangle(corpus):
    tangle = corpus.framed["r3_tangle"]
    assert applicable_moves(tangle)["r3"] == [R3(1, 2, 3)]
    moved = R3(1, 2, 3).apply(tangle)
    assert moved.diagram.visits == (
        Visit(2, True, 1), Visit(1, True, 1), Visit(3, True, 1),
        Visit(1, False, 1), Visit(3, False, 1), Visit(2, False, 1),
    )
    assert R3(1, 2, 3).inverse(tangle).apply(moved) == tangle


def test_no_triangle_in_the_trefoil(corpus):
    assert "r3" not in applicable_moves(corpus.framed["trefoil"])
    with pytest.raises(MoveNotApplicable):
        R3(1, 2, 3).apply(corpus.framed["trefoil"])


def test_offset_trade_on_a_closed_loop():
    k = FramedDiagram(KnotDiagram((), "a"))
    traded = OffsetTrade(0, 1).apply(k)
    assert traded.diagram.visits == (Visit(1, True, 1), Visit(1, False, 1, "a"))
    assert traded.offset == -1
    assert KinkAbsorb(1).apply(traded) == k


def test_kink_absorb_needs_a_kink(corpus):
    with pytest.raises(MoveNotApplicable):
        KinkAbsorb(1).apply(corpus.framed["trefoil"])


@pytest.mark.parametrize("name", ["unknot", "positive_kink", "trefoil", "r3_tangle", "looped_kink"])
def test_moves_are_inverted_exactly(corpus, name):
    k = corpus.framed[name]
    for kind, moves in applicable_moves(k).items():
        for move in moves:
            moved = apply_move(k, move)
            assert self_linking(moved) == self_linking(k), (kind, move)
            assert move.inverse(k).apply(moved) == k, (kind, move)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_moves_keep_self_linking(seed):
    rng = np.random.default_rng(seed)
    k = FramedDiagram(KnotDiagram((Visit(1, True, 1, "a"), Visit(1, False, 1))), -1)
    for _ in range(15):
        k = apply_move(k, random_move(k, rng))
        assert self_linking(k) == 0
    assert k.diagram.loop_word() == "a"


def test_crossing_change(corpus):
    kink = corpus.framed["positive_kink"]
    event = crossing_change(kink, 1)
    assert event.sign == -1
    assert event.snapshot == corpus.singular["kink"]
    changed = event.apply(kink)
    assert writhe(changed.diagram) == -1
    assert self_linking(changed) == self_linking(kink) - 2
    assert event.inverse(kink).apply(changed) == kink
    with pytest.raises(MoveNotApplicable):
        CrossingChange(1, 1, event.snapshot).apply(kink)
    with pytest.raises(MoveNotApplicable):
        crossing_change(kink, 2)


def test_path_counts(corpus):
    assert delta_I(corpus.paths["kink_crossing_change"]) == -1
    assert delta_I(corpus.paths["kink_flip_back"]) == 0
    assert delta_I(corpus.paths["r3_walk"]) == 0
    assert delta_I(corpus.paths["contractible_loop_crossing"]) == -1


def test_path_states(corpus):
    states = path_states(corpus.paths["r3_walk"])
    assert len(states) == 5
    assert all(self_linking(state) == 3 for state in states)
    end = path_states(corpus.paths["contractible_loop_crossing"])[-1]
    assert end == FramedDiagram(KnotDiagram((), "a"), -2)


def test_invalid_path_reports_the_event(corpus):
    path = MoveSequence(corpus.framed["unknot"], (Rotate(1), KinkAbsorb(1)))
    with pytest.raises(InvalidPath) as info:
        path_states(path)
    assert info.value.event_index == 1


@pytest.mark.parametrize("name", ["kink_crossing_change", "contractible_loop_crossing",
                                  "essential_loop_crossing", "kink_flip_back", "r3_walk"])
def test_reversal_and_concatenation(corpus, name):
    path = corpus.paths[name]
    reverse = reverse_path(path)
    assert delta_I(reverse) == -delta_I(path)
    loop = concat_paths(path, reverse)
    assert is_loop(loop)
    assert delta_I(loop) == 0


def test_concatenation_needs_matching_ends(corpus):
    with pytest.raises(InvalidPath):
        concat_paths(corpus.paths["kink_crossing_change"], corpus.paths["kink_crossing_change"])


@pytest.mark.parametrize("name,expected", [
    ("kink_crossing_change", 0),
    ("contractible_loop_crossing", 0),
    ("essential_loop_crossing", -1),
    ("kink_flip_back", 0),
])
def test_filtered_count(corpus, name, expected):
    assert delta_I_filtered(corpus.paths[name], _alpha_nu) == expected


def test_discriminant_invariant(corpus):
    path = corpus.paths["kink_crossing_change"]
    assert discriminant_invariant(path, [corpus.paths["kink_flip_back"]]) == -1
    with pytest.raises(InvalidPath):
        discriminant_invariant(path, [path])
