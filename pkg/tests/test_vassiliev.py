import pytest
from hypothesis import given, settings, strategies as st

from legendrian_calculus.errors import AssignmentMismatch, InsufficientRungs, InvalidLadder
from legendrian_calculus.framed import FramedDiagram, self_linking
from legendrian_calculus.fronts import FrontWord, L, R, X, orient
from legendrian_calculus.groups import CyclicGroup
from legendrian_calculus.vassiliev import (
    InvariantLadder,
    ResolutionAssignment,
    alternating_sum,
    assignments,
    build_ladder,
    extend_invariant,
    extension_coefficients,
    is_order_at_most,
    kinked_identity,
    make_kinked_singular,
    resolution_sign,
    resolve,
    restrict_to_legendrian,
    roundtrip_check,
    verify_main_identity,
)

TREFOIL = orient(FrontWord((L(1), L(1), X(2), X(2), X(2), R(1), R(1))))


def sl_squared(k):
    return self_linking(k) ** 2


def test_assignments(corpus):
    s = corpus.singular["trefoil_13"]
    found = list(assignments(s))
    assert len(found) == 4
    assert found[0] == ResolutionAssignment.of({1: 1, 3: 1})
    assert [resolution_sign(a) for a in found] == [1, -1, -1, 1]


def test_resolution_mismatch(corpus):
    with pytest.raises(AssignmentMismatch):
        ResolutionAssignment.of({1: 0})
    with pytest.raises(AssignmentMismatch):
        resolve(corpus.singular["kink"], ResolutionAssignment.of({2: 1}))


def test_positive_resolution_is_the_recorded_diagram(corpus):
    assert resolve(corpus.singular["kink"], ResolutionAssignment.of({1: 1})) == corpus.framed["positive_kink"]
    negative = resolve(corpus.singular["kink"], ResolutionAssignment.of({1: -1}))
    assert self_linking(negative) == -2


@pytest.mark.parametrize("name,sl,squared", [
    ("kink", 2, -4),
    ("kink_written_negative", 2, 4),
    ("two_kinks", 0, 8),
    ("trefoil_12", 0, 8),
])
def test_alternating_sums(corpus, name, sl, squared):
    s = corpus.singular[name]
    assert alternating_sum(self_linking, s) == sl
    assert alternating_sum(sl_squared, s) == squared


def test_alternating_sum_in_a_cyclic_group(corpus):
    assert alternating_sum(self_linking, corpus.singular["kink"], CyclicGroup(2)) == 0
    assert alternating_sum(self_linking, corpus.singular["kink"], CyclicGroup(3)) == 2


def test_order_of_self_linking(corpus):
    singular = list(corpus.singular.values())
    assert not is_order_at_most(self_linking, 0, singular)
    assert is_order_at_most(self_linking, 1, singular)
    assert not is_order_at_most(sl_squared, 1, singular)
    assert is_order_at_most(lambda k: 5, 0, singular)


def test_order_without_enough_double_points(corpus):
    # nothing to check at order 2: no fixture has three double points
    assert is_order_at_most(sl_squared, 2, corpus.singular.values())
    with pytest.raises(ValueError):
        is_order_at_most(self_linking, -1, [])


def test_extension_coefficients():
    assert extension_coefficients(0) == [1]
    assert extension_coefficients(1) == [2, -1]
    assert extension_coefficients(2) == [3, -3, 1]
    assert extension_coefficients(3) == [4, -6, 4, -1]


def test_extend_the_trefoil(corpus):
    ladder = corpus.ladders["trefoil_sl"]
    extended = extend_invariant(ladder, 1, height=2)
    assert extended.value(3) == 3
    assert extended.value(5) == 5
    assert extend_invariant(extended, 1, height=2) == extended
    assert verify_main_identity(ladder, 1)


def test_extend_a_constant(corpus):
    assert extend_invariant(corpus.ladders["constant"], 1).value(2) == 4
    assert extend_invariant(corpus.ladders["constant"], 0).value(2) == 4


def test_extend_in_a_cyclic_group():
    ladder = InvariantLadder("mod 3", {0: 2, -2: 0}, cutoff=0, group=CyclicGroup(3))
    assert extend_invariant(ladder, 1).value(2) == 1


def test_nothing_to_extend():
    ladder = InvariantLadder("every framing", {0: 1, 2: 1})
    assert extend_invariant(ladder, 1) is ladder


def test_ladder_checks():
    with pytest.raises(InvalidLadder):
        InvariantLadder("odd step", {0: 1}, cutoff=0, step=3)
    with pytest.raises(InvalidLadder):
        InvariantLadder("mixed parity", {0: 1, -1: 2}, cutoff=0)
    with pytest.raises(InvalidLadder):
        InvariantLadder("no base", {0: 1}, cutoff=0).rung_diagram(0)


def test_missing_rungs(corpus):
    ladder = corpus.ladders["trefoil_sl"]
    with pytest.raises(InsufficientRungs) as info:
        ladder.value(7)
    assert info.value.rung == 7
    with pytest.raises(InsufficientRungs):
        extend_invariant(ladder, 3)
    with pytest.raises(InsufficientRungs):
        verify_main_identity(ladder, 2)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_recursion_fixes_polynomials(data):
    n = data.draw(st.integers(0, 4))
    coefficients = data.draw(st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1))

    def poly(r):
        return sum(c * r ** k for k, c in enumerate(coefficients))

    rungs = range(-2 * (n + 1), 1, 2)
    ladder = InvariantLadder("poly", {r: poly(r) for r in rungs}, cutoff=0)
    extended = extend_invariant(ladder, n, height=3)
    assert [extended.value(r) for r in (2, 4, 6)] == [poly(r) for r in (2, 4, 6)]
    assert verify_main_identity(extended, n)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_recursion_misses_higher_degree(n):
    rungs = range(-2 * (n + 2), 1, 2)
    ladder = InvariantLadder("monomial", {r: r ** (n + 1) for r in rungs}, cutoff=0)
    assert not verify_main_identity(ladder, n)


def test_build_ladder(corpus):
    ladder = build_ladder(self_linking, TREFOIL, 2, label="trefoil")
    assert ladder == corpus.ladders["trefoil_sl"]
    assert ladder.cutoff == 1
    assert self_linking(ladder.rung_diagram(5)) == 5
    with pytest.raises(ValueError):
        build_ladder(self_linking, TREFOIL, -1)


def test_restrict_to_legendrian():
    assert restrict_to_legendrian(self_linking)(TREFOIL) == 1
    assert restrict_to_legendrian(sl_squared)(TREFOIL) == 1


def test_roundtrip():
    assert roundtrip_check(self_linking, [build_ladder(self_linking, TREFOIL, 2)], 1, height=2)
    assert not roundtrip_check(sl_squared, [build_ladder(sl_squared, TREFOIL, 2)], 1)
    assert roundtrip_check(sl_squared, [build_ladder(sl_squared, TREFOIL, 3)], 2, height=2)


def test_kinked_singular():
    s = make_kinked_singular(FramedDiagram(), 2)
    assert s.order == 2
    assert len(s.diagram.visits) == 4
    assert self_linking(resolve(s, ResolutionAssignment.of({1: 1, 2: 1}))) == 0
    assert self_linking(resolve(s, ResolutionAssignment.of({1: -1, 2: -1}))) == -4
    with pytest.raises(ValueError):
        make_kinked_singular(FramedDiagram(), 0)


def test_kinked_identity(corpus):
    ladder = corpus.ladders["trefoil_sl"]
    assert kinked_identity(ladder, 1, 1) == 0
    squared = build_ladder(sl_squared, TREFOIL, 2)
    assert kinked_identity(squared, 1, 1) == 8
