import pytest
from hypothesis import given, settings, strategies as st

from legendrian_calculus.errors import AlphabetMismatch, InvalidWord, NotCommuting
from legendrian_calculus.topology.bundle import (
    FIBER,
    IDENTITY,
    BundleGroup,
    BundleGroupElement,
    NoWitnessFound,
    Witness,
    bundle_commutator,
    bundle_inverse,
    bundle_mul,
    bundle_pow,
    check_toughandtechnical,
    commute,
    orientation_character,
)

# a preserves orientation, b reverses it
KLEIN = BundleGroup((1, -1))

elements = st.builds(BundleGroupElement, st.integers(-5, 5), st.text(alphabet="abAB", max_size=6))


def test_multiplication():
    assert bundle_mul(BundleGroupElement(1, "a"), BundleGroupElement(2, "b"), KLEIN) == BundleGroupElement(3, "ab")
    assert bundle_mul(BundleGroupElement(0, "b"), FIBER, KLEIN) == BundleGroupElement(-1, "b")
    assert bundle_mul(FIBER, BundleGroupElement(0, "b"), KLEIN) == BundleGroupElement(1, "b")


def test_words_are_reduced():
    assert BundleGroupElement(2, "abBA") == BundleGroupElement(2, "")
    assert repr(BundleGroupElement(-1, "")) == "(f^-1, 1)"


def test_orientation_character():
    assert orientation_character(KLEIN, "ab") == -1
    assert orientation_character(KLEIN, "bB") == 1
    assert orientation_character(KLEIN, "bab") == 1


def test_inverse_and_powers():
    x = BundleGroupElement(2, "b")
    assert bundle_inverse(x, KLEIN) == BundleGroupElement(2, "B")
    assert bundle_mul(x, bundle_inverse(x, KLEIN), KLEIN) == IDENTITY
    assert bundle_pow(BundleGroupElement(1, "b"), 2, KLEIN) == BundleGroupElement(0, "bb")
    assert bundle_pow(BundleGroupElement(1, "a"), -2, KLEIN) == BundleGroupElement(-2, "AA")
    assert bundle_pow(x, 0, KLEIN) == IDENTITY


def test_fiber_commutes_with_orientation_preserving_loops():
    assert commute(BundleGroupElement(1, "a"), FIBER, KLEIN)
    assert not commute(BundleGroupElement(0, "b"), FIBER, KLEIN)
    assert bundle_commutator(BundleGroupElement(0, "b"), FIBER, KLEIN) == BundleGroupElement(-2, "")


def test_alphabet_checks():
    with pytest.raises(AlphabetMismatch):
        BundleGroup((1, 0))
    with pytest.raises(AlphabetMismatch):
        bundle_mul(BundleGroupElement(0, "c"), IDENTITY, KLEIN)


@pytest.mark.parametrize("alpha,beta,witness", [
    (BundleGroupElement(0, "b"), BundleGroupElement(0, "bb"), Witness(1, 2, 0)),
    (BundleGroupElement(1, "a"), FIBER, Witness(1, 0, 1)),
    (BundleGroupElement(0, "aa"), BundleGroupElement(3, "aaa"), Witness(2, 3, 6)),
])
def test_witnesses(alpha, beta, witness):
    assert check_toughandtechnical(alpha, beta, KLEIN) == witness
    assert witness.holds(alpha, beta, KLEIN)


def test_bound_too_small():
    alpha, beta = BundleGroupElement(0, "aaaa"), BundleGroupElement(0, "aaa")
    assert check_toughandtechnical(alpha, beta, KLEIN, bound=2) == NoWitnessFound(2)
    assert check_toughandtechnical(alpha, beta, KLEIN, bound=4) == Witness(4, 3, 0)


def test_witness_preconditions():
    with pytest.raises(NotCommuting):
        check_toughandtechnical(BundleGroupElement(0, "b"), FIBER, KLEIN)
    with pytest.raises(InvalidWord):
        check_toughandtechnical(FIBER, BundleGroupElement(0, "a"), KLEIN)


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_group_laws(a, b, c):
    assert bundle_mul(bundle_mul(a, b, KLEIN), c, KLEIN) == bundle_mul(a, bundle_mul(b, c, KLEIN), KLEIN)
    assert bundle_mul(a, IDENTITY, KLEIN) == a == bundle_mul(IDENTITY, a, KLEIN)
    assert bundle_mul(a, bundle_inverse(a, KLEIN), KLEIN) == IDENTITY
    assert orientation_character(KLEIN, bundle_mul(a, b, KLEIN).w) \
        == orientation_character(KLEIN, a.w) * orientation_character(KLEIN, b.w)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["a", "b", "ab", "aB"]), st.integers(1, 3), st.integers(-3, 3),
       st.integers(-4, 4), st.integers(-4, 4))
def test_powers_of_a_common_root(root, p, q, k1, k2):
    alpha = BundleGroupElement(k1, root * p)
    beta = BundleGroupElement(k2, root * q) if q >= 0 else BundleGroupElement(k2, root.swapcase()[::-1] * -q)
    if not commute(alpha, beta, KLEIN):
        return
    witness = check_toughandtechnical(alpha, beta, KLEIN)
    assert isinstance(witness, Witness)
    assert witness.holds(alpha, beta, KLEIN)
