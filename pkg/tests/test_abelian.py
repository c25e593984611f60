import pytest
from hypothesis import given, settings, strategies as st

from legendrian_calculus.errors import DimensionMismatch
from legendrian_calculus.topology.abelian import FGAbelianGroup, euler_realizable, half_class


@pytest.mark.parametrize("relations,factors", [
    ([[2, 4], [4, 2]], (2, 6)),
    ([[2, 0], [0, 4]], (2, 4)),
    ([[4]], (4,)),
    ([[1, 0]], (0,)),
    ([[6, 0, 0]], (6, 0, 0)),
])
def test_from_relations(relations, factors):
    assert FGAbelianGroup.from_relations(relations).factors == factors


def test_from_no_relations():
    assert FGAbelianGroup.from_relations([], 2).factors == (0, 0)
    with pytest.raises(DimensionMismatch):
        FGAbelianGroup.from_relations([])
    with pytest.raises(DimensionMismatch):
        FGAbelianGroup.from_relations([[1, 2], [3]])


def test_group_basics():
    h2 = FGAbelianGroup((2, 4))
    assert repr(h2) == "Z/2 + Z/4"
    assert repr(FGAbelianGroup((0,))) == "Z"
    assert repr(FGAbelianGroup(())) == "0"
    assert h2.add((1, 3), (1, 3)) == (0, 2)
    assert h2.neg((1, 1)) == (1, 3)
    assert len(list(h2.elements())) == 8
    assert FGAbelianGroup((0, 3)).rank == 1
    with pytest.raises(DimensionMismatch):
        h2.check((1,))
    with pytest.raises(DimensionMismatch):
        list(FGAbelianGroup((0,)).elements())
    with pytest.raises(ValueError):
        FGAbelianGroup((-2,))


def test_torsion_elements():
    h2 = FGAbelianGroup((0, 4))
    assert h2.order_is_finite((0, 3))
    assert not h2.order_is_finite((1, 0))


@pytest.mark.parametrize("factors,e,expected", [
    ((0,), (2,), True),
    ((0,), (3,), False),
    ((0,), (-4,), True),
    ((4,), (2,), True),
    ((4,), (1,), False),
    ((3,), (1,), True),
    ((2, 3), (0, 2), True),
    ((2, 3), (1, 0), False),
])
def test_euler_realizable(factors, e, expected):
    assert euler_realizable(e, FGAbelianGroup(factors)) is expected


def test_half_class():
    h2 = FGAbelianGroup((0, 5))
    alpha = half_class((6, 3), h2)
    assert h2.scale(2, alpha) == (6, 3)
    assert half_class((1, 0), h2) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=3))
def test_realizable_classes_are_the_doubles(factors):
    h2 = FGAbelianGroup(tuple(factors))
    doubles = {h2.scale(2, x) for x in h2.elements()}
    for e in h2.elements():
        assert euler_realizable(e, h2) == (e in doubles)
