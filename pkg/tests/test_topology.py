import pytest
from hypothesis import given, strategies as st
from pytest import raises

from qcdyn.bitset import full_mask, mask_of
from qcdyn.testhelpers import spaces
from qcdyn.topology import (
    CapExceeded,
    FiniteSpace,
    ReflexivityViolation,
    SpaceError,
    TransitivityViolation,
    build_space,
    canonical_form,
    canonical_pi_base,
    category_predicates,
    count_topologies_by_families,
    discrete_space,
    enumerate_spaces,
    indiscrete_space,
    is_fragmentable,
    residual_sets_are_dense,
    sierpinski_space,
    space_from_points,
    space_profile,
)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 29), (4, 355), (5, 6942)])
def test_number_of_topologies(n, count):
    assert sum(1 for _ in enumerate_spaces(n)) == count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_agrees_with_family_oracle(n):
    assert count_topologies_by_families(n) == len(spaces(n))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 9), (4, 33)])
def test_homeomorphism_classes(n, count):
    assert sum(1 for _ in enumerate_spaces(n, dedup=True)) == count


def test_enumeration_yields_distinct_valid_spaces():
    all_spaces = spaces(4)
    assert len(set(all_spaces)) == len(all_spaces)
    for space in all_spaces:
        assert build_space(space.min_nbhd) == space


def test_enumeration_cap():
    with raises(CapExceeded):
        list(enumerate_spaces(7))
    with raises(CapExceeded):
        list(enumerate_spaces(4, cap=3))


def test_build_space_errors():
    with raises(ReflexivityViolation):
        build_space([[1], [1]])
    with raises(TransitivityViolation):
        build_space([[0, 1], [1, 2], [2]])
    with raises(SpaceError):
        build_space([[0, 2], [1]])
    with raises(SpaceError):
        build_space([])


def test_space_from_points_cap():
    assert space_from_points([[0], [1]]) == discrete_space(2)
    with raises(CapExceeded):
        space_from_points([[0], [1], [2]], cap=2)


def test_sierpinski_interior_and_closure():
    space = sierpinski_space()
    assert space.interior(0b10) == 0
    assert space.interior(0b01) == 0b01
    assert space.closure(0b01) == 0b11
    assert space.closure(0b10) == 0b10
    assert space.is_dense(0b01)
    assert space.is_nowhere_dense(0b10)
    assert space.isolated_points() == 0b01
    assert space.open_sets() == [0, 0b01, 0b11]
    assert space.closed_sets() == [0, 0b10, 0b11]
    assert space.pi_base() == [0b01, 0b11]


def test_canonical_pi_base():
    assert canonical_pi_base(discrete_space(2)) == [0b01, 0b10]
    assert canonical_pi_base(indiscrete_space(2)) == [0b11]
    assert canonical_pi_base(sierpinski_space()) == [0b01, 0b11]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pi_base_meets_every_open_set(n):
    for space in spaces(n):
        base = canonical_pi_base(space)
        for u in space.nonempty_open_sets():
            assert any(p & ~u == 0 for p in base), (space, u)


def test_open_families():
    assert discrete_space(3).open_sets() == list(range(8))
    assert indiscrete_space(3).open_sets() == [0, 0b111]
    assert indiscrete_space(3).nowhere_dense_sets() == [0]
    assert discrete_space(2).nowhere_dense_sets() == [0]


def test_profiles():
    discrete = space_profile(discrete_space(3))
    assert discrete.T0 and discrete.T1 and discrete.T2
    assert not discrete.perfect
    assert discrete.iso == 0b111

    indiscrete = space_profile(indiscrete_space(2))
    assert not indiscrete.T0
    assert indiscrete.perfect
    assert not indiscrete.fragmentable

    sierpinski = space_profile(sierpinski_space())
    assert sierpinski.T0 and not sierpinski.T1
    assert sierpinski.iso == 0b01


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_no_finite_space_is_perfect_and_t1(n):
    for space in spaces(n):
        profile = space_profile(space)
        assert not (profile.perfect and profile.T1)
        assert not (profile.perfect and profile.T2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fragmentable_iff_t0(n):
    for space in spaces(n):
        assert is_fragmentable(space) == space_profile(space).T0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_finite_spaces_are_baire(n):
    for space in spaces(n):
        assert residual_sets_are_dense(space)
        assert space_profile(space, verify_baire=True).baire


def test_category_predicates():
    space = sierpinski_space()
    open_point = category_predicates(space, 0b01)
    assert open_point.dense and open_point.residual and open_point.contains_dense_open
    closed_point = category_predicates(space, 0b10)
    assert closed_point.nowhere_dense and not closed_point.residual


def test_canonical_form_identifies_relabellings():
    a = FiniteSpace([0b01, 0b11])
    b = FiniteSpace([0b11, 0b10])
    assert a != b
    assert canonical_form(a) == canonical_form(b)


def test_space_pickles():
    import pickle

    space = sierpinski_space()
    space.open_sets()
    assert pickle.loads(pickle.dumps(space)) == space


@given(st.data())
def test_closure_is_complement_of_interior_of_complement(data):
    n = data.draw(st.integers(1, 4))
    space = data.draw(st.sampled_from(spaces(n)))
    s = data.draw(st.integers(0, full_mask(n)))
    full = space.full
    assert space.closure(s) == full & ~space.interior(full & ~s)
    assert space.is_open(space.interior(s))
    assert space.interior(s) & ~s == 0
    assert space.interior(space.interior(s)) == space.interior(s)


@given(st.data())
def test_open_sets_are_unions_of_minimal_neighbourhoods(data):
    n = data.draw(st.integers(1, 4))
    space = data.draw(st.sampled_from(spaces(n)))
    opens = set(space.open_sets())
    for u in opens:
        assert space.is_open(u)
        assert mask_of(x for x in range(n) if (u >> x) & 1) == u
    for a in opens:
        for b in opens:
            assert a | b in opens and a & b in opens
