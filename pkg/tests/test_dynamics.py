import pytest
from pytest import raises

from qcdyn.dynamics import (
    FLAG_NAMES,
    EmptyArgumentError,
    HittingSet,
    System,
    cycles,
    dense_orbit_sequence_exists,
    eventual_return_dense,
    forward_image_dense,
    forward_orbit,
    greatest_backward_infinite_set,
    has_dense_orbit_sequence,
    hitting_set,
    is_irreducible,
    omega_limit,
    preimage_trajectory,
    property_vector,
    simulate_hits,
    sources,
    transitive_points,
    transitive_points_by_hitting,
    two_sided_hitting_nonempty,
    trajectory,
)
from qcdyn.maps import MapError, all_maps
from qcdyn.testhelpers import all_systems, string_to_system
from qcdyn.topology import discrete_space, indiscrete_space, sierpinski_space


def test_system_checks_map_length():
    with raises(MapError):
        System(discrete_space(2), (0, 1, 1))


def test_forward_orbit():
    orbit = forward_orbit(System(discrete_space(4), (1, 2, 3, 2)), 0)
    assert orbit.path == (0, 1, 2, 3)
    assert (orbit.preperiod, orbit.period) == (2, 2)
    assert orbit.cycle == (2, 3)
    assert orbit.mask() == 0b1111
    assert orbit.cycle_mask() == 0b1100


def test_omega_limit_is_closure_of_cycle():
    system = System(sierpinski_space(), (0, 0))
    assert omega_limit(system, 1) == 0b11
    system = System(sierpinski_space(), (1, 1))
    assert omega_limit(system, 0) == 0b10


def test_hitting_set_membership():
    h = HittingSet(frozenset([0, 2]), 3, 2, frozenset([1]))
    assert [k for k in range(10) if k in h] == [0, 2, 4, 6, 8]
    assert -1 not in h
    assert h.minimum() == 0
    assert h.is_infinite() and not h.is_empty()
    finite = HittingSet(frozenset([1]), 2, 1, frozenset())
    assert finite.members(10) == [1]
    assert not finite.is_infinite()
    empty = HittingSet(frozenset(), 0, 1, frozenset())
    assert empty.is_empty() and empty.minimum() is None


def test_hitting_set_of_cycle():
    system = System(discrete_space(3), (1, 2, 0))
    h = hitting_set(system, 0b001, 0b100)
    assert h.members(9) == [2, 5, 8]
    assert h.minimum() == 2


def test_empty_argument():
    system = System(discrete_space(2), (0, 1))
    with raises(EmptyArgumentError):
        hitting_set(system, 0, 0b01)
    with raises(EmptyArgumentError):
        hitting_set(system, 0b01, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hitting_sets_agree_with_simulation(n):
    # hitting sets only depend on the map
    horizon = 4 * 2 ** n
    for f in all_maps(n):
        system = System(discrete_space(n), f)
        for a in range(1, 1 << n):
            for b in range(1, 1 << n):
                expected = simulate_hits(system, a, b, horizon)
                assert hitting_set(system, a, b).members(horizon + 1) == expected


def test_trajectories():
    system = System(discrete_space(3), (1, 2, 2))
    traj = trajectory(system, 0b001)
    assert traj.states == (0b001, 0b010, 0b100)
    assert (traj.preperiod, traj.period) == (2, 1)
    assert traj.state(10) == 0b100
    assert traj.union() == 0b111
    assert traj.union(start=5) == 0b100
    back = preimage_trajectory(system, 0b100)
    assert back.states == (0b100, 0b110, 0b111)
    assert back.cycle_states() == (0b111,)


def test_two_sided_hitting():
    system = System(discrete_space(2), (1, 1))
    assert two_sided_hitting_nonempty(system, 0b10, 0b01)
    assert hitting_set(system, 0b10, 0b01).is_empty()
    assert not two_sided_hitting_nonempty(System(discrete_space(2), (0, 1)), 0b10, 0b01)


def test_shift_on_discrete_space():
    system = string_to_system(
        """
        2
        0
        1
        1 1
        """
    )
    v = property_vector(system)
    assert v.flags() == {
        "IN": True,
        "TT": True,
        "TTp": False,
        "TTpp": False,
        "DO": True,
        "DOp": True,
        "DOpp": False,
    }
    assert v.trans_points == 0b01
    assert "TTp" in v.witnesses and "DOpp" not in v.witnesses


def test_indiscrete_identity_has_all_properties():
    v = property_vector(System(indiscrete_space(3), (0, 1, 2)))
    assert all(v.flags().values())
    assert v.trans_points == 0b111


def test_irreducible_system_that_is_not_transitive():
    system = string_to_system(
        """
        3
        0
        1
        0 1 2
        0 1 0
        """
    )
    v = property_vector(system)
    assert v.IN
    assert not v.TT
    assert is_irreducible(system)
    assert v.witnesses["TT"] == "N({0}, {1}) is empty"


def test_reducible_witness():
    v = property_vector(System(discrete_space(2), (0, 1)))
    assert not v.IN
    assert v.witnesses["IN"].startswith("X is the union of closed +invariant sets")


def test_unknown_quantifier():
    with raises(ValueError):
        property_vector(System(discrete_space(1), (0,)), quantifier="closed")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quantifiers_agree(n):
    for system in all_systems(n):
        assert property_vector(system, "pi-base").flags() == property_vector(system, "open").flags()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_transitive_points_agree(n):
    for system in all_systems(n):
        assert transitive_points(system) == transitive_points_by_hitting(system)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dense_orbit_sequence_search_agrees(n):
    for system in all_systems(n):
        assert dense_orbit_sequence_exists(system) == has_dense_orbit_sequence(system), system


@pytest.mark.parametrize("n", [1, 2, 3])
def test_implications_between_properties(n):
    for system in all_systems(n):
        v = property_vector(system).flags()
        for a, b in [
            ("DOpp", "DOp"),
            ("DOp", "DO"),
            ("TTpp", "TTp"),
            ("TTp", "TT"),
            ("DOpp", "TTpp"),
            ("DO", "TT"),
            ("TT", "IN"),
        ]:
            assert not v[a] or v[b], (system, a, b)


def test_flag_names():
    v = property_vector(System(discrete_space(1), (0,)))
    assert tuple(v.flags()) == FLAG_NAMES
    assert all(v.flags().values())


def test_cycles_and_sources():
    f = (1, 0, 3, 3, 2)
    assert cycles(f) == [(0, 1), (3,)]
    assert sources(f) == 0b10000
    assert greatest_backward_infinite_set(System(discrete_space(5), f)) == 0b01011


def test_eventual_return_dense():
    system = System(discrete_space(2), (1, 1))
    assert not eventual_return_dense(system, 0b01)
    assert eventual_return_dense(system, 0b10)
    system = System(indiscrete_space(2), (1, 1))
    assert eventual_return_dense(system, 0b11)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ttp_by_dense_forward_images(n):
    for system in all_systems(n):
        expected = property_vector(system).TTp
        by_images = all(forward_image_dense(system, u) for u in system.space.pi_base())
        assert by_images == expected, system
