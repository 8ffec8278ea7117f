import pytest
from pytest import raises

from qcdyn.maps import (
    QC_METHODS,
    MapError,
    all_maps,
    build_map,
    c_infinity_sets,
    compose,
    continuity_points,
    is_continuous,
    is_delta_open,
    is_feebly_open,
    is_qc_system,
    is_quasicontinuous,
    iterate,
    iterate_cycle,
    map_profile,
    preimage,
    preimage_sizes,
    quasicontinuity_points,
)
from qcdyn.testhelpers import all_systems, string_to_system
from qcdyn.topology import discrete_space, indiscrete_space, sierpinski_space


def test_build_map():
    assert build_map([0, 2, 1], 3) == (0, 2, 1)
    with raises(MapError):
        build_map([0, 1], 3)
    with raises(MapError):
        build_map([0, 3, 1], 3)


def test_all_maps_order():
    assert list(all_maps(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert sum(1 for _ in all_maps(4)) == 256


def test_compose_and_iterate():
    f = (1, 2, 0)
    assert compose(f, f) == (2, 0, 1)
    assert iterate(f, 3) == (0, 1, 2)
    assert iterate(f, 0) == (0, 1, 2)
    assert preimage(f, 0b001) == 0b100
    assert preimage_sizes((0, 0, 2)) == [2, 0, 1]


def test_sierpinski_swap_is_not_quasicontinuous():
    system = string_to_system(
        """
        2
        0
        0 1
        1 0
        """
    )
    assert continuity_points(system.space, system.f) == 0b01
    assert quasicontinuity_points(system.space, system.f) == 0b01
    for method in QC_METHODS:
        assert not is_quasicontinuous(system.space, system.f, method=method)
        assert not is_quasicontinuous(system.space, system.f, method=method, literal=True)


def test_unknown_method():
    with raises(ValueError):
        is_quasicontinuous(sierpinski_space(), (0, 1), method="nearby")
    with raises(ValueError):
        is_delta_open(sierpinski_space(), (0, 1), method="nearby")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quasicontinuity_methods_agree(n):
    for system in all_systems(n):
        verdicts = {is_quasicontinuous(system.space, system.f, method=m) for m in QC_METHODS}
        assert len(verdicts) == 1, system


@pytest.mark.parametrize("n", [1, 2, 3])
def test_literal_quantifiers_agree(n):
    for system in all_systems(n):
        space, f = system.space, system.f
        verdicts = {is_quasicontinuous(space, f, method=method) for method in QC_METHODS}
        verdicts |= {
            is_quasicontinuous(space, f, method=method, literal=True) for method in QC_METHODS
        }
        assert len(verdicts) == 1, system
        assert quasicontinuity_points(space, f) == quasicontinuity_points(space, f, literal=True)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_continuous_maps_are_quasicontinuous(n):
    for system in all_systems(n):
        if is_continuous(system.space, system.f):
            assert is_quasicontinuous(system.space, system.f)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta_open_characterizations_agree(n):
    for system in all_systems(n):
        assert is_delta_open(system.space, system.f, "preimage") == is_delta_open(
            system.space, system.f, "image"
        ), system


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quasicontinuous_feebly_open_maps_are_delta_open(n):
    for system in all_systems(n):
        space, f = system.space, system.f
        if is_quasicontinuous(space, f) and is_feebly_open(space, f):
            assert is_delta_open(space, f), system


def test_maps_between_different_spaces():
    assert is_continuous(discrete_space(2), (0, 1), codomain=sierpinski_space())
    assert not is_continuous(sierpinski_space(), (0, 1), codomain=discrete_space(2))
    for method in QC_METHODS:
        assert not is_quasicontinuous(
            sierpinski_space(), (0, 1), method=method, codomain=discrete_space(2)
        )
        assert is_quasicontinuous(
            discrete_space(2), (0, 1), method=method, codomain=sierpinski_space()
        )


def test_every_map_on_discrete_or_indiscrete_space_is_continuous():
    for f in all_maps(3):
        assert is_continuous(discrete_space(3), f)
        assert is_continuous(indiscrete_space(3), f)


def test_feebly_open():
    assert is_feebly_open(discrete_space(2), (0, 0))
    assert not is_feebly_open(sierpinski_space(), (1, 1))
    assert is_feebly_open(sierpinski_space(), (0, 0))


def test_iterate_cycle_lists_distinct_iterates():
    cycle = iterate_cycle((1, 2, 0))
    assert cycle.iterates == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert (cycle.preperiod, cycle.period) == (0, 3)
    cycle = iterate_cycle((1, 1))
    assert cycle.iterates == [(0, 1), (1, 1)]
    assert (cycle.preperiod, cycle.period) == (1, 1)


def test_qc_system_of_irreducible_non_transitive_example():
    system = string_to_system(
        """
        3
        0
        1
        0 1 2
        0 1 0
        """
    )
    result = is_qc_system(system.space, system.f)
    assert result.holds
    assert result.failing_iterate is None
    assert (result.preperiod, result.period) == (1, 1)


def test_qc_system_failing_iterate():
    result = is_qc_system(sierpinski_space(), (1, 0))
    assert not result.holds
    assert result.failing_iterate == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_qc_system_checks_enough_iterates(n):
    for system in all_systems(n):
        result = is_qc_system(system.space, system.f)
        horizon = 2 * len(iterate_cycle(system.f).iterates)
        expected = all(
            is_quasicontinuous(system.space, iterate(system.f, k)) for k in range(horizon)
        )
        assert result.holds == expected


def test_c_infinity_sets():
    space = sierpinski_space()
    c_inf, c_inf_orbit = c_infinity_sets(space, (1, 0))
    # the swap is continuous at 0 only; its square is the identity
    assert c_inf == 0b01
    assert c_inf_orbit == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c_infinity_orbit_is_contained_in_c_infinity(n):
    for system in all_systems(n):
        c_inf, c_inf_orbit = c_infinity_sets(system.space, system.f)
        assert c_inf_orbit & ~c_inf == 0


def test_map_profile():
    profile = map_profile(discrete_space(2), (1, 1))
    assert profile.continuous and profile.quasicontinuous and profile.qc_system
    assert profile.cont_points == profile.c_inf == profile.c_inf_orbit == 0b11
    assert (profile.iterate_preperiod, profile.iterate_period) == (1, 1)
    assert profile.feebly_open and profile.delta_open
