from fractions import Fraction

import portion as P
import pytest
from hypothesis import given, settings, strategies as st
from pytest import raises

from qcdyn.fileformats import read_pwl
from qcdyn.interval import (
    BUILTIN_MAPS,
    EmptyArgumentError,
    OutOfDomainError,
    PWLError,
    PWLMap,
    certify_ttplus_on_mesh,
    compose,
    doubling,
    example31,
    hitting_check,
    hitting_table_tsv,
    identity,
    image_set,
    is_qc_system_pwl,
    mesh_intervals,
    orbit_prefix,
    qc_points_pwl,
    quasicontinuous_at_by_neighbourhoods,
    rational,
    return_times_on_mesh,
    tent,
)

F = Fraction


def non_qc_square():
    return read_pwl("tests/data/non-qc-square.pwl")


def test_evaluation():
    f = example31()
    assert f(0) == 0
    assert f("1/2") == 0
    assert f(F(1, 2) + F(1, 1000)) == 1
    assert f(1) == 1
    assert tent()("1/4") == F(1, 2)
    assert doubling()(1) == 0
    with raises(OutOfDomainError):
        f(2)
    with raises(PWLError):
        rational("one half")


def test_invalid_maps():
    with raises(PWLError):
        PWLMap([0, "1/2"], [(1, 0)], [0, 0])
    with raises(PWLError):
        PWLMap([0, "1/2", "1/2", 1], [(0, 0)] * 3, [0] * 4)
    with raises(PWLError):
        PWLMap([0, 1], [(2, 0)], [0, 1])
    with raises(PWLError):
        PWLMap([0, 1], [(1, 0)], [0, 2])
    with raises(PWLError):
        PWLMap([0, 1], [(1, 0), (1, 0)], [0, 1])


def test_redundant_breakpoints_are_merged():
    f = PWLMap([0, "1/2", 1], [(1, 0), (1, 0)], [0, "1/2", 1])
    assert f == identity()
    assert f.m == 1
    g = PWLMap([0, "1/2", 1], [(1, 0), (1, 0)], [0, 0, 1])
    assert g.m == 2


def test_example31():
    f = example31()
    analysis = qc_points_pwl(f)
    assert analysis.discontinuities == (F(1, 2),)
    assert not analysis.is_continuous_at(F(1, 2))
    assert analysis.is_continuous_at(F(1, 3))
    assert analysis.qc_everywhere
    assert not analysis.continuous
    assert compose(f, f) == f
    verdict = is_qc_system_pwl(f, 32)
    assert verdict.status == "true"
    assert (verdict.preperiod, verdict.period) == (1, 1)


def test_doubling_is_not_quasicontinuous_at_one():
    analysis = qc_points_pwl(doubling())
    assert analysis.discontinuities == (F(1, 2), F(1))
    assert analysis.non_qc_points == (F(1),)
    verdict = is_qc_system_pwl(doubling(), 8)
    assert verdict.status == "false"
    assert verdict.failing_iterate == 1
    assert verdict.failing_point == 1


def test_tent_is_continuous():
    assert qc_points_pwl(tent()).continuous
    assert is_qc_system_pwl(tent(), 1).status == "true"


def test_square_fails():
    f = non_qc_square()
    assert qc_points_pwl(f).qc_everywhere
    verdict = is_qc_system_pwl(f, 16)
    assert verdict.status == "false"
    assert verdict.failing_iterate == 2
    assert verdict.failing_point == 0
    with raises(PWLError):
        is_qc_system_pwl(f, 0)


def test_unknown_verdict():
    # x/2 on [0, 1/2] and 1 on (1/2, 1]: every iterate is quasi-continuous,
    # but the slopes 2^-k never repeat
    f = PWLMap([0, "1/2", 1], [("1/2", 0), (0, 1)], [0, "1/4", 1])
    assert not qc_points_pwl(f).continuous
    verdict = is_qc_system_pwl(f, 5)
    assert verdict.status == "unknown"
    assert verdict.iterates_checked == 5
    assert verdict.failing_iterate is None


@pytest.mark.parametrize("name", sorted(BUILTIN_MAPS))
def test_neighbourhood_check_agrees_with_breakpoint_rule(name):
    for f in [BUILTIN_MAPS[name](), non_qc_square(), compose(non_qc_square(), non_qc_square())]:
        non_qc = qc_points_pwl(f).non_qc_points
        for c in f.breakpoints:
            assert quasicontinuous_at_by_neighbourhoods(f, c) == (c not in non_qc), (f, c)
        assert quasicontinuous_at_by_neighbourhoods(f, F(1, 3))


def test_neighbourhood_check_sees_small_jumps():
    f = PWLMap([0, "1/2", 1], [(0, 0), (2, -1)], [0, "1/1000", 1])
    assert qc_points_pwl(f).non_qc_points == (F(1, 2),)
    assert not quasicontinuous_at_by_neighbourhoods(f, "1/2")
    steep = PWLMap([0, "1/2", 1], [(0, "1/2"), (1, "-1/2")], [0, "1/2", 1])
    assert quasicontinuous_at_by_neighbourhoods(steep, "1/2")
    jump = PWLMap([0, "1/2", 1], [(0, "1/2"), (1, "-1/2")], [0, "1/2000", 1])
    assert not quasicontinuous_at_by_neighbourhoods(jump, "1/2")


unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=32)


@st.composite
def pwl_maps(draw):
    """Random maps whose breakpoint values are a one-sided limit, a limit off by a small jump,
    or arbitrary"""
    inner = draw(
        st.lists(st.fractions(min_value=0, max_value=1, max_denominator=16), max_size=3, unique=True)
    )
    breakpoints = [F(0)] + sorted(b for b in inner if 0 < b < 1) + [F(1)]
    pieces = []
    for a, b in zip(breakpoints, breakpoints[1:]):
        y0, y1 = draw(unit_fractions), draw(unit_fractions)
        slope = (y1 - y0) / (b - a)
        pieces.append((slope, y0 - slope * a))
    values = []
    for i, c in enumerate(breakpoints):
        limits = []
        if i > 0:
            limits.append(pieces[i - 1][0] * c + pieces[i - 1][1])
        if i < len(pieces):
            limits.append(pieces[i][0] * c + pieces[i][1])
        limit = draw(st.sampled_from(limits))
        jump = draw(st.sampled_from([F(0), F(1, 1000), F(-1, 1000), None]))
        if jump is None:
            values.append(draw(unit_fractions))
        else:
            values.append(min(max(limit + jump, F(0)), F(1)))
    return PWLMap(breakpoints, pieces, values)


@settings(max_examples=500, deadline=None)
@given(pwl_maps())
def test_neighbourhood_check_agrees_with_breakpoint_rule_on_random_maps(f):
    non_qc = qc_points_pwl(f).non_qc_points
    for c in f.breakpoints:
        assert quasicontinuous_at_by_neighbourhoods(f, c) == (c not in non_qc), (f, c)


builtin_or_random = st.one_of(
    st.sampled_from([example31, doubling, tent, identity, non_qc_square]).map(lambda make: make()),
    pwl_maps(),
)


@settings(max_examples=1000, deadline=None)
@given(builtin_or_random, builtin_or_random, unit_fractions)
def test_compose(f, g, x):
    assert compose(f, g)(x) == g(f(x))


def test_orbit_prefix():
    assert orbit_prefix(tent(), "1/3", 3) == [F(1, 3), F(2, 3), F(2, 3), F(2, 3)]
    assert orbit_prefix(doubling(), "1/3", 2) == [F(1, 3), F(2, 3), F(1, 3)]


def test_image_set():
    f = doubling()
    assert image_set(f, P.open(F(1, 4), F(3, 4))) == P.open(F(1, 2), 1) | P.closedopen(0, F(1, 2))
    assert image_set(example31(), P.open(F(1, 10), F(2, 10))) == P.singleton(F(0))


def test_hitting_check():
    f = example31()
    assert hitting_check(f, P.open(F(1, 10), F(2, 10)), P.open(F(3, 10), F(4, 10)), 10) == []
    assert hitting_check(f, P.open(F(6, 10), F(7, 10)), P.openclosed(F(9, 10), 1), 3) == [1, 2, 3]
    assert hitting_check(doubling(), P.open(0, F(1, 8)), P.open(F(1, 2), 1), 4) == [3, 4]
    with raises(EmptyArgumentError):
        hitting_check(f, P.empty(), P.open(0, 1), 3)


def test_mesh_certificate_for_doubling():
    certificate = certify_ttplus_on_mesh(doubling(), 16, 32)
    assert certificate.certified
    assert certificate.pairs_witnessed == 256
    assert max(certificate.table.values()) <= 4


def test_mesh_certificate_with_threads():
    single = certify_ttplus_on_mesh(tent(), 4, 8)
    parallel = certify_ttplus_on_mesh(tent(), 4, 8, threads=2)
    assert single == parallel
    assert single.certified


def test_mesh_certificate_failure():
    certificate = certify_ttplus_on_mesh(example31(), 4, 10)
    assert not certificate.certified
    assert certificate.failing == (0, 1)
    assert certificate.table[(0, 0)] == 0
    with raises(PWLError):
        certify_ttplus_on_mesh(example31(), 1, 10)


def test_hitting_table_tsv():
    certificate = certify_ttplus_on_mesh(example31(), 2, 2)
    lines = hitting_table_tsv(certificate).splitlines()
    assert lines[0] == "source\ttarget\tfirst_hit"
    assert lines[1:] == ["0\t0\t0", "0\t1\tNA", "1\t0\tNA", "1\t1\t0"]


def test_return_times():
    returns = return_times_on_mesh(tent(), 4, 8)
    assert all(len(times) >= 2 for times in returns.values())
    assert returns[1][0] == 2
    assert returns[2][0] == 1


def test_mesh_intervals():
    assert mesh_intervals(2) == [P.open(0, F(1, 2)), P.open(F(1, 2), 1)]
