from pytest import raises

from qcdyn.verifier import UnknownPredicateError, reverify_witness, search_counterexample


def test_dense_orbit_without_ttp():
    result = search_counterexample(["DOp", "!TTp", "T2"], n_max=3)
    assert result.found
    assert result.witness.n == 2
    assert result.witness.f == (0, 0)
    assert result.vector["DOp"] and not result.vector["TTp"]
    assert reverify_witness(result)


def test_ttp_without_ttpp_on_perfect_space():
    result = search_counterexample(["TTp", "!TTpp", "perfect"], n_max=4)
    assert result.found
    assert result.witness.n == 3
    assert reverify_witness(result)


def test_irreducible_qc_system_without_tt():
    result = search_counterexample(["qc_system", "IN", "!TT"], n_max=3)
    assert result.witness.n == 3
    assert reverify_witness(result)


def test_no_perfect_t1_space():
    result = search_counterexample(["perfect", "T1"], n_max=3)
    assert not result.found
    assert result.checked == 1 + 4 * 4 + 29 * 27
    assert not reverify_witness(result)
    data = result.to_json()
    assert data["found"] is False
    assert data["witness"] is None


def test_discrete_search():
    result = search_counterexample(["TT", "!TTp"], n_max=2, discrete=True)
    assert result.witness.space.is_discrete()
    assert result.checked == 1 + 1
    assert result.to_json()["witness"]["map"]["image"] == [0, 0]


def test_n_min():
    result = search_counterexample(["TT"], n_max=3, n_min=3)
    assert result.witness.n == 3


def test_unknown_predicate():
    with raises(UnknownPredicateError):
        search_counterexample(["TT", "transitive"], n_max=2)
