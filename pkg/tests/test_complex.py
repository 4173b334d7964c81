from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from icsheaf import examples as ex
from icsheaf.complex import (
    SimplicialComplex, Stratification, closure, default_stratification, link, load_complex,
    open_star, pseudoboundary, stratum_components, stratum_sanity_check, subject_to,
    validate_stratification,
)
from icsheaf.errors import (
    DensityFailure, DimensionExceeded, DuplicateSimplex, EmptyComplex, NotClosed, SimplexNotFound,
    TopStratumNotDense, UnknownVertex, ValidationError,
)
from icsheaf.linalg import simplicial_betti
from oracles import simplicial_betti as oracle_betti


@pytest.mark.parametrize("make,counts,euler", [
    (ex.sphere, [4, 6, 4], 2),
    (ex.octahedron, [6, 12, 8], 2),
    (ex.torus, [7, 21, 14], 0),
    (lambda: ex.boundary_simplex(3), [5, 10, 10, 5], 0),
    (ex.suspended_torus, [9, 35, 56, 28], 2),
])
def test_builtin_counts(make, counts, euler):
    c = make()
    assert c.count_by_dim() == counts
    assert c.euler_characteristic() == euler


@pytest.mark.parametrize("make", [ex.sphere, ex.octahedron, ex.torus, ex.suspended_torus])
def test_betti_matches_oracle(make):
    c = make()
    assert simplicial_betti(c) == oracle_betti(c.maximal_simplices())


def test_torus_vertex_links_are_circles():
    t = ex.torus()
    for v in range(7):
        assert oracle_betti(link(t, (v,)).maximal_simplices()) == [1, 1]


def test_link_and_star():
    s = ex.sphere()
    assert len(open_star(s, (0,))) == 1 + 3 + 3
    assert sorted(link(s, (0,)).maximal_simplices()) == [(1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("desc,err", [
    ({"vertices": ["a"], "maximal_simplices": []}, EmptyComplex),
    ({"vertices": ["a", "b"], "maximal_simplices": [["a", "c"]]}, UnknownVertex),
    ({"vertices": ["a", "b"], "maximal_simplices": [["a", "b"], ["b", "a"]]}, DuplicateSimplex),
    ({"vertices": ["a", "a"], "maximal_simplices": [["a"]]}, ValidationError),
])
def test_load_complex_errors(desc, err):
    with pytest.raises(err):
        load_complex(desc)


def test_parse_key():
    s = ex.sphere()
    assert s.parse_key("2,0") == (0, 2)
    with pytest.raises(SimplexNotFound):
        s.parse_key("0,9")


@pytest.mark.parametrize("depth,err", [
    ({"0,1": 1}, NotClosed),
    ({"0,1": 2, "0": 2, "1": 2}, DimensionExceeded),
    ({"0": 3}, ValidationError),
])
def test_validation_errors(depth, err):
    s = Stratification.from_keys(ex.sphere(), depth)
    with pytest.raises(err):
        validate_stratification(s)


def test_top_stratum_density():
    # a triangle with a dangling edge: the edge is not in the closure of any 2-simplex
    c = SimplicialComplex(["a", "b", "c", "d"], [(0, 1, 2), (2, 3)])
    with pytest.raises(TopStratumNotDense):
        validate_stratification(Stratification(c, {}))
    with pytest.raises(DensityFailure):
        default_stratification(c, [(0,)])


def test_default_stratification_is_finest():
    strat = default_stratification(ex.octahedron(), ex.equator(ex.octahedron()))
    validate_stratification(strat)
    assert strat.codims() == [1, 2]


def test_equator_stratum():
    strat = ex.equator_strat(ex.octahedron())
    validate_stratification(strat)
    assert strat.codims() == [1]
    assert pseudoboundary(strat) == strat.sigma
    assert len(stratum_components(strat, 1)) == 1


def test_point_strata_and_skeleta():
    strat = ex.point_strat(ex.sphere(), "0")
    assert strat.sigma == frozenset({(0,)})
    assert strat.U(1) == strat.U(2) and (0,) not in strat.U(2)
    assert strat.U(3) == frozenset(ex.sphere().simplices)
    assert subject_to(strat, {(0,)})


@pytest.mark.parametrize("idx,status", [(0, ["pass", "pass", "pass"]), (1, ["pass", "warn", "pass"]),
                                        (2, ["pass", "warn", "warn"])])
def test_sanity_check_flags_point_in_one_dimensional_stratum(idx, status):
    strat = ex.cone_point_strats()[idx]
    validate_stratification(strat)
    assert [e["status"] for e in stratum_sanity_check(strat)] == status


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(list(combinations(range(5), 3))), min_size=1, max_size=6, unique=True))
def test_closure_is_closed_and_betti_agrees(tris):
    c = SimplicialComplex([str(i) for i in range(5)], tris)
    cl = closure(tris)
    assert all(set(f) <= cl for f in (closure([s]) for s in cl))
    assert set(c.simplices) == cl
    assert simplicial_betti(c) == oracle_betti(tris)
