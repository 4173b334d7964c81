import pytest
from hypothesis import given, settings, strategies as st

from icsheaf import examples as ex
from icsheaf.complex import Stratification
from icsheaf.deligne import (
    LocalSystem, build_deligne, complement_cohomology, full_pushforward,
    intersection_cohomology,
)
from icsheaf.errors import NotInvertible, UnderspecifiedRange, ValidationError
from icsheaf.linalg import QQ, Betti, Field, SparseMatrix
from icsheaf.perversity import new_perversity
from icsheaf.sheaf import costalk_betti, hypercohomology
from oracles import order_complex_betti


def ih(strat, p, **kw):
    return intersection_cohomology(strat, p, **kw).as_list(0, strat.n)


@pytest.mark.parametrize("strat,p,want", [
    (ex.point_strat(ex.sphere(), "0"), "ultra", [1, 0, 0]),
    (ex.point_strat(ex.sphere(), "0"), "zero", [1, 0, 1]),
    (ex.point_strat(ex.sphere(), "0", 0), "ultra", [1, 0, 1]),
    (ex.equator_strat(ex.octahedron()), "zero", [2, 0, 0]),
    (ex.equator_strat(ex.sphere()), "zero", [2, 0, 0]),
    (ex.point_strat(ex.torus(), "0"), "zero", [1, 2, 1]),
    (ex.point_strat(ex.torus(), "0"), "ultra", [1, 2, 0]),
    (ex.point_strat(ex.boundary_simplex(3), "0"), [0, 1, 2], [1, 0, 0, 0]),
    (ex.point_strat(ex.boundary_simplex(3), "0"), [0, 0, 1], [1, 0, 0, 1]),
])
def test_ih_values(strat, p, want):
    assert ih(strat, p) == want


@pytest.mark.parametrize("field", [QQ, Field(2), Field(3)], ids=lambda f: f.name)
@pytest.mark.parametrize("reduce", [False, True])
def test_field_and_reduce_do_not_change_torsion_free_answers(field, reduce):
    strat = ex.point_strat(ex.torus(), "0")
    assert ih(strat, "ultra", field=field, reduce=reduce) == [1, 2, 0]


def test_stages_are_retained():
    b = build_deligne(ex.point_strat(ex.sphere(), "0"), "ultra")
    assert sorted(b.stages) == [1, 2, 3]
    assert b.stage(3) is b.final
    assert b.steps[0].startswith("k=1")
    b.final.validate()


def test_trivial_stratification_is_coefficients():
    b = build_deligne(ex.point_strat(ex.sphere(), "0", 0), "ultra")
    assert b.final.total_dim() == len(ex.sphere())
    assert "trivial" in b.steps[0]


def test_subperversity_kills_everything():
    strat = ex.point_strat(ex.torus(), "0")
    assert ih(strat, [-1, -1]) == [0, 0, 0]


def test_perversity_range():
    strat = ex.point_strat(ex.sphere(), "0")
    with pytest.raises(UnderspecifiedRange):
        ih(strat, [0])
    assert ih(strat, [0], fill=True) == [1, 0, 0]


@pytest.mark.parametrize("field,want", [(QQ, [0, 0, 0]), (Field(3), [0, 0, 0]), (Field(2), [1, 1, 0])],
                         ids=["Q", "F3", "F2"])
def test_twisted_coefficients(field, want):
    cx, strat, G = ex.twisted_system(field)
    assert ih(strat, "ultra", G=G, field=field) == want
    assert complement_cohomology(cx, strat.sigma, G, field).as_list(0, 2) == want


def test_local_system_json_round_trip():
    cx, strat, G = ex.twisted_system()
    again = LocalSystem.from_json(cx, G.carrier, G.to_json())
    assert again.to_json() == G.to_json()
    assert sorted(G.to_json()["edges"]) == ["a,N<a,c,N", "a,S<a,c,S", "a<a,c"]


def test_local_system_rejects_singular_and_bad_pairs():
    cx, strat, G = ex.twisted_system()
    pair = next(iter(G.maps))
    with pytest.raises(NotInvertible):
        LocalSystem(cx, G.carrier, 1, {pair: SparseMatrix.from_dense(QQ, [[0]])})
    with pytest.raises(ValidationError):
        LocalSystem(cx, G.carrier, 1, {(pair[1], pair[0]): SparseMatrix.from_dense(QQ, [[1]])})


def test_rank_two_constant_doubles():
    strat = ex.point_strat(ex.torus(), "0")
    assert ih(strat, "ultra", G=2) == [2, 4, 0]


def test_full_pushforward_matches_complement():
    c = ex.octahedron()
    sigma = ex.equator(c)
    R = full_pushforward(c, sigma)
    R.validate()
    U = frozenset(s for s in c.simplices if s not in sigma)
    assert hypercohomology(R).as_list(0, 2) == order_complex_betti(U)


def test_costalk_vanishes_below_n_at_the_point():
    P = build_deligne(ex.point_strat(ex.sphere(), "0"), "ultra").final
    assert costalk_betti(P, (0,)) == Betti({})


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=2, max_size=2), st.integers(-1, 1))
def test_reduce_invariance_random_perversity(steps, start):
    vals = [start, start + steps[0], start + steps[0] + steps[1]]
    p = new_perversity(vals)
    strat = ex.point_strat(ex.boundary_simplex(3), "0")
    a = build_deligne(strat, p).final
    b = build_deligne(strat, p, reduce=True).final
    assert hypercohomology(a) == hypercohomology(b)
    assert all(a.stalk_betti(s) == b.stalk_betti(s) for s in strat.complex.simplices)


def test_stratification_dependence_in_dimension_two():
    c = ex.sphere()
    point = ex.point_strat(c, "0")
    trivial = Stratification(c, {})
    assert ih(point, "ultra") != ih(trivial, "ultra")
