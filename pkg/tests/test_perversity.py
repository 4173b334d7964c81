import pytest
from hypothesis import given, strategies as st

from icsheaf.errors import GrowthViolation, UnderspecifiedRange, ValidationError
from icsheaf.infinity import INF, NEG_INF
from icsheaf.perversity import (
    backfill, classify, codim_threshold, dual, extend, inverse, new_perversity, parse_perversity,
    preset, ultra_range,
)


@st.composite
def perversities(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    start = draw(st.integers(-2, 2))
    steps = draw(st.lists(st.integers(0, 1), min_size=n - 1, max_size=n - 1))
    vals = [start]
    for s in steps:
        vals.append(vals[-1] + s)
    return new_perversity(vals)


@pytest.mark.parametrize("name,n,values", [
    ("zero", 3, (0, 0, 0)),
    ("top", 3, (-1, 0, 1)),
    ("ultra", 4, (0, 1, 2, 3)),
])
def test_presets(name, n, values):
    assert preset(name, n).values == values


@pytest.mark.parametrize("spec,n,values", [
    ("[0,1,1]", 3, (0, 1, 1)),
    ('"ultra"', 2, (0, 1)),
    ([0, 0], None, (0, 0)),
    ("zero", 2, (0, 0)),
])
def test_parse(spec, n, values):
    assert parse_perversity(spec, n).values == values


@pytest.mark.parametrize("spec", ["[0,2]", "[1,0]", "nonsense", "{}", "[]"])
def test_parse_rejects(spec):
    with pytest.raises(ValidationError):
        parse_perversity(spec, 2)


def test_growth_violation_reports_index():
    with pytest.raises(GrowthViolation) as exc:
        new_perversity([0, 0, 2])
    assert exc.value.k == 2


@pytest.mark.parametrize("values,kind", [
    ([0, 0], "traditional"), ([0, 1], "super"), ([-1, -1], "sub"), ([-1, 0], "other"), ([1], "super"),
])
def test_classify(values, kind):
    assert classify(new_perversity(values)) == kind


def test_extend_requires_full_range_unless_filled():
    p = new_perversity([0, 1])
    with pytest.raises(UnderspecifiedRange):
        extend(p, 4)
    assert extend(p, 4, fill=True).values == (0, 1, 2, 3)


def test_extension_slopes():
    e = extend(new_perversity([0, 1, 1]), 3)
    assert [e(k) for k in range(-1, 6)] == [-2, -1, 0, 1, 1, 1, 1]
    q = dual(e)
    assert [q(k) for k in range(-1, 6)] == [-1, -1, -1, -1, 0, 1, 2]


def test_backfill():
    assert backfill([1, 2]).values == (0, 1, 2)


@given(perversities())
def test_dual_is_involution(p):
    e = extend(p, p.K)
    assert dual(dual(e)) == e
    for k in range(-3, p.K + 4):
        assert e(k) + dual(e)(k) == k - 2


@given(perversities(), st.integers(-6, 8))
def test_inverse_is_least_preimage(p, j):
    e = extend(p, p.K)
    c = inverse(e, j)
    if c is INF:
        assert j > e(p.K)
    elif c is NEG_INF:
        assert all(e(k) >= j for k in range(-10, 1))
    else:
        assert e(c) >= j and e(c - 1) < j


@given(perversities())
def test_codim_threshold_and_ultra_range(p):
    e = extend(p, p.K)
    c = codim_threshold(e)
    if c is NEG_INF:
        assert e(1) <= -1
    elif c is not INF:
        assert e(c) <= c - 2 and all(e(k) > k - 2 for k in range(1, c))
    m = ultra_range(e)
    assert all(e(k) >= k - 1 for k in range(1, m + 1))
    if m < p.K:
        assert e(m + 1) < m


def test_zero_has_codim_threshold_two():
    assert codim_threshold(extend(preset("zero", 3), 3)) == 2
    assert codim_threshold(extend(preset("ultra", 3), 3)) is INF
