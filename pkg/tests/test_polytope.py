from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nashregion.polytope import (
    LinearSystem, UnboundedError, as_rational, box, dedupe, fm_eliminate, format_rational, intersect,
    project, prune, vertices2,
)


def test_rational_io():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational("2") == 2
    assert format_rational(Fraction(2)) == "2/1"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("x")


def triangle():
    return LinearSystem.build(2).ge({0: 1}, 0).ge({1: 1}, 0).le({0: 1, 1: 1}, 2).done()


def test_triangle_vertices():
    r = vertices2(triangle())
    assert set(r.vertices) == {(0, 0), (2, 0), (0, 2)}
    assert r.area() == 2
    assert not r.degenerate


def test_unbounded_raises():
    with pytest.raises(UnboundedError):
        vertices2(LinearSystem.build(2).ge({0: 1}, 0).ge({1: 1}, 0).done())


def test_infeasible_is_empty_not_error():
    r = vertices2(LinearSystem.build(2).ge({0: 1}, 3).le({0: 1}, 1).le({1: 1}, 1).ge({1: 1}, 0).done())
    assert r.empty and r.vertices == ()


def test_segment_and_point_are_degenerate():
    seg = box((1, 0), (1, 3))
    assert seg.degenerate and len(seg.vertices) == 2
    pt = box((0, 0), (0, 0))
    assert pt.degenerate and pt.vertices == ((0, 0),)


def test_box_intersection():
    a, b = box((0, 0), (2, 2)), box((1, 1), (3, 3))
    assert intersect(a, b).equals(box((1, 1), (2, 2)))
    assert intersect(box((0, 0), (1, 1)), box((2, 2), (3, 3))).empty


def test_cube_projects_to_square():
    b = LinearSystem.build(3)
    for k in range(3):
        b.ge({k: 1}, 0).le({k: 1}, 1)
    sq = vertices2(project(b.done(), [0, 2]))
    assert sq.equals(box((0, 0), (1, 1)))


def test_equality_substitution():
    s = LinearSystem.build(2).eq({0: 1}, 3).le({0: 1, 1: 1}, 5).done()
    out = prune(fm_eliminate(s, 0))
    assert out.dim == 1
    assert out.contains([2]) and not out.contains([Fraction(21, 10)])


def test_prune_drops_redundant():
    s = LinearSystem.build(1).le({0: 1}, 1).le({0: 1}, 2).ge({0: 1}, 0).done()
    assert len(prune(s).constraints) == 2


def test_dedupe_flags_trivial_infeasibility():
    s = LinearSystem.build(1).le({0: 0}, -1).done()
    assert not dedupe(s).feasible()


def test_region_json_uses_num_den():
    doc = box((0, 0), (Fraction(1, 2), 1)).to_json()
    assert ["1/2", "0/1"] in doc["vertices"]
    assert all(isinstance(h["b"], str) for h in doc["halfspaces"])


coef = st.integers(-3, 3)


@given(st.lists(st.tuples(coef, coef, coef, st.integers(0, 6)), max_size=4))
def test_projection_matches_lp_feasibility(rows):
    # random 3D polytope inside a box; projection membership == LP with the kept coords fixed
    b = LinearSystem.build(3)
    for k in range(3):
        b.ge({k: 1}, 0).le({k: 1}, 3)
    for a0, a1, a2, rhs in rows:
        b.le({0: a0, 1: a1, 2: a2}, rhs)
    sys3 = b.done()
    proj = project(sys3, [0, 1])
    for x in range(4):
        for y in range(4):
            pt = (Fraction(x), Fraction(y))
            direct = sys3.fix(0, pt[0]).fix(0, pt[1]).feasible()
            assert proj.contains(pt) == direct


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8))
def test_vertices_are_ccw_and_feasible(points):
    # hull of points, written as halfspaces through vertices2 of their bounding box intersection
    r = box((min(p[0] for p in points), min(p[1] for p in points)),
            (max(p[0] for p in points), max(p[1] for p in points)))
    for v in r.vertices:
        assert r.contains_point(v)
    assert r.area() >= 0
