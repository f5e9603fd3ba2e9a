import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture_tri
from nsg.fixtures import FIXTURE_NAMES, TABLES
from nsg.generators import family_An, family_Bg, gale, inflate_fxi, one_tet_s3
from nsg.triangulation import (
    GluingError,
    ParseError,
    SurfaceTriangulation,
    Triangulation,
    classify,
    double,
    parse_triangulation,
    perm_compose,
    perm_inverse,
    perm_sign,
)


def test_parse_six_row_sphere():
    tri = fixture_tri("sphere-6")
    assert tri.n == 6
    assert tri.is_closed()
    for t in range(tri.n):
        for f in range(4):
            t2, p = tri.gluings[t][f]
            back_t, back_p = tri.gluings[t2][p[f]]
            assert (back_t, back_p) == (t, perm_inverse(p))


def test_parse_ball_boundary_faces():
    tri = fixture_tri("ball-4")
    assert tri.n == 4
    assert len(tri.boundary_faces()) == 2


def test_column_semantics():
    # face (013) of tet 0 is glued to face (012) of tet 1 with 0->0, 1->1, 3->2
    tri = parse_triangulation("tri 2\n0: bdy 1(012) bdy bdy\n1: 0(013) bdy bdy bdy\n")
    t2, p = tri.gluings[0][2]
    assert t2 == 1 and p == (0, 1, 3, 2)


def test_non_involutive_rejected():
    text = "tri 2\n0: 1(012) bdy bdy bdy\n1: 0(013) bdy bdy bdy\n"
    with pytest.raises(GluingError):
        parse_triangulation(text)


def test_face_glued_to_itself_rejected():
    with pytest.raises(GluingError):
        parse_triangulation("tri 1\n0: 0(012) bdy bdy bdy\n")


def test_index_out_of_range():
    with pytest.raises((GluingError, ParseError)):
        parse_triangulation("tri 1\n0: 3(012) bdy bdy bdy\n")


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_triangulation("tri 1\n0: bdy bdy 0(01) bdy\n")
    assert info.value.line == 2
    assert info.value.column > 0


def test_comments_and_unicode_boundary():
    text = "# a ball\ntri 1\n0: ∂ ∂ ∂ ∂\n"
    tri = parse_triangulation(text)
    assert len(tri.boundary_faces()) == 4


@pytest.mark.parametrize("name", [n for n in FIXTURE_NAMES if TABLES[n]])
def test_round_trip(name):
    tri = fixture_tri(name)
    assert parse_triangulation(tri.to_text()) == tri
    assert parse_triangulation(tri.to_text()).to_text() == tri.to_text()


def test_skeleton_counts_closed(any_fixture):
    name, tri = any_fixture
    sk = tri.skeleton
    assert sum(sk.edge_degree) == 6 * tri.n
    assert all(d >= 1 for d in sk.edge_degree)
    if tri.is_closed():
        assert sk.num_faces == 2 * tri.n
        assert sk.num_vertices - sk.num_edges + sk.num_faces - tri.n == 0


def test_bg_three_vertices():
    assert family_Bg(2).triangulation.skeleton.num_vertices == 3


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_an_skeleton(n):
    sk = family_An(n).triangulation.skeleton
    assert sk.num_vertices == 1
    assert sum(1 for d in sk.edge_degree if d == 1) == n


def test_classify_torus_bundle():
    flags = classify(fixture_tri("torus-bundle-6"))
    assert flags.closed and flags.orientable
    assert flags.orientation[0] == 1
    assert flags.boundary_components == ()


def test_cyclic_polytope_is_combinatorial_manifold():
    flags = classify(gale(8).triangulation)
    assert flags.simplicial and flags.combinatorial_manifold
    assert flags.closed


def test_inflated_boundary():
    flags = classify(inflate_fxi(2).triangulation)
    comps = flags.boundary_components
    assert len(comps) == 2
    assert all(c.genus == 2 and c.triangles == 6 for c in comps)
    assert set(flags.boundary_faces_per_tet) <= {0, 1}


def test_combinatorial_implies_simplicial(any_fixture):
    _, tri = any_fixture
    flags = classify(tri)
    assert not flags.combinatorial_manifold or flags.simplicial
    assert not flags.closed or flags.boundary_components == ()


def test_one_tet_sphere():
    tri = one_tet_s3()
    sk = tri.skeleton
    assert tri.n == 1 and tri.is_closed()
    assert sorted(sk.edge_degree) == [1, 1, 4]


def test_double_of_ball_is_closed():
    tri = fixture_tri("ball-4")
    d = double(tri)
    assert d.n == 8 and d.is_closed()
    assert classify(d).orientable


def test_perm_helpers():
    p = (1, 2, 0, 3)
    assert perm_compose(p, perm_inverse(p)) == (0, 1, 2, 3)
    assert perm_sign(p) == 1
    assert perm_sign((1, 0, 2, 3)) == -1


def test_surface_triangulation_genus():
    # two triangles glued along all three edges: a sphere
    s = SurfaceTriangulation.from_edge_pairs(2, [((0, (0, 1)), (1, (0, 1))), ((0, (1, 2)), (1, (1, 2))), ((0, (0, 2)), (1, (0, 2)))])
    assert s.euler_characteristic() == 2
    assert s.is_orientable() and s.genus() == 0


def _relabelled(tri, seed):
    order = list(range(tri.n))
    random.Random(seed).shuffle(order)
    return tri.relabel(order)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FIXTURE_NAMES), st.integers(0, 10_000))
def test_relabel_invariance(name, seed):
    tri = fixture_tri(name)
    other = _relabelled(tri, seed)
    a, b = classify(tri), classify(other)
    assert (a.closed, a.orientable, a.vertex_count, a.edge_count, a.face_count) == (
        b.closed, b.orientable, b.vertex_count, b.edge_count, b.face_count)
    assert sorted(tri.skeleton.edge_degree) == sorted(other.skeleton.edge_degree)
    assert a.edge_degree_census == b.edge_degree_census
