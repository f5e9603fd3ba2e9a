import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture_pkg, fixture_tri
from nsg.coords import (
    QUAD,
    STD,
    IncompatibleError,
    MatchingError,
    NormalCoordinates,
    edge_weights,
    haken_sum,
    is_admissible,
    lift_to_standard,
    matching_system,
    parse_coordinates,
    quad_index,
    quad_projection,
    splitting_coordinates,
    validate_coordinates,
    vertex_link_coordinates,
)
from nsg.enumerate import extreme_rays, vertex_normal_surfaces
from nsg.fixtures import FIXTURE_NAMES, HAKEN_S1, _with_quad_order, load_printed
from nsg.generators import family_Bg, s2xi
from nsg.surface import build_surface, topology_summary
from nsg.triangulation import ParseError


def test_quad_index():
    assert quad_index(0, 1) == quad_index(2, 3) == 0
    assert quad_index(0, 2) == quad_index(1, 3) == 1
    assert quad_index(0, 3) == quad_index(1, 2) == 2


def test_standard_rows_shape(any_fixture):
    _, tri = any_fixture
    ls = matching_system(tri, STD)
    assert ls.dimension == 7 * tri.n
    for row in ls.rows:
        assert sorted(v for v in row if v) in ([-1, -1, 1, 1], [-2, 2], [-1, 1])


def test_quad_rows_entries(any_fixture):
    _, tri = any_fixture
    if tri.orientation is None:
        pytest.skip("non-orientable")
    ls = matching_system(tri, QUAD)
    assert ls.dimension == 3 * tri.n
    assert all(-2 <= v <= 2 for row in ls.rows for v in row)


@pytest.mark.parametrize("name", ["sphere-6", "torus-bundle-6", "s2xs1-5", "ball-4"])
def test_quad_projection_of_every_standard_ray(name):
    tri = fixture_tri(name)
    qs = matching_system(tri, QUAD)
    for r in extreme_rays(matching_system(tri, STD)):
        assert qs.satisfied_by(quad_projection(NormalCoordinates(STD, r)).values)


def test_vertex_links(any_fixture):
    _, tri = any_fixture
    for v in range(tri.skeleton.num_vertices):
        x = vertex_link_coordinates(tri, v)
        assert x.quad_count() == 0
        assert validate_coordinates(tri, x).ok()
        assert all(w >= 0 for w in edge_weights(tri, x))


@pytest.mark.parametrize("name", ["sphere-6", "haken-8", "torus-bundle-6", "s2xs1-5"])
def test_lift_projection_round_trip(name):
    tri = fixture_tri(name)
    for y in vertex_normal_surfaces(tri, QUAD, filtered=True):
        x = lift_to_standard(tri, y)
        assert quad_projection(x) == y
        assert validate_coordinates(tri, x).ok()
        # minimal: removing any vertex link leaves a negative entry
        assert all(c == 0 for c in validate_coordinates(tri, x).vertex_linking_part.values())


def test_lift_rejects_non_solution():
    tri = fixture_tri("sphere-6")
    y = NormalCoordinates(QUAD, (0, 1) + (0,) * (3 * tri.n - 2))
    with pytest.raises(MatchingError):
        lift_to_standard(tri, y)


def test_haken_sum_adds_coordinates():
    pkg = fixture_pkg("haken-8")
    s1, s2 = pkg.surfaces["s1"], pkg.surfaces["s2"]
    total = haken_sum(pkg.triangulation, [(2, s1), (1, s2)])
    assert total.values == tuple(2 * a + b for a, b in zip(s1.values, s2.values))


def test_haken_sum_incompatible():
    tri = fixture_tri("sphere-6")
    a = [0] * 42
    b = [0] * 42
    a[4] = 1
    b[5] = 1
    with pytest.raises(IncompatibleError):
        haken_sum(tri, [(1, NormalCoordinates(STD, tuple(a))), (1, NormalCoordinates(STD, tuple(b)))])


def test_admissibility():
    assert is_admissible(NormalCoordinates(STD, (1, 0, 0, 0, 2, 0, 0)))
    assert not is_admissible(NormalCoordinates(STD, (0, 0, 0, 0, 1, 1, 0)))


def test_text_round_trip():
    x = fixture_pkg("haken-8").surfaces["s2"]
    assert parse_coordinates(x.to_text()) == x
    y = NormalCoordinates(QUAD, (1, 0, 2, 0, 0, 0))
    assert parse_coordinates(y.to_text()) == y


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_coordinates("surface std 1\n0: 1 2 3 ; 0 0 0\n")
    with pytest.raises(ParseError):
        parse_coordinates("surf std 1\n")
    with pytest.raises(ParseError):
        parse_coordinates("surface quad 2\n0: 1 0 0\n")


def test_printed_coordinates_validate_default_order():
    tri = fixture_tri("haken-8")
    x, order = load_printed(tri, HAKEN_S1)
    assert order == (0, 1, 2)


def test_quad_order_retry_recovers_permuted_input():
    tri = fixture_tri("haken-8")
    # store the quads in a scrambled order; the loader must find an order that validates
    scrambled = [tuple(b[:4]) + (b[5], b[6], b[4]) for b in HAKEN_S1]
    x, order = load_printed(tri, scrambled)
    assert validate_coordinates(tri, x).ok()
    assert x == _with_quad_order(scrambled, order)


def test_splitting_census_s2xi():
    pkg = s2xi()[0]
    res = splitting_coordinates(pkg.triangulation, pkg.coloring)
    assert res.census == {"A_r": 0, "A_b": 0, "B_r": 2, "B_b": 2, "C": 1}


def test_splitting_colour_spellings():
    pkg = s2xi()[0]
    short = {v: c[0] for v, c in pkg.coloring.items()}
    digits = {v: (0 if c == "red" else 1) for v, c in pkg.coloring.items()}
    a = splitting_coordinates(pkg.triangulation, pkg.coloring).coordinates
    assert splitting_coordinates(pkg.triangulation, short).coordinates == a
    assert splitting_coordinates(pkg.triangulation, digits).coordinates == a


def test_bg_splitting_matches():
    pkg = family_Bg(4)
    assert validate_coordinates(pkg.triangulation, pkg.surfaces["splitting"]).ok()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([n for n in FIXTURE_NAMES if n != "ball-4"]), st.data())
def test_standard_solutions_project(name, data):
    tri = fixture_tri(name)
    if tri.orientation is None:
        return
    rays = [x.values for x in vertex_normal_surfaces(tri, STD, filtered=True)]
    coeffs = [data.draw(st.integers(0, 3)) for _ in rays]
    combo = [sum(c * r[i] for c, r in zip(coeffs, rays)) for i in range(7 * tri.n)]
    assert matching_system(tri, QUAD).satisfied_by(quad_projection(NormalCoordinates(STD, tuple(combo))).values)
