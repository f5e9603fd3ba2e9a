from math import comb

import pytest

from nsg.generators import (
    ConstructionError,
    GeneratedPackage,
    canonical_frame,
    cone_over,
    degree_signature,
    family_An,
    family_Bg,
    gale,
    gale_facets,
    inflate_fxi,
    one_tet_s3,
    s2xi,
    surface_one_vertex,
)
from nsg.homology import homology
from nsg.surface import build_surface, topology_summary
from nsg.triangulation import classify


@pytest.mark.parametrize("g", [1, 2, 3, 5])
def test_one_vertex_surface(g):
    F = surface_one_vertex(g)
    assert F.n == 4 * g - 2
    assert F.num_vertices == 1
    assert F.boundary_edges == 0
    assert F.euler_characteristic() == 2 - 2 * g
    assert F.is_orientable()


def test_one_vertex_surface_rejects_sphere():
    with pytest.raises(ValueError):
        surface_one_vertex(0)


@pytest.mark.parametrize("g", [1, 2])
def test_cone_is_a_ball_with_surface_boundary(g):
    tri = cone_over(surface_one_vertex(g))
    flags = classify(tri)
    assert tri.n == 4 * g - 2
    assert len(tri.boundary_faces()) == 4 * g - 2
    assert [c.genus for c in flags.boundary_components] == [g]


def test_one_tet_sphere():
    tri = one_tet_s3()
    assert tri.n == 1
    assert tri.skeleton.num_vertices == 2
    assert homology(tri).h1_trivial()
    assert 1 in tri.skeleton.edge_degree


@pytest.mark.parametrize("n", range(1, 6))
def test_an_family(n):
    pkg = family_An(n)
    assert pkg.triangulation.n == n
    assert pkg.manifest["degree_one_edges"] == n
    assert len(pkg.surfaces) == 2 ** n - 1
    for key, x in pkg.surfaces.items():
        k = len(key.split("-")) - 1
        ts = topology_summary(build_surface(pkg.triangulation, x))
        assert ts.genus == k and ts.q == k


@pytest.mark.parametrize("g", [2, 3, 6])
def test_bg_family(g):
    pkg = family_Bg(g)
    tri = pkg.triangulation
    assert tri.n == 2 * g
    assert tri.skeleton.num_vertices == 3
    ts = topology_summary(build_surface(tri, pkg.surfaces["splitting"]))
    assert (ts.v, ts.q, ts.genus) == (2, 2 * g, g)


@pytest.mark.parametrize("bad,fn", [(0, family_An), (1, family_Bg), (0, inflate_fxi), (7, gale), (6, gale)])
def test_parameter_errors(bad, fn):
    with pytest.raises(ValueError):
        fn(bad)


@pytest.mark.parametrize("g", range(1, 6))
def test_frame_identity(g):
    frame = canonical_frame(g)
    assert frame.edges == 2 * g
    assert frame.cone_tetrahedra + frame.complexity == 10 * g - 4


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_inflation(g):
    pkg = inflate_fxi(g)
    tri = pkg.triangulation
    flags = classify(tri)
    assert tri.n == 10 * g - 4
    assert [c.genus for c in flags.boundary_components] == [g, g]
    assert homology(tri).betti[1] == 2 * g
    census = pkg.manifest["census"]
    assert census["C"] == 2 * g
    assert census["B_r"] == census["B_b"] == 4 * g - 2
    ts = topology_summary(build_surface(tri, pkg.surfaces["splitting"]))
    assert (ts.genus, ts.q) == (g, 2 * g)
    assert set(pkg.coloring.values()) == {"red", "blue"}


def test_s2xi():
    (pkg,) = s2xi()
    tri = pkg.triangulation
    assert tri.n == 5
    assert pkg.manifest["census"] == {**pkg.manifest["census"], "C": 1, "B_r": 2, "B_b": 2}
    comps = classify(tri).boundary_components
    assert len(comps) == 2
    ts = topology_summary(build_surface(tri, pkg.surfaces["splitting"]))
    assert ts.genus == 0 and ts.q == 1
    assert degree_signature(tri) == degree_signature(s2xi()[0].triangulation)


@pytest.mark.parametrize("n,f,g", [(8, (16, 40, 20), 3), (10, (25, 70, 35), 6)])
def test_gale(n, f, g):
    assert len(gale_facets(n)) == comb(n, 2) - n
    pkg = gale(n)
    assert classify(pkg.triangulation).combinatorial_manifold
    ts = topology_summary(build_surface(pkg.triangulation, pkg.surfaces["gale"]))
    assert ts.f_vector == f and ts.genus == g
    assert ts.triangles == 0


def test_manifest_json_carries_name_and_size():
    pkg = family_Bg(2)
    js = pkg.manifest_json()
    assert js["name"] == "bg-2" and js["tetrahedra"] == 4


def test_construction_error_is_runtime_error():
    assert issubclass(ConstructionError, RuntimeError)
    assert GeneratedPackage("x", one_tet_s3()).surfaces == {}
