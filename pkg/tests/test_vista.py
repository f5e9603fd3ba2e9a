import pytest

from conftest import fixture_pkg
from nsg.coords import STD, NormalCoordinates, quad_index, validate_coordinates, vertex_link_coordinates
from nsg.generators import family_Bg, gale
from nsg.surface import build_surface, topology_summary
from nsg.triangulation import EDGES
from nsg.vista import (
    NEAR_REALISATION_PER_QUAD,
    NEAR_REALISATION_PER_TRIANGLE,
    VistaError,
    all_vistas,
    near_realisation,
    realisation_report,
    vista_graph,
)


def edge_link(tri, edge):
    """Boundary of a regular neighbourhood of an edge in a simplicial triangulation."""
    sk = tri.skeleton
    ends = set(sk.edge_ends[edge])
    values = [0] * (7 * tri.n)
    for t, e in sk.edge_members[edge]:
        a, b = EDGES[e]
        values[7 * t + 4 + quad_index(a, b)] += 1
    hit = {t for t, _ in sk.edge_members[edge]}
    for v in ends:
        for t, w in sk.vertex_corners[v]:
            if t not in hit:
                values[7 * t + w] += 1
    return NormalCoordinates(STD, tuple(values))


@pytest.fixture(scope="module")
def gale8():
    return gale(8)


def test_gale8_screen(gale8):
    tri = gale8.triangulation
    S = build_surface(tri, gale8.surfaces["gale"])
    rep = realisation_report(tri, S)
    assert rep.lemma_ok and rep.theorem_ok and rep.ok
    assert rep.partition_ok
    assert len(rep.vistas) == tri.skeleton.num_vertices
    # an all-quad closed surface has 4q quad sides glued in pairs
    assert sum(vg.e for vg in rep.vistas) == rep.quad_edges == 2 * rep.q
    assert rep.quad_vertices == rep.f0
    # one quad in every facet, so clearing any facet costs a single quad push
    assert rep.near_realisation_delta == NEAR_REALISATION_PER_QUAD == 4


def test_edge_link_vistas(gale8):
    tri = gale8.triangulation
    sk = tri.skeleton
    for edge in range(sk.num_edges):
        x = edge_link(tri, edge)
        assert validate_coordinates(tri, x).ok()
        S = build_surface(tri, x)
        ts = topology_summary(S)
        assert ts.connected and ts.closed and ts.genus == 0
        a, b = sk.edge_ends[edge]
        d = sk.edge_degree[edge]
        vistas = all_vistas(tri, S)
        # circles around both ends of the edge
        for end in (a, b):
            assert vistas[end].v == vistas[end].e == d
            assert _is_cycle(vistas[end])
        others = [vg for vg in vistas if vg.vertex not in (a, b) and vg.e]
        assert len(others) == d
        assert all((vg.v, vg.e) == (2, 1) for vg in others)
        rep = realisation_report(tri, S)
        assert rep.ok and rep.partition_ok


def _is_cycle(vg):
    deg = {v: 0 for v in vg.vertices}
    adj = {v: [] for v in vg.vertices}
    for _, p, q in vg.edges:
        deg[p] += 1
        deg[q] += 1
        adj[p].append(q)
        adj[q].append(p)
    if any(k != 2 for k in deg.values()):
        return False
    start = next(iter(vg.vertices))
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == set(vg.vertices)


def test_vertex_link_has_empty_vistas(gale8):
    tri = gale8.triangulation
    x = vertex_link_coordinates(tri, 0)
    S = build_surface(tri, x)
    for vg in all_vistas(tri, S):
        assert vg.e == 0 and vg.v == 0 and vg.lemma_ok
    rep = realisation_report(tri, S)
    assert rep.q == 0 and rep.ok
    # some facet avoids the vertex, so nothing has to be pushed
    assert rep.near_realisation_delta == 0
    assert 0 not in [tri.skeleton.vertex_of[(rep.projection_tetrahedron, k)] for k in range(4)]


def test_near_realisation_counts_one_tetrahedron():
    pkg = family_Bg(2)
    tri = pkg.triangulation
    S = build_surface(tri, pkg.surfaces["splitting"])
    tet, delta = near_realisation(tri, S)
    per_tet = [0] * tri.n
    for d in S.discs:
        per_tet[d.tet] += NEAR_REALISATION_PER_QUAD if d.is_quad else NEAR_REALISATION_PER_TRIANGLE
    assert delta == min(per_tet) == per_tet[tet]


def test_single_vista_matches_list(gale8):
    tri = gale8.triangulation
    S = build_surface(tri, gale8.surfaces["gale"])
    vs = all_vistas(tri, S)
    for x in range(tri.skeleton.num_vertices):
        assert vista_graph(tri, S, x) == vs[x]


def test_preconditions():
    pkg = family_Bg(2)
    tri = pkg.triangulation
    S = build_surface(tri, pkg.surfaces["splitting"])
    with pytest.raises(VistaError):
        all_vistas(tri, S)
    assert len(all_vistas(tri, S, strict=False)) == tri.skeleton.num_vertices
    one_sided = fixture_pkg("s2xs1-5")
    S1 = build_surface(one_sided.triangulation, one_sided.surfaces["nonorientable"])
    with pytest.raises(VistaError):
        realisation_report(one_sided.triangulation, S1)


def test_report_json(gale8):
    tri = gale8.triangulation
    js = realisation_report(tri, build_surface(tri, gale8.surfaces["gale"])).to_json()
    assert js["genus"] == 3 and js["f0"] == 16 and js["theorem_ok"]
    assert all(v["lemma_ok"] for v in js["vistas"])
