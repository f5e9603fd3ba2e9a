"""Shipped gluing tables with their distinguished surfaces and expected values.

Each fixture is re-verified when loaded; a mismatch raises ``ConstructionError``.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Optional

from nsg.coords import QUAD, STD, NormalCoordinates, haken_sum, lift_to_standard, validate_coordinates
from nsg.enumerate import vertex_normal_surfaces
from nsg.generators import ConstructionError, GeneratedPackage, one_tet_s3
from nsg.homology import homology
from nsg.surface import TopologySummary, build_surface, topology_summary
from nsg.triangulation import Triangulation, parse_triangulation

TABLES = {
    "s3-1": None,
    "sphere-6": """tri 6
0: 0(301) 0(120) 2(023) 1(123)
1: 3(012) 2(103) 2(123) 0(123)
2: 4(012) 1(103) 0(023) 1(023)
3: 1(012) 5(013) 4(123) 4(023)
4: 2(012) 5(203) 3(123) 3(023)
5: 5(231) 3(013) 4(103) 5(201)
""",
    "sphere-4": """tri 4
0: 3(012) 1(013) 2(023) 1(123)
1: 3(013) 0(013) 2(013) 0(123)
2: 3(231) 1(023) 0(023) 3(023)
3: 0(012) 1(012) 2(123) 2(201)
""",
    "ball-4": """tri 4
0: 0(013) 0(012) bdy 1(123)
1: 3(012) 3(013) 2(023) 0(123)
2: 2(013) 2(012) 1(023) bdy
3: 1(012) 1(013) 3(312) 3(230)
""",
    "haken-8": """tri 8
0: 3(012) 1(013) 2(023) 1(123)
1: 4(132) 0(013) 4(023) 0(123)
2: 3(032) 5(013) 0(023) 3(321)
3: 0(012) 6(013) 2(021) 2(321)
4: 7(120) 7(013) 1(023) 1(021)
5: 6(032) 2(013) 6(021) 7(320)
6: 5(032) 3(013) 5(021) 7(123)
7: 4(201) 4(013) 5(321) 6(123)
""",
    "torus-bundle-6": """tri 6
0: 4(012) 3(013) 2(023) 1(123)
1: 3(320) 4(230) 5(023) 0(123)
2: 3(231) 4(321) 0(023) 5(123)
3: 5(103) 0(013) 1(210) 2(201)
4: 0(012) 5(102) 1(301) 2(310)
5: 4(103) 3(102) 1(023) 2(123)
""",
    "s2xs1-5": """tri 5
0: 0(013) 0(012) 2(023) 1(123)
1: 4(012) 4(013) 3(023) 0(123)
2: 4(230) 4(231) 0(023) 3(123)
3: 3(013) 3(012) 1(023) 2(123)
4: 1(012) 1(013) 2(201) 2(301)
""",
}

# printed coordinates for the eight-tetrahedron example, seven entries per tetrahedron
HAKEN_S1 = [
    (0, 0, 0, 0, 0, 1, 0),
    (1, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0),
    (1, 1, 1, 0, 0, 0, 0),
    (0, 0, 1, 1, 0, 0, 0),
    (0, 1, 1, 0, 0, 0, 0),
    (1, 1, 1, 0, 0, 0, 0),
]
HAKEN_S2 = [
    (0, 1, 0, 1, 0, 1, 0),
    (1, 1, 1, 1, 0, 0, 0),
    (0, 0, 0, 2, 0, 0, 0),
    (0, 2, 0, 0, 0, 0, 0),
    (1, 1, 1, 1, 0, 0, 0),
    (0, 0, 0, 2, 0, 0, 0),
    (0, 2, 0, 0, 0, 0, 0),
    (1, 1, 0, 0, 1, 0, 0),
]

FIXTURE_NAMES = tuple(TABLES)


def fixture_triangulation(name: str) -> Triangulation:
    if name not in TABLES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    if name == "s3-1":
        return one_tet_s3()
    return parse_triangulation(TABLES[name])


def _check(cond: bool, name: str, what: str) -> None:
    if not cond:
        raise ConstructionError(f"fixture {name}: {what}")


def _summary(tri: Triangulation, x: NormalCoordinates) -> TopologySummary:
    return topology_summary(build_surface(tri, x))


def _first_vertex(
    tri: Triangulation, system: str, pred: Callable[[TopologySummary], bool]
) -> Optional[NormalCoordinates]:
    for y in vertex_normal_surfaces(tri, system, filtered=True):
        x = y if system == STD else lift_to_standard(tri, y)
        if pred(_summary(tri, x)):
            return x
    return None


def _with_quad_order(blocks, order) -> NormalCoordinates:
    return NormalCoordinates.from_blocks([tuple(b[:4]) + tuple(b[4 + k] for k in order) for b in blocks])


def load_printed(tri: Triangulation, blocks) -> tuple[NormalCoordinates, tuple[int, ...]]:
    """Read printed standard blocks, trying other quad orders if the default fails to match."""
    for order in permutations(range(3)):
        x = _with_quad_order(blocks, order)
        if validate_coordinates(tri, x).ok():
            return x, order
    raise ConstructionError("printed coordinates satisfy the matching equations under no quad order")


def fixture_package(name: str) -> GeneratedPackage:
    tri = fixture_triangulation(name)
    surfaces: dict = {}
    manifest: dict = {}
    h = homology(tri)
    manifest["h1"] = h.describe()

    if name == "s3-1":
        _check(h.h1_trivial(), name, "H1 not trivial")
        x = _first_vertex(tri, STD, lambda s: s.genus == 1 and s.q == 1 and s.v == 1 and s.closed)
        _check(x is not None, name, "no one-quad torus vertex surface")
        surfaces["torus"] = x
        manifest.update(genus=1, q=1, v=1)
    elif name == "sphere-6":
        x = _first_vertex(tri, STD, lambda s: s.orientable and s.closed and s.genus == 3 and s.q == 2)
        _check(x is not None, name, "no genus 3 vertex surface with two quads")
        surfaces["genus3"] = x
        manifest.update(genus=3, q=2)
    elif name == "sphere-4":
        x = _first_vertex(tri, QUAD, lambda s: s.orientable and s.closed and s.genus == 2 and s.q == 2)
        _check(x is not None, name, "no genus 2 quad vertex surface with two quads")
        surfaces["genus2"] = x
        manifest.update(genus=2, q=2)
    elif name == "ball-4":
        _check(len(tri.boundary_faces()) == 2, name, "expected two boundary faces")
        x = _first_vertex(tri, STD, lambda s: s.connected and s.orientable and s.genus == 1 and s.b == 2 and s.q == 1)
        _check(x is not None, name, "no one-quad genus 1 surface with two boundary circles")
        surfaces["bounded"] = x
        manifest.update(genus=1, b=2, q=1, boundary_faces=2)
    elif name == "haken-8":
        s1, order1 = load_printed(tri, HAKEN_S1)
        s2, order2 = load_printed(tri, HAKEN_S2)
        t1, t2 = _summary(tri, s1), _summary(tri, s2)
        _check(not t1.orientable and t1.chi == -2 and t1.q == 1, name, "s1 is not a one-quad chi -2 one-sided surface")
        _check(t2.orientable and t2.genus == 3 and t2.q == 2, name, "s2 is not a genus 3 two-quad surface")
        total = haken_sum(tri, [(2, s1), (1, s2)])
        ts = _summary(tri, total)
        _check(ts.connected and ts.triangles == 48 and ts.q == 4 and ts.genus == 5, name, "2 s1 + s2 summary")
        surfaces.update(s1=s1, s2=s2, sum=total)
        manifest.update(
            s1_chi=-2, s2_genus=3, sum_genus=5, sum_triangles=48, sum_quads=4,
            quad_order_s1=list(order1), quad_order_s2=list(order2), haken_summands=2, haken_vertex_links=0,
        )
    elif name == "torus-bundle-6":
        _check(h.betti[1] == 3 and not h.torsion, name, "H1 rank is not 3")
        x = _first_vertex(tri, QUAD, lambda s: s.connected and s.orientable and s.closed and s.genus == 1 and s.q == 2)
        _check(x is not None, name, "no two-quad torus")
        surfaces["torus"] = x
        manifest.update(h1_rank=3, genus=1, q=2)
    elif name == "s2xs1-5":
        _check(h.betti[1] == 1 and not h.torsion, name, "H1 is not Z")
        x = _first_vertex(tri, STD, lambda s: s.connected and not s.orientable and s.chi == -2 and s.q == 1)
        _check(x is not None, name, "no one-quad chi -2 one-sided vertex surface")
        d = x.scaled(2)
        td = _summary(tri, d)
        _check(td.orientable and td.q == 2 and td.chi == -4, name, "double is not orientable with chi -4")
        surfaces.update(nonorientable=x, double=d)
        manifest.update(chi=-2, q=1, double_chi=-4, double_q=2)
    for key, x in surfaces.items():
        _check(validate_coordinates(tri, x).ok(), name, f"surface {key} fails validation")
    return GeneratedPackage(name=name, triangulation=tri, surfaces=surfaces, manifest=manifest)
