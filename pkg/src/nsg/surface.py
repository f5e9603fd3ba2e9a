"""Reconstruction of embedded normal surfaces and their combinatorial topology."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from nsg.coords import (
    QUAD_PAIRS,
    STD,
    MatchingError,
    NormalCoordinates,
    edge_weights,
    is_admissible,
    matching_system,
    quad_index,
)
from nsg.triangulation import ParityUnionFind, Triangulation

TRIANGLE_KINDS = (0, 1, 2, 3)
QUAD_KINDS = (4, 5, 6)


@dataclass(frozen=True)
class Disc:
    tet: int
    kind: int  # 0..3 triangle at that vertex, 4..6 quad type kind-4
    sheet: int

    @property
    def is_quad(self) -> bool:
        return self.kind >= 4


def disc_corners(kind: int) -> tuple[tuple[int, int], ...]:
    """Tetrahedron edges met by a disc, in cyclic order around its boundary."""
    if kind < 4:
        v = kind
        others = [w for w in range(4) if w != v]
        return tuple(tuple(sorted((v, w))) for w in others)
    (a, b), (c, d) = QUAD_PAIRS[kind - 4]
    return tuple(tuple(sorted(e)) for e in ((a, c), (a, d), (b, d), (b, c)))


def side_location(corner1: tuple[int, int], corner2: tuple[int, int]) -> tuple[int, int]:
    """(face, cut vertex) of the disc side joining two corners."""
    v = (set(corner1) & set(corner2)).pop()
    f = ({0, 1, 2, 3} - set(corner1) - set(corner2)).pop()
    return f, v


@dataclass
class NormalSurfaceComplex:
    tri: Triangulation
    coords: NormalCoordinates
    discs: list[Disc]
    corners: list[tuple[tuple[int, int], ...]]
    sides: list[tuple[tuple[int, int], ...]]  # per disc, per side: (face, cut vertex)
    glue: dict  # (disc, side) -> (disc2, side2, same_direction)
    vertex_id: list[tuple[int, ...]]
    edge_id: list[tuple[int, ...]]
    f_vector: tuple[int, int, int]
    disc_sign: list[int] = field(default_factory=list)
    orientation_conflict: Optional[tuple[int, int]] = None
    component_of: list[int] = field(default_factory=list)
    num_components: int = 0

    @property
    def quad_count(self) -> int:
        return sum(1 for d in self.discs if d.is_quad)

    @property
    def triangle_count(self) -> int:
        return sum(1 for d in self.discs if not d.is_quad)

    def side_corner_ids(self, d: int, s: int) -> tuple[int, int]:
        m = len(self.corners[d])
        return s, (s + 1) % m


def _arc_position(x: NormalCoordinates, t: int, f: int, v: int, kind: int, sheet: int) -> int:
    if kind < 4:
        return sheet
    nq = x.quad(t, kind - 4)
    zero_pair = QUAD_PAIRS[kind - 4][0]
    return x.triangle(t, v) + (sheet if v in zero_pair else nq - 1 - sheet)


def build_surface(tri: Triangulation, x: NormalCoordinates) -> NormalSurfaceComplex:
    if x.system != STD:
        raise ValueError("build_surface needs standard coordinates")
    if x.n != tri.n:
        raise ValueError("dimension mismatch")
    if not is_admissible(x):
        raise MatchingError("coordinates violate the quadrilateral constraints")
    if not matching_system(tri, STD).satisfied_by(x.values):
        raise MatchingError("coordinates violate the standard matching equations")

    discs: list[Disc] = []
    for t in range(tri.n):
        for kind in range(7):
            count = x.triangle(t, kind) if kind < 4 else x.quad(t, kind - 4)
            discs.extend(Disc(t, kind, k) for k in range(count))
    corners = [disc_corners(d.kind) for d in discs]
    sides = []
    arc_at: dict = {}
    for i, d in enumerate(discs):
        cs = corners[i]
        row = []
        for s in range(len(cs)):
            f, v = side_location(cs[s], cs[(s + 1) % len(cs)])
            row.append((f, v))
            arc_at[(d.tet, f, v, _arc_position(x, d.tet, f, v, d.kind, d.sheet))] = (i, s)
        sides.append(tuple(row))

    glue: dict = {}
    keys = [(i, c) for i in range(len(discs)) for c in range(len(corners[i]))]
    vuf = ParityUnionFind(keys)
    duf = ParityUnionFind(range(len(discs)))
    conflict = None
    for i, d in enumerate(discs):
        cs = corners[i]
        for s, (f, v) in enumerate(sides[i]):
            if (i, s) in glue:
                continue
            g = tri.gluings[d.tet][f]
            if g is None:
                continue
            t2, p = g
            pos = _arc_position(x, d.tet, f, v, d.kind, d.sheet)
            j, s2 = arc_at[(t2, p[f], p[v], pos)]
            c0, c1 = cs[s], cs[(s + 1) % len(cs)]
            img0 = tuple(sorted((p[c0[0]], p[c0[1]])))
            cs2 = corners[j]
            m2 = len(cs2)
            # the corner of j at the start of side s2 is either img0 or the other end
            same = cs2[s2] == img0
            glue[(i, s)] = (j, s2, same)
            glue[(j, s2)] = (i, s, same)
            a0, a1 = (s2, (s2 + 1) % m2) if same else ((s2 + 1) % m2, s2)
            vuf.union((i, s), (j, a0))
            vuf.union((i, (s + 1) % len(cs)), (j, a1))
            # adjacent oriented discs traverse a shared side in opposite directions
            if not duf.union(i, j, -1 if same else 1) and conflict is None:
                conflict = (i, j)

    vclass = vuf.classes(keys)
    vertex_id = [tuple(vclass[(i, c)] for c in range(len(corners[i]))) for i in range(len(discs))]
    edge_id = []
    next_edge = 0
    eid: dict = {}
    for i in range(len(discs)):
        row = []
        for s in range(len(corners[i])):
            if (i, s) not in eid:
                eid[(i, s)] = next_edge
                if (i, s) in glue:
                    j, s2, _ = glue[(i, s)]
                    eid[(j, s2)] = next_edge
                next_edge += 1
            row.append(eid[(i, s)])
        edge_id.append(tuple(row))

    f0 = len(set(vclass.values()))
    if f0 != sum(edge_weights(tri, x)):
        raise MatchingError("surface vertex count disagrees with edge weights")
    comp = duf.classes(range(len(discs)))
    S = NormalSurfaceComplex(
        tri=tri,
        coords=x,
        discs=discs,
        corners=corners,
        sides=sides,
        glue=glue,
        vertex_id=vertex_id,
        edge_id=edge_id,
        f_vector=(f0, next_edge, len(discs)),
        disc_sign=[duf.relative(i) for i in range(len(discs))],
        orientation_conflict=conflict,
        component_of=[comp[i] for i in range(len(discs))],
        num_components=len(set(comp.values())),
    )
    return S


@dataclass(frozen=True)
class ComponentSummary:
    chi: int
    orientable: bool
    b: int
    v: int
    q: int
    genus: int
    triangles: int

    @property
    def closed(self) -> bool:
        return self.b == 0


def genus_from(chi: int, orientable: bool, b: int) -> int:
    if orientable:
        if b == 0:
            return (2 - chi) // 2
        return 1 - (chi + b) // 2
    return 2 - chi - b


@dataclass(frozen=True)
class TopologySummary:
    components: tuple[ComponentSummary, ...]
    f_vector: tuple[int, int, int]

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def chi(self) -> int:
        return self.f_vector[0] - self.f_vector[1] + self.f_vector[2]

    @property
    def orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    @property
    def b(self) -> int:
        return sum(c.b for c in self.components)

    @property
    def boundary_count(self) -> int:
        return self.b

    @property
    def closed(self) -> bool:
        return self.b == 0

    @property
    def v(self) -> int:
        return self.f_vector[0]

    @property
    def q(self) -> int:
        return sum(c.q for c in self.components)

    @property
    def genus(self) -> int:
        """Genus of a connected surface; summed over components otherwise."""
        return sum(c.genus for c in self.components)

    @property
    def triangles(self) -> int:
        return sum(c.triangles for c in self.components)

    def to_json(self) -> dict:
        return {
            "components": [
                {"chi": c.chi, "orientable": c.orientable, "b": c.b, "v": c.v, "q": c.q, "genus": c.genus}
                for c in self.components
            ],
            "f_vector": list(self.f_vector),
        }


def _boundary_circles(edges: list[tuple[int, int]]) -> list[list[int]]:
    """Group edges (given by endpoint ids) into connected components; returns edge indices."""
    parent: dict = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = defaultdict(list)
    for k, (a, _) in enumerate(edges):
        groups[find(a)].append(k)
    return list(groups.values())


def topology_summary(S: NormalSurfaceComplex) -> TopologySummary:
    comps = []
    for c in range(S.num_components):
        members = [i for i in range(len(S.discs)) if S.component_of[i] == c]
        verts = {v for i in members for v in S.vertex_id[i]}
        edges = {e for i in members for e in S.edge_id[i]}
        chi = len(verts) - len(edges) + len(members)
        orientable = True
        for i in members:
            for s in range(len(S.corners[i])):
                if (i, s) in S.glue:
                    j, _, same = S.glue[(i, s)]
                    want = -1 if same else 1
                    if S.disc_sign[i] * S.disc_sign[j] != want:
                        orientable = False
        bedges = []
        for i in members:
            for s in range(len(S.corners[i])):
                if (i, s) not in S.glue:
                    a, b = S.side_corner_ids(i, s)
                    bedges.append((S.vertex_id[i][a], S.vertex_id[i][b]))
        b = len(_boundary_circles(bedges))
        q = sum(1 for i in members if S.discs[i].is_quad)
        comps.append(
            ComponentSummary(
                chi=chi,
                orientable=orientable,
                b=b,
                v=len(verts),
                q=q,
                genus=genus_from(chi, orientable, b),
                triangles=len(members) - q,
            )
        )
    return TopologySummary(tuple(comps), S.f_vector)


@dataclass(frozen=True)
class TriangleRegion:
    triangles: tuple[int, ...]
    chi: int
    chains: tuple[int, ...]  # quad-edge count of each boundary circle
    simply_connected: bool


@dataclass(frozen=True)
class RegionDecomposition:
    triangle_regions: tuple[TriangleRegion, ...]
    quad_regions: tuple[tuple[int, ...], ...]

    @property
    def min_chain_length(self) -> float:
        lengths = [c for r in self.triangle_regions if not r.simply_connected for c in r.chains]
        return min(lengths) if lengths else math.inf

    def to_json(self) -> dict:
        return {
            "triangle": [
                {"simply_connected": r.simply_connected, "chains": list(r.chains), "triangles": len(r.triangles)}
                for r in self.triangle_regions
            ],
            "quad": [{"quads": len(r)} for r in self.quad_regions],
        }


def _regions_of(S: NormalSurfaceComplex, want_quad: bool) -> list[list[int]]:
    idx = [i for i, d in enumerate(S.discs) if d.is_quad == want_quad]
    parent = {i: i for i in idx}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in idx:
        for s in range(len(S.corners[i])):
            g = S.glue.get((i, s))
            if g and S.discs[g[0]].is_quad == want_quad:
                ra, rb = find(i), find(g[0])
                if ra != rb:
                    parent[ra] = rb
    groups: dict = defaultdict(list)
    for i in idx:
        groups[find(i)].append(i)
    return sorted(groups.values())


def region_decomposition(S: NormalSurfaceComplex) -> RegionDecomposition:
    regions = []
    for members in _regions_of(S, False):
        mset = set(members)
        keys = [(i, c) for i in members for c in range(3)]
        uf = ParityUnionFind(keys)
        interior_edges = set()
        boundary_sides = []
        for i in members:
            for s in range(3):
                g = S.glue.get((i, s))
                if g and g[0] in mset:
                    j, s2, same = g
                    interior_edges.add(S.edge_id[i][s])
                    a0, a1 = (s2, (s2 + 1) % 3) if same else ((s2 + 1) % 3, s2)
                    uf.union((i, s), (j, a0))
                    uf.union((i, (s + 1) % 3), (j, a1))
                else:
                    boundary_sides.append((i, s, g is not None))
        cls = uf.classes(keys)
        nverts = len(set(cls.values()))
        chi = nverts - (len(interior_edges) + len(boundary_sides)) + len(members)
        ends = [(cls[(i, s)], cls[(i, (s + 1) % 3)]) for i, s, _ in boundary_sides]
        circles = _boundary_circles(ends)
        chains = tuple(sorted(sum(1 for k in circ if boundary_sides[k][2]) for circ in circles))
        simply = (chi == 1 and len(circles) == 1) or (chi == 2 and not circles)
        regions.append(TriangleRegion(tuple(members), chi, chains, simply))
    quads = tuple(tuple(r) for r in _regions_of(S, True))
    return RegionDecomposition(tuple(regions), quads)


# -- transverse orientation ------------------------------------------------

_POINTS = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))


def _midpoint(e: tuple[int, int]) -> tuple[Fraction, ...]:
    a, b = e
    return tuple(Fraction(_POINTS[a][k] + _POINTS[b][k], 2) for k in range(3))


def _newell(points) -> tuple:
    n = [Fraction(0)] * 3
    m = len(points)
    for i in range(m):
        x1, y1, z1 = points[i]
        x2, y2, z2 = points[(i + 1) % m]
        n[0] += (y1 - y2) * (z1 + z2)
        n[1] += (z1 - z2) * (x1 + x2)
        n[2] += (x1 - x2) * (y1 + y2)
    return tuple(n)


def positive_vertices(kind: int, sign: int) -> frozenset[int]:
    """Tetrahedron vertices on the side a disc's transverse normal points to."""
    pts = [_midpoint(e) for e in disc_corners(kind)]
    n = _newell(pts)
    centre = tuple(sum(p[k] for p in pts) / len(pts) for k in range(3))
    out = set()
    for v in range(4):
        dot = sum(n[k] * (_POINTS[v][k] - centre[k]) for k in range(3))
        if dot * sign > 0:
            out.add(v)
    return frozenset(out)


@dataclass(frozen=True)
class EdgeClassification:
    long_sides: dict  # (disc, side) -> True if long
    dual_edge: dict  # quad disc -> tetrahedron edge its long sides are dual to
    small_triangles: frozenset
    long_edge_classes: tuple[tuple[int, ...], ...]  # surface edge ids
    vertical_paths: tuple[tuple[int, ...], ...]  # surface edge ids of short quad edges

    def to_json(self) -> dict:
        return {
            "long_edge_classes": len(self.long_edge_classes),
            "vertical_paths": [len(p) for p in self.vertical_paths],
            "small_triangles": len(self.small_triangles),
        }


def edge_classification(tri: Triangulation, S: NormalSurfaceComplex, flip: bool = False) -> EdgeClassification:
    """Short/long arcs under the transverse orientation from the tetrahedron signs.

    ``flip`` reverses the chosen orientation of the surface.
    """
    orient = tri.orientation
    if orient is None:
        raise ValueError("edge classification needs an orientable triangulation")
    summary = topology_summary(S)
    if not summary.orientable or not summary.closed:
        raise ValueError("edge classification needs a closed orientable surface")
    glob = -1 if flip else 1
    long_sides: dict = {}
    dual: dict = {}
    small = set()
    for i, d in enumerate(S.discs):
        sign = glob * S.disc_sign[i] * orient[d.tet]
        pos = positive_vertices(d.kind, sign)
        for s, (f, v) in enumerate(S.sides[i]):
            long_sides[(i, s)] = v not in pos
        if d.is_quad:
            dual[i] = tuple(sorted(pos))
        elif d.kind in pos:
            small.add(i)
    for (i, s), (j, s2, _) in S.glue.items():
        if long_sides[(i, s)] != long_sides[(j, s2)]:
            raise ValueError("short/long classification disagrees across a glued side")

    quads = [i for i, d in enumerate(S.discs) if d.is_quad]
    parent = {i: i for i in quads}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in quads:
        for s in range(4):
            g = S.glue.get((i, s))
            if long_sides[(i, s)] and g and S.discs[g[0]].is_quad:
                ra, rb = find(i), find(g[0])
                if ra != rb:
                    parent[ra] = rb
    classes: dict = defaultdict(set)
    for i in quads:
        for s in range(4):
            if long_sides[(i, s)]:
                classes[find(i)].add(S.edge_id[i][s])
    long_classes = tuple(sorted(tuple(sorted(c)) for c in classes.values()))

    # short quad edges joined across the endpoints of long quad-quad gluings
    short_keys = sorted({S.edge_id[i][s] for i in quads for s in range(4) if not long_sides[(i, s)]})
    sp = {e: e for e in short_keys}

    def sfind(a):
        while sp[a] != a:
            sp[a] = sp[sp[a]]
            a = sp[a]
        return a

    def short_at_corner(i: int, c: int) -> int:
        for s in ((c - 1) % 4, c):
            if not long_sides[(i, s)]:
                return S.edge_id[i][s]
        raise AssertionError("quad corner without a short side")

    for i in quads:
        for s in range(4):
            g = S.glue.get((i, s))
            if not (long_sides[(i, s)] and g and S.discs[g[0]].is_quad):
                continue
            j, s2, same = g
            ends_i = (s, (s + 1) % 4)
            ends_j = (s2, (s2 + 1) % 4) if same else ((s2 + 1) % 4, s2)
            for ci, cj in zip(ends_i, ends_j):
                a, b = sfind(short_at_corner(i, ci)), sfind(short_at_corner(j, cj))
                if a != b:
                    sp[a] = b
    paths: dict = defaultdict(list)
    for e in short_keys:
        paths[sfind(e)].append(e)
    vertical = tuple(sorted(tuple(p) for p in paths.values()))
    return EdgeClassification(long_sides, dual, frozenset(small), long_classes, vertical)


def surface_report(tri: Triangulation, S: NormalSurfaceComplex) -> dict:
    summary = topology_summary(S)
    regions = region_decomposition(S)
    out = summary.to_json()
    out["regions"] = regions.to_json()
    if tri.orientation is not None and summary.orientable and summary.closed and S.discs:
        ec = edge_classification(tri, S)
        out["long_edge_classes"] = len(ec.long_edge_classes)
        out["vertical_paths"] = [len(p) for p in ec.vertical_paths]
    else:
        out["long_edge_classes"] = None
        out["vertical_paths"] = None
    return out
