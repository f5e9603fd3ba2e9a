"""Constructions of triangulation families and their distinguished surfaces.

Every public constructor verifies the expected manifest before returning and
raises :class:`ConstructionError` on any mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from nsg.coords import (
    QUAD,
    NormalCoordinates,
    lift_to_standard,
    splitting_coordinates,
    validate_coordinates,
)
from nsg.homology import homology
from nsg.surface import build_surface, region_decomposition, topology_summary
from nsg.triangulation import (
    SurfaceTriangulation,
    Triangulation,
    boundary_surface,
    classify,
    face_vertices,
)


class ConstructionError(RuntimeError):
    pass


@dataclass
class GeneratedPackage:
    name: str
    triangulation: Triangulation
    surfaces: dict[str, NormalCoordinates] = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)
    coloring: Optional[dict] = None

    def manifest_json(self) -> dict:
        return {"name": self.name, "tetrahedra": self.triangulation.n, **self.manifest}


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConstructionError(message)


# -- surfaces and cones ------------------------------------------------------


def surface_one_vertex(g: int) -> SurfaceTriangulation:
    """One-vertex triangulation of the closed orientable genus-g surface.

    The 4g-gon with corners P_0..P_{4g-1} is fanned from P_0 (triangle i-1 has
    corners P_0, P_i, P_{i+1}) and its sides are identified by the word
    a_1 b_1 a_1^-1 b_1^-1 ... a_g b_g a_g^-1 b_g^-1.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    m = 4 * g
    ntri = m - 2
    pairs = []
    for i in range(ntri - 1):
        pairs.append(((i, (0, 2)), (i + 1, (0, 1))))
    sides = _polygon_sides(g)
    for j in range(g):
        for k in (4 * j, 4 * j + 1):
            ta, (ua, va) = sides[k]
            tb, (ub, vb) = sides[k + 2]
            pairs.append(((ta, (ua, va)), (tb, (vb, ub))))
    return SurfaceTriangulation.from_edge_pairs(ntri, pairs)


def _polygon_sides(g: int) -> list[tuple[int, tuple[int, int]]]:
    """Side k = P_k P_{k+1} as (triangle, (local vertex of P_k, local vertex of P_{k+1}))."""
    m = 4 * g
    out = [(0, (0, 1))]
    for k in range(1, m - 1):
        out.append((k - 1, (1, 2)))
    out.append((m - 3, (2, 0)))
    return out


def cone_over(F: SurfaceTriangulation) -> Triangulation:
    """One tetrahedron per triangle; vertex 3 is the common apex and face 3 is boundary."""
    rows = []
    for i in range(F.n):
        row = []
        for f in range(4):
            if f == 3:
                row.append(None)
                continue
            g = F.gluings[i][f]
            if g is None:
                row.append(None)
            else:
                j, p = g
                row.append((j, tuple(p) + (3,)))
        rows.append(tuple(row))
    return Triangulation(F.n, tuple(rows))


# -- inflation of the cone over a one-vertex surface ---------------------------


def _inflation_core(g: int) -> tuple[list, int, list]:
    """Cone tetrahedra plus one inserted tetrahedron per identified side pair.

    Returns the gluing pairs, the tetrahedron count and the list of free faces
    (tet, face) of the inserted tetrahedra.
    """
    F = surface_one_vertex(g)
    cone = cone_over(F)
    ncone = cone.n
    sides = _polygon_sides(g)
    pairs = []
    skip = set()
    free = []
    nxt = ncone
    for j in range(g):
        for k in (4 * j, 4 * j + 1):
            e = nxt
            nxt += 1
            t, (u, v) = sides[k]
            t2, (u2, v2) = sides[k + 2]
            # side k runs P_k -> P_{k+1}; its partner is reversed, so P_k ~ P_{k'+1}
            f = 3 - u - v
            f2 = 3 - u2 - v2
            skip.add((t, f))
            skip.add((t2, f2))
            p = [0] * 4
            p[3], p[u], p[v], p[f] = 0, 3, 2, 1
            pairs.append((t, f, e, tuple(p)))
            p2 = [0] * 4
            p2[3], p2[v2], p2[u2], p2[f2] = 1, 3, 2, 0
            pairs.append((t2, f2, e, tuple(p2)))
            free.extend([(e, 2), (e, 3)])
    for t in range(ncone):
        for f in range(3):
            if (t, f) in skip:
                continue
            g_ = cone.gluings[t][f]
            t2, p = g_
            if (t2, p[f]) < (t, f):
                continue
            pairs.append((t, f, t2, p))
    return pairs, nxt, free


def _free_face_cycle(tri_partial: Triangulation, free: list, reverse: bool) -> list:
    """Free faces in rotation order around the blue vertex.

    Each entry is (tet, face, red vertex shared with the previous face, red
    vertex shared with the next face, blue vertex), all as tetrahedron-local labels.
    """
    S, faces = boundary_surface(tri_partial)
    index = {bf: i for i, bf in enumerate(faces)}
    fset = set(free)

    def tet_labels(i):
        return face_vertices(faces[i][1])

    def red_locals(i):
        labs = tet_labels(i)
        return [k for k in range(3) if labs[k] in (0, 1)]

    start = index[free[0]]
    reds = red_locals(start)
    entry_red = reds[1] if reverse else reds[0]
    out = []
    cur, cur_entry = start, entry_red
    for _ in range(len(free)):
        labs = tet_labels(cur)
        rl = red_locals(cur)
        exit_red = rl[0] if rl[1] == cur_entry else rl[1]
        blue = next(k for k in range(3) if k not in rl)
        out.append((faces[cur][0], faces[cur][1], labs[cur_entry], labs[exit_red], labs[blue]))
        # leave through the red-blue side holding exit_red, i.e. the side opposite cur_entry
        j, p = S.gluings[cur][cur_entry]
        if faces[j] not in fset:
            raise ConstructionError("free faces do not close up around the branch point")
        cur, cur_entry = j, p[exit_red]
    if cur != start:
        raise ConstructionError("free-face cycle did not return to its start")
    return out


def _attach_polygon_cone(pairs: list, base: int, cycle: list) -> tuple[list, int]:
    """Glue a cone over a 4g-gon (fan from Q_0, apex X = vertex 3) onto the free faces."""
    m = len(cycle)
    nfan = m - 2
    r = [base + i for i in range(nfan)]
    for i in range(nfan - 1):
        pairs.append((r[i], 1, r[i + 1], (0, 2, 1, 3)))
    # lateral face over Q_m Q_{m+1}: (tet, local of Q_m, local of Q_{m+1}, local of X)
    lateral = [(r[0], 0, 1, 3)]
    for k in range(1, m - 1):
        lateral.append((r[k - 1], 1, 2, 3))
    lateral.append((r[m - 3], 2, 0, 3))
    for k in range(m):
        rt, lq0, lq1, lx = lateral[k]
        et, ef, red_in, red_out, blue = cycle[k]
        opp = 6 - lq0 - lq1 - lx
        p = [0] * 4
        p[lq0], p[lq1], p[lx], p[opp] = red_in, red_out, blue, ef
        pairs.append((rt, opp, et, tuple(p)))
    return pairs, base + nfan


@dataclass(frozen=True)
class Frame:
    genus: int
    edges: int  # e(lambda)
    complexity: int  # C(lambda)

    @property
    def cone_tetrahedra(self) -> int:
        return 4 * self.genus - 2


def canonical_frame(g: int) -> Frame:
    return Frame(g, 2 * g, 6 * g - 2)


def inflate_fxi(g: int) -> GeneratedPackage:
    """Minimal 10g-4 tetrahedron triangulation of F_g x I by inflating a cone."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    last_error = None
    for reverse in (False, True):
        pairs, base, free = _inflation_core(g)
        partial = Triangulation.from_pairs(base, pairs)
        cycle = _free_face_cycle(partial, free, reverse)
        full_pairs, n = _attach_polygon_cone(list(pairs), base, cycle)
        try:
            tri = Triangulation.from_pairs(n, full_pairs)
            return _verify_fxi(g, tri)
        except ConstructionError as exc:
            last_error = exc
        except ValueError as exc:
            last_error = ConstructionError(str(exc))
    raise ConstructionError(f"inflation failed for genus {g}: {last_error}")


def _two_colouring(tri: Triangulation) -> dict:
    """Blue for vertices on the boundary component of the original cone base, red otherwise."""
    sk = tri.skeleton
    base = sk.vertex_of[(0, 0)]
    blue = next(set(c.vertex_classes) for c in classify(tri).boundary_components if base in c.vertex_classes)
    return {v: ("blue" if v in blue else "red") for v in range(sk.num_vertices)}


def _verify_fxi(g: int, tri: Triangulation) -> GeneratedPackage:
    flags = classify(tri)
    _require(tri.n == 10 * g - 4, f"expected {10 * g - 4} tetrahedra, got {tri.n}")
    _require(flags.orientable, "inflated triangulation is not orientable")
    _require(flags.vertex_count == 2, f"expected 2 vertices, got {flags.vertex_count}")
    _require(all(chi == 1 and b == 1 for chi, b in flags.vertex_links), "vertex links are not discs")
    comps = flags.boundary_components
    _require(len(comps) == 2, f"expected 2 boundary components, got {len(comps)}")
    for c in comps:
        _require(c.genus == g and c.orientable, f"boundary component of genus {c.genus}")
        _require(len(c.vertex_classes) == 1, "boundary component with more than one vertex")
        _require(c.triangles == 4 * g - 2, "boundary component with the wrong triangle count")
    _require(set(flags.boundary_faces_per_tet) <= {0, 1}, "tetrahedron with two boundary faces")
    h = homology(tri)
    _require(h.betti[1] == 2 * g and not h.torsion, f"H1 is {h.describe()}")
    coloring = _two_colouring(tri)
    split = splitting_coordinates(tri, coloring)
    S = build_surface(tri, split.coordinates)
    ts = topology_summary(S)
    _require(ts.connected and ts.closed and ts.orientable, "splitting surface is not a closed connected orientable surface")
    _require(ts.genus == g and ts.q == 2 * g, f"splitting surface genus {ts.genus} with {ts.q} quads")
    regions = region_decomposition(S)
    frame = canonical_frame(g)
    _require(frame.cone_tetrahedra + frame.complexity == tri.n, "frame complexity identity fails")
    return GeneratedPackage(
        name=f"fxi-{g}",
        triangulation=tri,
        surfaces={"splitting": split.coordinates},
        coloring=coloring,
        manifest={
            "genus": g,
            "vertices": 2,
            "boundary_genera": [c.genus for c in comps],
            "h1_rank": h.betti[1],
            "splitting_genus": ts.genus,
            "splitting_quads": ts.q,
            "census": split.census,
            "triangle_regions": [list(r.chains) for r in regions.triangle_regions],
            "frame_edges": frame.edges,
            "frame_complexity": frame.complexity,
        },
    )


# -- S^2 x I -----------------------------------------------------------------


def _s2xi_tri() -> Triangulation:
    # cone over the two-triangle sphere; tets 0 and 1 share their side faces
    pairs = [(0, 1, 1, (0, 1, 2, 3)), (0, 2, 1, (0, 1, 2, 3))]
    # the side over the frame edge P1 P2 (face 0) is cut open and tet 2 inserted
    pairs.append((0, 0, 2, (1, 3, 2, 0)))
    pairs.append((1, 0, 2, (0, 3, 2, 1)))
    # each free face of tet 2 is capped by a tetrahedron folded around its edge 03
    for tet, free_face, blue in ((3, 2, 3), (4, 3, 2)):
        pairs.append((tet, 2, tet, (0, 2, 1, 3)))
        pairs.append((tet, 3, 2, (blue, 0, 1, free_face)))
    return Triangulation.from_pairs(5, pairs)


def s2xi() -> list[GeneratedPackage]:
    """Five-tetrahedron triangulation of S^2 x I from a one-edge frame."""
    return [_verify_s2xi("folded-caps", _s2xi_tri())]


def _verify_s2xi(variant: str, tri: Triangulation) -> GeneratedPackage:
    flags = classify(tri)
    _require(tri.n == 5, "expected 5 tetrahedra")
    _require(flags.orientable, f"variant {variant} is not orientable")
    comps = flags.boundary_components
    _require(len(comps) == 2 and all(c.euler == 2 for c in comps), "boundary is not two spheres")
    _require(all(chi == 1 and b == 1 for chi, b in flags.vertex_links), "vertex links are not discs")
    h = homology(tri)
    _require(h.betti[1] == 0 and not h.torsion, "H1 should vanish")
    coloring = _two_colouring(tri)
    split = splitting_coordinates(tri, coloring)
    ts = topology_summary(build_surface(tri, split.coordinates))
    _require(ts.connected and ts.genus == 0 and ts.q == 1, "splitting surface is not a one-quad sphere")
    census = split.census
    _require(census["C"] == 1 and census["B_r"] == 2 and census["B_b"] == 2, f"census {census}")
    return GeneratedPackage(
        name=f"s2xi-{variant}",
        triangulation=tri,
        surfaces={"splitting": split.coordinates},
        coloring=coloring,
        manifest={
            "variant": variant,
            "census": census,
            "edge_degrees": sorted(tri.skeleton.edge_degree),
        },
    )


def degree_signature(tri: Triangulation) -> tuple:
    sk = tri.skeleton
    return tuple(sorted(zip(sk.edge_degree, sk.edge_boundary)))


# -- closed families ---------------------------------------------------------


def one_tet_s3() -> Triangulation:
    """One-tetrahedron 3-sphere whose degree-one edge has a one-quad torus as link."""
    return Triangulation.from_pairs(1, [(0, 3, 0, (0, 1, 3, 2)), (0, 1, 0, (1, 0, 2, 3))])


def family_An(n: int) -> GeneratedPackage:
    """Cycle of n tetrahedra, each folded onto itself around a degree-one edge."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs = []
    for i in range(n):
        pairs.append((i, 3, i, (0, 1, 3, 2)))
        pairs.append(((i + 1) % n, 1, i, (3, 0, 1, 2)))
    tri = Triangulation.from_pairs(n, pairs)
    sk = tri.skeleton
    _require(sk.num_vertices == 1, "expected one vertex")
    deg1 = [c for c in range(sk.num_edges) if sk.edge_degree[c] == 1]
    _require(len(deg1) == n, f"expected {n} degree-one edges, got {len(deg1)}")
    h = homology(tri)
    _require(h.h1_trivial(), f"H1 is {h.describe()}")
    surfaces = {}
    for k in range(1, n + 1):
        for sub in combinations(range(n), k):
            x = dual_surface(tri, sub)
            ts = topology_summary(build_surface(tri, x))
            _require(ts.connected and ts.orientable and ts.genus == k and ts.q == k, f"dual surface {sub} has genus {ts.genus}")
            surfaces["dual-" + "-".join(map(str, sub))] = x
    return GeneratedPackage(
        name=f"an-{n}",
        triangulation=tri,
        surfaces=surfaces,
        manifest={"vertices": 1, "degree_one_edges": n, "h1": h.describe(), "dual_surfaces": len(surfaces)},
    )


def dual_surface(tri: Triangulation, tets) -> NormalCoordinates:
    """Minimal surface whose quads are 01|23 in the given tetrahedra (dual to each edge 01)."""
    y = [0] * (3 * tri.n)
    for t in tets:
        y[3 * t] = 1
    return lift_to_standard(tri, NormalCoordinates(QUAD, tuple(y)))


def family_Bg(g: int) -> GeneratedPackage:
    """The 2g-tetrahedron three-vertex 3-spheres with a two-vertex quad splitting surface."""
    if g < 2:
        raise ValueError("g must be at least 2")
    n = 2 * g
    ident = (0, 1, 2, 3)
    fold = (0, 3, 2, 1)
    pairs = [(0, 3, 0, fold), (n - 1, 3, n - 1, fold)]
    for k in range(0, n - 1, 2):
        # even tet k meets k+1 through faces (013) and (123)
        pairs.append((k, 2, k + 1, ident))
        pairs.append((k, 0, k + 1, ident))
    for k in range(1, n - 1, 2):
        # odd tet k meets k+1 through faces (012) and (023)
        pairs.append((k, 3, k + 1, ident))
        pairs.append((k, 1, k + 1, ident))
    tri = Triangulation.from_pairs(n, pairs)
    sk = tri.skeleton
    _require(sk.num_vertices == 3, f"expected 3 vertices, got {sk.num_vertices}")
    h = homology(tri)
    _require(h.h1_trivial(), f"H1 is {h.describe()}")
    vals = []
    for _ in range(n):
        vals.extend((0, 0, 0, 0, 0, 1, 0))
    x = NormalCoordinates("std", tuple(vals))
    _require(validate_coordinates(tri, x).ok(), "splitting quads violate the matching equations")
    ts = topology_summary(build_surface(tri, x))
    _require(ts.connected and ts.orientable and ts.v == 2 and ts.q == n and ts.genus == g, "unexpected splitting surface")
    return GeneratedPackage(
        name=f"bg-{g}",
        triangulation=tri,
        surfaces={"splitting": x},
        manifest={"vertices": 3, "surface_vertices": ts.v, "quads": ts.q, "genus": ts.genus},
    )


def gale_facets(n: int) -> list[tuple[int, ...]]:
    """Facets of the cyclic 4-polytope on vertices 1..n by the evenness condition."""
    out = []
    for s in combinations(range(1, n + 1), 4):
        ok = True
        outside = [i for i in range(1, n + 1) if i not in s]
        for i, j in combinations(outside, 2):
            if sum(1 for x in s if i < x < j) % 2:
                ok = False
                break
        if ok:
            out.append(s)
    return out


def boundary_cyclic_polytope(n: int) -> Triangulation:
    facets = gale_facets(n)
    where: dict = {}
    for t, s in enumerate(facets):
        for f in range(4):
            key = tuple(x for k, x in enumerate(s) if k != f)
            where.setdefault(key, []).append((t, f))
    pairs = []
    for key, occ in where.items():
        if len(occ) != 2:
            raise ConstructionError(f"triangle {key} lies in {len(occ)} facets")
        (t, f), (t2, f2) = occ
        s, s2 = facets[t], facets[t2]
        p = [s2.index(x) if x in s2 else f2 for x in s]
        pairs.append((t, f, t2, tuple(p)))
    return Triangulation.from_pairs(len(facets), pairs)


def gale(n: int) -> GeneratedPackage:
    if n % 2 or n < 8:
        raise ValueError("n must be even and at least 8")
    facets = gale_facets(n)
    _require(len(facets) == comb(n, 2) - n, "facet count mismatch")
    tri = boundary_cyclic_polytope(n)
    sk = tri.skeleton
    label = {}
    for t, s in enumerate(facets):
        for k in range(4):
            label[sk.vertex_of[(t, k)]] = s[k]
    coloring = {v: ("red" if label[v] % 2 else "blue") for v in range(sk.num_vertices)}
    split = splitting_coordinates(tri, coloring)
    _require(split.census["C"] == tri.n, "some facet is not split two against two")
    ts = topology_summary(build_surface(tri, split.coordinates))
    q = comb(n, 2) - n
    _require(ts.f_vector == (n * n // 4, 2 * q, q), f"f-vector {ts.f_vector}")
    _require(ts.connected and ts.genus == n * n // 8 - 3 * n // 4 + 1, f"genus {ts.genus}")
    return GeneratedPackage(
        name=f"gale-{n}",
        triangulation=tri,
        surfaces={"gale": split.coordinates},
        coloring=coloring,
        manifest={"f_vector": list(ts.f_vector), "genus": ts.genus, "quads": ts.q},
    )
