"""Vista graphs of the quadrilateral subcomplex and the high-genus screen."""

from __future__ import annotations

from dataclasses import dataclass

from nsg.surface import NormalSurfaceComplex, topology_summary
from nsg.triangulation import Triangulation, classify


class VistaError(ValueError):
    pass


@dataclass(frozen=True)
class VistaGraph:
    vertex: int  # vertex class of the triangulation
    vertices: frozenset  # surface vertex ids
    edges: tuple[tuple[int, int, int], ...]  # (surface edge id, end, end)
    surface_f0: int

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def lemma_ok(self) -> bool:
        return self.e == 0 or self.e < 3 * self.v


def _quad_arcs(S: NormalSurfaceComplex) -> dict[int, tuple[int, int, int]]:
    """Edges of the quadrilateral subcomplex: edge id -> (cut vertex class, end, end)."""
    sk = S.tri.skeleton
    out = {}
    for i, d in enumerate(S.discs):
        if not d.is_quad:
            continue
        m = len(S.corners[i])
        for s, (_, cut) in enumerate(S.sides[i]):
            eid = S.edge_id[i][s]
            if eid not in out:
                ends = (S.vertex_id[i][s], S.vertex_id[i][(s + 1) % m])
                out[eid] = (sk.vertex_of[(d.tet, cut)], *ends)
    return out


def _check_pre(tri: Triangulation, S: NormalSurfaceComplex, strict: bool) -> None:
    if not strict:
        return
    if not classify(tri).combinatorial_manifold:
        raise VistaError("vistas need a combinatorial 3-manifold")
    ts = topology_summary(S)
    if not (ts.closed and ts.orientable):
        raise VistaError("vistas need a closed orientable surface")


def vista_graph(tri: Triangulation, S: NormalSurfaceComplex, x: int, *, strict: bool = True) -> VistaGraph:
    _check_pre(tri, S, strict)
    return _vista(S, x, _quad_arcs(S))


def _vista(S: NormalSurfaceComplex, x: int, arcs: dict) -> VistaGraph:
    edges = tuple(sorted((eid, a, b) for eid, (c, a, b) in arcs.items() if c == x))
    verts = frozenset(v for _, a, b in edges for v in (a, b))
    return VistaGraph(x, verts, edges, S.f_vector[0])


def all_vistas(tri: Triangulation, S: NormalSurfaceComplex, *, strict: bool = True) -> list[VistaGraph]:
    _check_pre(tri, S, strict)
    arcs = _quad_arcs(S)
    return [_vista(S, x, arcs) for x in range(tri.skeleton.num_vertices)]


# extra vertices needed to push one disc out of the projection tetrahedron
NEAR_REALISATION_PER_TRIANGLE = 1
NEAR_REALISATION_PER_QUAD = 4


def near_realisation(tri: Triangulation, S: NormalSurfaceComplex) -> tuple[int, int]:
    """Cheapest projection tetrahedron and the vertices added to clear it of discs.

    Returns ``(tetrahedron, delta)``; ties go to the lowest index and ``delta`` is
    zero when some tetrahedron misses the surface.
    """
    cost = [0] * tri.n
    for d in S.discs:
        cost[d.tet] += NEAR_REALISATION_PER_QUAD if d.is_quad else NEAR_REALISATION_PER_TRIANGLE
    best = min(range(tri.n), key=lambda t: (cost[t], t))
    return best, cost[best]


@dataclass(frozen=True)
class RealisationReport:
    vistas: tuple[VistaGraph, ...]
    genus: int
    f0: int
    quad_vertices: int
    quad_edges: int
    q: int
    near_realisation_delta: int
    projection_tetrahedron: int

    @property
    def lemma_ok(self) -> bool:
        return all(vg.lemma_ok for vg in self.vistas)

    @property
    def theorem_ok(self) -> bool:
        return 2 * self.genus < 7 * self.f0

    @property
    def partition_ok(self) -> bool:
        """Each quad arc lies in one vista and each quad vertex in exactly two."""
        count = sum(vg.v for vg in self.vistas)
        return sum(vg.e for vg in self.vistas) == self.quad_edges and count == 2 * self.quad_vertices

    @property
    def ok(self) -> bool:
        return self.lemma_ok and self.theorem_ok

    def to_json(self) -> dict:
        return {
            "vistas": [
                {"vertex": vg.vertex, "v": vg.v, "e": vg.e, "lemma_ok": vg.lemma_ok} for vg in self.vistas
            ],
            "genus": self.genus,
            "f0": self.f0,
            "theorem_ok": self.theorem_ok,
            "near_realisation_delta": self.near_realisation_delta,
            "projection_tetrahedron": self.projection_tetrahedron,
        }


def realisation_report(tri: Triangulation, S: NormalSurfaceComplex, *, strict: bool = True) -> RealisationReport:
    _check_pre(tri, S, strict)
    arcs = _quad_arcs(S)
    vistas = tuple(_vista(S, x, arcs) for x in range(tri.skeleton.num_vertices))
    ts = topology_summary(S)
    qverts = {v for _, a, b in arcs.values() for v in (a, b)}
    tet, delta = near_realisation(tri, S)
    return RealisationReport(
        vistas=vistas,
        genus=ts.genus,
        f0=S.f_vector[0],
        quad_vertices=len(qverts),
        quad_edges=len(arcs),
        q=S.quad_count,
        near_realisation_delta=delta,
        projection_tetrahedron=tet,
    )
