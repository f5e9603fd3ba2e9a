"""Semi-simplicial triangulations given by face pairings.

Tetrahedron vertices are labelled 0..3 and face ``f`` of a tetrahedron is the
face opposite vertex ``f``.  A gluing of face ``(t, f)`` is stored as
``(t2, perm)`` where ``perm`` is a full permutation of ``{0, 1, 2, 3}`` with
``perm[f]`` the vertex of ``t2`` opposite the target face.  The text format
lists faces in the column order (012), (013), (023), (123).
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

Perm = tuple[int, ...]
Gluing = Optional[tuple[int, Perm]]

# column order of the gluing table, as the face index (opposite vertex)
COLUMN_FACES = (3, 2, 1, 0)
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {pair: i for i, pair in enumerate(EDGES)}
EDGE_INDEX.update({(b, a): i for (a, b), i in list(EDGE_INDEX.items())})


class ParseError(ValueError):
    """Malformed input text.  Carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class GluingError(ValueError):
    pass


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p o q`` (apply ``q`` first)."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def face_vertices(f: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != f)


def edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class ParityUnionFind:
    """Union-find that also tracks a relative sign between members."""

    def __init__(self, keys):
        self.parent = {k: k for k in keys}
        self.sign = {k: 1 for k in keys}

    def find(self, k):
        path = []
        while self.parent[k] != k:
            path.append(k)
            k = self.parent[k]
        root = k
        # compress, accumulating signs from the far end
        acc = 1
        for node in reversed(path):
            acc *= self.sign[node]
            self.sign[node] = acc
            self.parent[node] = root
        return root

    def relative(self, k) -> int:
        self.find(k)
        return self.sign[k]

    def union(self, a, b, s: int = 1) -> bool:
        """Merge so that ``sign(a) * sign(b) == s``.  Returns False on conflict."""
        ra, rb = self.find(a), self.find(b)
        sa, sb = self.sign[a], self.sign[b]
        if ra == rb:
            return sa * sb == s
        if ra < rb:
            ra, rb, sa, sb = rb, ra, sb, sa
        self.parent[ra] = rb
        self.sign[ra] = sa * sb * s
        return True

    def classes(self, keys) -> dict:
        """Map each key to a dense class index in order of first appearance."""
        index: dict = {}
        out = {}
        for k in keys:
            r = self.find(k)
            if r not in index:
                index[r] = len(index)
            out[k] = index[r]
        return out


@dataclass(frozen=True)
class Triangulation:
    n: int
    gluings: tuple[tuple[Gluing, ...], ...]

    def __post_init__(self):
        if len(self.gluings) != self.n:
            raise GluingError(f"expected {self.n} rows of gluings, got {len(self.gluings)}")
        for t in range(self.n):
            if len(self.gluings[t]) != 4:
                raise GluingError(f"tetrahedron {t} needs 4 face entries")
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                t2, p = g
                if not 0 <= t2 < self.n:
                    raise GluingError(f"face ({t},{f}) glued to missing tetrahedron {t2}")
                if sorted(p) != [0, 1, 2, 3]:
                    raise GluingError(f"face ({t},{f}) has invalid vertex map {p}")
                f2 = p[f]
                if (t2, f2) == (t, f):
                    raise GluingError(f"face ({t},{f}) glued to itself")
                back = self.gluings[t2][f2]
                if back is None or back[0] != t or tuple(back[1]) != perm_inverse(p):
                    raise GluingError(
                        f"non-involutive gluing: ({t},{f}) -> ({t2},{f2}) is not reversed"
                    )

    # -- construction ---------------------------------------------------

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Triangulation":
        """Build from ``(t, f, t2, perm)`` entries; the reverse gluing is implied."""
        table: list[list[Gluing]] = [[None] * 4 for _ in range(n)]
        for t, f, t2, p in pairs:
            p = tuple(p)
            f2 = p[f]
            for (a, b, q) in ((t, f, p), (t2, f2, perm_inverse(p))):
                if table[a][b] is not None and table[a][b] != (t2 if a == t and b == f else t, q):
                    raise GluingError(f"face ({a},{b}) glued twice")
            table[t][f] = (t2, p)
            table[t2][f2] = (t, perm_inverse(p))
        return cls(n, tuple(tuple(row) for row in table))

    def glued(self, t: int, f: int) -> Gluing:
        return self.gluings[t][f]

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [(t, f) for t in range(self.n) for f in range(4) if self.gluings[t][f] is None]

    def is_closed(self) -> bool:
        return not self.boundary_faces()

    def relabel(self, order: Sequence[int]) -> "Triangulation":
        """Renumber tetrahedra: old tetrahedron ``t`` becomes ``order[t]``."""
        rows: list = [None] * self.n
        for t in range(self.n):
            rows[order[t]] = tuple(
                None if g is None else (order[g[0]], g[1]) for g in self.gluings[t]
            )
        return Triangulation(self.n, tuple(rows))

    # -- text format ----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"tri {self.n}"]
        for t in range(self.n):
            cells = []
            for f in COLUMN_FACES:
                g = self.gluings[t][f]
                if g is None:
                    cells.append("bdy")
                else:
                    t2, p = g
                    cells.append(f"{t2}(" + "".join(str(p[v]) for v in face_vertices(f)) + ")")
            lines.append(f"{t}: " + " ".join(cells))
        return "\n".join(lines) + "\n"

    # -- derived data ---------------------------------------------------

    @cached_property
    def skeleton(self) -> "Skeleton":
        return compute_skeleton(self)

    @cached_property
    def orientation(self) -> Optional[tuple[int, ...]]:
        """Per-tetrahedron signs making every gluing odd between equal signs, or None."""
        sign: list[Optional[int]] = [None] * self.n
        for start in range(self.n):
            if sign[start] is not None:
                continue
            sign[start] = 1
            queue = deque([start])
            while queue:
                t = queue.popleft()
                for f in range(4):
                    g = self.gluings[t][f]
                    if g is None:
                        continue
                    t2, p = g
                    want = sign[t] if perm_sign(p) < 0 else -sign[t]
                    if sign[t2] is None:
                        sign[t2] = want
                        queue.append(t2)
                    elif sign[t2] != want:
                        return None
        return tuple(sign)


_CELL = re.compile(r"\s*(?:(bdy|∂)|(\d+)\s*\(\s*([0-3])\s*([0-3])\s*([0-3])\s*\))")


def parse_triangulation(text: str) -> Triangulation:
    """Parse the ``tri <n>`` gluing table format."""
    n = None
    rows: dict[int, list] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if n is None:
            m = re.fullmatch(r"\s*tri\s+(\d+)\s*", line)
            if not m:
                raise ParseError("expected header 'tri <n>'", lineno, 1)
            n = int(m.group(1))
            continue
        m = re.match(r"\s*(\d+)\s*:", line)
        if not m:
            raise ParseError("expected '<index>:' row label", lineno, 1)
        t = int(m.group(1))
        if t >= n:
            raise ParseError(f"tetrahedron index {t} out of range", lineno, m.start(1) + 1)
        if t in rows:
            raise ParseError(f"duplicate row for tetrahedron {t}", lineno, 1)
        pos = m.end()
        cells = []
        for f in COLUMN_FACES:
            cm = _CELL.match(line, pos)
            if not cm:
                raise ParseError("expected 'bdy' or 'j(abc)'", lineno, pos + 1)
            if cm.group(1):
                cells.append(None)
            else:
                t2 = int(cm.group(2))
                if t2 >= n:
                    raise ParseError(f"tetrahedron index {t2} out of range", lineno, cm.start(2) + 1)
                image = tuple(int(cm.group(k)) for k in (3, 4, 5))
                if len(set(image)) != 3:
                    raise ParseError("repeated vertex in face", lineno, cm.start(3) + 1)
                p = [0] * 4
                for src, dst in zip(face_vertices(f), image):
                    p[src] = dst
                p[f] = ({0, 1, 2, 3} - set(image)).pop()
                cells.append((t2, tuple(p)))
            pos = cm.end()
        if line[pos:].strip():
            raise ParseError("trailing characters", lineno, pos + 1)
        # cells are in column order; store by face index
        row: list = [None] * 4
        for f, c in zip(COLUMN_FACES, cells):
            row[f] = c
        rows[t] = row
    if n is None:
        raise ParseError("empty document")
    missing = [t for t in range(n) if t not in rows]
    if missing:
        raise ParseError(f"missing rows for tetrahedra {missing}")
    return Triangulation(n, tuple(tuple(rows[t]) for t in range(n)))


@dataclass(frozen=True)
class Skeleton:
    vertex_of: dict  # (t, v) -> vertex class
    edge_of: dict  # (t, edge index) -> edge class
    edge_sign: dict  # (t, edge index) -> +-1 relative to the class representative
    face_of: dict  # (t, f) -> face class
    face_perm_sign: dict  # (t, f) -> +-1 relative to the class representative
    num_vertices: int
    num_edges: int
    num_faces: int
    edge_degree: tuple[int, ...]
    edge_boundary: tuple[bool, ...]
    face_boundary: tuple[bool, ...]
    vertex_boundary: tuple[bool, ...]
    edge_ends: tuple[tuple[int, int], ...]  # vertex classes at the representative's ends
    vertex_corners: tuple[tuple[tuple[int, int], ...], ...]
    edge_members: tuple[tuple[tuple[int, int], ...], ...]

    def euler_characteristic(self, n: int) -> int:
        return self.num_vertices - self.num_edges + self.num_faces - n


def compute_skeleton(tri: Triangulation) -> Skeleton:
    n = tri.n
    vkeys = [(t, v) for t in range(n) for v in range(4)]
    ekeys = [(t, e) for t in range(n) for e in range(6)]
    vuf = ParityUnionFind(vkeys)
    euf = ParityUnionFind(ekeys)
    for t in range(n):
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None:
                continue
            t2, p = g
            for v in face_vertices(f):
                vuf.union((t, v), (t2, p[v]))
            for a, b in combinations(face_vertices(f), 2):
                a2, b2 = p[a], p[b]
                euf.union((t, EDGE_INDEX[(a, b)]), (t2, EDGE_INDEX[(a2, b2)]), 1 if a2 < b2 else -1)
    vertex_of = vuf.classes(vkeys)
    edge_of = euf.classes(ekeys)
    edge_sign = {k: euf.relative(k) for k in ekeys}
    nv = max(vertex_of.values(), default=-1) + 1
    ne = max(edge_of.values(), default=-1) + 1

    face_of: dict = {}
    face_perm_sign: dict = {}
    face_boundary: list[bool] = []
    for t in range(n):
        for f in range(4):
            if (t, f) in face_of:
                continue
            idx = len(face_boundary)
            face_of[(t, f)] = idx
            face_perm_sign[(t, f)] = 1
            g = tri.gluings[t][f]
            face_boundary.append(g is None)
            if g is not None:
                t2, p = g
                image = [p[v] for v in face_vertices(f)]
                # sign of the induced map between sorted vertex orders
                order = sorted(range(3), key=lambda i: image[i])
                face_of[(t2, p[f])] = idx
                face_perm_sign[(t2, p[f])] = perm_sign(order)

    degree = [0] * ne
    members: list[list] = [[] for _ in range(ne)]
    for k in ekeys:
        degree[edge_of[k]] += 1
        members[edge_of[k]].append(k)
    edge_boundary = [False] * ne
    vertex_boundary = [False] * nv
    for t, f in tri.boundary_faces():
        for a, b in combinations(face_vertices(f), 2):
            edge_boundary[edge_of[(t, EDGE_INDEX[(a, b)])]] = True
        for v in face_vertices(f):
            vertex_boundary[vertex_of[(t, v)]] = True
    ends = []
    for c in range(ne):
        t, e = members[c][0]
        a, b = EDGES[e]
        ends.append((vertex_of[(t, a)], vertex_of[(t, b)]))
    corners: list[list] = [[] for _ in range(nv)]
    for k in vkeys:
        corners[vertex_of[k]].append(k)
    return Skeleton(
        vertex_of=vertex_of,
        edge_of=edge_of,
        edge_sign=edge_sign,
        face_of=face_of,
        face_perm_sign=face_perm_sign,
        num_vertices=nv,
        num_edges=ne,
        num_faces=len(face_boundary),
        edge_degree=tuple(degree),
        edge_boundary=tuple(edge_boundary),
        face_boundary=tuple(face_boundary),
        vertex_boundary=tuple(vertex_boundary),
        edge_ends=tuple(ends),
        vertex_corners=tuple(tuple(c) for c in corners),
        edge_members=tuple(tuple(m) for m in members),
    )


@dataclass(frozen=True)
class SurfaceTriangulation:
    """A 2-dimensional analogue of :class:`Triangulation` (triangles with edge pairings).

    Edge ``k`` of a triangle is the edge opposite its vertex ``k``; gluings carry a
    permutation of ``{0, 1, 2}``.
    """

    n: int
    gluings: tuple[tuple[Optional[tuple[int, Perm]], ...], ...]

    def __post_init__(self):
        for i in range(self.n):
            for k in range(3):
                g = self.gluings[i][k]
                if g is None:
                    continue
                j, p = g
                back = self.gluings[j][p[k]]
                if (j, p[k]) == (i, k) or back is None or back[0] != i or tuple(back[1]) != perm_inverse(p):
                    raise GluingError(f"bad edge pairing at triangle {i} edge {k}")

    @classmethod
    def from_edge_pairs(cls, n: int, pairs) -> "SurfaceTriangulation":
        """``pairs`` holds ``((i, (u, v)), (j, (u2, v2)))``: edge uv of i glued to u2v2 of j."""
        table: list[list] = [[None] * 3 for _ in range(n)]
        for (i, (u, v)), (j, (u2, v2)) in pairs:
            w = 3 - u - v
            w2 = 3 - u2 - v2
            p = [0] * 3
            p[u], p[v], p[w] = u2, v2, w2
            p = tuple(p)
            if table[i][w] is not None or table[j][w2] is not None:
                raise GluingError("edge glued twice")
            table[i][w] = (j, p)
            table[j][w2] = (i, perm_inverse(p))
        return cls(n, tuple(tuple(r) for r in table))

    @cached_property
    def _vertex_classes(self) -> dict:
        keys = [(i, v) for i in range(self.n) for v in range(3)]
        uf = ParityUnionFind(keys)
        for i in range(self.n):
            for k in range(3):
                g = self.gluings[i][k]
                if g is not None:
                    j, p = g
                    for v in range(3):
                        if v != k:
                            uf.union((i, v), (j, p[v]))
        return uf.classes(keys)

    @property
    def num_vertices(self) -> int:
        return len(set(self._vertex_classes.values()))

    @property
    def num_edges(self) -> int:
        glued = sum(1 for i in range(self.n) for k in range(3) if self.gluings[i][k] is not None)
        return glued // 2 + (3 * self.n - glued)

    @property
    def boundary_edges(self) -> int:
        return sum(1 for i in range(self.n) for k in range(3) if self.gluings[i][k] is None)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.n

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for g in self.gluings[i]:
                    if g is not None and not seen[g[0]]:
                        seen[g[0]] = True
                        stack.append(g[0])
            out.append(sorted(comp))
        return out

    def is_orientable(self) -> bool:
        sign: dict[int, int] = {}
        for s in range(self.n):
            if s in sign:
                continue
            sign[s] = 1
            stack = [s]
            while stack:
                i = stack.pop()
                for g in self.gluings[i]:
                    if g is None:
                        continue
                    j, p = g
                    want = sign[i] if perm_sign(p) < 0 else -sign[i]
                    if j not in sign:
                        sign[j] = want
                        stack.append(j)
                    elif sign[j] != want:
                        return False
        return True

    def sub(self, triangles: Sequence[int]) -> "SurfaceTriangulation":
        index = {t: i for i, t in enumerate(triangles)}
        rows = []
        for t in triangles:
            rows.append(tuple(None if g is None else (index[g[0]], g[1]) for g in self.gluings[t]))
        return SurfaceTriangulation(len(triangles), tuple(rows))

    def genus(self) -> int:
        """Genus of a connected surface (cross-caps when non-orientable)."""
        chi = self.euler_characteristic()
        b = self.boundary_count()
        if self.is_orientable():
            return (2 - chi - b) // 2
        return 2 - chi - b

    def boundary_count(self) -> int:
        if not self.boundary_edges:
            return 0
        cls = self._vertex_classes
        # boundary edges as graph edges between vertex classes
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        edges = []
        for i in range(self.n):
            for k in range(3):
                if self.gluings[i][k] is None:
                    a, b = [cls[(i, v)] for v in range(3) if v != k]
                    edges.append((a, b))
        for a, b in edges:
            parent.setdefault(a, a)
            parent.setdefault(b, b)
        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(x) for x in parent})


@dataclass(frozen=True)
class BoundaryComponent:
    vertex_classes: tuple[int, ...]
    genus: int
    triangles: int
    orientable: bool
    euler: int


@dataclass(frozen=True)
class ClassificationFlags:
    closed: bool
    orientable: bool
    orientation: Optional[tuple[int, ...]]
    simplicial: bool
    combinatorial_manifold: bool
    boundary_components: tuple[BoundaryComponent, ...]
    edge_degree_census: dict
    boundary_faces_per_tet: dict
    vertex_count: int
    edge_count: int
    face_count: int
    tetrahedra: int = 0
    vertex_links: tuple = field(default=())  # (euler characteristic, boundary count) per vertex


def boundary_surface(tri: Triangulation) -> tuple[SurfaceTriangulation, list[tuple[int, int]]]:
    """Triangulated boundary of ``tri`` and the boundary face behind each triangle."""
    faces = tri.boundary_faces()
    index = {bf: i for i, bf in enumerate(faces)}
    pairs = []
    done = set()
    for (t, f) in faces:
        verts = face_vertices(f)
        for a, b in combinations(verts, 2):
            if ((t, f), (a, b)) in done:
                continue
            c = next(v for v in verts if v not in (a, b))
            ct, ca, cb, cc = t, a, b, c
            while True:
                g = tri.gluings[ct][cc]
                if g is None:
                    break
                t2, p = g
                d = next(v for v in range(4) if v not in (ca, cb, cc))
                ct, ca, cb, cc = t2, p[ca], p[cb], p[d]
            if (ct, cc) == (t, f) and {ca, cb} == {a, b}:
                raise GluingError("boundary edge folded onto itself")
            i, j = index[(t, f)], index[(ct, cc)]
            vi = face_vertices(f)
            vj = face_vertices(cc)
            pairs.append(((i, (vi.index(a), vi.index(b))), (j, (vj.index(ca), vj.index(cb)))))
            done.add(((t, f), (a, b)))
            done.add(((ct, cc), edge_key(ca, cb)))
    return SurfaceTriangulation.from_edge_pairs(len(faces), pairs), faces


def _is_simplicial(tri: Triangulation, sk: Skeleton) -> bool:
    vsets_edge: dict = {}
    vsets_face: dict = {}
    vsets_tet: set = set()
    for t in range(tri.n):
        vs = [sk.vertex_of[(t, v)] for v in range(4)]
        if len(set(vs)) != 4:
            return False
        key = frozenset(vs)
        if key in vsets_tet:
            return False
        vsets_tet.add(key)
        for e, (a, b) in enumerate(EDGES):
            k = frozenset((vs[a], vs[b]))
            if vsets_edge.setdefault(k, sk.edge_of[(t, e)]) != sk.edge_of[(t, e)]:
                return False
        for f in range(4):
            k = frozenset(vs[v] for v in face_vertices(f))
            if vsets_face.setdefault(k, sk.face_of[(t, f)]) != sk.face_of[(t, f)]:
                return False
    return True


def classify(tri: Triangulation) -> ClassificationFlags:
    from nsg.coords import vertex_link_coordinates
    from nsg.surface import build_surface, topology_summary

    sk = tri.skeleton
    orient = tri.orientation
    simplicial = _is_simplicial(tri, sk)

    links = []
    for v in range(sk.num_vertices):
        summary = topology_summary(build_surface(tri, vertex_link_coordinates(tri, v)))
        links.append((summary.chi, summary.boundary_count))
    manifold_links = all(
        len_comp == 1 and ((not sk.vertex_boundary[v] and chi == 2 and b == 0) or (sk.vertex_boundary[v] and chi == 1 and b == 1))
        for v, (chi, b), len_comp in zip(
            range(sk.num_vertices),
            links,
            [_link_components(tri, v) for v in range(sk.num_vertices)],
        )
    )

    comps = []
    bfaces = tri.boundary_faces()
    if bfaces:
        surf, faces = boundary_surface(tri)
        for comp in surf.components():
            sub = surf.sub(comp)
            vclasses = sorted({sk.vertex_of[(faces[i][0], v)] for i in comp for v in face_vertices(faces[i][1])})
            comps.append(
                BoundaryComponent(
                    vertex_classes=tuple(vclasses),
                    genus=sub.genus(),
                    triangles=len(comp),
                    orientable=sub.is_orientable(),
                    euler=sub.euler_characteristic(),
                )
            )
    per_tet = Counter(t for t, _ in bfaces)
    bpt = Counter(per_tet.get(t, 0) for t in range(tri.n))
    return ClassificationFlags(
        closed=not bfaces,
        orientable=orient is not None,
        orientation=orient,
        simplicial=simplicial,
        combinatorial_manifold=simplicial and manifold_links,
        boundary_components=tuple(comps),
        edge_degree_census=dict(sorted(Counter(sk.edge_degree).items())),
        boundary_faces_per_tet=dict(sorted(bpt.items())),
        vertex_count=sk.num_vertices,
        edge_count=sk.num_edges,
        face_count=sk.num_faces,
        tetrahedra=tri.n,
        vertex_links=tuple(links),
    )


def _link_components(tri: Triangulation, v: int) -> int:
    """Number of connected components of the link of vertex class ``v``."""
    corners = tri.skeleton.vertex_corners[v]
    seen = {corners[0]}
    stack = [corners[0]]
    while stack:
        t, w = stack.pop()
        for f in range(4):
            if f == w:
                continue
            g = tri.gluings[t][f]
            if g is None:
                continue
            nxt = (g[0], g[1][w])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return 1 if len(seen) == len(corners) else 2


def double(tri: Triangulation) -> Triangulation:
    """Double along the boundary: a mirror copy glued by the identity on boundary faces."""
    bfaces = tri.boundary_faces()
    if not bfaces:
        raise GluingError("cannot double a closed triangulation")
    n = tri.n
    rows = []
    for copy in range(2):
        for t in range(n):
            row = []
            for f in range(4):
                g = tri.gluings[t][f]
                if g is None:
                    row.append((t + (1 - copy) * n, (0, 1, 2, 3)))
                else:
                    row.append((g[0] + copy * n, g[1]))
            rows.append(tuple(row))
    return Triangulation(2 * n, tuple(rows))
