"""Normal coordinates, matching systems and distinguished coordinate vectors.

Standard coordinates hold seven entries per tetrahedron: triangle counts
``t0..t3`` (triangle ``ti`` cuts off vertex ``i``) followed by quadrilateral
counts ``q1 = 01|23``, ``q2 = 02|13``, ``q3 = 03|12``.  Quad coordinates keep
only the last three.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from nsg.triangulation import (
    EDGES,
    ParseError,
    Triangulation,
    face_vertices,
    perm_sign,
)

STD = "std"
QUAD = "quad"

QUAD_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def quad_index(a: int, b: int) -> int:
    """Quad type whose separated pairs include ``{a, b}``."""
    for k, (p, q) in enumerate(QUAD_PAIRS):
        if {a, b} == set(p) or {a, b} == set(q):
            return k
    raise ValueError(f"no quad for pair {a},{b}")


class MatchingError(ValueError):
    pass


class IncompatibleError(ValueError):
    def __init__(self, tet: int):
        self.tet = tet
        super().__init__(f"summands use different quad types in tetrahedron {tet}")


@dataclass(frozen=True)
class NormalCoordinates:
    system: str
    values: tuple[int, ...]

    def __post_init__(self):
        if self.system not in (STD, QUAD):
            raise ValueError(f"unknown coordinate system {self.system!r}")
        width = 7 if self.system == STD else 3
        if len(self.values) % width:
            raise ValueError("coordinate length is not a multiple of the block width")
        if any(v < 0 for v in self.values):
            raise ValueError("normal coordinates must be non-negative")

    @property
    def width(self) -> int:
        return 7 if self.system == STD else 3

    @property
    def n(self) -> int:
        return len(self.values) // self.width

    def triangle(self, t: int, v: int) -> int:
        if self.system != STD:
            raise ValueError("quad coordinates carry no triangles")
        return self.values[7 * t + v]

    def quad(self, t: int, k: int) -> int:
        off = 4 if self.system == STD else 0
        return self.values[self.width * t + off + k]

    def quads(self, t: int) -> tuple[int, int, int]:
        return tuple(self.quad(t, k) for k in range(3))

    def quad_count(self) -> int:
        return sum(self.quad(t, k) for t in range(self.n) for k in range(3))

    def triangle_count(self) -> int:
        if self.system != STD:
            return 0
        return sum(self.triangle(t, v) for t in range(self.n) for v in range(4))

    def scaled(self, m: int) -> "NormalCoordinates":
        return NormalCoordinates(self.system, tuple(m * v for v in self.values))

    def to_text(self) -> str:
        lines = [f"surface {self.system} {self.n}"]
        for t in range(self.n):
            if self.system == STD:
                tri = " ".join(str(self.triangle(t, v)) for v in range(4))
                quad = " ".join(str(q) for q in self.quads(t))
                lines.append(f"{t}: {tri} ; {quad}")
            else:
                lines.append(f"{t}: " + " ".join(str(q) for q in self.quads(t)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "NormalCoordinates":
        """Standard coordinates from per-tetrahedron 7-tuples."""
        flat: list[int] = []
        for b in blocks:
            if len(b) != 7:
                raise ValueError("standard blocks need 7 entries")
            flat.extend(b)
        return cls(STD, tuple(flat))


def parse_coordinates(text: str) -> NormalCoordinates:
    system = None
    n = 0
    rows: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if system is None:
            m = re.fullmatch(r"\s*surface\s+(std|quad)\s+(\d+)\s*", line)
            if not m:
                raise ParseError("expected header 'surface <std|quad> <n>'", lineno, 1)
            system, n = m.group(1), int(m.group(2))
            continue
        if system == STD:
            m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s+(\d+)\s+(\d+)\s+(\d+)\s*;\s*(\d+)\s+(\d+)\s+(\d+)\s*", line)
        else:
            m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s+(\d+)\s+(\d+)\s*", line)
        if not m:
            raise ParseError(f"malformed {system} row", lineno, 1)
        t = int(m.group(1))
        if t >= n or t in rows:
            raise ParseError(f"bad or repeated row index {t}", lineno, m.start(1) + 1)
        rows[t] = [int(g) for g in m.groups()[1:]]
    if system is None:
        raise ParseError("empty document")
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    return NormalCoordinates(system, tuple(v for t in range(n) for v in rows[t]))


@dataclass(frozen=True)
class LinearSystem:
    system: str
    dimension: int
    rows: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def residual(self, values: Sequence[int]) -> list[int]:
        if len(values) != self.dimension:
            raise ValueError(f"dimension mismatch: {len(values)} != {self.dimension}")
        return [sum(a * x for a, x in zip(row, values) if a) for row in self.rows]

    def satisfied_by(self, values: Sequence[int]) -> bool:
        return not any(self.residual(values))


def _std_matching(tri: Triangulation) -> LinearSystem:
    dim = 7 * tri.n
    rows, labels = [], []
    done = set()
    for t in range(tri.n):
        for f in range(4):
            g = tri.gluings[t][f]
            if g is None or (t, f) in done:
                continue
            t2, p = g
            f2 = p[f]
            done.add((t, f))
            done.add((t2, f2))
            face = tri.skeleton.face_of[(t, f)]
            for v in face_vertices(f):
                row = [0] * dim
                row[7 * t + v] += 1
                row[7 * t + 4 + quad_index(v, f)] += 1
                row[7 * t2 + p[v]] -= 1
                row[7 * t2 + 4 + quad_index(p[v], f2)] -= 1
                if any(row):
                    rows.append(tuple(row))
                    labels.append(f"face {face} arc at {t}:{v}")
    return LinearSystem(STD, dim, tuple(rows), tuple(labels))


def slope(orientation: int, a: int, b: int, k: int) -> int:
    """Slope weight of quad type ``k`` at tetrahedron edge ``ab``, given the tetrahedron sign."""
    c, d = [v for v in range(4) if v not in (a, b)]
    if orientation * perm_sign((a, b, c, d)) < 0:
        c, d = d, c
    if k == quad_index(a, c):
        return 1
    if k == quad_index(a, d):
        return -1
    return 0


def _quad_matching(tri: Triangulation) -> LinearSystem:
    orient = tri.orientation
    if orient is None:
        raise MatchingError("quad matching equations need an orientable triangulation")
    sk = tri.skeleton
    dim = 3 * tri.n
    rows, labels = [], []
    for c in range(sk.num_edges):
        if sk.edge_boundary[c]:
            continue
        row = [0] * dim
        for t, e in sk.edge_members[c]:
            a, b = EDGES[e]
            for k in range(3):
                row[3 * t + k] += slope(orient[t], a, b, k)
        rows.append(tuple(row))
        labels.append(f"edge {c}")
    return LinearSystem(QUAD, dim, tuple(rows), tuple(labels))


def matching_system(tri: Triangulation, system: str = STD) -> LinearSystem:
    if system == STD:
        return _std_matching(tri)
    if system == QUAD:
        return _quad_matching(tri)
    raise ValueError(f"unknown coordinate system {system!r}")


def is_admissible(x: NormalCoordinates) -> bool:
    return all(sum(1 for q in x.quads(t) if q) <= 1 for t in range(x.n))


@dataclass(frozen=True)
class CoordinateReport:
    matching_ok: bool
    admissible: bool
    vertex_linking_part: dict

    def ok(self) -> bool:
        return self.matching_ok and self.admissible


def vertex_linking_part(tri: Triangulation, x: NormalCoordinates) -> dict[int, int]:
    """Largest ``k`` per vertex class with ``k`` copies of its link inside ``x``."""
    if x.system != STD:
        return {v: 0 for v in range(tri.skeleton.num_vertices)}
    return {
        v: min(x.triangle(t, w) for t, w in corners)
        for v, corners in enumerate(tri.skeleton.vertex_corners)
    }


def validate_coordinates(tri: Triangulation, x: NormalCoordinates) -> CoordinateReport:
    if x.n != tri.n:
        raise ValueError(f"dimension mismatch: coordinates for {x.n} tetrahedra, triangulation has {tri.n}")
    if x.system == QUAD and tri.orientation is None:
        matching_ok = False
    else:
        matching_ok = matching_system(tri, x.system).satisfied_by(x.values)
    return CoordinateReport(matching_ok, is_admissible(x), vertex_linking_part(tri, x))


def quad_projection(x: NormalCoordinates) -> NormalCoordinates:
    if x.system == QUAD:
        return x
    return NormalCoordinates(QUAD, tuple(q for t in range(x.n) for q in x.quads(t)))


def lift_to_standard(tri: Triangulation, y: NormalCoordinates) -> NormalCoordinates:
    """Smallest standard vector whose quadrilateral part is ``y``."""
    if y.system == STD:
        y = quad_projection(y)
    if y.n != tri.n:
        raise ValueError("dimension mismatch")
    if not is_admissible(y):
        raise MatchingError("quad vector violates the quadrilateral constraints")
    if tri.orientation is not None and not matching_system(tri, QUAD).satisfied_by(y.values):
        raise MatchingError("quad vector violates the Q-matching equations")
    sk = tri.skeleton
    tcount: dict[tuple[int, int], int] = {}
    for corners in sk.vertex_corners:
        start = corners[0]
        tcount[start] = 0
        queue = deque([start])
        while queue:
            t, w = queue.popleft()
            here = tcount[(t, w)]
            for f in range(4):
                if f == w or tri.gluings[t][f] is None:
                    continue
                t2, p = tri.gluings[t][f]
                w2, f2 = p[w], p[f]
                val = here + y.quad(t, quad_index(w, f)) - y.quad(t2, quad_index(w2, f2))
                key = (t2, w2)
                if key not in tcount:
                    tcount[key] = val
                    queue.append(key)
                elif tcount[key] != val:
                    raise MatchingError(f"inconsistent triangle counts around corner {key}")
        low = min(tcount[k] for k in corners)
        for k in corners:
            tcount[k] -= low
    values = []
    for t in range(tri.n):
        values.extend(tcount[(t, v)] for v in range(4))
        values.extend(y.quads(t))
    x = NormalCoordinates(STD, tuple(values))
    if not matching_system(tri, STD).satisfied_by(x.values):
        raise MatchingError("lifted vector fails the standard matching equations")
    return x


def haken_sum(
    tri: Triangulation, summands: Sequence[tuple[int, NormalCoordinates]]
) -> NormalCoordinates:
    if not summands:
        raise ValueError("empty Haken sum")
    system = summands[0][1].system
    dim = len(summands[0][1].values)
    total = [0] * dim
    for m, x in summands:
        if x.system != system or len(x.values) != dim or x.n != tri.n:
            raise ValueError("summands live in different coordinate spaces")
        if m < 0:
            raise ValueError("multiplicities must be non-negative")
        for i, v in enumerate(x.values):
            total[i] += m * v
    out = NormalCoordinates(system, tuple(total))
    for t in range(out.n):
        if sum(1 for q in out.quads(t) if q) > 1:
            raise IncompatibleError(t)
    return out


def vertex_link_coordinates(tri: Triangulation, vertex: int) -> NormalCoordinates:
    sk = tri.skeleton
    if not 0 <= vertex < sk.num_vertices:
        raise ValueError(f"unknown vertex class {vertex}")
    values = [0] * (7 * tri.n)
    for t, w in sk.vertex_corners[vertex]:
        values[7 * t + w] += 1
    return NormalCoordinates(STD, tuple(values))


def edge_weights(tri: Triangulation, x: NormalCoordinates) -> list[int]:
    """Intersection count of the surface with each edge class."""
    sk = tri.skeleton
    out = []
    for c in range(sk.num_edges):
        t, e = sk.edge_members[c][0]
        a, b = EDGES[e]
        w = x.triangle(t, a) + x.triangle(t, b)
        w += sum(x.quad(t, k) for k in range(3) if k != quad_index(a, b))
        out.append(w)
    return out


def double_coordinates(x: NormalCoordinates) -> NormalCoordinates:
    """Coordinates of the same surface mirrored into both halves of a doubled triangulation."""
    return NormalCoordinates(x.system, x.values + x.values)


RED, BLUE = "red", "blue"


@dataclass(frozen=True)
class SplittingResult:
    coordinates: NormalCoordinates
    types: tuple[str, ...]
    census: dict[str, int]


def _colour(value) -> str:
    if value in (RED, "r", 0, False):
        return RED
    if value in (BLUE, "b", 1, True):
        return BLUE
    raise ValueError(f"unknown colour {value!r}")


def splitting_coordinates(
    tri: Triangulation, coloring: Union[Mapping[int, object], Sequence[object]]
) -> SplittingResult:
    """Canonical normal surface separating red vertex classes from blue ones."""
    sk = tri.skeleton
    colour = {v: _colour(coloring[v]) for v in range(sk.num_vertices)}
    if len(set(colour.values())) < 2:
        raise ValueError("colouring must use both colours")
    values = [0] * (7 * tri.n)
    types = []
    for t in range(tri.n):
        cs = [colour[sk.vertex_of[(t, v)]] for v in range(4)]
        reds = [v for v in range(4) if cs[v] == RED]
        if len(reds) in (0, 4):
            types.append("A_r" if reds else "A_b")
        elif len(reds) == 2:
            values[7 * t + 4 + quad_index(*reds)] = 1
            types.append("C")
        else:
            majority = RED if len(reds) == 3 else BLUE
            minority = next(v for v in range(4) if cs[v] != majority)
            values[7 * t + minority] = 1
            types.append("B_r" if majority == RED else "B_b")
    census = {k: types.count(k) for k in ("A_r", "A_b", "B_r", "B_b", "C")}
    return SplittingResult(NormalCoordinates(STD, tuple(values)), tuple(types), census)
