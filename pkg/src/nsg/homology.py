"""Integral homology of the quotient cell structure via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from nsg.triangulation import EDGE_INDEX, EDGES, Triangulation, face_vertices


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, int, int, int]
    torsion: tuple[int, ...]  # torsion coefficients of H_1

    @property
    def h1_rank(self) -> int:
        return self.betti[1]

    def h1_trivial(self) -> bool:
        return self.betti[1] == 0 and not self.torsion

    def describe(self) -> str:
        parts = [f"Z^{self.betti[1]}"] if self.betti[1] else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def smith_invariants(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (each divides the next)."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out: list[int] = []
    r0 = 0
    while r0 < rows and r0 < cols:
        # smallest nonzero entry in the trailing block becomes the pivot
        best = None
        for i in range(r0, rows):
            row = a[i]
            for j in range(r0, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[r0], a[pi] = a[pi], a[r0]
        for row in a:
            row[r0], row[pj] = row[pj], row[r0]
        while True:
            p = a[r0][r0]
            dirty = False
            for i in range(r0 + 1, rows):
                if a[i][r0]:
                    q = a[i][r0] // p
                    if q:
                        ri, rp = a[i], a[r0]
                        for j in range(r0, cols):
                            if rp[j]:
                                ri[j] -= q * rp[j]
                    if a[i][r0]:
                        dirty = True
            for j in range(r0 + 1, cols):
                if a[r0][j]:
                    q = a[r0][j] // p
                    if q:
                        for i in range(r0, rows):
                            if a[i][r0]:
                                a[i][j] -= q * a[i][r0]
                    if a[r0][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in the pivot row/column into place
                cand = [(abs(a[i][r0]), i, r0) for i in range(r0, rows) if a[i][r0]]
                cand += [(abs(a[r0][j]), r0, j) for j in range(r0, cols) if a[r0][j]]
                _, i, j = min(cand)
                a[r0], a[i] = a[i], a[r0]
                for row in a:
                    row[r0], row[j] = row[j], row[r0]
                continue
            # divisibility condition for the rest of the block
            bad = None
            for i in range(r0 + 1, rows):
                for j in range(r0 + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for j in range(r0, cols):
                a[r0][j] += a[bad][j]
        out.append(abs(a[r0][r0]))
        r0 += 1
    return out


def boundary_matrices(tri: Triangulation) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (d1, d2, d3) as dense integer matrices, rows indexed by the lower-dimensional cells."""
    sk = tri.skeleton
    nv, ne, nf, nt = sk.num_vertices, sk.num_edges, sk.num_faces, tri.n

    d1 = [[0] * ne for _ in range(nv)]
    for c in range(ne):
        t, e = sk.edge_members[c][0]
        sign = sk.edge_sign[(t, e)]
        a, b = EDGES[e]
        d1[sk.vertex_of[(t, b)]][c] += sign
        d1[sk.vertex_of[(t, a)]][c] -= sign

    d2 = [[0] * nf for _ in range(ne)]
    rep_seen = set()
    for (t, f), cls in sorted(sk.face_of.items()):
        if cls in rep_seen or sk.face_perm_sign[(t, f)] != 1:
            continue
        rep_seen.add(cls)
        verts = face_vertices(f)
        for k, (x, y) in enumerate(combinations(verts, 2)):
            # (a,b),(a,c),(b,c) carry signs +, -, +
            s = (1, -1, 1)[k]
            key = (t, EDGE_INDEX[(x, y)])
            d2[sk.edge_of[key]][cls] += s * sk.edge_sign[key]

    d3 = [[0] * nt for _ in range(nf)]
    for t in range(nt):
        for f in range(4):
            s = 1 if f % 2 == 0 else -1
            d3[sk.face_of[(t, f)]][t] += s * sk.face_perm_sign[(t, f)]
    return d1, d2, d3


def homology(tri: Triangulation) -> HomologyProfile:
    sk = tri.skeleton
    d1, d2, d3 = boundary_matrices(tri)
    s1 = smith_invariants(d1)
    s2 = smith_invariants(d2)
    s3 = smith_invariants(d3)
    r1, r2, r3 = len(s1), len(s2), len(s3)
    b0 = sk.num_vertices - r1
    b1 = sk.num_edges - r1 - r2
    b2 = sk.num_faces - r2 - r3
    b3 = tri.n - r3
    torsion = tuple(d for d in s2 if d > 1)
    return HomologyProfile((b0, b1, b2, b3), torsion)
