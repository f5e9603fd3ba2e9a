"""Extreme rays of ``{x >= 0, A x = 0}`` by the double description method.

All arithmetic is on Python integers.  Rays are kept primitive (gcd 1) and
the result is sorted by zero set and then by value so that repeated runs and
permuted constraint orders give identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Iterator, Optional, Sequence

from nsg.coords import (
    QUAD,
    STD,
    LinearSystem,
    NormalCoordinates,
    is_admissible,
    lift_to_standard,
    matching_system,
)
from nsg.triangulation import Triangulation


@dataclass(frozen=True)
class Ray:
    values: tuple[int, ...]
    admissible: bool


def primitive(values: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in values:
        g = gcd(g, v)
    if g <= 1:
        return tuple(values)
    return tuple(v // g for v in values)


def _zero_mask(values: Sequence[int]) -> int:
    m = 0
    for i, v in enumerate(values):
        if v == 0:
            m |= 1 << i
    return m


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f, g = m[i][c], pr[c]
                m[i] = [g * a - f * b for a, b in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def _sort_key(values: tuple[int, ...]):
    return (tuple(1 if v == 0 else 0 for v in values), values)


def extreme_rays(
    rows: "LinearSystem | Sequence[Sequence[int]]",
    dimension: Optional[int] = None,
    *,
    keep: Optional[Callable[[tuple[int, ...]], bool]] = None,
    rank_check: bool = False,
    row_order: Optional[Sequence[int]] = None,
) -> list[tuple[int, ...]]:
    """Primitive extreme rays of the cone cut from the orthant by ``rows``.

    ``keep`` is an optional filter applied to every intermediate ray, in the
    manner of admissibility filtering for normal surfaces: rays it rejects are
    dropped and pairs whose combined support it rejects are never combined.
    The filter must be closed under taking smaller supports.  ``rank_check``
    confirms every combinatorial adjacency decision with an exact rank test.
    Without ``row_order`` the rows are processed in order of their last nonzero column.
    """
    if isinstance(rows, LinearSystem):
        if dimension is not None and dimension != rows.dimension:
            raise ValueError(f"dimension mismatch: {dimension} != {rows.dimension}")
        dimension = rows.dimension
        rows = rows.rows
    rows = [tuple(r) for r in rows]
    if dimension is None:
        if not rows:
            raise ValueError("dimension required for an empty system")
        dimension = len(rows[0])
    for r in rows:
        if len(r) != dimension:
            raise ValueError(f"dimension mismatch: row of length {len(r)} in dimension {dimension}")
    order = _default_order(rows) if row_order is None else list(row_order)

    rays: list[tuple[tuple[int, ...], int]] = []
    for i in range(dimension):
        v = tuple(1 if j == i else 0 for j in range(dimension))
        if keep is None or keep(v):
            rays.append((v, _zero_mask(v)))

    processed: list[tuple[int, ...]] = []
    cur_rank = 0
    for idx in order:
        a = rows[idx]
        if not any(a):
            continue
        new_rank = rank(processed + [a])
        if new_rank == cur_rank:
            continue
        processed.append(a)
        cur_rank = new_rank
        pos, neg, zero = [], [], []
        for v, z in rays:
            s = sum(x * y for x, y in zip(a, v) if x and y)
            if s > 0:
                pos.append((v, z, s))
            elif s < 0:
                neg.append((v, z, s))
            else:
                zero.append((v, z))
        # minimum number of shared zeros for a pair spanning a 2-face
        need = dimension - (cur_rank - 1) - 2
        masks = [z for _, z in rays]
        fresh = []
        for vp, zp, sp in pos:
            for vn, zn, sn in neg:
                z = zp & zn
                if z.bit_count() < need:
                    continue
                if keep is not None:
                    union = tuple(0 if (z >> i) & 1 else 1 for i in range(dimension))
                    if not keep(union):
                        continue
                adjacent = True
                for m in masks:
                    if m & z == z and m != zp and m != zn:
                        adjacent = False
                        break
                if rank_check:
                    algebraic = _rank_adjacent(processed[:-1], z, dimension)
                    if algebraic != adjacent:
                        raise AssertionError("combinatorial and algebraic adjacency disagree")
                if not adjacent:
                    continue
                w = primitive([-sn * x + sp * y for x, y in zip(vp, vn)])
                fresh.append((w, _zero_mask(w)))
        rays = zero + fresh
        if keep is not None:
            rays = [(v, z) for v, z in rays if keep(v)]
    seen = set()
    out = []
    for v, _ in rays:
        if v not in seen:
            seen.add(v)
            out.append(v)
    out.sort(key=_sort_key)
    return out


def _default_order(rows: Sequence[Sequence[int]]) -> list[int]:
    """Rows sorted by their last and then first nonzero column, so constraints arrive locally."""

    def key(i):
        cols = [j for j, a in enumerate(rows[i]) if a]
        return (cols[-1], cols[0], i) if cols else (-1, -1, i)

    return sorted(range(len(rows)), key=key)


def _rank_adjacent(processed: Sequence[Sequence[int]], z: int, dimension: int) -> bool:
    """Two rays with common zero set ``z`` are adjacent iff the face they span is 2-dimensional."""
    tight = [tuple(1 if j == i else 0 for j in range(dimension)) for i in range(dimension) if (z >> i) & 1]
    return dimension - rank(list(processed) + tight) == 2


def admissibility_filter(system: str, n: int) -> Callable[[tuple[int, ...]], bool]:
    width, off = (7, 4) if system == STD else (3, 0)

    def keep(v: tuple[int, ...]) -> bool:
        for t in range(n):
            base = width * t + off
            if (v[base] != 0) + (v[base + 1] != 0) + (v[base + 2] != 0) > 1:
                return False
        return True

    return keep


def vertex_normal_surfaces(
    tri: Triangulation,
    system: str = STD,
    *,
    filtered: bool = False,
    include_inadmissible: bool = False,
) -> list[NormalCoordinates]:
    """Admissible extreme rays of the matching cone as normal coordinates.

    With ``filtered`` the admissibility condition prunes intermediate rays,
    which yields the same admissible vertex set far faster on larger inputs.
    """
    ls = matching_system(tri, system)
    keep = admissibility_filter(system, tri.n) if filtered else None
    rays = extreme_rays(ls, keep=keep)
    out = []
    for r in rays:
        x = NormalCoordinates(system, r)
        if include_inadmissible or is_admissible(x):
            out.append(x)
    return out


def ray_list(tri: Triangulation, system: str = STD) -> list[Ray]:
    ls = matching_system(tri, system)
    return [Ray(r, is_admissible(NormalCoordinates(system, r))) for r in extreme_rays(ls)]


def lifted_quad_vertices(tri: Triangulation, *, filtered: bool = False) -> list[tuple[NormalCoordinates, NormalCoordinates]]:
    """Quad vertex surfaces paired with their minimal standard lifts."""
    return [(y, lift_to_standard(tri, y)) for y in vertex_normal_surfaces(tri, QUAD, filtered=filtered)]


# -- brute-force oracle ----------------------------------------------------


def _kernel_on(rows: Sequence[Sequence[int]], cols: Sequence[int]) -> list[list[Fraction]]:
    """Basis of the kernel of the column-restricted matrix, over the rationals."""
    m = [[Fraction(r[c]) for c in cols] for r in rows]
    m = [r for r in m if any(r)]
    ncols = len(cols)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def _ray_on_support(rows, cols, dimension) -> Optional[tuple[int, ...]]:
    basis = _kernel_on(rows, cols)
    if len(basis) != 1:
        return None
    vec = basis[0]
    if not (all(x > 0 for x in vec) or all(x < 0 for x in vec)):
        return None
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    full = [0] * dimension
    for c, x in zip(cols, vec):
        full[c] = abs(int(x * den))
    return primitive(full)


def brute_force_rays(
    rows: Sequence[Sequence[int]],
    dimension: int,
    supports: Optional[Iterable[Sequence[int]]] = None,
) -> list[tuple[int, ...]]:
    """Extreme rays by direct search over supports.

    A support carries an extreme ray exactly when the columns on it have a
    one-dimensional kernel spanned by a vector of constant sign.  Every candidate
    support is tested independently, so the answer does not depend on the order
    of ``supports`` (default: every nonempty subset of the coordinates).
    """
    rows = [tuple(r) for r in rows]
    if supports is None:
        supports = (c for k in range(1, dimension + 1) for c in combinations(range(dimension), k))
    out = set()
    for cols in supports:
        ray = _ray_on_support(rows, tuple(sorted(cols)), dimension)
        if ray is not None:
            out.add(ray)
    return sorted(out, key=_sort_key)


def admissible_supports(
    system: str, n: int, rows: Optional[Sequence[Sequence[int]]] = None
) -> Iterator[tuple[int, ...]]:
    """Supports obeying the quadrilateral constraints, one tetrahedron at a time.

    When ``rows`` is given, partial supports are discarded as soon as some row whose
    columns are all decided meets the support only in entries of a single sign, since
    no non-negative vector on that support can then satisfy the row.
    """
    width, off = (7, 4) if system == STD else (3, 0)
    per_tet = []
    for t in range(n):
        base = width * t
        tri_cols = [base + v for v in range(off)]
        options = []
        for k in range(len(tri_cols) + 1):
            for tc in combinations(tri_cols, k):
                options.append(tc)
                for qk in range(3):
                    options.append(tc + (base + off + qk,))
        per_tet.append(options)
    # rows become checkable once the last tetrahedron they touch is decided
    ready: list[list] = [[] for _ in range(n)]
    for r in rows or ():
        cols = [c for c, a in enumerate(r) if a]
        if cols:
            ready[max(cols) // width].append([(c, a) for c, a in zip(cols, (r[c] for c in cols))])

    def rec(t: int, acc: tuple[int, ...], chosen: frozenset):
        if t == n:
            if acc:
                yield acc
            return
        for opt in per_tet[t]:
            now = chosen | frozenset(opt)
            ok = True
            for entries in ready[t]:
                signs = {a > 0 for c, a in entries if c in now}
                if len(signs) == 1:
                    ok = False
                    break
            if ok:
                yield from rec(t + 1, acc + opt, now)

    return rec(0, (), frozenset())
