"""Executable certificates: fourteen numbered checks over fixtures and families.

``run_checks`` returns one :class:`CheckResult` per check; each result carries
a short human-readable detail string.  The command line ``verify-paper`` verb
and the acceptance tests both consume this module.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional

from nsg.bounds import (
    BOUNDED,
    CLOSED,
    HAKEN,
    NONORIENTABLE,
    QUAD_ONLY,
    SIMPLICIAL,
    SPLITTING,
    HakenData,
    bound_report,
    complexity_bounds,
)
from nsg.coords import (
    QUAD,
    STD,
    IncompatibleError,
    NormalCoordinates,
    haken_sum,
    lift_to_standard,
    matching_system,
    quad_projection,
)
from nsg.enumerate import (
    admissible_supports,
    brute_force_rays,
    extreme_rays,
    vertex_normal_surfaces,
)
from nsg.fixtures import FIXTURE_NAMES, fixture_triangulation, fixture_package
from nsg.generators import family_An, family_Bg, gale, inflate_fxi, s2xi
from nsg.homology import homology
from nsg.surface import TopologySummary, build_surface, region_decomposition, topology_summary
from nsg.triangulation import Triangulation, classify
from nsg.vista import realisation_report


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title}: {self.detail}"


class _Fail(Exception):
    pass


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise _Fail(message)


def _summary(tri: Triangulation, x: NormalCoordinates) -> TopologySummary:
    return topology_summary(build_surface(tri, x))


def _surfaces(tri: Triangulation, system: str) -> list[NormalCoordinates]:
    """Admissible vertex surfaces as standard coordinates (quad ones lifted)."""
    vs = vertex_normal_surfaces(tri, system, filtered=True)
    return vs if system == STD else [lift_to_standard(tri, y) for y in vs]


# -- individual checks -------------------------------------------------------


def check_one_tet_torus() -> str:
    tri = fixture_triangulation("s3-1")
    flags = classify(tri)
    _need(homology(tri).h1_trivial(), "H1 of the one-tetrahedron sphere is not trivial")
    for x in _surfaces(tri, STD):
        ts = _summary(tri, x)
        if ts.closed and ts.orientable and ts.genus == 1 and ts.v == 1 and ts.q == 1:
            rec = bound_report(flags, ts).record(QUAD_ONLY)
            _need(rec.applicable and rec.sharp, "q = 2g + v - 2 fails")
            return f"torus v=1 q=1 found; q = 2g+v-2 = {rec.rhs}"
    raise _Fail("no one-quad one-vertex torus among the vertex surfaces")


def check_bg_family() -> str:
    for g in range(2, 7):
        pkg = family_Bg(g)
        tri = pkg.triangulation
        _need(tri.n == 2 * g and tri.skeleton.num_vertices == 3, f"B_{g} shape")
        ts = _summary(tri, pkg.surfaces["splitting"])
        _need(ts.v == 2 and ts.q == 2 * g and ts.genus == g, f"B_{g} splitting surface")
        rec = bound_report(classify(tri), ts).record(QUAD_ONLY)
        _need(rec.applicable and rec.sharp, f"B_{g} quad identity")
    return "g=2..6: 2g tets, 3 vertices, v=2, q=2g, genus g, q = 2g+v-2"


def check_genus3_sharp() -> str:
    tri = fixture_triangulation("sphere-6")
    flags = classify(tri)
    for x in _surfaces(tri, STD):
        ts = _summary(tri, x)
        if ts.closed and ts.orientable and ts.genus == 3 and ts.q == 2:
            rec = bound_report(flags, ts).record(CLOSED)
            _need(rec.sharp, "3q >= 2g is not sharp")
            return f"g=3 q=2 vertex surface; 2g = {rec.lhs} = 3q = {rec.rhs}"
    raise _Fail("no genus 3 two-quad vertex surface")


def check_quad_genus2() -> str:
    tri = fixture_triangulation("sphere-4")
    flags = classify(tri)
    for y in vertex_normal_surfaces(tri, QUAD, filtered=True):
        ts = _summary(tri, lift_to_standard(tri, y))
        if ts.closed and ts.orientable and ts.genus == 2 and ts.q == 2:
            br = bound_report(flags, ts)
            _need(br.compressibility_certificate is True, "compressibility certificate silent")
            return "quad vertex surface g=2 q=2; 2g > q certifies compressibility"
    raise _Fail("no genus 2 two-quad quad vertex surface")


def check_bounded() -> str:
    pkg = fixture_package("ball-4")
    tri = pkg.triangulation
    _need(len(tri.boundary_faces()) == 2, "boundary face count")
    ts = _summary(tri, pkg.surfaces["bounded"])
    _need(ts.genus == 1 and ts.b == 2 and ts.q == 1, "surface data")
    rec = bound_report(classify(tri), ts).record(BOUNDED)
    _need(rec.applicable and rec.sharp and 2 * ts.genus + ts.b == 3 * ts.q + 1 == 4, "2g + b = 3q + 1 = 4 fails")
    return "g=1 b=2 q=1; 2g+b = 3q+1 = 4"


def check_haken() -> str:
    pkg = fixture_package("haken-8")
    tri = pkg.triangulation
    flags = classify(tri)
    t1 = _summary(tri, pkg.surfaces["s1"])
    t2 = _summary(tri, pkg.surfaces["s2"])
    ts = _summary(tri, pkg.surfaces["sum"])
    r1 = bound_report(flags, t1).record(NONORIENTABLE)
    _need(not t1.orientable and t1.chi == -2 and t1.q == 1 and r1.sharp and r1.lhs == 4, "s1 data or sharpness")
    _need(t2.orientable and t2.genus == 3 and t2.q == 2, "s2 data")
    _need(ts.connected and ts.triangles == 48 and ts.q == 4 and ts.genus == 5, "2 s1 + s2 data")
    haken = HakenData(pkg.manifest["haken_summands"], pkg.manifest["haken_vertex_links"])
    rh = bound_report(flags, ts, haken=haken).record(HAKEN)
    _need(rh.applicable and rh.sharp, "Haken sum bound not sharp")
    return f"s1 chi=-2 q=1 (4 = 3+1); s2 g=3 q=2; 2s1+s2: 48 triangles, 4 quads, g=5; 2g = {rh.rhs} with (n,m)=(2,0)"


def check_torus_bundle() -> str:
    pkg = fixture_package("torus-bundle-6")
    tri = pkg.triangulation
    h = homology(tri)
    _need(tri.n == 6 and h.betti[1] == 3, "H1 rank")
    ts = _summary(tri, pkg.surfaces["torus"])
    _need(ts.closed and ts.genus == 1 and ts.q == 2 and ts.orientable, "torus data")
    return "H1 rank 3; two-quad torus present"


def check_double() -> str:
    tri = fixture_triangulation("s2xs1-5")
    flags = classify(tri)
    for x in _surfaces(tri, STD):
        ts = _summary(tri, x)
        if ts.connected and not ts.orientable and ts.chi == -2 and ts.q == 1:
            td = _summary(tri, x.scaled(2))
            _need(td.orientable and td.q == 2 and td.chi == -4, "double")
            rec = bound_report(flags, td).record(CLOSED)
            _need(rec.sharp, "double not sharp")
            return "chi=-2 q=1 one-sided vertex surface; double orientable q=2 chi=-4 (6 = 6)"
    raise _Fail("no one-sided chi -2 one-quad vertex surface")


def check_gale() -> str:
    out = []
    for n in (8, 10, 12):
        pkg = gale(n)
        tri = pkg.triangulation
        _need(classify(tri).combinatorial_manifold, f"boundary of C4({n}) is not a combinatorial manifold")
        ts = _summary(tri, pkg.surfaces["gale"])
        q = comb(n, 2) - n
        _need(ts.f_vector == (n * n // 4, 2 * q, q), f"f-vector for n={n}")
        _need(ts.genus == n * n // 8 - 3 * n // 4 + 1, f"genus for n={n}")
        out.append(f"n={n}: f={ts.f_vector} g={ts.genus}")
    return "; ".join(out)


def check_fxi() -> str:
    out = []
    for g in range(1, 5):
        pkg = inflate_fxi(g)
        tri = pkg.triangulation
        flags = classify(tri)
        _need(tri.n == 10 * g - 4, f"tet count for g={g}")
        comps = flags.boundary_components
        _need(len(comps) == 2 and all(c.genus == g and len(c.vertex_classes) == 1 for c in comps), f"boundary for g={g}")
        _need(homology(tri).betti[1] == 2 * g, f"H1 rank for g={g}")
        _need(max(flags.boundary_faces_per_tet) <= 1, f"tetrahedron with two boundary faces for g={g}")
        ts = _summary(tri, pkg.surfaces["splitting"])
        rec = bound_report(flags, ts, splitting_genus=g).record(SPLITTING)
        _need(ts.q == 2 * g and ts.genus == g and rec.sharp, f"splitting surface for g={g}")
        cb = complexity_bounds(flags)
        _need(cb.lower_bound_from_boundary == 2 * (2 * (2 * g - 1)) and cb.lower_bound_from_boundary <= tri.n, "lower bound")
        out.append(f"g={g}: {tri.n} tets, lower bound {cb.lower_bound_from_boundary}")
    return "; ".join(out)


def check_s2xi() -> str:
    for pkg in s2xi():
        census = pkg.manifest["census"]
        _need(pkg.triangulation.n == 5, "tet count")
        _need(census["C"] == 1 and census["B_r"] == 2 and census["B_b"] == 2, f"census {census}")
    return "5 tets; |C|=1, |B_r|=|B_b|=2"


def check_an() -> str:
    for n in range(1, 7):
        pkg = family_An(n)
        tri = pkg.triangulation
        sk = tri.skeleton
        _need(sk.num_vertices == 1, f"A_{n} vertex count")
        _need(sum(1 for d in sk.edge_degree if d == 1) == n, f"A_{n} degree-one edges")
        _need(homology(tri).h1_trivial(), f"A_{n} H1")
        for k in range(1, n + 1):
            found = 0
            for key, x in pkg.surfaces.items():
                if len(key.split("-")) - 1 != k:
                    continue
                ts = _summary(tri, x)
                _need(ts.genus == k and ts.q == k, f"A_{n} dual surface {key}")
                found += 1
            _need(found == comb(n, k), f"A_{n}: {found} genus {k} surfaces")
    return "n=1..6: one vertex, n degree-one edges, H1 = 0, C(n,k) genus k dual surfaces with k quads"


# -- property suites ----------------------------------------------------------


def enumerated_cases() -> list[tuple[str, Triangulation, str]]:
    """Triangulations whose admissible vertex surfaces are all examined, with the coordinate system used."""
    cases = [(name, fixture_triangulation(name), STD) for name in FIXTURE_NAMES]
    cases += [(f"bg-{g}", family_Bg(g).triangulation, STD) for g in range(2, 7)]
    cases += [(f"an-{n}", family_An(n).triangulation, STD) for n in range(1, 7)]
    cases += [("s2xi", s2xi()[0].triangulation, STD)]
    cases += [("fxi-1", inflate_fxi(1).triangulation, STD), ("fxi-2", inflate_fxi(2).triangulation, QUAD)]
    cases += [("gale-8", gale(8).triangulation, QUAD)]
    return cases


def distinguished_cases() -> list[tuple[str, Triangulation, NormalCoordinates, Optional[int]]]:
    """Larger constructions checked through their distinguished surfaces only."""
    out = []
    for g in (3, 4):
        pkg = inflate_fxi(g)
        out.append((f"fxi-{g}", pkg.triangulation, pkg.surfaces["splitting"], g))
    for n in (10, 12):
        pkg = gale(n)
        out.append((f"gale-{n}", pkg.triangulation, pkg.surfaces["gale"], None))
    return out


def _bound_violations(name, tri, flags, x, splitting_genus=None) -> list[str]:
    S = build_surface(tri, x)
    ts = topology_summary(S)
    regions = region_decomposition(S)
    br = bound_report(flags, ts, regions, splitting_genus=splitting_genus)
    bad = [f"{name}: {r.name} {r.lhs} vs {r.rhs}" for r in br.violations()]
    if flags.combinatorial_manifold and ts.orientable and ts.closed and ts.connected:
        rec = br.record(SIMPLICIAL)
        if not rec.holds:
            bad.append(f"{name}: 6g <= 7q fails")
        rep = realisation_report(tri, S)
        if not rep.ok:
            bad.append(f"{name}: vista screen fails {rep.to_json()}")
        if not rep.partition_ok:
            bad.append(f"{name}: vista partition fails")
        if sum(vg.e for vg in rep.vistas) < 2 * rep.q:
            bad.append(f"{name}: fewer than 2q quad arcs")
    return bad


def check_bounds_suite() -> str:
    surfaces = 0
    bad: list[str] = []
    for name, tri, system in enumerated_cases():
        flags = classify(tri)
        for x in _surfaces(tri, system):
            surfaces += 1
            bad += _bound_violations(name, tri, flags, x)
    for name, tri, x, sg in distinguished_cases():
        surfaces += 1
        bad += _bound_violations(name, tri, classify(tri), x, sg)
    _need(not bad, "; ".join(bad[:5]))
    return f"{surfaces} surfaces, 0 violations"


def oracle_cases() -> list[tuple[str, Triangulation]]:
    cases = [(name, fixture_triangulation(name)) for name in FIXTURE_NAMES]
    cases += [("bg-2", family_Bg(2).triangulation)]
    cases += [(f"an-{n}", family_An(n).triangulation) for n in range(1, 5)]
    return [(name, tri) for name, tri in cases if tri.n <= 4]


def check_kernel_suite() -> str:
    qm_checked = 0
    for name, tri, system in enumerated_cases():
        if system != STD or tri.n > 8:
            continue
        qsys = matching_system(tri, QUAD)
        for r in extreme_rays(matching_system(tri, STD), keep=None) if tri.n <= 6 else _std_values(tri):
            y = quad_projection(NormalCoordinates(STD, tuple(r)))
            _need(qsys.satisfied_by(y.values), f"{name}: quad projection violates Q-matching")
            qm_checked += 1
    oracles = 0
    for name, tri in oracle_cases():
        for system in (QUAD, STD):
            ls = matching_system(tri, system)
            if system == QUAD:
                dd = extreme_rays(ls)
                bf = brute_force_rays(ls.rows, ls.dimension)
            else:
                dd = [x.values for x in vertex_normal_surfaces(tri, STD, filtered=True)]
                bf = brute_force_rays(ls.rows, ls.dimension, admissible_supports(STD, tri.n, ls.rows))
            _need(sorted(dd) == sorted(bf), f"{name} {system}: enumeration differs from the oracle")
            oracles += 1
    trips = 0
    for name, tri, system in enumerated_cases():
        if tri.n > 12:
            continue
        for y in vertex_normal_surfaces(tri, QUAD, filtered=True):
            _need(quad_projection(lift_to_standard(tri, y)) == y, f"{name}: lift/projection round trip")
            trips += 1
    sums = 0
    for name, tri, system in enumerated_cases():
        if system != STD or tri.n > 8:
            continue
        vs = _surfaces(tri, STD)
        chis = [_summary(tri, x).chi for x in vs]
        for (i, a), (j, b) in combinations(list(enumerate(vs))[:12], 2):
            try:
                s = haken_sum(tri, [(1, a), (1, b)])
            except IncompatibleError:
                continue
            _need(_summary(tri, s).chi == chis[i] + chis[j], f"{name}: chi not additive")
            sums += 1
    return (
        f"Q-matching on {qm_checked} standard rays; oracle agrees on {oracles} systems; "
        f"{trips} round trips; chi additive on {sums} sums"
    )


def _std_values(tri: Triangulation) -> list[tuple[int, ...]]:
    return [x.values for x in vertex_normal_surfaces(tri, STD, filtered=True)]


CHECKS: tuple[tuple[int, str, Callable[[], str]], ...] = (
    (1, "one-tetrahedron sphere torus", check_one_tet_torus),
    (2, "three-vertex spheres B_g", check_bg_family),
    (3, "genus 3 surface with two quads", check_genus3_sharp),
    (4, "quad enumeration genus 2", check_quad_genus2),
    (5, "bounded one-quad surface", check_bounded),
    (6, "Haken sum 2 s1 + s2", check_haken),
    (7, "torus bundle", check_torus_bundle),
    (8, "one-sided surface and its double", check_double),
    (9, "Gale surfaces", check_gale),
    (10, "minimal F x I by inflation", check_fxi),
    (11, "S^2 x I", check_s2xi),
    (12, "family A_n", check_an),
    (13, "bound property suite", check_bounds_suite),
    (14, "kernel property suite", check_kernel_suite),
)


def run_check(number: int) -> CheckResult:
    for num, title, fn in CHECKS:
        if num == number:
            start = time.perf_counter()
            try:
                detail = fn()
                ok = True
            except _Fail as exc:
                detail, ok = str(exc), False
            except Exception as exc:  # a crash is a failed certificate, reported with its type
                detail, ok = f"{type(exc).__name__}: {exc}", False
            return CheckResult(num, title, ok, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_checks(numbers: Optional[Iterable[int]] = None) -> list[CheckResult]:
    nums = [n for n, _, _ in CHECKS] if numbers is None else list(numbers)
    return [run_check(n) for n in nums]
