from decimal import Decimal, ROUND_FLOOR, localcontext
from fractions import Fraction

import pytest

from conftest import fixture_pkg, fixture_tri
from nsg.bounds import (
    BOUNDED,
    CHAIN,
    CLOSED,
    HAKEN,
    KALELKAR,
    MINIMAL,
    NONORIENTABLE,
    QUAD_ONLY,
    SIMPLICIAL,
    SPLITTING,
    BoundRecord,
    HakenData,
    bound_report,
    complexity_bounds,
    genus_cap_incompressible,
    genus_cap_normal,
    sqrt6_power_floor,
)
from nsg.generators import family_Bg, gale, inflate_fxi
from nsg.surface import build_surface, region_decomposition, topology_summary
from nsg.triangulation import classify


def _decimal_floor(coefficient, n):
    with localcontext() as ctx:
        ctx.prec = 120
        value = Decimal(coefficient) * Decimal(6) ** (n // 2)
        if n % 2:
            value *= Decimal(6).sqrt()
        return int(value.to_integral_value(rounding=ROUND_FLOOR))


@pytest.mark.parametrize("n", range(0, 40))
def test_sqrt6_floor_matches_decimal(n):
    for c in (1, 3, 9, 2 * n * n + 1, 6 * n * n + 3):
        assert sqrt6_power_floor(c, n) == _decimal_floor(c, n)


def test_genus_caps_small():
    # floor(9 sqrt 6) and floor(3 sqrt 6)
    assert genus_cap_normal(1) == 22
    assert genus_cap_incompressible(1) == 7
    assert genus_cap_normal(2) == 27 * 6
    assert genus_cap_incompressible(2) == 9 * 6


def _summary(tri, x):
    return topology_summary(build_surface(tri, x))


def test_closed_sharp_on_genus3():
    pkg = fixture_pkg("sphere-6")
    tri = pkg.triangulation
    ts = _summary(tri, pkg.surfaces["genus3"])
    rec = bound_report(classify(tri), ts).record(CLOSED)
    assert (rec.lhs, rec.rhs, rec.sharp) == (6, 6, True)


def test_haken_records():
    pkg = fixture_pkg("haken-8")
    tri = pkg.triangulation
    flags = classify(tri)
    t1 = _summary(tri, pkg.surfaces["s1"])
    r1 = bound_report(flags, t1)
    assert not r1.record(CLOSED).applicable
    assert r1.record(NONORIENTABLE).lhs == 4 and r1.record(NONORIENTABLE).sharp
    ts = _summary(tri, pkg.surfaces["sum"])
    rh = bound_report(flags, ts, haken=HakenData(2, 0)).record(HAKEN)
    assert (rh.lhs, rh.rhs) == (10, 10)
    assert not bound_report(flags, ts).record(HAKEN).applicable


def test_bounded_record():
    pkg = fixture_pkg("ball-4")
    tri = pkg.triangulation
    ts = _summary(tri, pkg.surfaces["bounded"])
    br = bound_report(classify(tri), ts)
    rec = br.record(BOUNDED)
    assert rec.applicable and rec.lhs == rec.rhs == 4
    assert not br.record(CLOSED).applicable
    assert br.compressibility_certificate is None


def test_double_of_one_sided_is_sharp():
    pkg = fixture_pkg("s2xs1-5")
    tri = pkg.triangulation
    ts = _summary(tri, pkg.surfaces["double"])
    rec = bound_report(classify(tri), ts).record(CLOSED)
    assert rec.sharp and rec.lhs == 6


@pytest.mark.parametrize("g", [2, 3, 4])
def test_quad_identity_on_bg(g):
    pkg = family_Bg(g)
    tri = pkg.triangulation
    br = bound_report(classify(tri), _summary(tri, pkg.surfaces["splitting"]))
    rec = br.record(QUAD_ONLY)
    assert rec.applicable and rec.lhs == rec.rhs == 2 * g
    assert br.violations() == []


def test_simplicial_and_minimal_flags():
    pkg = gale(8)
    tri = pkg.triangulation
    ts = _summary(tri, pkg.surfaces["gale"])
    flags = classify(tri)
    br = bound_report(flags, ts)
    assert br.record(SIMPLICIAL).applicable and br.record(SIMPLICIAL).holds
    assert not br.record(MINIMAL).applicable
    assert bound_report(flags, ts, assert_minimal=True).record(MINIMAL).applicable


@pytest.mark.parametrize("g", [1, 2, 3])
def test_fxi_splitting_and_lower_bound(g):
    pkg = inflate_fxi(g)
    tri = pkg.triangulation
    flags = classify(tri)
    rec = bound_report(flags, _summary(tri, pkg.surfaces["splitting"]), splitting_genus=g).record(SPLITTING)
    assert rec.sharp and rec.lhs == 2 * g
    cb = complexity_bounds(flags)
    assert cb.lower_bound_from_boundary == 4 * (2 * g - 1)
    assert cb.lower_bound_from_boundary <= tri.n
    assert cb.to_json()["lower_bound_holds"]


def test_fxi_genus_two_lower_bound_is_twelve():
    assert complexity_bounds(classify(inflate_fxi(2).triangulation)).lower_bound_from_boundary == 12


def test_closed_manifold_has_zero_lower_bound():
    assert complexity_bounds(classify(fixture_tri("sphere-6"))).lower_bound_from_boundary == 0


def test_report_records_never_violate():
    rec = BoundRecord(KALELKAR, True, 100, 1)
    assert rec.holds is False
    pkg = fixture_pkg("sphere-6")
    tri = pkg.triangulation
    ts = _summary(tri, pkg.surfaces["genus3"])
    br = bound_report(classify(tri), ts)
    names = {r.name for r in br.violations()}
    assert not any(n.startswith("report:") for n in names)


def test_chain_record_is_report_only():
    pkg = gale(8)
    tri = pkg.triangulation
    S = build_surface(tri, pkg.surfaces["gale"])
    regions = region_decomposition(S)
    rec = bound_report(classify(tri), topology_summary(S), regions).record(CHAIN)
    assert rec.applicable
    assert rec.name.startswith("report:")
    assert isinstance(rec.rhs, Fraction)


def test_region_mismatch_rejected():
    a = fixture_pkg("haken-8")
    tri = a.triangulation
    S1 = build_surface(tri, a.surfaces["s2"])
    S2 = build_surface(tri, a.surfaces["sum"])
    with pytest.raises(ValueError):
        bound_report(classify(tri), topology_summary(S1), region_decomposition(S2))


def test_report_is_pure():
    pkg = fixture_pkg("sphere-6")
    tri = pkg.triangulation
    flags = classify(tri)
    ts = _summary(tri, pkg.surfaces["genus3"])
    first = bound_report(flags, ts).to_json()
    second = bound_report(flags, ts).to_json()
    assert first == second
    assert flags == classify(tri)


def test_inapplicable_record_has_no_verdict():
    rec = BoundRecord(CLOSED, False)
    assert rec.holds is None and rec.sharp is None
    assert rec.to_json()["holds"] is None
