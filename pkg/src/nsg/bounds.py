"""Genus versus quadrilateral inequalities and complexity bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from nsg.surface import RegionDecomposition, TopologySummary
from nsg.triangulation import ClassificationFlags

Number = Union[int, Fraction]


@dataclass(frozen=True)
class BoundRecord:
    name: str
    applicable: bool
    lhs: Optional[Number] = None
    rhs: Optional[Number] = None

    @property
    def holds(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return self.lhs <= self.rhs

    @property
    def sharp(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v

        return {
            "name": self.name,
            "applicable": self.applicable,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "holds": self.holds,
            "sharp": self.sharp,
        }


@dataclass(frozen=True)
class HakenData:
    summands: int  # n: closed connected orientable summands
    vertex_links: int = 0  # m: vertex linking spheres split off the sum


@dataclass(frozen=True)
class BoundReport:
    records: tuple[BoundRecord, ...]
    compressibility_certificate: Optional[bool]
    thurston_norm_upper: Optional[int]
    extra: dict = field(default_factory=dict)

    def record(self, name: str) -> BoundRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def violations(self) -> list[BoundRecord]:
        out = []
        for r in self.records:
            if not r.applicable or r.name.startswith("report:"):
                continue
            if not r.holds or (r.name == QUAD_ONLY and not r.sharp):
                out.append(r)
        return out

    def to_json(self) -> dict:
        return {
            "bounds": [r.to_json() for r in self.records],
            "compressibility_certificate": self.compressibility_certificate,
            "thurston_norm_upper": self.thurston_norm_upper,
            **self.extra,
        }


CLOSED = "closed_3q_ge_2g"
NONORIENTABLE = "nonorientable_g_le_3q_plus_1"
BOUNDED = "bounded_2_minus_chi_le_3q_plus_1"
HAKEN = "haken_sum"
CHAIN = "report:chain_bound"
SIMPLICIAL = "simplicial_6g_le_7q"
MINIMAL = "minimal_prime_6g_le_7q"
SPLITTING = "splitting_2gF_le_q"
QUAD_ONLY = "quad_surface_identity"
KALELKAR = "report:kalelkar_2g_le_7q"


def bound_report(
    flags: ClassificationFlags,
    summary: TopologySummary,
    regions: Optional[RegionDecomposition] = None,
    haken: Optional[HakenData] = None,
    *,
    assert_minimal: bool = False,
    splitting_genus: Optional[int] = None,
) -> BoundReport:
    """Evaluate every inequality whose hypotheses the inputs satisfy.

    ``splitting_genus`` is the genus of the boundary surface F when the surface
    is known to split a product F x I.  Records whose name starts with
    ``report:`` are informational and never count as violations.
    """
    if regions is not None:
        tri_in_regions = sum(len(r.triangles) for r in regions.triangle_regions)
        quads_in_regions = sum(len(r) for r in regions.quad_regions)
        if tri_in_regions != summary.triangles or quads_in_regions != summary.q:
            raise ValueError("region data and summary describe different surfaces")

    m_orientable = flags.orientable
    connected = summary.connected
    closed_or = m_orientable and connected and summary.closed and summary.orientable
    q = summary.q
    g = summary.genus
    chi = summary.chi
    recs = []

    recs.append(BoundRecord(CLOSED, closed_or, 2 * g, 3 * q) if closed_or else BoundRecord(CLOSED, False))
    nonor = m_orientable and connected and summary.closed and not summary.orientable
    recs.append(BoundRecord(NONORIENTABLE, True, g, 3 * q + 1) if nonor else BoundRecord(NONORIENTABLE, False))
    bounded = m_orientable and connected and not summary.closed and summary.orientable
    recs.append(BoundRecord(BOUNDED, True, 2 - chi, 3 * q + 1) if bounded else BoundRecord(BOUNDED, False))
    if closed_or and haken is not None:
        recs.append(BoundRecord(HAKEN, True, 2 * g, 3 * q + 2 * (1 - haken.summands + haken.vertex_links)))
    else:
        recs.append(BoundRecord(HAKEN, False))
    if closed_or and regions is not None:
        n = regions.min_chain_length
        rhs = Fraction(q) if n == math.inf else Fraction(n + 4, n) * q
        recs.append(BoundRecord(CHAIN, True, 2 * g, rhs))
    else:
        recs.append(BoundRecord(CHAIN, False))
    simp = closed_or and flags.simplicial
    recs.append(BoundRecord(SIMPLICIAL, True, 6 * g, 7 * q) if simp else BoundRecord(SIMPLICIAL, False))
    mini = closed_or and assert_minimal
    recs.append(BoundRecord(MINIMAL, True, 6 * g, 7 * q) if mini else BoundRecord(MINIMAL, False))
    split = closed_or and splitting_genus is not None
    recs.append(BoundRecord(SPLITTING, True, 2 * splitting_genus, q) if split else BoundRecord(SPLITTING, False))
    all_quad = closed_or and summary.triangles == 0 and q > 0
    # an identity rather than an inequality: both directions are checked through lhs == rhs
    recs.append(BoundRecord(QUAD_ONLY, True, q, 2 * g + summary.v - 2) if all_quad else BoundRecord(QUAD_ONLY, False))
    recs.append(BoundRecord(KALELKAR, True, 2 * g, 7 * q) if closed_or else BoundRecord(KALELKAR, False))

    certificate = (2 * g > q) if closed_or else None
    thurston = q if (m_orientable and summary.orientable) else None
    return BoundReport(tuple(recs), certificate, thurston)


def sqrt6_power_floor(coefficient: int, n: int) -> int:
    """Exact ``floor(coefficient * sqrt(6)**n)`` for non-negative integers."""
    if n % 2 == 0:
        return coefficient * 6 ** (n // 2)
    return isqrt(coefficient * coefficient * 6 ** n)


def genus_cap_normal(n: int) -> int:
    """Genus cap for closed orientable vertex normal surfaces in an n-tetrahedron triangulation."""
    return sqrt6_power_floor(6 * n * n + 3, n)


def genus_cap_incompressible(c: int) -> int:
    """Cap on the minimal genus of an incompressible surface given the complexity c."""
    return sqrt6_power_floor(2 * c * c + 1, c)


@dataclass(frozen=True)
class ComplexityBounds:
    lower_bound_from_boundary: int
    genus_cap_normal: int
    genus_cap_incompressible: int
    tetrahedra: int

    def to_json(self) -> dict:
        return {
            "lower_bound_from_boundary": self.lower_bound_from_boundary,
            "genus_cap_normal": self.genus_cap_normal,
            "genus_cap_incompressible": self.genus_cap_incompressible,
            "tetrahedra": self.tetrahedra,
            "lower_bound_holds": self.lower_bound_from_boundary <= self.tetrahedra,
        }


def complexity_bounds(flags: ClassificationFlags) -> ComplexityBounds:
    lower = 2 * sum(2 * c.genus - 1 for c in flags.boundary_components)
    n = flags.tetrahedra
    return ComplexityBounds(
        lower_bound_from_boundary=lower,
        genus_cap_normal=genus_cap_normal(n),
        genus_cap_incompressible=genus_cap_incompressible(n),
        tetrahedra=n,
    )
