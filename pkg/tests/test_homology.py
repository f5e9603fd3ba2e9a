import random
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from conftest import fixture_tri
from nsg.fixtures import FIXTURE_NAMES
from nsg.generators import family_An, family_Bg, inflate_fxi, one_tet_s3
from nsg.triangulation import GluingError, Triangulation
from nsg.homology import boundary_matrices, homology, smith_invariants


def _sympy_invariants(rows):
    if not rows or not rows[0]:
        return []
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return sorted(abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_snf_matches_sympy(r, c, data):
    rows = [[data.draw(st.integers(-6, 6)) for _ in range(c)] for _ in range(r)]
    assert sorted(smith_invariants(rows)) == _sympy_invariants(rows)


@pytest.mark.parametrize("name", ["s2xs1-5", "torus-bundle-6", "haken-8"])
def test_boundary_matrices_against_sympy(name):
    tri = fixture_tri(name)
    for d in boundary_matrices(tri):
        if d and d[0]:
            assert sorted(smith_invariants(d)) == _sympy_invariants(d)


def test_boundary_squares_to_zero(any_fixture):
    _, tri = any_fixture
    d1, d2, d3 = boundary_matrices(tri)
    m1, m2, m3 = sympy.Matrix(d1), sympy.Matrix(d2), sympy.Matrix(d3)
    if m1.shape[1] and m2.shape[1]:
        assert (m1 * m2).is_zero_matrix
    if m2.shape[1] and m3.shape[1]:
        assert (m2 * m3).is_zero_matrix


def test_s2xs1():
    h = homology(fixture_tri("s2xs1-5"))
    assert h.betti[1] == 1 and h.torsion == ()


def test_torus_bundle():
    h = homology(fixture_tri("torus-bundle-6"))
    assert h.betti == (1, 3, 3, 1)


@pytest.mark.parametrize("tri", [one_tet_s3(), fixture_tri("sphere-6"), fixture_tri("sphere-4"),
                                 family_Bg(3).triangulation, family_An(4).triangulation])
def test_spheres(tri):
    h = homology(tri)
    assert h.betti[0] == 1 and h.h1_trivial()


def test_fxi_rank():
    assert homology(inflate_fxi(3).triangulation).betti[1] == 6


def _one_tet_closed():
    out = []
    for f, g in ((0, 1), (0, 2), (0, 3)):
        h, k = sorted({0, 1, 2, 3} - {f, g})
        for p in permutations(range(4)):
            if p[f] != g:
                continue
            for q in permutations(range(4)):
                if q[h] != k:
                    continue
                try:
                    out.append(Triangulation.from_pairs(1, [(0, f, 0, p), (0, h, 0, q)]))
                except GluingError:
                    pass
    return out


def test_one_tet_census_torsion():
    seen = set()
    for tri in _one_tet_closed():
        h = homology(tri)
        assert h.betti[0] == 1
        assert all(x > 1 for x in h.torsion)
        d1, d2, d3 = boundary_matrices(tri)
        assert sorted(smith_invariants(d2)) == _sympy_invariants(d2)
        seen.add(h.torsion)
    # lens spaces appear among one-tetrahedron closed triangulations
    assert any(t for t in seen)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(FIXTURE_NAMES), st.integers(0, 1000))
def test_relabel_invariance(name, seed):
    tri = fixture_tri(name)
    order = list(range(tri.n))
    random.Random(seed).shuffle(order)
    a, b = homology(tri), homology(tri.relabel(order))
    assert a.betti == b.betti and a.torsion == b.torsion
