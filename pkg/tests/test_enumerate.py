import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture_tri
from nsg.coords import QUAD, STD, NormalCoordinates, is_admissible, matching_system
from nsg.enumerate import (
    admissibility_filter,
    admissible_supports,
    brute_force_rays,
    extreme_rays,
    primitive,
    rank,
    ray_list,
    vertex_normal_surfaces,
)
from nsg.generators import family_An, family_Bg


def test_single_difference_row():
    # x0 = x1 with x2 free
    assert sorted(extreme_rays([[1, -1, 0]])) == [(0, 0, 1), (1, 1, 0)]


def test_square_cone():
    # x0 + x1 = x2 + x3 has four extreme rays, one for each pairing
    rays = extreme_rays([[1, 1, -1, -1]])
    assert sorted(rays) == [(0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)]


def test_pointed_at_origin_only():
    assert extreme_rays([[1, 1]]) == []


def test_empty_system_needs_dimension():
    with pytest.raises(ValueError):
        extreme_rays([])
    assert sorted(extreme_rays([], 2)) == [(0, 1), (1, 0)]


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        extreme_rays([[1, -1], [1, 0, 0]])
    tri = fixture_tri("s3-1")
    with pytest.raises(ValueError):
        extreme_rays(matching_system(tri, STD), 8)


def test_primitive_and_rank():
    assert primitive([4, 6, 0]) == (2, 3, 0)
    assert primitive([0, 0]) == (0, 0)
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2
    assert rank([[0, 0]]) == 0


small_rows = st.integers(2, 6).flatmap(
    lambda d: st.lists(st.lists(st.integers(-2, 2), min_size=d, max_size=d), min_size=1, max_size=3)
)


@settings(max_examples=60, deadline=None)
@given(small_rows, st.randoms(use_true_random=False))
def test_matches_brute_force_in_any_row_order(rows, rnd):
    d = len(rows[0])
    expected = brute_force_rays(rows, d)
    order = list(range(len(rows)))
    rnd.shuffle(order)
    got = extreme_rays(rows, d, row_order=order, rank_check=True)
    assert sorted(got) == sorted(expected)
    assert got == extreme_rays(rows, d)


@pytest.mark.parametrize(
    "name,system",
    [("s3-1", STD), ("s3-1", QUAD), ("sphere-4", QUAD), ("ball-4", QUAD), ("an-2", QUAD), ("bg-2", QUAD)],
)
def test_quad_oracle(name, system):
    tri = _small(name)
    ls = matching_system(tri, system)
    assert sorted(extreme_rays(ls)) == sorted(brute_force_rays(ls.rows, ls.dimension))


@pytest.mark.parametrize("name", ["s3-1", "sphere-4", "ball-4", "an-2", "an-3"])
def test_standard_admissible_oracle(name):
    tri = _small(name)
    ls = matching_system(tri, STD)
    expected = brute_force_rays(ls.rows, ls.dimension, admissible_supports(STD, tri.n, ls.rows))
    got = [x.values for x in vertex_normal_surfaces(tri, STD, filtered=True)]
    assert sorted(got) == sorted(expected)


def _small(name):
    if name.startswith("an-"):
        return family_An(int(name[3:])).triangulation
    if name == "bg-2":
        return family_Bg(2).triangulation
    return fixture_tri(name)


@pytest.mark.parametrize("name", ["sphere-6", "torus-bundle-6", "s2xs1-5", "ball-4"])
def test_filtered_equals_unfiltered_admissible(name):
    tri = fixture_tri(name)
    for system in (STD, QUAD):
        full = vertex_normal_surfaces(tri, system)
        fast = vertex_normal_surfaces(tri, system, filtered=True)
        assert full == fast


def test_rays_are_valid_and_flagged():
    tri = fixture_tri("sphere-4")
    ls = matching_system(tri, STD)
    rays = ray_list(tri, STD)
    assert rays
    for r in rays:
        assert ls.satisfied_by(r.values)
        assert min(r.values) >= 0 and any(r.values)
        assert primitive(r.values) == r.values
        assert r.admissible == is_admissible(NormalCoordinates(STD, r.values))
    inadm = vertex_normal_surfaces(tri, STD, include_inadmissible=True)
    assert len(inadm) == len(rays)


def test_rank_check_on_fixture():
    tri = fixture_tri("sphere-4")
    ls = matching_system(tri, QUAD)
    assert extreme_rays(ls, rank_check=True) == extreme_rays(ls)


def test_row_order_invariance_on_fixture():
    tri = fixture_tri("torus-bundle-6")
    ls = matching_system(tri, QUAD)
    base = extreme_rays(ls)
    rnd = random.Random(7)
    for _ in range(3):
        order = list(range(len(ls.rows)))
        rnd.shuffle(order)
        assert extreme_rays(ls, row_order=order) == base


def test_output_is_sorted_and_deterministic():
    tri = fixture_tri("sphere-6")
    a = vertex_normal_surfaces(tri, QUAD, filtered=True)
    b = vertex_normal_surfaces(tri, QUAD, filtered=True)
    assert a == b


def test_filter_rejects_two_quad_types():
    keep = admissibility_filter(QUAD, 2)
    assert keep((1, 0, 0, 0, 2, 0))
    assert not keep((1, 1, 0, 0, 0, 0))
    keep_std = admissibility_filter(STD, 1)
    assert keep_std((5, 5, 5, 5, 0, 0, 1))
    assert not keep_std((0, 0, 0, 0, 0, 1, 1))
