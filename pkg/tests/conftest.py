import functools

import pytest

from nsg.fixtures import FIXTURE_NAMES, fixture_triangulation, fixture_package


@functools.lru_cache(maxsize=None)
def fixture_tri(name):
    return fixture_triangulation(name)


@functools.lru_cache(maxsize=None)
def fixture_pkg(name):
    return fixture_package(name)


@pytest.fixture(params=FIXTURE_NAMES)
def any_fixture(request):
    return request.param, fixture_tri(request.param)
