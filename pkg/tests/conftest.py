"""Shared fixtures: the standard instance set and small helpers."""

import pytest

from tsring.groupmodel import make_params

# the full verification instance set
INSTANCES = [
    (3, 1, 1),
    (2, 2, 1),
    (2, 3, 1),
    (3, 2, 2),
    (5, 1, 2),
    (5, 1, 4),
    (5, 2, 4),
    (7, 1, 6),
    (7, 2, 3),
    (13, 1, 4),
]

SMALL_INSTANCES = [t for t in INSTANCES if t[0] ** t[1] * t[2] <= 24]


@pytest.fixture(params=INSTANCES, ids=lambda t: f"p{t[0]}n{t[1]}e{t[2]}")
def any_params(request):
    return make_params(*request.param)


@pytest.fixture(params=SMALL_INSTANCES, ids=lambda t: f"p{t[0]}n{t[1]}e{t[2]}")
def small_params(request):
    return make_params(*request.param)
