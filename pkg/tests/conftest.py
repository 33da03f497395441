import random

import pytest

from app.entities.algebra import AlgElement
from app.services.galois_context_service import galois_context_service
from app.services.group_service import group_service


@pytest.fixture(scope="session")
def s3():
    return group_service.catalog("S3")


@pytest.fixture(scope="session")
def d4():
    return group_service.catalog("D4")


@pytest.fixture(scope="session")
def q8():
    return group_service.catalog("Q8")


@pytest.fixture(scope="session")
def split_c2():
    return galois_context_service.split_context(group_service.catalog("C2"))


@pytest.fixture(scope="session")
def split_s3(s3):
    return galois_context_service.split_context(s3)


@pytest.fixture(scope="session")
def split_d4(d4):
    return galois_context_service.split_context(d4)


@pytest.fixture(scope="session")
def split_q8(q8):
    return galois_context_service.split_context(q8)


@pytest.fixture(scope="session")
def field_s3():
    return galois_context_service.cubic_field_context()


@pytest.fixture
def rng():
    return random.Random(1234)


def random_element(ctx, rng, bound=3):
    return AlgElement.of([rng.randint(-bound, bound) for _ in range(ctx.dim)])
