import pytest

from facegroup import create_app
from facegroup.config import Config
from facegroup.services.catalog import example_sphere
from facegroup.services.complexes import octahedron


class TestConfig(Config):
    TESTING = True
    RATELIMIT_ENABLED = False
    CACHE_TYPE = "SimpleCache"
    API_SEARCH_MAX_STATES = 20000


@pytest.fixture(scope="session")
def oct():
    return octahedron()


@pytest.fixture(scope="session")
def fig3():
    return example_sphere("fig3")


@pytest.fixture(scope="session")
def fig10():
    return example_sphere("fig10")


@pytest.fixture()
def app():
    return create_app(TestConfig)


@pytest.fixture()
def client(app):
    return app.test_client()
