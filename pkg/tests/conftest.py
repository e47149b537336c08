import pytest

from hgtrace.field_core import build_ctx


@pytest.fixture(scope="session")
def ctx7():
    return build_ctx(7)


@pytest.fixture(scope="session")
def ctx11():
    return build_ctx(11)


@pytest.fixture(scope="session")
def ctx13():
    return build_ctx(13)


@pytest.fixture(scope="session")
def ctx37():
    return build_ctx(37)
