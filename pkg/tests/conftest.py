import os

import pytest

from zetakit.zeros import CACHE_ENV, load_zeros


@pytest.fixture(scope="session")
def zero_cache(tmp_path_factory):
    path = tmp_path_factory.mktemp("zeros") / "zeros.txt"
    old = os.environ.get(CACHE_ENV)
    os.environ[CACHE_ENV] = str(path)
    load_zeros(2000)
    yield path
    if old is None:
        os.environ.pop(CACHE_ENV, None)
    else:
        os.environ[CACHE_ENV] = old


@pytest.fixture(scope="session")
def zeros2000(zero_cache):
    return load_zeros(2000, zero_cache)
