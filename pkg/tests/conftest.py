import pytest

from dilifilter.synthetic import make_benchmark


@pytest.fixture(scope="session")
def small_benchmark():
    """Fast 400-document benchmark shared by ensemble/pipeline tests."""
    return make_benchmark(n_docs=400, seed=7)
