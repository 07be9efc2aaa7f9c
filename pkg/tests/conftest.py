import pytest
from hypothesis import HealthCheck, settings

from frobtorsor import linalg

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


@pytest.fixture(params=linalg.AVAILABLE)
def backend(request):
    with linalg.using_backend(request.param):
        yield request.param
