import pytest

from akrvoro import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # keep JIT compile time out of individual test timings
    _kernels.warmup()
