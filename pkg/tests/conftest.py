import pytest

from parslice import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile (or load cached) kernels once so no test times include JIT work
    kernels.warm()
