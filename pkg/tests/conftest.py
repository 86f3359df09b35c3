import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cubesat import kernels  # noqa: E402


@pytest.fixture(params=["cython", "python"])
def backend(request):
    if not kernels.available(request.param):
        pytest.skip("compiled kernels not built")
    previous = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)
