import pytest

from pmskit.config.settings import load_settings
from pmskit.spaces import cyclic_group
from strategies import GROUP_NAMES, PRODUCT, build_group


@pytest.fixture(params=GROUP_NAMES)
def group(request):
    """Each test group with its invariant word metric under sup:product."""
    return build_group(request.param)


@pytest.fixture
def z3():
    return cyclic_group(3, PRODUCT)


@pytest.fixture(scope="session", autouse=True)
def clean_environment():
    """Isolate the run from the caller's PMSKIT_* environment."""
    with pytest.MonkeyPatch.context() as mp:
        for name in ("PMSKIT_CONFIG", "PMSKIT_SEED", "PMSKIT_DEBUG"):
            mp.delenv(name, raising=False)
        load_settings(reload=True)
        yield
    load_settings(reload=True)
