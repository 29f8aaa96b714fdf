import numpy as np
import pytest

from linelift.geometry import get_scenario

FAST_OVERRIDES = {"ode_steps": 1024, "average_grid": 16}


@pytest.fixture(scope="session")
def torus_translate():
    return get_scenario("torus2-translate", FAST_OVERRIDES)


@pytest.fixture(scope="session")
def torus_diag():
    return get_scenario("torus2-diag", FAST_OVERRIDES)


@pytest.fixture(scope="session")
def sphere_rotate():
    return get_scenario("sphere2-rotate", FAST_OVERRIDES)


@pytest.fixture(scope="session")
def sphere_trivial():
    return get_scenario("sphere2-trivial", FAST_OVERRIDES)


@pytest.fixture(scope="session")
def catalog(torus_translate, torus_diag, sphere_rotate, sphere_trivial):
    return {
        "torus2-translate": torus_translate,
        "torus2-diag": torus_diag,
        "sphere2-rotate": sphere_rotate,
        "sphere2-trivial": sphere_trivial,
    }


@pytest.fixture()
def rng():
    return np.random.default_rng(2024)
