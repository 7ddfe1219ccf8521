import numpy as np
import pytest

from feedsim.controller import Menu
from feedsim.model import (
    RobotModel,
    default_menu_path,
    default_model_path,
    load_default_model,
)


@pytest.fixture(scope="session")
def model() -> RobotModel:
    return load_default_model()


@pytest.fixture(scope="session")
def menu() -> Menu:
    return Menu.from_json(default_menu_path())


@pytest.fixture(scope="session")
def model_path():
    return default_model_path()


@pytest.fixture(scope="session")
def menu_path():
    return default_menu_path()


def random_q(model: RobotModel, rng: np.random.Generator) -> np.ndarray:
    lo, hi = model.limits_lo, model.limits_hi
    return lo + rng.random(5) * (hi - lo)
