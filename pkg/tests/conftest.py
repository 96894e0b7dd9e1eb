import numpy as np
import pytest
from loguru import logger

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.fixtures import make_rng


@pytest.fixture(autouse=True)
def _quiet_logger():
    # CLI invocations point loguru at a captured stream that is closed afterwards
    yield
    logger.remove()


@pytest.fixture
def ctx() -> ToleranceContext:
    return DEFAULT_CONTEXT


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(20240611)
