"""
Pytest configuration and shared fixtures
"""

import os
import sys
from pathlib import Path

import pytest

# Keep test runs independent of a developer's .env
os.environ.setdefault("ENV", "test")
os.environ.setdefault("LOG_LEVEL", "WARNING")

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# Load environment variables
from dotenv import load_dotenv

load_dotenv()

from algebra.grading import GradingSpec
from algebra.modules import GradedModule
from algebra.monomials import MonomialIdeal, MonomialPrime
from config.settings import get_settings
from engine.cohomology import CohomologyEngine
from instance_io.parser import load

INSTANCES = project_root / "instances"


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Clear settings cache before each test to ensure env var changes take effect"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def engine():
    """A fresh single-threaded engine"""
    return CohomologyEngine(max_workers=1)


@pytest.fixture
def bigraded():
    """k[x,y] with x in degree (1,0) and y in degree (0,1)"""
    return GradingSpec.of(("x", "y"), (1, 2))


@pytest.fixture
def standard():
    """k[x,y] with both variables in degree 1"""
    return GradingSpec.of(("x", "y"), (1, 1))


@pytest.fixture
def ideal():
    """Build an ideal of k[x,y] from exponent vectors"""

    def build(*gens, nvars=2):
        return MonomialIdeal.from_generators(gens, nvars)

    return build


@pytest.fixture
def prime():
    def build(*variables, nvars=2):
        return MonomialPrime(nvars, frozenset(variables))

    return build


@pytest.fixture
def free(bigraded):
    """S over the bigraded ring"""
    return GradedModule.free(bigraded)


@pytest.fixture
def quotient_x(bigraded):
    """S/(x) over the bigraded ring"""
    return GradedModule.cyclic(bigraded, MonomialIdeal.from_generators([(1, 0)], 2))


@pytest.fixture
def instance_path():
    def path(name):
        return str(INSTANCES / name)

    return path


@pytest.fixture
def e1():
    return load(str(INSTANCES / "E1.inst"))


@pytest.fixture
def suite_instance():
    return load(str(INSTANCES / "suite.inst"))
