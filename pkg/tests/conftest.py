import numpy as np
import pytest

from ContactGroup_R3.core import algebra_core
from ContactGroup_R3.core import pipeline_manager

PRESET_NAMES = ('heisenberg', 'su2', 'sl2', 'case1', 'case2', 'sl2_hyperbolic', 'euclidean')
CHART_PRESETS = tuple(name for name in PRESET_NAMES if name != 'su2')

# case tag each preset reaches through canonical_frame and classify
EXPECTED_TAGS = {
    'heisenberg': 'Case3Heis',
    'su2': 'Su2',
    'sl2': 'Sl2Tilde',
    'case1': 'Case1',
    'case2': 'Case1',
    'sl2_hyperbolic': 'Sl2Tilde',
    'euclidean': 'Case1',
}


@pytest.fixture(scope='session')
def catalog():
    return pipeline_manager.PresetCatalog.from_file()


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope='session')
def random_bases():
    generator = np.random.default_rng(42)
    return [algebra_core.random_basis_change(generator) for _ in range(100)]


def canonical(a, b, m1, m2):
    """hand-built canonical frame with the given constants"""
    constants = algebra_core.StructureConstants(algebra_core.canonical_tensor(a, b, m1, m2))
    return algebra_core.CanonicalFrame.from_constants(constants)
