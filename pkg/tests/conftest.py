import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arrlab.arrangement import builtin, decone, default_decone_index
from arrlab.cells import bounded_complex, build_complex
from arrlab.falk import solve


@pytest.fixture(scope="session")
def icosi():
    return builtin("icosidodecahedral")


@pytest.fixture(scope="session")
def lid(icosi):
    """The deconing of the icosidodecahedral arrangement at its default
    (first edge) plane."""
    return decone(icosi, default_decone_index(icosi))


@pytest.fixture(scope="session")
def lid_complex(lid):
    return build_complex(lid)


@pytest.fixture(scope="session")
def gamma_lid(lid_complex):
    return bounded_complex(lid_complex)


@pytest.fixture(scope="session")
def lid_solution(gamma_lid):
    return solve(gamma_lid)


@pytest.fixture(scope="session")
def lid_solution_equality(gamma_lid):
    return solve(gamma_lid, equality_asphericity=True)
