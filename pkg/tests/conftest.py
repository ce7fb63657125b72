"""Shared fixtures: the benchmark material and its three solved problems."""

import json

import pytest

from stefan3 import (
    Dirichlet,
    MaterialProperties,
    Neumann,
    PhaseTemps,
    ProblemContext,
    Robin,
    solve,
)

# One material exercised throughout: equal conductivities and heats across
# phases, so all three diffusivities coincide (the boundary case the
# validator warns about).
PROPS = MaterialProperties(
    k1=0.2, k2=0.2, k3=0.2, c1=2.0, c2=2.0, c3=2.0, rho=770.0, l1=160.0, l2=150.0
)
TEMPS = PhaseTemps(B=328.0, C=324.0, D=320.0)

ROBIN = Robin(h0=100.0, A_inf=334.0)
DIRICHLET = Dirichlet(A=331.0)
NEUMANN = Neumann(q0=300.0)


def benchmark_config(kind: str) -> dict:
    base = {
        "k1": 0.2, "k2": 0.2, "k3": 0.2,
        "c1": 2.0, "c2": 2.0, "c3": 2.0,
        "rho": 770.0, "l1": 160.0, "l2": 150.0,
        "B": 328.0, "C": 324.0, "D": 320.0,
    }
    boundary = {
        "robin": {"type": "robin", "h0": 100.0, "A_inf": 334.0},
        "dirichlet": {"type": "dirichlet", "A": 331.0},
        "neumann": {"type": "neumann", "q0": 300.0},
    }[kind]
    return {**base, "boundary": boundary}


@pytest.fixture(scope="session")
def ctx_plain():
    return ProblemContext(PROPS, TEMPS)


@pytest.fixture(scope="session")
def ctx_robin():
    return ProblemContext(PROPS, TEMPS, ROBIN)


@pytest.fixture(scope="session")
def ctx_dirichlet():
    return ProblemContext(PROPS, TEMPS, DIRICHLET)


@pytest.fixture(scope="session")
def ctx_neumann():
    return ProblemContext(PROPS, TEMPS, NEUMANN)


@pytest.fixture(scope="session")
def sol_robin(ctx_robin):
    return solve(ctx_robin)


@pytest.fixture(scope="session")
def sol_dirichlet(ctx_dirichlet):
    return solve(ctx_dirichlet)


@pytest.fixture(scope="session")
def sol_neumann(ctx_neumann):
    return solve(ctx_neumann)


@pytest.fixture
def write_config(tmp_path):
    """Factory writing a config dict to a JSON file, returning its path."""

    def _write(obj, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return _write
