"""Shared fixtures.  The expensive computations (level scan, normalization,
oracle scan) run once per session and are reused everywhere."""

import pytest

import expwell as ew

# the parameter set most reference values are quoted for
P_REF = ew.PhysParams(m=1.0, hbar=1.0, v0=-4.0, delta=2.0)

# reference eigenvalues for P_REF, quoted to the precision used throughout
REF_ENERGIES = (-2.1680511, -0.4166327, -0.0294695)


@pytest.fixture(scope="session")
def p_ref() -> ew.PhysParams:
    return P_REF


@pytest.fixture(scope="session")
def levels_ref(p_ref) -> ew.LevelSet:
    return ew.find_levels(p_ref)


@pytest.fixture(scope="session")
def states_ref(p_ref, levels_ref):
    return ew.build_states(p_ref, levels_ref)


@pytest.fixture(scope="session")
def oracle_ref(p_ref):
    """Full shooting-method scan at reference parameters (the slow one)."""
    return ew.shoot_eigenvalues(p_ref, ew.ShootingConfig(points_per_decade=80))
