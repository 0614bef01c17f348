import pytest
from hypothesis import HealthCheck, settings

from knapsackga.core.logging import configure_logging
from knapsackga.core.models import GaParams, Instance, PrivateKey
from knapsackga.harness.experiments import paper_instances

# the autouse fixtures below are function scoped and do not depend on examples
settings.register_profile(
    "knapsackga",
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("knapsackga")


@pytest.fixture(autouse=True)
def quiet_logging():
    configure_logging("WARNING")
    yield


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    # settings read KNAP_* variables and a .env in the working directory
    for name in (
        "KNAP_SEED",
        "KNAP_LOG_LEVEL",
        "KNAP_ERROR_LOG_DIR",
        "KNAP_ORACLE_LIMIT",
        "KNAP_JOBS",
        "KNAP_POPULATION_SIZE",
        "KNAP_MAX_GENERATIONS",
        "KNAP_BLOCK_SIZE",
        "KNAP_KEY_MAGNITUDE",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def textbook_key() -> PrivateKey:
    return PrivateKey(
        superincreasing=(2, 7, 11, 21, 42, 89, 180, 354), modulus=881, multiplier=588
    )


@pytest.fixture
def evens_instance() -> Instance:
    return Instance(weights=(2, 4, 6, 8, 10, 12), target=20)


@pytest.fixture
def instances() -> list[Instance]:
    return paper_instances()


@pytest.fixture
def quick_params() -> GaParams:
    return GaParams(population_size=20, max_generations=30, seed=7)
