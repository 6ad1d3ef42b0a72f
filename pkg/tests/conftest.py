import json
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from szczarba import presets

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).resolve().parent / "data"
PRESETS = Path(__file__).resolve().parent.parent / "data"


@lru_cache(maxsize=None)
def oracle():
    return json.loads((DATA / "oracles.json").read_text())


@pytest.fixture(scope="session")
def oracles():
    return oracle()


@lru_cache(maxsize=None)
def loop(name: str, truncation: int = 6):
    makers = {
        "S2": lambda: presets.minimal_sphere(2),
        "S3": lambda: presets.minimal_sphere(3),
        "D3": lambda: presets.collapsed_simplex(3, 0),
        "D4": lambda: presets.collapsed_simplex(4, 0),
        "D5": lambda: presets.collapsed_simplex(5, 0),
        "D4_sk1": lambda: presets.collapsed_simplex(4, 1),
        "D5_sk1": lambda: presets.collapsed_simplex(5, 1),
        "R1": lambda: presets.random_one_reduced(1),
        "R2": lambda: presets.random_one_reduced(2),
    }
    return presets.loop_bundle(makers[name](), truncation)


@pytest.fixture(scope="session")
def cover():
    return presets.double_cover()


@pytest.fixture(scope="session")
def trivial():
    return presets.trivial_bundle()


@pytest.fixture(scope="session")
def preset_dir():
    return PRESETS


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
