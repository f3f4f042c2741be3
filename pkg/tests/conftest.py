import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from suslov.model import GENERIC, SPECIAL, InertiaTensor, build_model

FIXTURES = Path(__file__).parent / "fixtures"
SEEDS = (11, 2024, 987654321)
OTHER = InertiaTensor(2.0, 5.0, 6.0, 0.7, 0.3)


@pytest.fixture(scope="session")
def generic():
    return build_model(GENERIC)


@pytest.fixture(scope="session")
def special():
    return build_model(SPECIAL)


@pytest.fixture(scope="session")
def other():
    return build_model(OTHER)


@pytest.fixture(params=SEEDS)
def rng(request):
    return np.random.default_rng(request.param)


def load_exact(name):
    doc = json.loads((FIXTURES / f"exact_{name}.json").read_text())
    return {tuple(k): float(Fraction(c)) for k, c in doc["coefficients"]}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
