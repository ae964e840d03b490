import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from arrbs.arrangement import Arrangement
from arrbs.corpus import builtin_corpus

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def expected():
    return json.loads((ROOT / "corpus" / "expected.json").read_text())


@st.composite
def arrangements(draw, max_dim=4, max_hyperplanes=8, max_coeff=2, complete=True, min_hyperplanes=1):
    """Random central arrangements with small integer normals."""
    n = draw(st.integers(1, max_dim))
    vec = st.lists(st.integers(-max_coeff, max_coeff), min_size=n, max_size=n).filter(any)
    normals = draw(st.lists(vec, min_size=min_hyperplanes, max_size=max_hyperplanes))
    if complete:
        r = len(normals)
        hyps = [(v, [int(i == j) for j in range(r)]) for i, v in enumerate(normals)]
        return Arrangement.build(n, r, hyps)
    hyps = [(v, [1]) for v in normals]
    return Arrangement.build(n, 1, hyps)


def reduced_complete(A):
    """Drop multiplicities: one factor per distinct hyperplane."""
    return A.reduced().complete_factorization()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
