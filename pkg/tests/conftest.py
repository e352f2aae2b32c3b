import json
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from config import GROUP_REP_FIXTURES_DIR  # noqa: E402
from lifting.residual import ResidualGaloisData  # noqa: E402
from representation.group_rep import GroupRep  # noqa: E402

settings.register_profile("fast", max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=200, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))

LIFT_FIXTURES = ["q4_unipotent", "diag_sign", "companion_f5", "companion_inversion_f5", "q8_f3", "cyclic3_gl4_f7",
                 "jordan21_f5"]


def load_fixture(name: str) -> dict:
    with open(os.path.join(GROUP_REP_FIXTURES_DIR, f"{name}.json")) as f:
        return json.load(f)


def load_rep(name: str) -> GroupRep:
    raw = load_fixture(name)
    raw.pop("k", None)
    return GroupRep.from_dict(raw)


@pytest.fixture
def fixture_data():
    """Factory: residual Galois data of a named fixture file."""
    def build(name: str, seed: int = 0) -> ResidualGaloisData:
        return ResidualGaloisData.from_rep(load_rep(name), seed)
    return build


@pytest.fixture(autouse=True)
def _no_report_dir(monkeypatch):
    monkeypatch.delenv("REPORT_DIR", raising=False)
