import sys

import numpy as np
import pytest

from uavrelay import (
    AtgEnvironment,
    Atg3dScenario,
    BlocklengthParams,
    FreeSpaceScenario,
)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo one line per acceptance criterion after the test summary."""
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title in sorted(results):
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")

CARRIER_HZ = 2.5e9
NOISE_DB = -93.0


@pytest.fixture
def blk():
    return BlocklengthParams(packet_bits=100, total_blocklength=80)


@pytest.fixture
def freespace_scn():
    # D=200 m, relay band [30, 170], hop gains 50/59 dB, 4 W budget
    return FreeSpaceScenario.from_db(
        D=200.0,
        H=120.0,
        d1=30.0,
        d2=170.0,
        beta1_db=50.0,
        beta2_db=59.0,
        p_total=4.0,
    )


@pytest.fixture
def suburban():
    return AtgEnvironment.from_preset("suburban", CARRIER_HZ, NOISE_DB)


def make_atg3d(hop2_preset, blk=None, p_total=4.0):
    env1 = AtgEnvironment.from_preset("suburban", CARRIER_HZ, NOISE_DB)
    env2 = AtgEnvironment.from_preset(hop2_preset, CARRIER_HZ, NOISE_DB)
    if blk is None:
        blk = BlocklengthParams(100, 80)
    return Atg3dScenario(
        D=200.0,
        d1=20.0,
        d2=200.0,
        h_min=10.0,
        h_max=200.0,
        env1=env1,
        env2=env2,
        p_total=p_total,
        blk=blk,
    )


@pytest.fixture
def atg3d_scn():
    return make_atg3d("urban")


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


def random_freespace(rng):
    """Draw a random valid free-space scenario."""
    D = rng.uniform(50.0, 500.0)
    H = rng.uniform(10.0, 300.0)
    d1 = rng.uniform(0.0, 0.4) * D
    d2 = rng.uniform(0.6, 1.0) * D
    beta1_db = rng.uniform(30.0, 70.0)
    beta2_db = rng.uniform(30.0, 70.0)
    p_total = rng.uniform(0.5, 10.0)
    return FreeSpaceScenario.from_db(D, H, d1, d2, beta1_db, beta2_db, p_total)
