from __future__ import annotations

import random
import re

import pytest

from prymvol.generate import MODES, random_cover, random_graph

CAMPAIGN_SIZE = 200
MAX_CAMPAIGN_EDGES = 8


def campaign_parameters(i: int) -> tuple[int, int, str]:
    """Deterministic (vertices, edges, mode) for the i-th campaign cover."""
    mode = MODES[i % 3]
    rng = random.Random(1000 + i)
    v = rng.randint(1, 6)
    lo = max(v if mode == "free" else v - 1, 1)
    return v, rng.randint(lo, MAX_CAMPAIGN_EDGES), mode


def build_campaign(n: int = CAMPAIGN_SIZE):
    return [random_cover(*campaign_parameters(i)[:2], mode=campaign_parameters(i)[2], seed=i) for i in range(n)]


def random_graphs(n: int, seed: int, max_vertices: int = 6, max_edges: int = 9):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        v = rng.randint(1, max_vertices)
        e = rng.randint(max(v - 1, 0), max(max_edges, v - 1))
        out.append(random_graph(rng, v, e))
    return out


@pytest.fixture(scope="session")
def campaign():
    return build_campaign()


# -- one summary line per acceptance criterion ------------------------------------

_CRITERIA: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", (mark.args[0], mark.args[1])))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n, title = props["criterion"]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(n, [title])
        _CRITERIA[n].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, *outcomes = _CRITERIA[n]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
