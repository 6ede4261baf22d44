from __future__ import annotations

import json
from collections import defaultdict

import pytest

from kgselect.catalog import parse_catalog
from kgselect.fixtures import cobots_path

_ACCEPTANCE: dict[tuple[str, str], list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(criterion, title): test belongs to one acceptance criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = (marker.args[0], marker.args[1])
    if report.when == "call":
        _ACCEPTANCE[key].append(report.passed)
    elif report.failed:
        # setup/teardown crash counts against the criterion too
        _ACCEPTANCE[key].append(False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, title in sorted(_ACCEPTANCE):
        results = _ACCEPTANCE[(criterion, title)]
        verdict = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"{criterion} {title}: {verdict}")


@pytest.fixture(scope="session")
def cobots_doc() -> dict:
    return json.loads(cobots_path().read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def cobots(cobots_doc):
    return parse_catalog(cobots_doc)


@pytest.fixture()
def tiny_doc() -> dict:
    """Two clusters, one principle, one dependency; enough for most edges."""
    return {
        "use_case_name": "Tiny",
        "kpis": [
            {"id": "k1", "name": "K1", "target": ">= 1", "unit": "u", "rationale": ""},
            {"id": "k2", "name": "K2", "target": "<= 5", "unit": "u", "rationale": ""},
        ],
        "requirements": [
            {"id": "r-energy", "label": "energy efficiency"},
            {"id": "r-safety", "label": "safe operation"},
        ],
        "kvis": [
            {
                "id": "kvi-energy",
                "description": "energy per unit",
                "category": "Energy",
                "pillar": "Environmental",
                "requirement_ids": ["r-energy"],
            },
            {
                "id": "kvi-injuries",
                "description": "injuries per year",
                "category": "Safety",
                "pillar": "Social",
                "requirement_ids": ["r-safety"],
            },
        ],
        "key_values": [
            {
                "id": "kv-green",
                "pillar": "Environmental",
                "description": "greener production",
                "kvi_ids": ["kvi-energy"],
            }
        ],
        "principles": [{"id": "p-sustainability", "name": "Sustainability"}],
        "enablers": [
            {
                "id": "e-alpha",
                "name": "Alpha",
                "category": "radio",
                "trl": 5,
                "migration_critical": False,
                "kpi_impacts": {"k1": 1, "k2": 1},
                "principle_ids": ["p-sustainability"],
                "dependency_ids": ["e-beta"],
                "requirement_ids": ["r-energy"],
            },
            {
                "id": "e-beta",
                "name": "Beta",
                "category": "radio",
                "trl": 3,
                "migration_critical": False,
                "kpi_impacts": {"k1": 1},
                "principle_ids": [],
                "dependency_ids": [],
                "requirement_ids": [],
            },
            {
                "id": "e-gamma",
                "name": "Gamma",
                "category": "core",
                "trl": 1,
                "migration_critical": True,
                "kpi_impacts": {"k1": 1, "k2": -1},
                "principle_ids": [],
                "dependency_ids": [],
                "requirement_ids": ["r-safety"],
            },
        ],
    }


@pytest.fixture()
def tiny(tiny_doc):
    return parse_catalog(tiny_doc)
