"""Shared fixtures: the real WordNet 3.1 net (session scope), the synthetic
nine-synset fixture taxonomy, and raw oracle views."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from semgraph.taxonomy import load

REPO_ROOT = Path(__file__).resolve().parent.parent
WN31_DIR = REPO_ROOT / "data" / "wordnet-3.1"
MICRO_DIR = Path(__file__).resolve().parent / "data" / "micro"

#: (criterion, verdict) lines registered by the acceptance suite
ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{verdict:<22} {name}")


@pytest.fixture(scope="session")
def wn31():
    return load(WN31_DIR)


@pytest.fixture(scope="session")
def micro():
    return load(MICRO_DIR)


@pytest.fixture(scope="session")
def wn31_raw(wn31):
    from oracles import RawView
    return RawView(wn31)


@pytest.fixture(scope="session")
def micro_raw(micro):
    from oracles import RawView
    return RawView(micro)
