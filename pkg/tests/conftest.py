from importlib import resources
from pathlib import Path

import pytest

from coword.segmenter import Lexicon

DATA = Path(str(resources.files("coword") / "data"))

ACCEPTANCE = {}


@pytest.fixture
def suffix_lexicon():
    return Lexicon.from_entries(["北京", "大学", "北京理工大学", "学报"])


@pytest.fixture(scope="session")
def planted_paths():
    groups = {}
    for line in (DATA / "planted_groups.txt").read_text(encoding="utf-8").splitlines():
        name, words = line.split("\t")
        groups[name] = words.split()
    return {
        "titles": DATA / "planted_titles.txt",
        "lexicon": DATA / "planted_lexicon.txt",
        "groups": groups,
    }


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if name.startswith("test_criterion_"):
        ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
