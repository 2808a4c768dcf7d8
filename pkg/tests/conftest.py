import re
import time
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def adjoint_doc():
    from tensorforge import load_document

    return load_document(str(FIXTURES / "example_2_8.json"))


@pytest.fixture(scope="session")
def adjoint_problem(adjoint_doc):
    return adjoint_doc.resolve("nets")


@pytest.fixture(scope="session")
def adjoint_complex(adjoint_problem):
    from tensorforge import CochainComplex

    return CochainComplex(adjoint_problem)


@pytest.fixture(scope="session")
def abelian_doc():
    from tensorforge import load_document

    return load_document(str(FIXTURES / "abelian.json"))


@pytest.fixture(scope="session")
def abelian_problem(abelian_doc):
    return abelian_doc.resolve("nets")


_SESSION_START = time.time()


def pytest_sessionstart(session):
    global _SESSION_START
    _SESSION_START = time.time()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    pattern = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = pattern.search(getattr(report, "nodeid", ""))
            if match:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                rows[int(match.group(1))] = (match.group(2), verdict)
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for num in sorted(rows):
            slug, verdict = rows[num]
            terminalreporter.write_line(
                f"[criterion {num:02d}] {verdict} - {slug.replace('_', ' ')}"
            )
        elapsed = time.time() - _SESSION_START
        within = "within" if elapsed < 60.0 else "OVER"
        terminalreporter.write_line(
            f"total runtime: {elapsed:.2f}s ({within} the 60s budget)"
        )
