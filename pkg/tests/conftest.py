import pytest

from covol.dataset import load_dataset
from covol.survey import field_records

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def dataset():
    return load_dataset()


@pytest.fixture(scope="session")
def records(dataset):
    """FieldRecord for every bundled field, keyed by discriminant."""
    return {fr.disc: fr for fr in field_records(dataset.records)}


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
