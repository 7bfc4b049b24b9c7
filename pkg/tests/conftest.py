"""Shared fixtures for the test suite."""

from __future__ import annotations

import pytest

from rules2owl.rule_parser import parse_rule

STUDENT_WORKER = (
    "attends(?x, ?y) ^ Course(?y) ^ worksFor(?x, ?z) ^ Dept(?z) -> StudentWorker(?x)"
)
MICE_ELEPHANTS = "Mouse(?x) ^ Elephant(?y) -> smallerThan(?x, ?y)"
TAUGHT_BY_UNCLE = (
    "hasFather(?x, ?y) ^ hasBrother(?y, ?z) ^ taughtBy(?x, ?z) -> TaughtByUncle(?x)"
)
JOURNAL = "Journal(?x) ^ publishedBy(?x, ?y) -> Organization(?y)"


@pytest.fixture
def student_worker_rule():
    return parse_rule(STUDENT_WORKER)


@pytest.fixture
def mice_elephants_rule():
    return parse_rule(MICE_ELEPHANTS)


@pytest.fixture
def taught_by_uncle_rule():
    return parse_rule(TAUGHT_BY_UNCLE)


@pytest.fixture
def journal_rule():
    return parse_rule(JOURNAL)
