import pytest
from hypothesis import settings

import hdbuchi.solver
from hdbuchi import parse_automaton

# Every solve_02 call in the test run re-checks rank monotonicity.
hdbuchi.solver.POSTCHECK = True

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

FIG1_TEXT = """\
parity 1 3
alphabet a b
states p q
initial p
trans p a 3 q
trans p b 3 q
trans p b 2 p
trans p a 1 p
trans q a 3 p
trans q b 3 p
trans q a 2 q
trans q b 1 q
"""

ACCEPTANCE_LINES = []


@pytest.fixture
def fig1():
    return parse_automaton(FIG1_TEXT)


@pytest.fixture
def t_acc():
    return parse_automaton("parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 2 s\n")


@pytest.fixture
def t_rej():
    return parse_automaton("parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 1 s\n")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
        terminalreporter.write_line(
            f"rank monotonicity post-check: {hdbuchi.solver.postcheck_count} solved arenas, no violations"
        )
