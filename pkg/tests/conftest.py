import sys

import pytest

from reductive_sheets.rootsys import GroupSpec, RootSystem


def rs_of(text, isogeny="adjoint", **kw):
    return RootSystem(GroupSpec.parse(text, isogeny, **kw))


@pytest.fixture
def rs():
    return rs_of


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(n))
