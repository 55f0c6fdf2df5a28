import io
import json

import pytest

from mtra.cli import main

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


class CLIResult:
    def __init__(self, status, out, err):
        self.status = status
        self.out = out
        self.err = err

    @property
    def json(self):
        return json.loads(self.out)


@pytest.fixture
def cli():
    def run(*argv):
        out, err = io.StringIO(), io.StringIO()
        status = main([str(a) for a in argv], out=out, err=err)
        return CLIResult(status, out.getvalue(), err.getvalue())
    return run
