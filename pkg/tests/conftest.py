import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qkrull.verify import CorpusSpec, corpus_entries  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    """The default seeded corpus: 100 random monomial quotients plus the named families."""
    spec = CorpusSpec()
    return [(e, e.build(spec)) for e in corpus_entries(spec)]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
