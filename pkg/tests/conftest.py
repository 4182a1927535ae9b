import os

import pytest

ACCEPTANCE = pytest.StashKey[dict]()


def pytest_collection_modifyitems(config, items):
    if not os.environ.get("VDGRAPH_SKIP_SLOW"):
        return
    skip = pytest.mark.skip(reason="VDGRAPH_SKIP_SLOW is set")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def acceptance_log(request):
    """criterion number -> list of (ok, detail); printed as one line per criterion."""
    return request.config.stash.setdefault(ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE, None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        parts = log[number]
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail}")
