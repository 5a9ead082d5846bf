import pytest

from bolcensus.kernels import BACKENDS


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
