import pytest

from balldesign.intensity import builtin_model


@pytest.fixture(scope="session")
def logit():
    return builtin_model("logit")


@pytest.fixture(scope="session")
def probit():
    return builtin_model("probit")


@pytest.fixture(scope="session")
def cll():
    return builtin_model("comploglog")


@pytest.fixture(scope="session")
def poisson():
    return builtin_model("poisson")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(RESULTS.items(), key=lambda kv: int(kv[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
