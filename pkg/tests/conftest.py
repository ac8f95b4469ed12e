import pytest
from hypothesis import HealthCheck, settings

from suqdirac.dirac import DiracParams, dirac_matrix
from suqdirac.hodge import HodgeConfig, ck_params_from_alpha, ck_solve
from suqdirac.qscalar import ONE

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def ck_cfg():
    """Cartan-Killing metric with gamma = 1, star-normalized."""
    return HodgeConfig.star_normalized(ck_solve(ONE))


@pytest.fixture(scope="session")
def ck_alpha1():
    """Cartan-Killing metric with alpha = 1."""
    return HodgeConfig.star_normalized(ck_params_from_alpha(ONE))


@pytest.fixture(scope="session")
def D(ck_cfg):
    return dirac_matrix(DiracParams.default(ck_cfg), ck_cfg)


@pytest.fixture(scope="session")
def D_alpha1(ck_alpha1):
    return dirac_matrix(DiracParams.default(ck_alpha1), ck_alpha1)


# acceptance report -----------------------------------------------------------


def pytest_configure(config):
    config._acceptance_lines = {}


@pytest.fixture
def criterion(request):
    """record(n, ok, detail): one PASS/FAIL line per acceptance criterion."""

    def record(n, ok, detail):
        line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        request.config._acceptance_lines[n] = line
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", {})
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
