import pytest

from beamfreq.beam_model import BeamParams, derive_params

# Benchmark configuration used throughout the suite: 1.905 m aluminium beam,
# rectangular 2.25 cm^2 section, attachment at 1.4 m, colocated sensor.
SECTION = dict(
    ell=1.905, ell0=1.4, A=2.25e-4, I=1.6875e-10, rho0=2700.0,
    E=69e9, G=25.5e9, m_att=0.1, kappa=7000.0,
)

# Lines recorded by the acceptance tests; replayed in the terminal summary so
# the one-line-per-criterion report survives pytest's output capturing.
ACCEPTANCE_LINES = []


def record(line):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def section_params(d=0.025, **overrides):
    kw = dict(SECTION, d=d)
    kw.update(overrides)
    p = BeamParams(**kw)
    return p, derive_params(p)


@pytest.fixture(scope="session")
def params():
    return section_params()
