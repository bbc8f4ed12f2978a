import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def elements(ring):
    """Hypothesis strategy drawing ring elements through the ring's own sampler."""
    return st.integers(0, 2 ** 32).map(lambda s: ring.sample(random.Random(s)))


def series_of(ring, precision, max_terms=None):
    from skewps.series import sample_series

    return st.integers(0, 2 ** 32).map(
        lambda s: sample_series(ring, random.Random(s), precision, max_terms=max_terms))


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
