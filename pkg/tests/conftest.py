import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rational(lo=Fraction(1, 20), hi=Fraction(5), max_den=24):
    return st.builds(Fraction, st.integers(1, 200), st.integers(1, max_den)).filter(
        lambda q: lo <= q <= hi)


# (alpha, beta) with alpha >= beta, both rational
angle_pairs = st.tuples(rational(), rational()).map(lambda p: (max(p), min(p)))
strict_pairs = angle_pairs.filter(lambda p: p[0] > p[1])
areas = st.floats(0.1, 100.0, allow_nan=False, allow_infinity=False)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
