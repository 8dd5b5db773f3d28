import hypothesis
import hypothesis.strategies as st
import math

hypothesis.settings.register_profile("ci", deadline=None, max_examples=60)
hypothesis.settings.load_profile("ci")

from doatrack.geometry import Direction


def directions():
    return st.builds(
        Direction,
        azimuth=st.floats(-math.pi, math.pi - 1e-9, allow_nan=False),
        elevation=st.floats(-math.pi / 2, math.pi / 2, allow_nan=False),
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and getattr(acceptance, "RESULTS", None):
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
