import pytest
from hypothesis import HealthCheck, settings

from twistconj.pc import check_map, complete_images, heisenberg

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def aut(G, **images):
    """Automorphism from images of the non-defined generators, written as words."""
    partial = {G.index[k]: G.parse_word(v) for k, v in images.items()}
    return check_map(G, complete_images(G, partial), "auto")


@pytest.fixture
def H():
    return heisenberg()


@pytest.fixture
def swap(H):
    return aut(H, a="b", b="a b")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
