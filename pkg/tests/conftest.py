from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list = []


def words(n_gens: int = 2, max_len: int = 8, min_len: int = 0):
    letters = [i for g in range(1, n_gens + 1) for i in (g, -g)]
    return st.lists(st.sampled_from(letters), min_size=min_len, max_size=max_len).map(tuple)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
