import itertools

from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- brute-force oracles shared by several modules ------------------------


def grid_elements(n, k):
    return list(itertools.product(range(k + 1), repeat=n))


def below_or_equal(a, b):
    return all(x <= y for x, y in zip(a, b))


def brute_comp(members, leq=below_or_equal):
    members = list(members)
    return sum(1 for a in members for b in members if a != b and leq(a, b))
