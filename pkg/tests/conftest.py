import itertools

K_GRID = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0)
LAMBDA_GRID = (-1.0, -0.5, -0.2, 0.0, 0.2, 0.5, 1.0)
PARAM_GRID = list(itertools.product(K_GRID, LAMBDA_GRID))

TRUNCATION_GRID = list(itertools.product((0.5, 1.0, 2.0, 5.0), (-0.9, -0.5, 0.0, 0.5, 0.9)))

ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
