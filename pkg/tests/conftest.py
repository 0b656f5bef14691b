AC_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if AC_LINES:
        terminalreporter.section("acceptance criteria")
        for line in AC_LINES:
            terminalreporter.write_line(line)
