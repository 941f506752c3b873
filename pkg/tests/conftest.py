ACCEPTANCE = {}


def record(number, title, passed, detail):
    ACCEPTANCE[number] = (title, passed, detail)
    line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} [{'PASS' if passed else 'FAIL'}] {title}: {detail}")
