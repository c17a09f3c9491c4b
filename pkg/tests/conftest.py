from hypothesis import settings

settings.register_profile("exact", max_examples=100, deadline=None, derandomize=True)
settings.load_profile("exact")

CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(CRITERIA):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")
