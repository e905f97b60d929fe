import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
    n = sum(ok for _, ok, _ in results)
    terminalreporter.write_line(f"{n}/{len(results)} acceptance checks passed")
