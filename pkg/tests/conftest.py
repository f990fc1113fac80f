def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when != "call" or "test_acceptance.py::test_criterion_" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            extra = ", ".join(f"{k}={v}" for k, v in rep.user_properties)
            lines.append((name, "PASS" if rep.passed else "FAIL", extra))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict, extra in sorted(lines):
        terminalreporter.write_line(f"{verdict}  {name}" + (f"  ({extra})" if extra else ""))
