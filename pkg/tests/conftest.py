from __future__ import annotations


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in criterion order."""
    rows = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                rows.append((props["criterion"], props["title"], status))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, status in sorted(rows):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if status == 'passed' else 'FAIL'}"
                                    f"  {title}")
