def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                rows.append((props["criterion"], outcome, props))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, outcome, props in sorted(rows, key=lambda r: r[0]):
        status = "PASS" if outcome == "passed" else "FAIL"
        elapsed = props.get("elapsed")
        timing = f"{elapsed:.2f} s" if elapsed is not None else "not timed"
        terminalreporter.write_line(
            f"criterion {number:2d} {status}  {props['title']}  ({timing}, limit {props['limit']:g} s)"
        )
