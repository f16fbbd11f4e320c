import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture
def acceptance_report(request):
    """Record a pass/fail line; the lines are echoed in the terminal summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def report(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    lines = terminalreporter.config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def sweeps():
    """Shipped-config sweeps, cold and warm, computed once per session."""
    from dataclasses import replace

    from srgc.config import default_config
    from srgc.experiments import run_experiment

    cache = {}

    def get(experiment, warm=False):
        key = (experiment, warm)
        if key not in cache:
            cfg = default_config(experiment)
            cfg = replace(cfg, solver=replace(cfg.solver, warm_start=warm))
            cache[key] = run_experiment(cfg, experiment)
        return cache[key]

    return get
