from __future__ import annotations

import pytest

from polybilliard import kernel
from polybilliard.polygon import catalog, random_convex_polygon

QUAD_SEEDS = (1, 2)


def polygon_set():
    """The four tiling polygons and two seeded random rational quadrilaterals."""
    out = [catalog(name) for name in ("square", "equilateral", "right-isosceles", "half-equilateral")]
    out += [random_convex_polygon(seed) for seed in QUAD_SEEDS]
    return out


POLYGONS = polygon_set()
POLYGON_IDS = [str(P) for P in POLYGONS]


@pytest.fixture(params=POLYGONS, ids=POLYGON_IDS)
def any_polygon(request):
    return request.param


@pytest.fixture(params=sorted(kernel.backends()))
def backend(request, monkeypatch):
    """Run a test once per available kernel by swapping the active one."""
    mod = kernel.backends()[request.param]
    monkeypatch.setattr(kernel, "active", mod)
    return mod


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record(label: str, ok: bool, detail: str = "") -> bool:
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
