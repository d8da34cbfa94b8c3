from __future__ import annotations

import subprocess
import sys

import pytest

from conftest import POLYGONS, POLYGON_IDS
from polybilliard import kernel
from polybilliard.polygon import catalog

BACKENDS = kernel.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernel.active.IMPL in BACKENDS


def test_env_forces_fallback():
    code = "from polybilliard import kernel; print(kernel.IMPL)"
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env={"POLYBILLIARD_KERNEL": "python", "PATH": ""},
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "python"


def test_compiled_kernel_shares_cap_exception():
    for mod in BACKENDS.values():
        assert mod.CapExceeded is kernel.CapExceeded


@needs_both
@pytest.mark.parametrize("P", POLYGONS, ids=POLYGON_IDS)
def test_backends_agree(P):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    kp, kc = kernel.to_kernel(P, py), kernel.to_kernel(P, cy)
    assert py.language(kp, 9, True, 10**7) == cy.language(kc, 9, True, 10**7)
    for s in range(P.r):
        assert py.diagonals_from(kp, s, 7, 10**7, True) == cy.diagonals_from(kc, s, 7, 10**7, True)
    assert py.sample(kp, 7, 300, 5, 1 << 20, 1 << 20) == cy.sample(kc, 7, 300, 5, 1 << 20, 1 << 20)


@needs_both
def test_primitives_agree():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    u = (3, -1, 2, 5, -7, 1)
    v = (-4, 2, 1, -1, 6, -2)
    for d in (0, 2, 3):
        uu, vv = (u, v) if d else (u[:1] + (0,) + u[2:3] + (0,) + u[4:5] + (0,), v[:1] + (0,) + v[2:3] + (0,) + v[4:5] + (0,))
        assert py.cross3(uu, vv, d) == cy.cross3(uu, vv, d)
        assert py.dot_sign(uu, vv, d) == cy.dot_sign(uu, vv, d)
    for a, b, d in [(1393, -985, 2), (-7, 4, 3), (0, 0, 5), (5, 0, 0)]:
        assert py.sgn(a, b, d) == cy.sgn(a, b, d)


def test_conversion_round_trip():
    P = catalog("equilateral")
    for v in P.vertices:
        assert kernel.point_from_kernel(kernel.point_to_kernel(v), P.d) == v
