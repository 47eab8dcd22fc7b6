#!/usr/bin/env python3
"""Smoke test for the coneslice_py extension module.

Builds nothing itself: run `cargo build --release -p coneslice-py` first
(or pass --debug to use the debug build). The script locates the cdylib,
exposes it under the importable name, and exercises the main entry points.
"""

import argparse
import math
import shutil
import sys
import tempfile
from pathlib import Path


def locate_and_import(profile: str):
    root = Path(__file__).resolve().parent.parent
    lib = root / "target" / profile / "libconeslice_py.so"
    if not lib.exists():
        sys.exit(
            f"{lib} not found - run `cargo build --{profile} -p coneslice-py` first"
            if profile == "release"
            else f"{lib} not found - run `cargo build -p coneslice-py` first"
        )
    tmp = Path(tempfile.mkdtemp(prefix="coneslice_py_"))
    shutil.copy2(lib, tmp / "coneslice_py.so")
    sys.path.insert(0, str(tmp))
    import coneslice_py

    return coneslice_py


def close(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--debug", action="store_true", help="use the debug build")
    args = parser.parse_args()
    cs = locate_and_import("debug" if args.debug else "release")
    checks = 0

    def ok(name, cond):
        nonlocal checks
        checks += 1
        if not cond:
            sys.exit(f"FAIL {name}")
        print(f"PASS {name}")

    # orthant closed forms
    sol = cs.orthant_solve([1.0, 1.0, 1.0])
    ok("orthant symmetric lambda", close(sol.lambda_, 3.0))
    ok("orthant symmetric volume", close(sol.volume, 9.0 * math.sqrt(3.0) / 2.0))
    sol = cs.orthant_solve([1.0, 8.0])
    ok("quadrant (1,8) length", close(sol.volume, 5.0 ** 1.5))
    ok(
        "shortest segment (1,2,3)",
        close(cs.shortest_segment([1.0, 2.0, 3.0]), (1.0 + 2.0 ** (2.0 / 3.0)) ** 1.5),
    )
    ok("minimal line count tie", cs.minimal_line_count([1.0, 1.0, 1.0, 4.0]) == 3)

    # general solver agrees with the closed form
    orthant = cs.Cone.orthant(3)
    found = cs.minimize(orthant, [1.0, 2.0, 3.0])
    exact = cs.orthant_solve([1.0, 2.0, 3.0])
    ok("minimize matches closed form", close(found.volume, exact.volume, 1e-8))
    ok("minimize kind", found.kind == "local_min")

    # the trihedral example: two local minima and one saddle
    cone = cs.Cone.from_generators([[1, -1, -0.2], [1, 1, -0.2], [1, 0, 0.01]])
    points = cs.enumerate_stationary(cone, [1.0, 0.0, 0.0], starts=200, seed=7)
    ok("trihedral count", len(points) == 3)
    ok(
        "trihedral kinds",
        sorted(p.kind for p in points) == ["local_min", "local_min", "saddle"],
    )

    # stationarity report round trip
    rep = cs.stationarity_report(orthant, [1.0, 2.0, 3.0], exact.plane_normal)
    ok("report stationary", rep["is_stationary"] and rep["residual_norm"] < 1e-8)

    # 2D regions
    label, theta, count = cs.philon_region(60.0, [2.0, 0.2])
    ok("philon region", label == "InteriorK" and count == 1)
    ok("philon theta", close(math.degrees(theta), 31.118608126978636, 1e-9))

    # boundary infimum
    m_a, k, attained = cs.boundary_infimum(orthant, [1.0, 1.0, 0.0])
    ok("boundary facet", close(m_a, 2.0) and k == 2 and not attained)

    # geometry primitives
    ok(
        "simplex volume",
        close(cs.simplex_volume([[3, 0, 0], [0, 3, 0], [0, 0, 3]]), 9 * math.sqrt(3) / 2),
    )
    ok(
        "monge point of right triangle",
        max(abs(v) for v in cs.monge_point([[0, 0], [2, 0], [0, 2]])) < 1e-12,
    )

    print(f"OK: {checks} checks passed")


if __name__ == "__main__":
    main()
