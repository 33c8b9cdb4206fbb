#!/usr/bin/env python3
"""Smoke test for the growthlab_py extension module.

Build the module first, then run this script from anywhere:

    cargo build -p growthlab-py
    python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def import_module():
    candidates = [
        ROOT / "target" / "release" / "libgrowthlab_py.so",
        ROOT / "target" / "debug" / "libgrowthlab_py.so",
    ]
    built = [c for c in candidates if c.exists()]
    if not built:
        sys.exit("build the extension first: cargo build -p growthlab-py")
    src = max(built, key=lambda c: c.stat().st_mtime)
    stage = tempfile.mkdtemp(prefix="growthlab_py_")
    shutil.copy(src, pathlib.Path(stage) / "growthlab_py.so")
    sys.path.insert(0, stage)
    import growthlab_py

    return growthlab_py


def close(a, b, tol, label):
    assert abs(a - b) <= tol, f"{label}: {a} vs {b} (tol {tol})"


def main():
    gl = import_module()

    # closed-form constants
    close(gl.paley_constant(1.0), math.pi, 1e-15, "P(1)")
    close(gl.paley_constant(0.5), math.pi / 2, 1e-15, "P(1/2)")
    assert gl.optimal_p(0.25) == 1.0 and gl.optimal_p(2.0) == 4.0
    print("paley constants          ok")

    # characteristics of the exponential
    f = gl.Function("exp")
    assert f.is_entire
    close(f.ln_max(2.0), 2.0, 1e-12, "lnM(2; exp)")
    close(f.circle_mean(2.0), 0.0, 1e-9, "C(2; exp)")
    w = f.eval(1j)
    close(abs(w - complex(math.cos(1), math.sin(1))), 0.0, 1e-15, "exp(i)")
    print("exponential              ok")

    # structural zeros and the Jensen identity
    q = gl.Function("poly:1,0,-1")
    close(q.jensen_residual(2.0), 0.0, 1e-9, "jensen z^2-1")
    assert len(q.zeros_up_to(2.0).entries()) == 2
    chain = q.chain([0.5, 2.5, 7.7])
    assert chain["max_violation"] <= 1e-8, chain
    sinc = gl.Function("quot:sin:pi|poly:pi,0")
    close(sinc.eval(0j).real, 1.0, 1e-15, "sinc(0)")
    close(sinc.jensen_residual(1.5), 0.0, 1e-6, "jensen sinc")
    print("jensen and chain         ok")

    # zero lists: file round trip and the counting-function bound
    zs = gl.ZeroSet([(1 + 0j, 1)])
    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as fh:
        fh.write(zs.to_csv())
        path = fh.name
    again = gl.ZeroSet.read(path)
    assert again.to_csv() == zs.to_csv()
    bound = gl.zeros_bound(zs, 1.0, [1.0])
    close(bound.values[0], math.log(2.0), 1e-9, "single-zero bound")
    print("zero lists and bound     ok")

    # profile transform: T of exp is r/pi, its p = 2 transform is r
    grid, vals = [], []
    r = 0.01
    while r <= 220.0:
        grid.append(r)
        vals.append(r / math.pi)
        r *= 10 ** (1 / 64)
    prof = gl.Profile(grid, vals, 0.0).fit_tail()
    close(gl.kernel_transform(prof, 2.0, 1.0), 1.0, 1e-3, "transform of r/pi")
    rho, sigma = prof.order_type()
    close(rho, 1.0, 1e-6, "fitted order of r/pi")
    print("profiles and transform   ok")

    # special values and a built product
    close(gl.mittag_leffler(0.5, 1.0, 1 + 0j).real, math.cosh(1.0), 1e-9, "E_1/2(1)")
    pairs = gl.ZeroSet([(k + 0j, 1) for k in range(1, 9)] + [(-k + 0j, 1) for k in range(1, 9)])
    prod = gl.Function.from_zeros(pairs, 1.0)
    close(prod.jensen_residual(8.5), 0.0, 1e-6, "jensen product")
    print("products                 ok")

    passed, failed = gl.verify_suite("kernel")
    assert passed and not failed, failed
    print("verify suite             ok")

    print("smoke test: PASS")


if __name__ == "__main__":
    main()
