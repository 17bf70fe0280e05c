"""Smoke test for the kaczmarz_frames extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
or `pip install crates/python`, then run `python python/smoke_test.py`.
"""

import math

import kaczmarz_frames as kf


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    onb = kf.generate("onb", 4, 4, seed=1)
    lo, hi = kf.frame_bounds(onb)
    assert close(lo, 1.0) and close(hi, 1.0), (lo, hi)
    report = kf.effectiveness(onb)
    assert report["effective"] and report["methods_agree"]

    remark = kf.generate("remark", 4, 4)
    c = kf.correlation_inverse(remark)
    assert close(c[1][0], -0.5), c[1][0]
    report = kf.effectiveness(remark)
    assert not report["effective"]
    assert close(report["duality_defect"], 0.5)
    assert close(report["almost_effective_bound"], 0.25)

    g = kf.auxiliary_sequence(remark)
    assert close(abs(g[1][1]), math.sqrt(3) / 2)

    system = kf.generate("random_unit", 3, 7, seed=5)
    target = [1 + 0.5j, -0.25j, 2.0]
    iterates = kf.single_pass(system, target)
    for n, it in enumerate(iterates):
        via_g = kf.partial_sum(system, target, n)
        assert max(abs(a - b) for a, b in zip(it, via_g)) < 1e-10

    rows = [[2.0, 0.0], [0.0, 3.0]]
    out = kf.cyclic_solve(rows, [4.0, 9.0])
    assert out["converged"] and out["sweeps"] == 1
    assert close(out["solution"][0], 2.0) and close(out["solution"][1], 3.0)

    try:
        kf.generate("onb", 3, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("shape error not raised")

    print("kaczmarz_frames smoke test passed")


if __name__ == "__main__":
    main()
