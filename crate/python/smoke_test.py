#!/usr/bin/env python3
"""Smoke test for the extsim_py extension module.

Builds nothing itself: run `cargo build -p extsim-py` (or `--release`)
first, then `python3 python/smoke_test.py`. The script locates the
compiled cdylib, exposes it as `extsim_py`, and checks the main entry
points against known values.
"""

import math
import os
import shutil
import sys
import tempfile

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    candidates = [
        os.path.join(REPO_ROOT, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("libextsim_py.so", "extsim_py.so", "libextsim_py.dylib")
    ]
    built = next((c for c in candidates if os.path.exists(c)), None)
    if built is None:
        sys.exit("extsim_py cdylib not found; run `cargo build -p extsim-py` first")
    stage = tempfile.mkdtemp(prefix="extsim-py-")
    shutil.copy(built, os.path.join(stage, "extsim_py.so"))
    sys.path.insert(0, stage)
    import extsim_py

    return extsim_py


CHECKS = []


def check(name, condition):
    CHECKS.append((name, bool(condition)))
    print(f"{'PASS' if condition else 'FAIL'}: {name}")


def main():
    xp = load_module()

    # Closed forms through the quadrature path.
    exp1 = xp.Distribution.exponential(1.0)
    exp2 = xp.Distribution.exponential(2.0)
    s_se = xp.similarity_ratio(exp1, exp2, "survival")
    check("survival similarity of Exp(1), Exp(2) is 8/9", abs(s_se - 8.0 / 9.0) < 1e-8)
    check(
        "closed form matches quadrature",
        abs(xp.exponential_similarity_closed_form(1.0, 2.0) - s_se) < 1e-8,
    )

    beta32 = xp.Distribution.beta(3.0, 2.0)
    beta23 = xp.Distribution.beta(2.0, 3.0)
    check(
        "density similarity of Beta(3,2), Beta(2,3) is 0.5625",
        abs(xp.similarity_ratio(beta32, beta23, "density") - 0.5625) < 1e-6,
    )

    report = xp.similarity_report(exp1, exp2, "survival")
    check(
        "report is internally consistent",
        abs(report.similarity - report.divergence_xy * report.divergence_yx)
        < 1e-10
        and abs(report.cosine - math.sqrt(report.similarity)) < 1e-12
        and report.extropy_x < 0.0 < report.divergence_xy,
    )

    ixy, iyx = xp.divergence_ratio(exp1, exp2, "density")
    check(
        "density divergence ratios are 4/3 and 2/3",
        abs(ixy - 4.0 / 3.0) < 1e-8 and abs(iyx - 2.0 / 3.0) < 1e-8,
    )

    # Evaluators and sampling.
    check("pdf of Exp(1) at 0 is 1", abs(exp1.pdf(0.0) - 1.0) < 1e-12)
    check("constant hazard", abs(xp.Distribution.exponential(3.0).hazard(1.7) - 3.0) < 1e-12)
    a = exp1.sample(100, 42)
    b = exp1.sample(100, 42)
    check("sampling is deterministic per seed", a == b)
    big = beta32.sample(100_000, 9)
    check("beta sample mean near 0.6", abs(sum(big) / len(big) - 0.6) < 0.01)

    # Estimator hand oracles.
    check(
        "survival estimate of {1,2} vs {1,3} is 0.5",
        xp.estimate_similarity([1.0, 2.0], [1.0, 3.0], "survival") == 0.5,
    )
    check(
        "cumulative estimate of {1,2} vs {1,3} is 0.9",
        xp.estimate_similarity([1.0, 2.0], [1.0, 3.0], "cumulative") == 0.9,
    )
    exy, eyx = xp.estimate_divergence_ratios([1.0, 2.0], [1.0, 3.0], "survival")
    check("survival ratio estimates are (1.0, 0.5)", (exy, eyx) == (1.0, 0.5))

    # Images: fingerprint value, exposure invariance, classification.
    quartet = xp.GrayscaleImage(2, 2, [0.25, 0.5, 0.75, 1.0])
    fp = quartet.similarity_to_reference()
    check("reference fingerprint of the quartet is 5/6", abs(fp - 5.0 / 6.0) < 1e-12)
    check(
        "fingerprint invariant under exposure 0.5",
        abs(quartet.scale_exposure(0.5).similarity_to_reference() - fp) < 1e-12,
    )

    size = 16
    anchors = []
    for gi, power in enumerate([1.0, 2.0, 3.5]):
        pixels = [((i + 1) / (size * size)) ** power for i in range(size * size)]
        anchors.append((f"g{gi}", xp.GrayscaleImage(size, size, pixels)))
    mixed = [
        (f"{name}@{c}", img.scale_exposure(c))
        for name, img in anchors
        for c in (1.0, 0.75, 0.5, 0.25)
    ]
    results = xp.classify_images(mixed, anchors)
    correct = sum(1 for name, _s, group in results if group == name.split("@")[0])
    check("classification recovers all 12 exposure-scaled images", correct == 12)

    # Errors surface as ValueError.
    try:
        xp.Distribution.exponential(-1.0)
        check("invalid rate raises ValueError", False)
    except ValueError:
        check("invalid rate raises ValueError", True)
    try:
        xp.similarity_ratio(exp1, exp2, "cumulative")
        check("divergent cumulative measure raises ValueError", False)
    except ValueError:
        check("divergent cumulative measure raises ValueError", True)

    failed = [name for name, ok in CHECKS if not ok]
    if failed:
        sys.exit(f"{len(failed)} smoke checks failed: {failed}")
    print(f"all {len(CHECKS)} smoke checks passed")


if __name__ == "__main__":
    main()
