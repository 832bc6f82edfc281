#!/usr/bin/env python3
"""Smoke test for the hilbnum_py extension module.

Builds the extension if needed (cargo build -p hilbnum-py --release),
loads it, and drives a few end-to-end computations.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libhilbnum_py.so",
        ROOT / "target" / "debug" / "libhilbnum_py.so",
        ROOT / "target" / "release" / "libhilbnum_py.dylib",
        ROOT / "target" / "debug" / "libhilbnum_py.dylib",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        print("extension not found, building it ...")
        subprocess.run(
            ["cargo", "build", "-p", "hilbnum-py", "--release"],
            cwd=ROOT,
            check=True,
        )
        built = [p for p in candidates if p.exists()]
    lib = max(built, key=lambda p: p.stat().st_mtime)

    stage = Path(tempfile.mkdtemp(prefix="hilbnum_py_"))
    shutil.copy2(lib, stage / "hilbnum_py.so")
    sys.path.insert(0, str(stage))
    import hilbnum_py

    return hilbnum_py


def main():
    hn = load_module()
    failures = 0

    def check(name, condition):
        nonlocal failures
        status = "PASS" if condition else "FAIL"
        print(f"[smoke] {name}: {status}")
        if not condition:
            failures += 1

    m = hn.Monomial("x1^2*x3")
    check("monomial round trip", str(m) == "x1^2*x3" and m.tdeg() == 3)
    check("divisibility", hn.Monomial("x1").divides(m) and not hn.Monomial("x2").divides(m))

    one = hn.GradedSeries(8, {"1": 1})
    check("moebius inversion", hn.nu(4, 8) * hn.mu(4, 8) == one)

    ideal = hn.MonomialIdeal(["x1*x2", "x2*x3", "x2^2*x3"])
    check("minimalization", ideal.gens() == ["x1*x2", "x2*x3"])

    p = hn.numerator_incl_excl(ideal, 4)
    check(
        "four-way agreement",
        p == hn.numerator_lcm_lattice(ideal, 4)
        and p == hn.numerator_koszul(ideal, 4)
        and p.restrict_vars(3) == hn.numerator_oracle(ideal, 3, 4),
    )
    check("numerator text", str(p) == "1 - x1*x2 + x1*x2*x3 - x2*x3")
    check("pcond + bjorner-kalai", hn.pcond_check(p) and hn.bjorner_kalai_check(p))

    series_json = hn.GradedSeries.from_json(p.to_json())
    check("json round trip", series_json == p)

    steps, prefix = hn.convergence_run("example-23gen", hn.Partition.total(), 6, 5)
    last = steps[-1][1]
    check("convergence", str(last) == "1 - t^2 - t^3 + t^5" and prefix == 5)
    check("recursion", hn.verify_23gen_recursion(4, 10))

    certs = hn.classify_numerator(last.coefficients() + [0, 0, 0], 4)
    check("classification", (2, 2, False) in certs)
    check("macaulay bound", hn.macaulay_bound(4, 2) == 5)
    check("degree bound", hn.numerator_degree_bound([-2, 0]) == 4)

    dist = hn.MonomialIdeal(["x1", "x2^9"]).distance(hn.MonomialIdeal(["x1"]), "degreewise", 20)
    check("ideal distance", dist == 2 ** -8)

    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all smoke checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
