"""Recompute the frozen Tate cohomology tables used by the tests.

Degrees 0 and -1 come from the norm map, the rest from minimal resolutions;
the second table recomputes every degree from the complete resolution.
"""
from stmodkit.algebra import build_case_a, build_case_b
from stmodkit.cohomology import ext_hat, ext_hat_stable, tate_cohomology, tate_cohomology_resolution
from stmodkit.module import simple_module


def main():
    for a in (build_case_a(1), build_case_b()):
        k = simple_module(a, "k")
        t = tate_cohomology(k, -6, 6).dims
        r = tate_cohomology_resolution(k, -6, 6)
        print(a, "k:", list(t.values()), "(resolution agrees)" if t == r else f"MISMATCH {r}")
    b = build_case_b()
    k = simple_module(b, "k")
    for name in ("ω", "ω̄"):
        m = simple_module(b, name)
        print(f"Ext^1(k, {name}):", ext_hat(k, m, 1), "stable:", ext_hat_stable(k, m, 1))


if __name__ == "__main__":
    main()
