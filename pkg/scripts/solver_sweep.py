"""Run the filtration solver over random modules and tabulate which steps fire.

    python3 scripts/solver_sweep.py --case B --n 200 --max-dim 30 --construction syzygy
"""
import argparse
import time
from collections import Counter

from stmodkit.errors import InvariantViolation
from stmodkit.random_modules import RandomSpec, random_module
from stmodkit.solver import solve, verify_filtration


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--case", default="A", choices=["A", "B"])
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=30)
    p.add_argument("--construction", default="mixed")
    args = p.parse_args()
    desc = {"case": "A", "r": args.r} if args.case == "A" else {"case": "B"}
    steps, dcore, failures = Counter(), Counter(), []
    t0 = time.perf_counter()
    for seed in range(args.offset, args.offset + args.n):
        m = random_module(RandomSpec(seed, args.construction, 2, [], args.max_dim, desc))
        try:
            res = solve(m)
        except InvariantViolation as e:
            failures.append((seed, str(e)))
            continue
        steps.update(r.step for r in res.trace)
        dcore[res.d_core] += 1
        rep = verify_filtration(m, res)
        if not rep.passed or len(res.trace) != res.d_core:
            failures.append((seed, rep.failures))
    print(f"{args.n} modules in {time.perf_counter() - t0:.1f} s")
    print("steps:", dict(sorted(steps.items())))
    print("d(core):", dict(sorted(dcore.items())))
    print("failures:", failures or "none")


if __name__ == "__main__":
    main()
