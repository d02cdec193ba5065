"""Compare the compiled and pure-Python orbit-sweep kernels.

    python3 benchmarks/bench_sweep.py [--repeat R] [--quick]

Each case builds the action tables once, then times only the kernel call.
The end-to-end case times a full enumeration for one order with each backend.
"""

import argparse
import time

from rackenum import kernels
from rackenum.action import action_arrays, enumerate_order, precompute_action
from rackenum.envelope import FolderSpace
from rackenum.perm import PermGroup, identity, normalizer_in_sym, parse_cycles
from rackenum.subgroups import subgroups_up_to_conjugacy

CASES = [
    # (label, degree, generators, kind)
    ("C6 on 5 points, racks", 5, ["(1,2)(3,4,5)"], "rack"),
    ("C2^3 on 6 points, racks", 6, ["(1,2)", "(3,4)", "(5,6)"], "rack"),
    ("C2^2 x C3 on 7 points, racks", 7, ["(1,2)", "(3,4)", "(5,6,7)"], "rack"),
    ("C2^4 on 8 points, racks", 8, ["(1,2)", "(3,4)", "(5,6)", "(7,8)"], "rack"),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def kernel_case(label, n, gens, kind, repeat):
    G = PermGroup(n, [parse_cycles(g, n) for g in gens])
    space = FolderSpace(G, kind)
    N = normalizer_in_sym(G)
    tables = [precompute_action(space, f) for f in N.elements if f != identity(n)]
    src, wlut = action_arrays(space, tables)
    times, outs = {}, {}
    for name, fn in sorted(kernels.BACKENDS.items()):
        times[name], outs[name] = best_of(lambda: fn(space.radices, src, wlut, space.size), repeat)
    assert len({bytes(o) for o in outs.values()}) == 1, "backends disagree"
    return space.size, N.order, times


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest case and the end-to-end run")
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    if "compiled" not in names:
        print("compiled extension not built; only the Python kernel is available")
    print(f"{'case':<30} {'folders':>8} {'|N|':>5} " + " ".join(f"{n + ' s':>11}" for n in names) + "  speedup")
    cases = CASES[:-1] if args.quick else CASES
    for label, n, gens, kind in cases:
        size, norder, times = kernel_case(label, n, gens, kind, args.repeat)
        speed = f"{times['python'] / times['compiled']:7.1f}x" if "compiled" in times else "      -"
        print(f"{label:<30} {size:>8} {norder:>5} " + " ".join(f"{times[k]:>11.4f}" for k in names) + "  " + speed)
    if not args.quick:
        n = 7
        catalog = subgroups_up_to_conjugacy(n)
        for kind in ("rack", "quandle"):
            row = []
            for name in names:
                t, res = best_of(lambda: enumerate_order(n, kind, catalog, backend=name), 1)
                row.append(f"{name} {t:.2f}s")
            print(f"end-to-end n={n} {kind} ({res.counts().row()}): " + ", ".join(row))


if __name__ == "__main__":
    main()
