"""Time the compiled and pure-Python elimination kernels on real boundary maps.

    python benchmarks/bench_reduce.py                 # default cases
    python benchmarks/bench_reduce.py --case 6:4 --repeat 3
"""

import argparse
import statistics
import time

from tilegraph.graph import VertexMatrices, build_graph
from tilegraph.ktheory import build_boundary_maps
from tilegraph.tiles import BasicData, parse_tile_text
from tilegraph.zlin import available_backends, chain_homology

DEFAULT_CASES = ("2,1:3", "4:3", "3,1,1:3", "5:3", "3,1,1:4", "6:3", "7:3", "6:4")


def _time(fn, repeat):
    runs = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs), out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--case", action="append", help="rows:q, repeatable")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--python-max", type=int, default=300, help="skip the Python kernel above this many vertices")
    args = p.parse_args(argv)
    print(f"{'tile':<10}{'q':>3}{'N':>6}{'cython s':>11}{'python s':>11}{'speedup':>9}  result")
    for case in args.case or DEFAULT_CASES:
        rows, q = case.rsplit(":", 1)
        data = BasicData(parse_tile_text(rows), int(q))
        g = build_graph(data)
        d1, d2 = build_boundary_maps(VertexMatrices(g.B, g.R))
        ones = [1] * len(g)
        tc, rc = (None, None)
        if "cython" in available_backends():
            tc, rc = _time(lambda: chain_homology(d1, d2, ones, backend="cython"), args.repeat)
        tp, rp = (None, None)
        if len(g) <= args.python_max:
            tp, rp = _time(lambda: chain_homology(d1, d2, ones, backend="python"), args.repeat)
        if rc is not None and rp is not None and rc != rp:
            raise SystemExit(f"kernels disagree on {case}")
        res = rc or rp
        fmt = lambda x: "-" if x is None else f"{x:.3f}"
        speed = f"{tp / tc:.0f}x" if tc and tp else "-"
        print(f"[{rows}]".ljust(10) + f"{q:>3}{len(g):>6}{fmt(tc):>11}{fmt(tp):>11}{speed:>9}  K0={res.cokernel} K1={res.homology}")


if __name__ == "__main__":
    main()
