"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends; results must agree, timings are the
best of ``--repeat`` runs.
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from memauto import kernels  # noqa: E402
from memauto.automata import AnyLetter, NuAutomaton, Read, Reset, Write  # noqa: E402
from memauto.core import VariableId  # noqa: E402
from memauto.corpus import double_exp, double_exp_witness, fig2_lp  # noqa: E402
from memauto.emptiness import decide_nonempty, random_walks  # noqa: E402
from memauto.membership import decide_membership  # noqa: E402
from memauto.reductions import Cnf, reduce_3sat  # noqa: E402


def wide_nu(seed, n_states=40, n_vars=12, n_trans=160, finals=True):
    """A larger random ν-automaton; its abstraction has up to 40·2^12 nodes."""
    rng = random.Random(seed)
    states = [f"p{i}" for i in range(n_states)]
    vs = [VariableId(f"v{i}") for i in range(n_vars)]
    ts = []
    for _ in range(n_trans):
        p, q = rng.choice(states), rng.choice(states)
        r = rng.random()
        if r < 0.3:
            ts.append(Read(p, rng.choice(vs), q))
        elif r < 0.75:
            ts.append(Write(p, rng.choice(vs), q))
        elif r < 0.85:
            ts.append(AnyLetter(p, q))
        else:
            ts.append(Reset(p, set(rng.sample(vs, 3)), q))
    return NuAutomaton(states=states, initial="p0", finals=[states[-1]] if finals else [], initial_memory={}, transitions=ts, variables=vs)


def random_3sat(seed, n=14, m=50):
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        vs = sorted(rng.sample(range(1, n + 1), 3))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Cnf(n, clauses)


def workloads():
    w5 = double_exp_witness(5)
    yield "membership double_exp(5) witness", lambda b: decide_membership(double_exp(5), w5, backend=b).accepted
    long_word = tuple(f"x{i}" for i in range(3000))
    yield "membership fig2_lp, 3000 distinct letters", lambda b: decide_membership(fig2_lp(), long_word, backend=b).accepted
    A, w = reduce_3sat(random_3sat(1))
    yield "membership 3SAT gadget (14 vars, 50 clauses)", lambda b: decide_membership(A, w, backend=b).accepted
    W = [wide_nu(s) for s in range(5)]
    yield "emptiness 5 × (40 states, 12 vars)", lambda b: [decide_nonempty(x, backend=b, verify=False) for x in W]
    E = [wide_nu(s, finals=False) for s in range(5)]
    yield "emptiness exhaustive, no final state", lambda b: [decide_nonempty(x, backend=b).explored_count for x in E]
    yield "random walks 5 × 200 restarts", lambda b: [random_walks(x, 0, 200, backend=b) for x in W]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if "cython" not in kernels.AVAILABLE:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'workload':48} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn in workloads():
        tp, rp = best_of(lambda: fn("python"), args.repeat)
        tc, rc = best_of(lambda: fn("cython"), args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:48} {tp * 1e3:9.1f}ms {tc * 1e3:9.1f}ms {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
