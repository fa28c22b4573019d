"""Run non-terminating programs in each formalism under growing fuel budgets."""
import argparse
import time

from recbench import bridges, turing
from recbench import lambda_calculus as lam
from recbench.lisp import Interpreter
from recbench.sexpr import read


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budgets", type=int, nargs="+", default=[100, 1_000, 10_000, 100_000])
    args = ap.parse_args()
    interp = Interpreter()
    interp.eval(read("(define loop (lambda (x) (loop x)))"))
    runaway = bridges.load_machine("runaway")
    jobs = {
        "omega": lambda fuel: lam.normalize(lam.OMEGA, "normal", fuel),
        "(loop 0)": lambda fuel: interp.eval(read("(loop 0)"), fuel=fuel),
        "runaway TM": lambda fuel: turing.run(runaway, [], fuel),
    }
    print(f"{'program':12} {'fuel':>8} {'status':16} {'seconds':>8}")
    for name, job in jobs.items():
        for fuel in args.budgets:
            start = time.perf_counter()
            out = job(fuel)
            print(f"{name:12} {fuel:>8} {out.status:16} {time.perf_counter() - start:8.4f}")


if __name__ == "__main__":
    main()
