"""Normalize a seeded corpus of closed terms under both strategies and compare step counts."""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from corpus import normalizing_corpus  # noqa: E402
from recbench import lambda_calculus as lam  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=50)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    agree = 0
    for t in normalizing_corpus(args.size, seed=args.seed):
        a, b = lam.normalize(t, "normal"), lam.normalize(t, "cbv")
        same = lam.alpha_equal(a.term, b.term)
        agree += same
        print(f"{a.steps:4} {b.steps:4} {'=' if same else '!'} {lam.print_lambda(t)}")
    print(f"{agree}/{args.size} agree")


if __name__ == "__main__":
    main()
