"""Throw random text at the three readers and report the slowest call."""
import argparse
import random
import time

from recbench import lambda_calculus as lam
from recbench import sexpr, turing

READERS = {
    "sexpr": (sexpr.read, sexpr.ParseError, "()'. ;\nab1t", "(a (b . c) '(1 t) nil)"),
    "lambda": (lam.parse_lambda, lam.LambdaSyntaxError, "xλ\\'() ", "((λx (x x')) (λx'' x''))"),
    "machine": (turing.parse_machine, turing.MachineSyntaxError,
                "states: q0 q1\nsymbols: _ 1\nblank: _\n lefthar",
                "states: q0 q1\nsymbols: _ 1\nblank: _\nq0 1 q0 1 right\nq0 _ q1 1 halt\n"),
}


def mutate(rng, text, alphabet):
    chars = list(text)
    for _ in range(rng.randrange(1, 4)):
        i = rng.randrange(len(chars) + 1)
        if i < len(chars) and rng.random() < 0.5:
            del chars[i]
        else:
            chars.insert(i, rng.choice(alphabet))
    return "".join(chars)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100_000)
    ap.add_argument("--max-len", type=int, default=48)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for name, (parse, error, alphabet, valid) in READERS.items():
        accepted = worst = 0
        for i in range(args.count):
            n = rng.randrange(args.max_len)
            if i % 3 == 0:
                text = bytes(rng.randrange(256) for _ in range(n)).decode("latin-1")
            elif i % 3 == 1:
                text = "".join(rng.choice(alphabet) for _ in range(n))
            else:
                text = mutate(rng, valid, alphabet)
            start = time.perf_counter()
            try:
                parse(text)
                accepted += 1
            except error:
                pass
            worst = max(worst, time.perf_counter() - start)
        print(f"{name:8} {args.count} inputs, {accepted} accepted, slowest {worst * 1000:.2f} ms")


if __name__ == "__main__":
    main()
