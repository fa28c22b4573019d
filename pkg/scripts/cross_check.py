"""Cross-formalism experiments: compiler equivalence, a^n b^n, addition, Zermelo successor."""
import argparse

from recbench import bridges


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=5, help="longest TM input")
    ap.add_argument("--n-max", type=int, default=4, help="a^n b^n strings up to length 2n")
    ap.add_argument("--limit", type=int, default=10, help="addends up to this value")
    ap.add_argument("--zermelo", type=int, default=64)
    args = ap.parse_args()

    for name in bridges.FIXTURES:
        bad = bridges.compiler_equivalence(bridges.load_machine(name), max_len=args.max_len)
        print(f"compiler {name:8} mismatches: {len(bad)}")

    report = bridges.anbn_demo(args.n_max)
    print(f"anbn: {report.checked} strings, {len(report.accepted)} accepted, "
          f"{len(report.disagreements)} disagreements")

    print(f"addition up to {args.limit}: {len(bridges.numeral_agreement(args.limit))} disagreements")

    wrong = [n for n in range(args.zermelo + 1)
             if bridges.zermelo_decode(bridges.merge(*[bridges.zermelo_encode(n)] * 2)) != n + 1]
    print(f"zermelo successor 0..{args.zermelo}: {len(wrong)} failures")


if __name__ == "__main__":
    main()
