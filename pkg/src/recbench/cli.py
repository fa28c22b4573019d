"""Command-line entry point.

Exit status: 0 success (normalized, halted, solutions found), 1 no solution
or a failed check, 2 syntax rejected, 3 fuel exhausted, 4 evaluation fault
(including a Turing machine with no matching clause).
"""
from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import bridges, problems, sexpr, turing
from . import lambda_calculus as lam
from .lisp import DEFAULT_FUEL, Interpreter

OK, NO_SOLUTION, SYNTAX, FUEL, FAULT = 0, 1, 2, 3, 4


# Named abbreviations for closed terms.  They are expanded textually before
# parsing, so the term grammar itself only ever sees x with primes.
ABBREVIATIONS = {
    "I": lam.IDENTITY,
    "K": lam.parse_lambda("(λx (λx' x))"),
    "OMEGA": lam.OMEGA,
    "SUCC": lam.SUCC,
    "PLUS": lam.PLUS,
    "Y": lam.Y,
}
_NAME = re.compile(r"(?<![\w'′])([A-Za-z][A-Za-z0-9_]*|[0-9]+)(?![\w'′])")


def expand_names(text: str, table: dict) -> str:
    """Replace defined names and decimal numerals; anything else is left for the parser."""
    def sub(m):
        word = m.group(1)
        if word.isdigit():
            return lam.print_lambda(lam.church_encode(int(word)))
        if word in table:
            return lam.print_lambda(table[word])
        return word
    return _NAME.sub(sub, text)


def definition_table(lets) -> dict:
    table = dict(ABBREVIATIONS)
    for item in lets or ():
        name, eq, body = item.partition("=")
        name = name.strip()
        if not eq or name == "x" or not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
            raise lam.LambdaSyntaxError(f"bad definition {item!r}, expected NAME=TERM", 0)
        term = lam.parse_lambda(expand_names(body, table))
        if lam.free_vars(term):
            raise lam.LambdaSyntaxError(f"definition of {name} is not closed", 0)
        table[name] = term
    return table


def _term_text(args) -> str:
    if args.file:
        text = Path(args.file).read_text()
    elif args.term is None:
        raise SystemExit("a term or --file is required")
    else:
        text = args.term
    return expand_names(text, definition_table(args.let))


def cmd_lambda_parse(args) -> int:
    print(lam.print_lambda(lam.parse_lambda(_term_text(args))))
    return OK


def cmd_lambda_reduce(args) -> int:
    term = lam.parse_lambda(_term_text(args))
    nxt = lam.beta_step(term, args.strategy)
    if nxt is None:
        print(lam.print_lambda(term))
        print("normal form, 0 steps", file=sys.stderr)
    else:
        print(lam.print_lambda(nxt))
        print("1 step", file=sys.stderr)
    return OK


def cmd_lambda_normalize(args) -> int:
    out = lam.normalize(lam.parse_lambda(_term_text(args)), args.strategy, args.fuel)
    if out.normalized:
        print(lam.print_lambda(out.term))
        print(f"normalized in {_steps(out.steps)}", file=sys.stderr)
        return OK
    print(f"fuel: exhausted after {out.steps} steps")
    print(f"partial: {lam.print_lambda(out.term)}")
    return FUEL


def _machine(arg: str) -> turing.Machine:
    path = Path(arg)
    if not path.exists() and path.suffix == "" and "/" not in arg:
        # bare names refer to the bundled fixtures
        return bridges.load_machine(arg)
    return turing.parse_machine(path.read_text())


def _steps(n: int) -> str:
    return f"{n} step" if n == 1 else f"{n} steps"


def _input_symbols(args) -> list[str]:
    return args.input.split() if args.input else []


def cmd_tm_run(args) -> int:
    m = _machine(args.machine)
    out = turing.run(m, _input_symbols(args), args.fuel)
    print(" ".join(out.tape.contents()))
    print(f"{out.status} in state {out.state} after {_steps(out.steps)}, head at {out.tape.head}",
          file=sys.stderr)
    return {"halted": OK, "fuel-exhausted": FUEL, "stuck": FAULT}[out.status]


def cmd_tm_compile(args) -> int:
    m = _machine(args.machine)
    program = bridges.compile_tm(m)
    if args.input is None:
        sys.stdout.write(program.text())
        return OK
    run = bridges.run_compiled(program, m, _input_symbols(args), args.fuel)
    print(" ".join(run.tape.contents()))
    print(run.outcome.render(), file=sys.stderr)
    if run.outcome.status == "fuel-exhausted":
        return FUEL
    return OK if run.halted else FAULT


def _session(args) -> Interpreter:
    return Interpreter(prelude=not args.no_prelude)


def cmd_lisp_repl(args) -> int:
    prompt = "" if args.quiet else "> "
    outcomes = _session(args).repl(sys.stdin, sys.stdout, args.fuel, prompt=prompt)
    return _lisp_status(outcomes)


def cmd_lisp_run(args) -> int:
    text = Path(args.file).read_text()
    forms = sexpr.read_all(text)
    interp = _session(args)
    outcomes = []
    for form in forms:
        out = interp.eval(form, fuel=args.fuel)
        outcomes.append(out)
        print(out.render())
    return _lisp_status(outcomes)


def _lisp_status(outcomes) -> int:
    for out in outcomes:
        if out.status == "fuel-exhausted":
            return FUEL
        if out.status == "fault":
            return FAULT
    return OK


def cmd_solve(args) -> int:
    problem, resolution = problems.read_session(Path(args.file).read_text())
    try:
        if args.inverse:
            yes, no = problems.solve_inverse(problem, args.fuel)
            print(f"solutions: {sexpr.to_string(sexpr.from_list(yes))}")
            print(f"non-solutions: {sexpr.to_string(sexpr.from_list(no))}")
            return OK if yes else NO_SOLUTION
        sols = problems.run_resolution(resolution, problem, args.fuel)
    except problems.FuelExhausted as err:
        print(f"fuel: {err}")
        return FUEL
    if sols is None:
        print("unresolved")
        return NO_SOLUTION
    print(sexpr.to_string(sexpr.from_list(sols)))
    return OK if sols else NO_SOLUTION


def cmd_merge_demo(args) -> int:
    ok = True
    for n in range(args.n_max + 1):
        e = bridges.zermelo_encode(n)
        succ = bridges.zermelo_decode(bridges.merge(e, e))
        ok &= succ == n + 1
        shown = bridges.show_set(e) if n <= 4 else f"{'{' * n}∅{'}' * n}"
        print(f"{n}\t{shown}\tMerge -> {succ}")
    return OK if ok else NO_SOLUTION


def _check_compiler():
    bad = {name: bridges.compiler_equivalence(bridges.load_machine(name))
           for name in bridges.FIXTURES}
    detail = ", ".join(f"{k}: {len(v)} mismatches" for k, v in bad.items())
    return not any(bad.values()), f"compiled TM vs simulator ({detail})"


def _check_numerals():
    bad = bridges.numeral_agreement(10)
    return not bad, f"Church / Lisp / TM addition, n,m <= 10 ({len(bad)} disagreements)"


def _check_anbn(n_max):
    def run():
        report = bridges.anbn_demo(n_max)
        return (not report.disagreements,
                f"a^n b^n recognizer on {report.checked} strings ({len(report.disagreements)} disagreements)")
    return run


def cmd_equiv_check(args) -> int:
    checks = [_check_compiler, _check_numerals, _check_anbn(args.n_max)]
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda f: f(), checks))
    for passed, text in results:
        print(f"{'PASS' if passed else 'FAIL'}  {text}")
    return OK if all(p for p, _ in results) else NO_SOLUTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
        return p

    for name, fn, text in [
        ("lambda-parse", cmd_lambda_parse, "print a term in canonical form"),
        ("lambda-reduce", cmd_lambda_reduce, "contract one redex"),
        ("lambda-normalize", cmd_lambda_normalize, "reduce to normal form within the fuel"),
    ]:
        p = add(name, fn, text)
        p.add_argument("term", nargs="?")
        p.add_argument("--file")
        p.add_argument("--strategy", choices=["normal", "cbv"], default="normal")
        p.add_argument("--let", action="append", metavar="NAME=TERM",
                       help="define a closed term; repeatable, later ones may use earlier ones")

    p = add("tm-run", cmd_tm_run, "simulate a machine file or bundled fixture")
    p.add_argument("machine")
    p.add_argument("--input", default="")
    p = add("tm-compile", cmd_tm_compile, "compile a machine to Lisp; with --input, run the result")
    p.add_argument("machine")
    p.add_argument("--input")

    p = add("lisp-repl", cmd_lisp_repl, "read-eval-print loop on stdin")
    p.add_argument("--no-prelude", action="store_true")
    p.add_argument("--quiet", action="store_true", help="no prompt")
    p = add("lisp-run", cmd_lisp_run, "evaluate every form in a file")
    p.add_argument("file")
    p.add_argument("--no-prelude", action="store_true")

    p = add("solve", cmd_solve, "run a problem file's resolution")
    p.add_argument("file")
    p.add_argument("--inverse", action="store_true", help="partition the domain instead")

    p = add("merge-demo", cmd_merge_demo, "Merge as successor on Zermelo numerals")
    p.add_argument("--n-max", type=int, default=10)
    p = add("equiv-check", cmd_equiv_check, "cross-formalism checks")
    p.add_argument("--n-max", type=int, default=4)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "fuel", 0) < 0:
        print("error: --fuel must be non-negative", file=sys.stderr)
        return SYNTAX
    try:
        return args.func(args)
    except (sexpr.ParseError, lam.LambdaSyntaxError, turing.MachineSyntaxError) as err:
        print(f"error: {err}", file=sys.stderr)
        return SYNTAX
    except (problems.ProblemError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return FAULT
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return FAULT


if __name__ == "__main__":
    sys.exit(main())
