from itertools import product

import pytest

from recbench import bridges, sexpr, turing
from recbench import lambda_calculus as lam
from recbench.bridges import EMPTY, merge, zermelo_decode, zermelo_encode
from recbench.lisp import Interpreter
from recbench.sexpr import NIL, Symbol, from_list


def test_merge_empty_with_itself_is_singleton():
    assert merge(EMPTY, EMPTY) == frozenset({EMPTY})
    assert len(merge(EMPTY, EMPTY)) == 1


def test_merge_is_unordered():
    one = zermelo_encode(1)
    assert merge(one, EMPTY) == merge(EMPTY, one)


def test_merge_keeps_distinct_elements():
    s = merge(zermelo_encode(1), EMPTY)
    assert len(s) == 2
    assert bridges.show_set(s) == "{{∅}, ∅}"


def test_zermelo_examples():
    assert zermelo_encode(0) == EMPTY
    assert zermelo_encode(2) == frozenset({frozenset({EMPTY})})
    assert zermelo_decode(merge(zermelo_encode(2), zermelo_encode(2))) == 3
    assert zermelo_decode(frozenset({EMPTY, frozenset({EMPTY})})) is None


@pytest.mark.parametrize("n", range(65))
def test_merge_is_successor(n):
    e = zermelo_encode(n)
    assert zermelo_decode(merge(e, e)) == n + 1


def test_merge_surface_is_minimal():
    names = {"merge", "zermelo_encode", "zermelo_decode"}
    assert names <= set(dir(bridges))
    # no set arithmetic beyond successor is offered
    assert not [n for n in dir(bridges) if n.startswith("zermelo_") and n not in names]
    assert not [n for n in dir(bridges) if n.startswith("merge") and n != "merge"]


# compiler

def run_both(name, word):
    m = bridges.load_machine(name)
    direct = turing.run(m, word)
    compiled = bridges.run_compiled(bridges.compile_tm(m), m, word)
    return direct, compiled


def test_compiled_successor():
    direct, compiled = run_both("succ", ["1", "1", "1"])
    assert compiled.tape.contents() == ["1", "1", "1", "1"]
    assert compiled.tape == direct.tape
    assert compiled.halted


def test_compiled_empty_machine_stops_at_once():
    m = bridges.load_machine("empty")
    compiled = bridges.run_compiled(bridges.compile_tm(m), m, [])
    assert compiled.outcome.ok and compiled.outcome.value is NIL
    assert not compiled.halted
    assert turing.run(m, []).status == "stuck"


@pytest.mark.parametrize("name", bridges.FIXTURES)
def test_compiler_agrees_with_simulator(name):
    m = bridges.load_machine(name)
    alphabet = bridges.input_alphabet(m)
    program = bridges.compile_tm(m)
    count = 0
    for n in range(6):
        for word in product(alphabet, repeat=n):
            direct = turing.run(m, word)
            compiled = bridges.run_compiled(program, m, word)
            assert compiled.outcome.ok
            assert compiled.tape == direct.tape, word
            assert compiled.halted == (direct.status == "halted")
            count += 1
    assert count == sum(len(alphabet) ** k for k in range(6))
    assert bridges.compiler_equivalence(m) == []


def test_compiled_runaway_exhausts_interpreter_fuel():
    m = bridges.load_machine("runaway")
    compiled = bridges.run_compiled(bridges.compile_tm(m), m, [], fuel=5000)
    assert compiled.outcome.status == "fuel-exhausted"
    assert compiled.tape.head > 0


@pytest.mark.parametrize("name", bridges.FIXTURES + ("runaway", "empty"))
def test_compiler_conservativity(name):
    m = bridges.load_machine(name)
    program = bridges.compile_tm(m)
    assert bridges.program_symbols(program) <= bridges.allowed_symbols(m)
    used = bridges.program_symbols(program)
    primitives = {"cons", "car", "cdr", "atom?", "1+", "1-", "number?"}
    assert not used & primitives
    if m.clauses:
        assert bridges.REQUIRED_PRIMITIVES <= used


def test_compiled_program_round_trips_through_text():
    m = bridges.load_machine("adder")
    program = bridges.compile_tm(m)
    again = bridges.CompiledProgram(tuple(sexpr.read_all(program.text())))
    assert again.forms == program.forms


def test_compiler_rejects_unprintable_names():
    m = turing.parse_machine("states: q0\nsymbols: _ 01\nblank: _\nq0 01 q0 _ halt\n")
    with pytest.raises(ValueError):
        bridges.compile_tm(m)
    m = turing.parse_machine("states: nil\nsymbols: _\nblank: _\n")
    with pytest.raises(ValueError):
        bridges.compile_tm(m)


# a^n b^n

def test_anbn_small_cases():
    interp = bridges.anbn_interpreter()
    fn = interp.global_env.lookup(Symbol("anbn?"))

    def accepts(s):
        return interp.apply(fn, [from_list(Symbol(c) for c in s)]).value is not NIL

    assert accepts("")
    assert accepts("aabb")
    assert not accepts("aba")
    assert not accepts("abb")
    assert not accepts("ba")


def test_anbn_exhaustive():
    report = bridges.anbn_demo(4)
    assert report.checked == 511
    assert report.disagreements == []
    assert report.accepted == ["", "ab", "aabb", "aaabbb", "aaaabbbb"]


def test_anbn_membership_oracle():
    assert bridges.anbn_member("")
    assert bridges.anbn_member("aabb")
    assert not bridges.anbn_member("abab")


# numerals across formalisms

def test_addition_three_ways():
    assert bridges.numeral_agreement(10) == []


def test_each_adder_individually():
    interp = Interpreter(prelude=True)
    for n, m in [(0, 0), (0, 3), (4, 0), (10, 10)]:
        assert bridges.add_church(n, m) == n + m
        assert bridges.add_lisp(n, m, interp=interp) == n + m
        assert bridges.add_tm(n, m) == n + m


def test_term_translation_round_trip():
    t = lam.parse_lambda("((λx (λx' (x x'))) (λx'' x''))")
    assert bridges.lisp_to_term(bridges.term_to_lisp(t)) == t
