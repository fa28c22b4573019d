import io

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from recbench import bridges, sexpr
from recbench import lambda_calculus as lam
from recbench.lisp import MUTABLE, PARAMETER, Closure, Interpreter, Primitive
from recbench.sexpr import NIL, T, Symbol, read, to_string
from recbench.turing import Tape

from corpus import normalizing_corpus


def ev(text, interp=None, fuel=10_000):
    interp = interp or Interpreter()
    outs = interp.eval_text(text, fuel=fuel)
    return outs[-1]


def value(text, interp=None, fuel=10_000):
    out = ev(text, interp, fuel)
    assert out.ok, out.render()
    return out.value


# evaluation order and special forms

def test_trial_program_finds_two():
    interp = Interpreter(prelude=True)
    ev("(define f twice-is-square)", interp)
    assert value("(cond ((f 1) 1) ((f 2) 2) ((f 3) 3) ((f 4) 4) (t nil))", interp) == 2


def test_self_evaluating():
    assert value("7") == 7
    assert value("t") is T
    assert value("nil") is NIL
    assert ev("7").steps == 1


def test_identity_application():
    assert value("((lambda (x) x) 'a)") == Symbol("a")


def test_quote_returns_operand_unevaluated():
    assert to_string(value("'(car (b c))")) == "(car (b c))"


def test_recursive_define_adds():
    interp = Interpreter()
    ev("(define add (lambda (a b) (cond ((eq? b 0) a) (t (add (1+ a) (1- b))))))", interp)
    for n in range(7):
        for m in range(7):
            # unary oracle: count 1+ applications of a to m
            expected = n
            for _ in range(m):
                expected += 1
            assert value(f"(add {n} {m})", interp) == expected


def test_define_is_immutable():
    interp = Interpreter()
    ev("(define s 0)", interp)
    out = ev("(set! s 1)", interp)
    assert out.status == "fault" and "cannot be modified" in out.error
    assert value("s", interp) == 0


def test_redefinition_in_same_frame_faults():
    interp = Interpreter()
    ev("(define s 0)", interp)
    out = ev("(define s 1)", interp)
    assert out.status == "fault" and "already defined" in out.error


def test_define_in_inner_frame_shadows():
    interp = Interpreter()
    ev("(define s 0)", interp)
    assert value("((lambda (u) (define s 5) s) 1)", interp) == 5
    assert value("s", interp) == 0


def test_set_on_parameter_makes_it_mutable():
    interp = Interpreter()
    ev("(define probe (lambda (x) (set! x (1+ x)) x))", interp)
    assert value("(probe 4)", interp) == 5


def test_binding_kinds():
    interp = Interpreter()
    ev("(define g (lambda (p) (lambda (q) (set! p q))))", interp)
    closure = value("(g 1)", interp)
    assert closure.env.kind(Symbol("p")) == PARAMETER
    interp.apply(closure, [7])
    assert closure.env.kind(Symbol("p")) == MUTABLE
    assert closure.env.lookup(Symbol("p")) == 7


def test_set_unbound_faults():
    out = ev("(set! nowhere 1)")
    assert out.status == "fault" and "unbound" in out.error


def test_cond_forms():
    assert value("(cond (nil 1) (t 2))") == 2
    assert value("(cond (nil 1))") is NIL
    assert value("(cond)") is NIL
    assert ev("(cond (t 1 2))").status == "fault"
    assert ev("(cond t)").status == "fault"


def test_faults_name_the_expression():
    out = ev("(car 'a)")
    assert out.status == "fault"
    assert "not a pair" in out.error and "(car (quote a))" in out.error
    assert "unbound" in ev("zork").error
    assert "not a function" in ev("(1 2)").error
    assert "argument" in ev("((lambda (x) x))").error
    assert "argument" in ev("(car 1 2)").error
    assert "reserved" in ev("(define cond 1)").error
    assert ev("(lambda x x)").status == "fault"
    assert ev("(quote a b)").status == "fault"


# apply and primitives

def test_apply_closure_and_primitive():
    interp = Interpreter()
    ident = value("(lambda (x) x)", interp)
    assert interp.apply(ident, [5]).value == 5
    succ = interp.global_env.lookup(Symbol("1+"))
    assert isinstance(succ, Primitive) and interp.apply(succ, [3]).value == 4
    first = value("(lambda (x y) x)", interp)
    assert interp.apply(first, [Symbol("a"), Symbol("b")]).value == Symbol("a")
    assert interp.apply(first, [1]).status == "fault"


def test_eq_compares_words_only():
    assert value("(eq? 'a 'a)") is T
    assert value("(eq? 'a 'b)") is NIL
    assert value("(eq? 3 3)") is T
    assert value("(eq? nil nil)") is T
    assert value("(eq? '(a) '(a))") is NIL
    assert value("((lambda (p) (eq? p p)) '(a))") is NIL
    assert value("(eq? 1 '1)") is T
    assert value("(eq? 't t)") is T


def test_numeric_primitives():
    assert value("(1+ 0)") == 1
    assert value("(1- 0)") == 0
    assert value("(1- 5)") == 4
    assert value("(number? 3)") is T
    assert value("(number? 'a)") is NIL
    assert ev("(1+ 'a)").status == "fault"


def test_pair_primitives():
    assert to_string(value("(cons 1 (cons 2 nil))")) == "(1 2)"
    assert value("(car '(a b))") == Symbol("a")
    assert to_string(value("(cdr '(a b))")) == "(b)"
    assert value("(atom? 'a)") is T
    assert value("(atom? '(a))") is NIL
    assert value("(atom? nil)") is T


def test_tape_trace():
    tape = Tape.from_symbols(["1", "1"], "_")
    interp = Interpreter(tape=tape)
    assert value("(read)", interp) == 1
    value("(move 'right)", interp)
    assert value("(read)", interp) == 1
    value("(move 'right)", interp)
    assert value("(read)", interp) == Symbol("_")
    value("(write 'x)", interp)
    value("(move 'halt)", interp)
    assert tape.cells == {0: "1", 1: "1", 2: "x"} and tape.head == 2
    assert ev("(move 'up)", interp).status == "fault"
    assert ev("(write '(a))", interp).status == "fault"


def test_tape_primitives_need_a_tape():
    for form in ["(read)", "(write 'a)", "(move 'left)"]:
        out = ev(form)
        assert out.status == "fault" and "no tape" in out.error


# fuel

def test_loop_exhausts_fuel():
    interp = Interpreter()
    ev("(define loop (lambda (x) (loop x)))", interp)
    out = ev("(loop 0)", interp, fuel=10_000)
    assert out.status == "fuel-exhausted" and out.steps == 10_000


def test_deep_non_tail_recursion_needs_no_python_stack():
    interp = Interpreter()
    ev("(define count (lambda (n) (cond ((eq? n 0) 0) (t (1+ (count (1- n)))))))", interp)
    assert value("(count 5000)", interp, fuel=10**6) == 5000


PROGRAMS = [
    "(add 3 4)",
    "(mul 3 3)",
    "(twice-is-square 2)",
    "(append '(a b) '(c))",
    "((lambda (f) (f (f 1))) 1+)",
    "(cond ((eq? 1 2) 'no) ((atom? 'a) (add 2 2)) (t 'never))",
]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PROGRAMS), st.integers(0, 400), st.integers(0, 400))
def test_fuel_monotonicity(program, fuel, extra):
    interp = Interpreter(prelude=True)
    form = read(program)
    out = interp.eval(form, fuel=fuel)
    assert out.steps <= fuel
    if out.ok:
        again = Interpreter(prelude=True).eval(form, fuel=fuel + extra)
        assert again.ok and again.steps == out.steps and again.value == out.value


def test_parse_terminates_even_when_evaluation_does_not():
    text = "(define loop (lambda (x) (loop x))) (loop 0)"
    forms = sexpr.read_all(text)
    assert len(forms) == 2
    outs = Interpreter().eval_text(text, fuel=500)
    assert outs[-1].status == "fuel-exhausted"


# scoping and beta correspondence

@settings(max_examples=200)
@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_lexical_scoping(def_depth, call_depth, data):
    names = [f"d{i}" for i in range(def_depth)]
    # closure created under def_depth nested bindings of v; innermost is d{def_depth-1}
    maker = "(lambda (z) v)"
    for name in reversed(names):
        maker = f"((lambda (v) {maker}) '{name})"
    # and called under call_depth rebindings of v at the call site
    call = "(f 'arg)"
    for i in range(call_depth):
        call = f"((lambda (v) {call}) 'c{i})"
    program = f"((lambda (f) {call}) {maker})"
    assert value(program) == Symbol(names[-1])


@pytest.mark.parametrize("t", normalizing_corpus(), ids=lam.print_lambda)
def test_beta_correspondence(t):
    out = Interpreter().eval(bridges.term_to_lisp(t), fuel=10_000)
    assert out.ok and isinstance(out.value, Closure)
    back = lam.normalize(bridges.closure_to_term(out.value), "cbv", 1000)
    direct = lam.normalize(t, "cbv", 1000)
    assert back.normalized and direct.normalized
    assert lam.alpha_equal(back.term, direct.term)


# read-eval-print

def session(text, **kw):
    out = io.StringIO()
    outcomes = Interpreter(prelude=False).repl(io.StringIO(text), out, **kw)
    return out.getvalue(), outcomes


def test_repl_definition_then_use():
    text, _ = session("(define id (lambda (x) x))\n(id 9)\n", prompt="")
    assert text.splitlines() == ["id", "9"]


def test_repl_recovers_after_fault():
    text, outcomes = session("(car 'a)\n(1+ 1)\n", prompt="")
    lines = text.splitlines()
    assert lines[0].startswith("error: ") and lines[1] == "2"
    assert [o.status for o in outcomes] == ["fault", "value"]


def test_repl_reports_fuel():
    text, _ = session("(define loop (lambda (x) (loop x)))\n(loop 0)\n", prompt="", fuel=300)
    assert text.splitlines() == ["loop", "fuel: exhausted after 300 steps"]


def test_repl_prompt_and_multiline_forms():
    text, _ = session("(cons 1\n 2)\n")
    assert text.startswith("> ")
    assert "(1 . 2)" in text


def test_repl_parse_error_then_continue():
    text, _ = session(")\n(1+ 2)\n(a\n", prompt="")
    lines = text.splitlines()
    assert lines[0].startswith("error: ") and lines[1] == "3" and lines[2].startswith("error: ")
