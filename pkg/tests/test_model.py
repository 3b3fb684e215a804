import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_automaton
from twotape.engine import successors
from twotape.errors import AutomatonSyntaxError, SemanticError
from twotape.model import (BEGIN, END, Automaton, AutomatonBuilder, Configuration, InputPair,
                           Move, Transition, parse_automaton, serialize_automaton,
                           split_word, validate_automaton)
from twotape.zoo import reverse_automaton

REVERSE_FILE = """\
; reverse relation
alphabet a b
states qi q qf
initial qi
final qf
trans qi BEGIN BEGIN -> qi S R
trans qi BEGIN a -> qi S R
trans qi BEGIN b -> qi S R
trans qi BEGIN END -> q R L
trans q a a -> q R L
trans q b b -> q R L
trans q END BEGIN -> qf S S
"""


def test_chi_table():
    assert Move.L.chi + Move.R.chi == 0
    assert Move.S.chi == 0
    assert [m.chi for m in (Move.L, Move.S, Move.R)] == [-1, 0, 1]


def test_parse_reverse_file():
    a = parse_automaton(REVERSE_FILE)
    assert a.states == ("qi", "q", "qf")
    assert len(a.transitions) == 7
    assert a == reverse_automaton()


def test_zero_transitions_initial_final():
    a = parse_automaton("alphabet a\nstates q\ninitial q\nfinal q\n")
    assert a.transitions == () and a.initial == a.final == {"q"}


def test_boundary_violation_rejected_with_line():
    text = "alphabet a\nstates q\ntrans q END END -> q R S\n"
    with pytest.raises(SemanticError) as exc:
        parse_automaton(text)
    assert exc.value.line == 3


@pytest.mark.parametrize("text", [
    "alphabet a\nstates q\nfoo q\n",
    "alphabet a\nstates q\ntrans q a a -> q R\n",
    "alphabet a\nstates q\ntrans q a a => q R R\n",
    "alphabet a\nstates q\ntrans q a a -> q R X\n",
    "alphabet a\nalphabet b\nstates q\n",
    "states q\n",
])
def test_syntax_errors(text):
    with pytest.raises(AutomatonSyntaxError):
        parse_automaton(text)


@pytest.mark.parametrize("text", [
    "alphabet a\nstates q\ntrans q a a -> p R R\n",
    "alphabet a\nstates q\ntrans q b a -> q R R\n",
    "alphabet a END\nstates q\n",
    "alphabet a\nstates q\ninitial p\n",
    "alphabet a\nstates q q\n",
    "alphabet a\nstates q\ntrans q a a -> q R R\ntrans q a a -> q R R\n",
])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_automaton(text)


def test_comments_anywhere():
    a = parse_automaton("; head\nalphabet a ; letters\nstates q ;\ninitial q\n")
    assert a.alphabet == ("a",)


def test_multichar_letters_roundtrip():
    b = AutomatonBuilder(("aa", "#"))
    b.add("p", "aa", "#", "p", "R", "R")
    a = b.build(initial=["p"])
    text = serialize_automaton(a)
    assert "trans p aa # -> p R R" in text
    assert parse_automaton(text) == a


def test_empty_final_line():
    a = Automaton(("q",), ("a",), (), {"q"}, ())
    text = serialize_automaton(a)
    assert "\nfinal\n" in text
    assert parse_automaton(text).final == frozenset()


def test_validate_reverse():
    rep = validate_automaton(reverse_automaton())
    assert rep.deterministic and not rep.one_way and rep.violations == []


def test_validate_conflict_reported():
    t1 = Transition("q", "a", "a", "q", Move.R, Move.R)
    t2 = Transition("q", "a", "a", "q", Move.S, Move.R)
    rep = validate_automaton(Automaton(("q",), ("a",), (t1, t2), {"q"}, ()))
    assert not rep.deterministic and rep.violations == [(t1, t2)]


def test_one_way():
    t = Transition("q", "a", "a", "q", Move.S, Move.R)
    assert validate_automaton(Automaton(("q",), ("a",), (t,), {"q"}, ())).one_way


def test_automaton_invariants():
    with pytest.raises(SemanticError):
        Automaton(("q",), ("a",), (), {"p"}, ())
    with pytest.raises(SemanticError):
        Automaton(("q",), ("a",), (Transition("q", END, "a", "q", Move.R, Move.S),), (), ())


def test_builder_ignores_duplicates_and_rejects_illegal():
    b = AutomatonBuilder(("a",))
    b.add("p", "a", "a", "q", "R", "R")
    b.add("p", "a", "a", "q", "R", "R")
    assert len(b.transitions) == 1
    with pytest.raises(SemanticError):
        b.add("p", BEGIN, "a", "q", "L", "R")


def test_input_pair_and_words():
    inp = InputPair.of("ab", "")
    assert inp.tape1 == (BEGIN, "a", "b", END) and inp.tape2 == (BEGIN, END)
    assert split_word("aa b", tokens=True) == ("aa", "b")
    assert str(inp) == "(ab, ε)"
    with pytest.raises(SemanticError):
        InputPair.of("ax", "").check_alphabet("ab")
    assert Configuration("q", 1, 2).label() == "q@1,2"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_roundtrip_random(seed):
    a = random_automaton(random.Random(seed))
    assert parse_automaton(serialize_automaton(a)) == a
    assert all(t.respects_boundaries() for t in a.transitions)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_deterministic_has_at_most_one_successor(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, deterministic=True)
    assert validate_automaton(a).deterministic
    u = tuple(rng.choice(a.alphabet) for _ in range(rng.randint(0, 3)))
    v = tuple(rng.choice(a.alphabet) for _ in range(rng.randint(0, 3)))
    inp = InputPair(u, v)
    for q in a.states:
        for i in range(len(u) + 2):
            for j in range(len(v) + 2):
                assert len(successors(a, inp, Configuration(q, i, j))) <= 1
