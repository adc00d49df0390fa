import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sulcheck import Flavor, formula_size, is_nnf, parse_ctl, parse_formula, to_nnf, to_text
from sulcheck.errors import FlavorError, FormulaSyntaxError
from sulcheck.generators import random_formula
from sulcheck.syntax import (
    ANGEL,
    BOTTOM,
    DEMON,
    TOP,
    And,
    Atom,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Quantified,
    Release,
    StratA,
    StratD,
    StratU,
    Until,
    atom_occurrences,
    budgets_of,
    flavor_of,
    is_next_fragment,
    next_depth,
)

p, q = Atom("p"), Atom("q")
BOTH = frozenset({ANGEL, DEMON})


def test_atom():
    assert parse_formula("p") == p


def test_globally_expands_to_release():
    assert parse_formula("<d:2> G !admin") == StratD(2, Release(BOTTOM, Not(Atom("admin"))))


def test_finally_expands_to_until():
    f = parse_formula("<<a,d|2,2>> F !admin")
    assert f == StratU(BOTH, 2, 2, Until(TOP, Not(Atom("admin"))))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("<d:1> X p", StratD(1, Next(p))),
        ("[d:0] X p", StratD(0, Next(p), dual=True)),
        ("<a:3> X p", StratA(3, Next(p))),
        ("[a:1] (p U q)", StratA(1, Until(p, q), dual=True)),
        ("<<a|1,2>> X p", StratU(frozenset({ANGEL}), 1, 2, Next(p))),
        # a lone demon lists its own budget first
        ("<<d|2,1>> X p", StratU(frozenset({DEMON}), 1, 2, Next(p))),
        ("<<|0,1>> X p", StratU(frozenset(), 0, 1, Next(p))),
        ("[[a,d|1,1]] G p", StratU(BOTH, 1, 1, Release(BOTTOM, p), dual=True)),
        ("box p", StratD(0, Next(p))),
        ("dia p", StratD(0, Next(p), dual=True)),
        ("<a:1> X dia p", StratA(1, Next(StratA(0, Next(p), dual=True)))),
        ("<<a,d|0,0>> X box p", StratU(BOTH, 0, 0, Next(StratU(BOTH, 0, 0, Next(p))))),
    ],
)
def test_strategic_operators(text, expected):
    assert parse_formula(text) == expected


def test_box_follows_requested_flavor():
    assert parse_formula("box p", flavor="scl") == StratA(0, Next(p))
    assert parse_formula("dia p", flavor=Flavor.SUL) == StratU(BOTH, 0, 0, Next(p), dual=True)


def test_precedence():
    r = Atom("r")
    assert parse_formula("p | q & r") == Or(p, And(q, r))
    assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse_formula("p <-> q -> r") == Iff(p, Implies(q, r))
    assert parse_formula("!p & q") == And(Not(p), q)
    assert parse_formula("<d:1> p U q & r") == And(StratD(1, Until(p, q)), r)
    assert parse_formula("<d:1> X p -> q") == Implies(StratD(1, Next(p)), q)


def test_path_formulas_only_under_strategic_operators():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("X p")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("p U q")
    assert parse_formula("!(p U q)", allow_path=True) == Not(Until(p, q))


@pytest.mark.parametrize(
    "text",
    ["", "p &", "<d:x> X p", "<d:-1> X p", "<<x|1,1>> X p", "<<a,a|1,1>> X p", "<d:1> p", "(p", "p q", "<d:1> X"],
)
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("p & & q")
    assert info.value.position == 4


@pytest.mark.parametrize("text", ["<d:1> X <a:1> X p", "<d:1> X <<a|1,1>> X p", "<a:1> X p & [d:0] X p"])
def test_mixing_logics_is_rejected(text):
    with pytest.raises(FlavorError):
        parse_formula(text)


def test_flavor_mismatch_with_request():
    with pytest.raises(FlavorError):
        parse_formula("<d:1> X p", flavor="scl")


def test_flavor_of():
    assert flavor_of(parse_formula("p")) is None
    assert flavor_of(parse_formula("<a:1> X p")) is Flavor.SCL
    with pytest.raises(FlavorError):
        flavor_of(And(StratD(0, Next(p)), StratA(0, Next(p))))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("!<d:1> X p", "[d:1] X !p"),
        ("!(p U q)", "(!p) R (!q)"),
        ("!!p", "p"),
        ("p", "p"),
        ("!(p -> q)", "p & !q"),
        ("![[a|1,0]] (p R q)", "<<a|1,0>> ((!p) U (!q))"),
        ("<d:1> !X p", "<d:1> X !p"),
    ],
)
def test_nnf(text, expected):
    f = parse_formula(text, allow_path=True)
    assert to_text(to_nnf(f)) == expected


def test_nnf_expands_iff():
    assert to_nnf(Iff(p, q)) == Or(And(p, q), And(Not(p), Not(q)))
    assert is_nnf(to_nnf(Not(Iff(p, q))))


@pytest.mark.parametrize("text, size", [("p", 1), ("<d:1> X p", 4), ("<d:2> X p", 5), ("<<a,d|1,2>> X !p", 9)])
def test_formula_size(text, size):
    assert formula_size(parse_formula(text)) == size


def test_size_budget_binary_length():
    assert formula_size(parse_formula("<d:2> X p")) == formula_size(parse_formula("<d:3> X p"))
    assert formula_size(parse_formula("<d:0> X p")) == formula_size(parse_formula("<d:1> X p"))
    assert formula_size(parse_formula("<d:4> X p")) == formula_size(parse_formula("<d:3> X p")) + 1


def test_printer_minimal_parentheses():
    assert to_text(parse_formula("(p & q) | r")) == "p & q | r"
    assert to_text(parse_formula("p & (q | r)")) == "p & (q | r)"
    assert to_text(parse_formula("(p -> q) -> r")) == "(p -> q) -> r"
    assert to_text(parse_formula("<d:1> G !admin")) == "<d:1> (false R (!admin))"
    assert to_text(parse_formula("<<d|2,1>> X p")) == "<<d|2,1>> X p"


def test_helpers():
    f = parse_formula("<d:1> X (p & <d:2> X [d:0] X q)")
    assert next_depth(f) == 3
    assert is_next_fragment(f)
    assert not is_next_fragment(parse_formula("<d:1> F p"))
    assert budgets_of(f) == [("d", 1, 1), ("d", 2, 2), ("d", 0, 0)]
    assert atom_occurrences(f) == ["p", "q"]


def test_ctl_parser():
    assert parse_ctl("AX p") == Quantified("A", "X", p)
    assert parse_ctl("E(p U q)") == Quantified("E", "U", p, q)
    assert parse_ctl("A(p R q) & EG !p") == And(Quantified("A", "R", p, q), Quantified("E", "G", Not(p)))
    assert parse_ctl("AF EX p") == Quantified("A", "F", Quantified("E", "X", p))
    with pytest.raises(FormulaSyntaxError):
        parse_ctl("<d:1> X p")
    with pytest.raises(FormulaSyntaxError):
        parse_ctl("X p")


@pytest.mark.parametrize("flavor", list(Flavor))
def test_round_trip_random(flavor, seed):
    rng = random.Random(seed)
    for _ in range(300):
        f = random_formula(rng, flavor, depth=4)
        text = to_text(f)
        assert parse_formula(text, flavor=flavor) == f, text


@pytest.mark.parametrize("flavor", list(Flavor))
def test_nnf_properties_random(flavor, seed):
    rng = random.Random(seed + 1)
    for _ in range(300):
        f = random_formula(rng, flavor, depth=4)
        g = to_nnf(f)
        assert is_nnf(g)
        assert to_nnf(g) == g
        # <-> duplicates its operands, so budgets survive as a set
        assert set(budgets_of(f)) == set(budgets_of(g))


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(list(Flavor)))
def test_nnf_size_bound_without_iff(r, flavor):
    f = random_formula(r, flavor, depth=4, connectives=("not", "and", "or", "implies"))
    g = to_nnf(f)
    assert formula_size(g) <= 2 * formula_size(f) + 1
    assert Counter(atom_occurrences(f)) == Counter(atom_occurrences(g))
    assert Counter(budgets_of(f)) == Counter(budgets_of(g))
