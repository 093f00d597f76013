import pytest
from hypothesis import given, strategies as st

from qciore.syntax import (
    And,
    App,
    CaptureError,
    Cons,
    Const,
    Eq,
    Exists,
    Forall,
    Imp,
    Neg,
    Or,
    ParseError,
    Pred,
    Signature,
    Var,
    enumerate_formulas,
    formula_to_str,
    free_vars,
    is_free_for,
    parse_formula,
    replace_some_matches,
    substitute,
    universal_closure,
)


def test_precedence():
    f = parse_formula("a -> b -> c")
    assert f == Imp(Pred("a"), Imp(Pred("b"), Pred("c")))
    assert parse_formula("~a & b") == And(Neg(Pred("a")), Pred("b"))
    assert parse_formula("a | b & c") == Or(Pred("a"), And(Pred("b"), Pred("c")))
    assert parse_formula("a & b -> c") == Imp(And(Pred("a"), Pred("b")), Pred("c"))
    assert parse_formula("a & b & c") == And(And(Pred("a"), Pred("b")), Pred("c"))


def test_quantifier_scopes_right():
    f = parse_formula("forall x. P(x) -> Q(x)")
    assert f == Forall("x", Imp(Pred("P", (Var("x"),)), Pred("Q", (Var("x"),))))
    g = parse_formula("(forall x. P(x)) -> Q(y)")
    assert isinstance(g, Imp) and isinstance(g.left, Forall)


def test_sugar_desugars():
    assert parse_formula("!a") == And(Neg(Pred("a")), Cons(Pred("a")))
    f = parse_formula("a <-> b")
    assert f == And(Imp(Pred("a"), Pred("b")), Imp(Pred("b"), Pred("a")))


def test_equality_atom_and_terms():
    f = parse_formula("f(x, c) = y")
    assert f == Eq(App("f", (Var("x"), Var("c"))), Var("y"))
    # without a signature every bare identifier is a variable
    assert parse_formula("~x = y") == Neg(Eq(Var("x"), Var("y")))


def test_signature_validation():
    sig = Signature(predicates={"P": 1}, functions={"f": 2}, constants={"c"})
    f = parse_formula("P(f(x, c))", sig)
    assert f == Pred("P", (App("f", (Var("x"), Const("c"))),))
    with pytest.raises(ParseError):
        parse_formula("Q(x)", sig)
    with pytest.raises(ParseError):
        parse_formula("P(x, y)", sig)
    with pytest.raises(ParseError):
        parse_formula("f(x, y)", sig)  # function used as predicate
    with pytest.raises(ParseError):
        parse_formula("P(f(x))", sig)  # wrong function arity
    with pytest.raises(ParseError):
        parse_formula("P(x) &", sig)


def test_free_vars():
    f = parse_formula("forall x. P(x, y) & exists y. Q(y)")
    assert free_vars(f) == {"y"}
    assert free_vars(parse_formula("x = x")) == {"x"}


def test_substitute():
    f = parse_formula("P(x) & forall y. Q(x, y)")
    g = substitute(f, "x", Const("c"))
    assert g == parse_formula("P(c) & forall y. Q(c, y)", Signature(
        predicates={"P": 1, "Q": 2}, constants={"c"}))
    # bound occurrences stay put
    h = parse_formula("forall x. P(x)")
    assert substitute(h, "x", Var("z")) == h


def test_substitute_refuses_capture():
    f = parse_formula("forall y. P(x, y)")
    with pytest.raises(CaptureError):
        substitute(f, "x", Var("y"))
    assert not is_free_for(Var("y"), "x", f)
    assert is_free_for(Var("z"), "x", f)
    assert is_free_for(Var("y"), "x", parse_formula("forall y. P(y)"))


def test_replace_some_matches():
    f = parse_formula("P(x) & Q(x)")
    assert replace_some_matches(f, "x", "y", parse_formula("P(y) & Q(x)"))
    assert replace_some_matches(f, "x", "y", parse_formula("P(y) & Q(y)"))
    assert replace_some_matches(f, "x", "y", f)  # zero replacements allowed
    assert not replace_some_matches(f, "x", "y", parse_formula("P(z) & Q(x)"))
    # occurrences bound inside stay untouched
    g = parse_formula("P(x) & forall x. Q(x)")
    assert replace_some_matches(g, "x", "y", parse_formula("P(y) & forall x. Q(x)"))
    assert not replace_some_matches(g, "x", "y", parse_formula("P(y) & forall x. Q(y)"))


def test_universal_closure_lexicographic():
    f = parse_formula("P(b, a)")
    assert universal_closure(f) == parse_formula("forall a. forall b. P(b, a)")
    g = parse_formula("forall x. P(x, x)")
    assert universal_closure(g) == g


def test_enumerate_formulas_base():
    sig = Signature(predicates={"P": 1})
    assert list(enumerate_formulas(sig, ["x"], 0)) == [Pred("P", (Var("x"),))]
    sig_eq = Signature(predicates={"P": 1}, has_equality=True)
    assert list(enumerate_formulas(sig_eq, ["x"], 0)) == [
        Pred("P", (Var("x"),)),
        Eq(Var("x"), Var("x")),
    ]


def test_enumerate_formulas_counts_and_uniqueness():
    sig = Signature(predicates={"P": 1})
    level1 = list(enumerate_formulas(sig, ["x"], 1))
    # one atom; depth 1 adds ~, @, forall, exists and 3 binary combinations
    assert len(level1) == 8
    level2 = list(enumerate_formulas(sig, ["x"], 2))
    assert len(level2) == 225
    assert len(set(level2)) == 225
    # deterministic: same list on a second run
    assert level2 == list(enumerate_formulas(sig, ["x"], 2))


def _depth(f):
    if isinstance(f, (Neg, Cons)):
        return 1 + _depth(f.sub)
    if isinstance(f, (And, Or, Imp)):
        return 1 + max(_depth(f.left), _depth(f.right))
    if isinstance(f, (Forall, Exists)):
        return 1 + _depth(f.body)
    return 0


def test_enumerate_formulas_respects_depth():
    sig = Signature(predicates={"P": 1, "R": 2})
    out = list(enumerate_formulas(sig, ["x", "y"], 1))
    assert all(_depth(f) <= 1 for f in out)
    assert len(out) == len(set(out))


# --- round-tripping ---------------------------------------------------------


def _formulas():
    atoms = st.sampled_from(
        [
            Pred("a"),
            Pred("P", (Var("x"),)),
            Pred("R", (Var("x"), Var("y"))),
            Eq(Var("x"), Var("y")),
        ]
    )
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            sub.map(Neg),
            sub.map(Cons),
            st.tuples(sub, sub).map(lambda p: And(*p)),
            st.tuples(sub, sub).map(lambda p: Or(*p)),
            st.tuples(sub, sub).map(lambda p: Imp(*p)),
            st.tuples(st.sampled_from(["x", "y"]), sub).map(lambda p: Forall(*p)),
            st.tuples(st.sampled_from(["x", "y"]), sub).map(lambda p: Exists(*p)),
        ),
        max_leaves=12,
    )


@given(_formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(formula_to_str(f)) == f


def test_round_trip_examples():
    for text in [
        "(exists x. ~P(x)) -> ~forall x. P(x)",
        "@(a -> b) -> (@a | @b)",
        "forall x. forall y. (x = y -> (P(x) -> P(y)))",
        "~(a & b) | ~~c",
    ]:
        f = parse_formula(text)
        assert parse_formula(formula_to_str(f)) == f
