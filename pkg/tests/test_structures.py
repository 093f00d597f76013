import itertools

import pytest
from hypothesis import given, strategies as st

from helpers import remark_structure, singleton
from qciore.matrix3 import CIORE, DESIGNATED, HALF, ONE, ZERO, eval_prop
from qciore.structures import (
    Assignment,
    BOTH,
    NEG,
    POS,
    classical_equality,
    eval_formula,
    eval_term,
    expand_with_names,
    formula_triple,
    holds,
    is_equality_structure,
    is_valid_in,
    make_structure,
    reduct,
    sentence_trichotomy,
    tilde_exists,
    tilde_forall,
)
from qciore.syntax import FVar, Pred, Signature, Var, parse_formula, substitute
from qciore.triples import make_triple, triple_from_map


def test_eval_term_composition():
    sig = Signature(functions={"f": 1}, constants={"c"}, predicates={"P": 1})
    A = make_structure(
        sig,
        ("a", "b"),
        preds={"P": make_triple({("a",)}, {("b",)}, set())},
        funs={"f": {("a",): "b", ("b",): "a"}},
        consts={"c": "a"},
    )
    s = A.default_assignment()
    assert eval_term(parse_formula("P(x)", sig).args[0], A, s) == "a"
    t = parse_formula("P(f(c))", sig).args[0]
    assert eval_term(t, A, s) == "b"
    assert eval_formula(parse_formula("P(f(c))", sig), A, s) == ZERO


def test_assignment_update():
    s = Assignment("a")
    assert s.get("x") == "a"
    s2 = s.set("x", "b").set("y", "c")
    assert s2.get("x") == "b" and s2.get("y") == "c" and s2.get("z") == "a"
    assert s2.set("x", "a").get("x") == "a"


def test_quantifier_value_functions():
    assert tilde_forall({ONE}) == ONE
    assert tilde_forall({ONE, HALF}) == ONE
    assert tilde_forall({HALF}) == HALF
    assert tilde_forall({ONE, ZERO}) == ZERO
    assert tilde_exists({ZERO}) == ZERO
    assert tilde_exists({HALF}) == HALF
    assert tilde_exists({ZERO, HALF}) == ONE  # mixed sets count as witnessed
    assert tilde_exists({ONE, ZERO}) == ONE


def test_remark_structure_values():
    A = remark_structure()
    s = A.default_assignment()
    sig = A.sig
    assert eval_formula(parse_formula("forall x. P(x)", sig), A, s) == ONE
    assert eval_formula(parse_formula("exists x. ~P(x)", sig), A, s) == ONE
    assert eval_formula(parse_formula("~forall x. P(x)", sig), A, s) == ZERO
    f = parse_formula("(exists x. ~P(x)) -> ~forall x. P(x)", sig)
    assert eval_formula(f, A, s) == ZERO
    ok, witness = is_valid_in(f, A)
    assert not ok and witness == s


def test_remark_formula_triples():
    A = remark_structure()
    t = formula_triple(parse_formula("P(x)", A.sig), A, ("x",))
    assert t == make_triple({("a",)}, set(), {("b",), ("c",)})
    t = formula_triple(parse_formula("~P(x)", A.sig), A, ("x",))
    assert t == make_triple(set(), {("a",)}, {("b",), ("c",)})
    t = formula_triple(parse_formula("@P(x)", A.sig), A, ("x",))
    assert t == make_triple({("a",)}, {("b",), ("c",)}, set())
    t = formula_triple(parse_formula("forall x. P(x)", A.sig), A, ("x",))
    assert t.plus == t.carrier  # designated everywhere


def test_dubious_singleton():
    A = singleton(dot={("a",)})
    s = A.default_assignment()
    assert eval_formula(parse_formula("exists x. P(x)", A.sig), A, s) == HALF
    assert eval_formula(parse_formula("@exists x. P(x)", A.sig), A, s) == ZERO
    assert sentence_trichotomy(parse_formula("exists x. P(x)", A.sig), A) == BOTH
    assert sentence_trichotomy(parse_formula("forall x. P(x)", A.sig), remark_structure()) == POS
    B = singleton(minus={("a",)})
    assert sentence_trichotomy(parse_formula("exists x. P(x)", B.sig), B) == NEG


def test_holds_on_designated_values():
    A = singleton(dot={("a",)})
    assert holds(parse_formula("P(x)", A.sig), A)
    assert holds(parse_formula("P(x) & ~P(x)", A.sig), A)
    assert not holds(parse_formula("@P(x)", A.sig), A)


def test_trichotomy_requires_sentence():
    A = remark_structure()
    with pytest.raises(ValueError):
        sentence_trichotomy(parse_formula("P(x)", A.sig), A)


def test_validity_witness_is_least():
    A = remark_structure()
    ok, w = is_valid_in(parse_formula("@P(x)", A.sig), A)
    assert not ok
    assert w == Assignment("a", (("x", "b"),))


def test_prop_6_7_value_vs_compounds():
    A = remark_structure()
    sig = A.sig
    f = parse_formula("P(x)", sig)
    for s in (A.default_assignment().set("x", e) for e in A.domain):
        v = eval_formula(f, A, s)
        assert (v == ONE) == holds(parse_formula("P(x) & @P(x)", sig), A, s)
        assert (v == ZERO) == holds(parse_formula("~P(x) & @P(x)", sig), A, s)
        assert (v == HALF) == holds(parse_formula("P(x) & ~P(x)", sig), A, s)


def test_implication_validity_via_minus_classes():
    A = remark_structure()
    sig = A.sig
    cases = [
        ("P(x)", "P(x) | ~P(x)"),
        ("@P(x)", "P(x)"),
        ("exists x. ~P(x)", "~forall x. P(x)"),
        ("P(x)", "@P(x)"),
    ]
    for left, right in cases:
        lf, rf = parse_formula(left, sig), parse_formula(right, sig)
        imp = parse_formula("(%s) -> (%s)" % (left, right), sig)
        valid, _ = is_valid_in(imp, A)
        lt = formula_triple(lf, A, ("x",))
        rt = formula_triple(rf, A, ("x",))
        assert valid == (rt.minus <= lt.minus)


def test_quantifier_consistency_transfer():
    # the consistency of a quantified formula tracks some instance's consistency
    for A in (remark_structure(), singleton(dot={("a",)}), singleton(plus={("a",)})):
        sig = A.sig
        for text in (
            "(exists x. @P(x)) <-> @forall x. P(x)",
            "(exists x. @P(x)) <-> @exists x. P(x)",
        ):
            ok, w = is_valid_in(parse_formula(text, sig), A)
            assert ok, (text, w)


def test_propositional_instance_matches_matrix():
    sig = Signature(predicates={"p": 0, "q": 0})
    A = make_structure(
        sig,
        ("a",),
        preds={
            "p": make_triple({()}, set(), set()),
            "q": make_triple(set(), set(), {()}),
        },
    )
    from qciore.matrix3 import _schema

    f = parse_formula("(p -> q) & ~q", sig)
    v = {FVar("p"): ONE, FVar("q"): HALF}
    assert eval_formula(f, A, A.default_assignment()) == eval_prop(
        _schema("(p -> q) & ~q"), v, CIORE
    )


def test_substitution_lemma_samples():
    sig = Signature(predicates={"P": 1, "R": 2}, functions={"f": 1})
    A = make_structure(
        sig,
        ("a", "b"),
        preds={
            "P": make_triple({("a",)}, {("b",)}, set()),
            "R": make_triple(
                {("a", "a")}, {("a", "b"), ("b", "a")}, {("b", "b")}
            ),
        },
        funs={"f": {("a",): "b", ("b",): "b"}},
    )
    f = parse_formula("P(x) & exists y. R(x, y)", sig)
    t = parse_formula("P(f(z))", sig).args[0]
    for s in (A.default_assignment(), A.default_assignment().set("z", "b")):
        lhs = eval_formula(substitute(f, "x", t), A, s)
        rhs = eval_formula(f, A, s.set("x", eval_term(t, A, s)))
        assert lhs == rhs


def test_formula_triple_matches_pointwise_eval():
    A = remark_structure()
    sig = A.sig
    texts = [
        "P(x) -> forall y. P(y)",
        "exists y. (P(y) & ~P(x))",
        "@forall x. P(x)",
        "forall x. exists x. P(x)",  # shadowing
    ]
    for text in texts:
        f = parse_formula(text, sig)
        frame = ("x",)
        t = formula_triple(f, A, frame)
        for e in A.domain:
            s = Assignment("a", (("x", e),))
            assert t.value_at((e,)) == eval_formula(f, A, s)


def test_formula_triple_frame_checks():
    A = remark_structure()
    with pytest.raises(ValueError):
        formula_triple(parse_formula("P(x)", A.sig), A, ())
    with pytest.raises(ValueError):
        formula_triple(parse_formula("P(x)", A.sig), A, ("x", "x"))


def test_sentence_value_ignores_assignment():
    A = remark_structure()
    f = parse_formula("exists x. (P(x) & ~P(x))", A.sig)
    vals = {
        eval_formula(f, A, s)
        for s in (
            A.default_assignment(),
            Assignment("b"),
            Assignment("c", (("x", "a"),)),
        )
    }
    assert len(vals) == 1


def test_equality_structures():
    sig = Signature(predicates={"P": 1}, has_equality=True)
    dom = ("a", "b")
    P = make_triple({("a",)}, {("b",)}, set())
    classical = make_structure(sig, dom, preds={"P": P, "=": classical_equality(dom)})
    assert is_equality_structure(classical)
    ok, _ = is_valid_in(parse_formula("x = x", sig), classical)
    assert ok

    dubious_diag = make_structure(
        sig,
        dom,
        preds={
            "P": P,
            "=": make_triple(set(), {("a", "b"), ("b", "a")}, {("a", "a"), ("b", "b")}),
        },
    )
    assert is_equality_structure(dubious_diag)
    # a contradictory diagonal lets ~(x = x) hold
    assert holds(parse_formula("~x = x", sig), dubious_diag)

    bad = make_structure(
        sig,
        dom,
        preds={
            "P": P,
            "=": make_triple({("a", "b"), ("a", "a"), ("b", "b")}, {("b", "a")}, set()),
        },
    )
    assert not is_equality_structure(bad)

    with pytest.raises(ValueError):
        is_equality_structure(remark_structure())


def test_expand_with_names():
    A = remark_structure()
    B = expand_with_names(A, ["a", "c"])
    assert B.sig.constants == {"c_a", "c_c"}
    f = parse_formula("P(c_a)", B.sig)
    assert eval_formula(f, B, B.default_assignment()) == ONE
    assert reduct(B, A.sig) == A
    assert expand_with_names(A, []) == A
    with pytest.raises(ValueError):
        expand_with_names(B, ["a"])  # c_a already taken
    with pytest.raises(ValueError):
        expand_with_names(A, ["z"])


def test_structure_validation_errors():
    sig = Signature(predicates={"P": 1})
    with pytest.raises(ValueError):
        make_structure(sig, ())
    with pytest.raises(ValueError):
        make_structure(sig, ("a", "a"))
    with pytest.raises(ValueError):
        make_structure(sig, ("a",))  # P missing
    with pytest.raises(ValueError):
        make_structure(sig, ("a", "b"), preds={"P": make_triple({("a",)}, set(), set())})
    sigf = Signature(predicates={"P": 1}, functions={"f": 1})
    with pytest.raises(ValueError):
        make_structure(
            sigf,
            ("a", "b"),
            preds={"P": make_triple({("a",), ("b",)}, set(), set())},
            funs={"f": {("a",): "b"}},  # not total
        )
    with pytest.raises(ValueError):
        make_structure(
            sig,
            ("a",),
            preds={
                "P": make_triple({("a",)}, set(), set()),
                "Q": make_triple({("a",)}, set(), set()),
            },
        )


@given(st.sampled_from(["a", "b", "c"]), st.sampled_from(["a", "b", "c"]))
def test_default_element_never_leaks_into_sentences(d1, d2):
    A = remark_structure()
    f = parse_formula("(forall x. P(x)) -> exists y. ~P(y)", A.sig)
    assert eval_formula(f, A, Assignment(d1)) == eval_formula(f, A, Assignment(d2))
