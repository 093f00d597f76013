"""Shared structure builders for the test suite."""

from qciore.structures import Structure, classical_equality, make_structure
from qciore.syntax import Signature
from qciore.triples import make_triple

SIG_P1 = Signature(predicates={"P": 1})


def remark_structure() -> Structure:
    """Domain {a,b,c} with P true at a and dubious at b, c."""
    return make_structure(
        SIG_P1,
        ("a", "b", "c"),
        preds={"P": make_triple({("a",)}, set(), {("b",), ("c",)})},
    )


def singleton(plus=(), minus=(), dot=(), with_equality=False) -> Structure:
    """One-element structure over P/1 with the given P classes."""
    sig = Signature(predicates={"P": 1}, has_equality=with_equality)
    preds = {"P": make_triple(set(plus), set(minus), set(dot))}
    if with_equality:
        preds["="] = classical_equality(("a",))
    return make_structure(sig, ("a",), preds=preds)
