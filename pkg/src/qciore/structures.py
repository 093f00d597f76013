"""Finite partial structures and 3-valued first-order evaluation.

A structure interprets each predicate as a triple over domain tuples (holds
/ fails / dubious), functions and constants classically.  Quantifiers are
evaluated through the value-set functions: a universal claim is true when
some instance is true and none is false, an existential claim is false only
when every instance is false.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .matrix3 import CIORE, DESIGNATED, HALF, Matrix, ONE, ZERO
from .syntax import (
    And,
    App,
    Cons,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    FVar,
    Imp,
    Neg,
    Or,
    Pred,
    Signature,
    Term,
    Var,
    free_vars,
)
from .triples import Triple, make_triple, triple_from_map, triple_op

POS, NEG, BOTH = "POS", "NEG", "BOTH"

EQ = "="  # key for the equality interpretation in Structure.preds


@dataclass(frozen=True)
class Assignment:
    """A finite-support assignment: explicit pairs, default elsewhere."""

    default: object
    pairs: tuple = ()  # (variable, element), sorted by variable

    def get(self, x: str):
        for var, val in self.pairs:
            if var == x:
                return val
        return self.default

    def set(self, x: str, a) -> "Assignment":
        kept = tuple(p for p in self.pairs if p[0] != x)
        return Assignment(self.default, tuple(sorted(kept + ((x, a),))))

    def __str__(self) -> str:
        body = ", ".join("%s=%s" % (v, e) for v, e in self.pairs)
        return "{%s; default %s}" % (body, self.default)


@dataclass
class Structure:
    sig: Signature
    domain: tuple
    preds: dict[str, Triple] = field(default_factory=dict)
    funs: dict[str, dict[tuple, object]] = field(default_factory=dict)
    consts: dict[str, object] = field(default_factory=dict)

    def default_assignment(self) -> Assignment:
        return Assignment(self.domain[0])


def make_structure(
    sig: Signature,
    domain,
    preds: dict[str, Triple] | None = None,
    funs: dict[str, dict] | None = None,
    consts: dict[str, object] | None = None,
) -> Structure:
    """Build and validate a structure over ``sig``."""
    domain = tuple(domain)
    if not domain:
        raise ValueError("domain must be nonempty")
    if len(set(domain)) != len(domain):
        raise ValueError("domain repeats an element")
    A = Structure(sig, domain, dict(preds or {}), dict(funs or {}), dict(consts or {}))
    validate_structure(A)
    return A


def validate_structure(A: Structure) -> None:
    sig = A.sig
    dom = set(A.domain)
    wanted = dict(sig.predicates)
    if sig.has_equality:
        wanted[EQ] = 2
    for name, arity in wanted.items():
        t = A.preds.get(name)
        if t is None:
            raise ValueError("no interpretation for predicate %s" % name)
        full = frozenset(itertools.product(A.domain, repeat=arity))
        if t.carrier != full:
            raise ValueError(
                "predicate %s: triple carrier does not cover domain^%d" % (name, arity)
            )
    for name in A.preds:
        if name not in wanted:
            raise ValueError("interpretation for undeclared predicate %s" % name)
    for name, arity in sig.functions.items():
        fmap = A.funs.get(name)
        if fmap is None:
            raise ValueError("no interpretation for function %s" % name)
        full = set(itertools.product(A.domain, repeat=arity))
        if set(fmap) != full:
            raise ValueError("function %s is not total on domain^%d" % (name, arity))
        for out in fmap.values():
            if out not in dom:
                raise ValueError("function %s maps outside the domain" % name)
    for name in A.funs:
        if name not in sig.functions:
            raise ValueError("interpretation for undeclared function %s" % name)
    for name in sig.constants:
        if A.consts.get(name) not in dom:
            raise ValueError("constant %s has no domain value" % name)
    for name in A.consts:
        if name not in sig.constants:
            raise ValueError("interpretation for undeclared constant %s" % name)


# ---------------------------------------------------------------------------
# Evaluation


def eval_term(t: Term, A: Structure, s: Assignment):
    if isinstance(t, Var):
        return s.get(t.name)
    if isinstance(t, Const):
        try:
            return A.consts[t.name]
        except KeyError:
            raise ValueError("structure does not interpret constant %s" % t.name) from None
    if isinstance(t, App):
        args = tuple(eval_term(a, A, s) for a in t.args)
        try:
            return A.funs[t.fun][args]
        except KeyError:
            raise ValueError("structure does not interpret %s on %s" % (t.fun, args)) from None
    raise TypeError("not a term: %r" % (t,))


def tilde_forall(Y: set) -> Fraction:
    """Value of a universal claim from the set of instance values."""
    if ZERO in Y:
        return ZERO
    if ONE in Y:
        return ONE
    return HALF  # Y == {1/2}


def tilde_exists(Y: set) -> Fraction:
    """Value of an existential claim from the set of instance values.

    Only the all-false set gives 0 and only the all-dubious set gives 1/2;
    every mixed set counts as 1, including {0, 1/2}.
    """
    if Y == {ZERO}:
        return ZERO
    if Y == {HALF}:
        return HALF
    return ONE


def eval_formula(
    f: Formula,
    A: Structure,
    s: Assignment,
    memo: dict | None = None,
    matrix: Matrix = CIORE,
) -> Fraction:
    """The 3-valued value of ``f`` in ``A`` under ``s``.

    ``memo`` may be supplied to share work across calls; it is keyed by
    (id(subformula), assignment), so the caller must keep the formula
    objects alive and use one memo per structure and matrix.  ``matrix``
    supplies the connective tables (quantifiers always use the fixed
    set-based rules) — useful for demonstrating what breaks under a
    mutated table.
    """
    if memo is not None:
        key = (id(f), s)
        hit = memo.get(key)
        if hit is not None:
            return hit
    v = _eval(f, A, s, memo, matrix)
    if memo is not None:
        memo[key] = v
    return v


def _eval(f: Formula, A: Structure, s: Assignment, memo, matrix: Matrix) -> Fraction:
    if isinstance(f, Pred):
        args = tuple(eval_term(t, A, s) for t in f.args)
        t = A.preds.get(f.name)
        if t is None:
            raise ValueError("structure does not interpret predicate %s" % f.name)
        return t.value_at(args)
    if isinstance(f, Eq):
        t = A.preds.get(EQ)
        if t is None:
            raise ValueError("structure does not interpret equality")
        pair = (eval_term(f.left, A, s), eval_term(f.right, A, s))
        return t.value_at(pair)
    if isinstance(f, FVar):
        raise ValueError("metavariable %s in a concrete formula" % f.name)
    if isinstance(f, (Neg, Cons)):
        op = "~" if isinstance(f, Neg) else "@"
        table = matrix.unary.get(op)
        if table is None:
            raise ValueError("%s does not interpret %s" % (matrix.name, op))
        return table[eval_formula(f.sub, A, s, memo, matrix)]
    if isinstance(f, (And, Or, Imp)):
        op = {And: "&", Or: "|", Imp: "->"}[type(f)]
        table = matrix.binary.get(op)
        if table is None:
            raise ValueError("%s does not interpret %s" % (matrix.name, op))
        return table[
            (
                eval_formula(f.left, A, s, memo, matrix),
                eval_formula(f.right, A, s, memo, matrix),
            )
        ]
    if isinstance(f, (Forall, Exists)):
        Y = {
            eval_formula(f.body, A, s.set(f.var, a), memo, matrix) for a in A.domain
        }
        return tilde_forall(Y) if isinstance(f, Forall) else tilde_exists(Y)
    raise TypeError("not a formula: %r" % (f,))


def holds(f: Formula, A: Structure, s: Assignment | None = None) -> bool:
    """True when the value of ``f`` is designated (1 or 1/2)."""
    if s is None:
        s = A.default_assignment()
    return eval_formula(f, A, s) in DESIGNATED


def assignments_over(A: Structure, frame: tuple[str, ...]):
    """All assignments on ``frame``, lexicographic in domain order."""
    for combo in itertools.product(A.domain, repeat=len(frame)):
        yield Assignment(A.domain[0], tuple(sorted(zip(frame, combo))))


def is_valid_in(
    f: Formula, A: Structure, matrix: Matrix = CIORE
) -> tuple[bool, Assignment | None]:
    """Check designation under every assignment on f's free variables.

    Returns (True, None) or (False, least-refuting-assignment), where
    assignments are ordered by the domain order on sorted free variables.
    """
    frame = tuple(sorted(free_vars(f)))
    memo: dict = {}
    for s in assignments_over(A, frame):
        if eval_formula(f, A, s, memo, matrix) not in DESIGNATED:
            return False, s
    return True, None


def formula_triple(
    f: Formula, A: Structure, frame: tuple[str, ...], memo: dict | None = None
) -> Triple:
    """The semantic triple of ``f`` over assignment tuples aligned with ``frame``.

    Uses the set-valued route: atom triples from the structure, connective
    triples via the pointwise table lift, quantifier triples from the
    value-set functions along the quantified coordinate.  ``memo`` is keyed
    by (id(subformula), frame); one memo per structure.
    """
    frame = tuple(frame)
    if len(set(frame)) != len(frame):
        raise ValueError("frame repeats a variable")
    missing = free_vars(f) - set(frame)
    if missing:
        raise ValueError("frame %s misses free variables %s" % (frame, sorted(missing)))
    return _triple(f, A, frame, memo if memo is not None else {})


def _triple(f: Formula, A: Structure, frame: tuple[str, ...], memo: dict) -> Triple:
    key = (id(f), frame)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(f, (Pred, Eq)):
        out = triple_from_map(
            {
                tup: eval_formula(f, A, Assignment(A.domain[0], tuple(sorted(zip(frame, tup)))))
                for tup in itertools.product(A.domain, repeat=len(frame))
            }
        )
    elif isinstance(f, (Neg, Cons)):
        op = "~" if isinstance(f, Neg) else "@"
        out = triple_op(op, _triple(f.sub, A, frame, memo))
    elif isinstance(f, (And, Or, Imp)):
        op = {And: "&", Or: "|", Imp: "->"}[type(f)]
        out = triple_op(
            op, _triple(f.left, A, frame, memo), _triple(f.right, A, frame, memo)
        )
    elif isinstance(f, (Forall, Exists)):
        x = f.var
        if x in frame:
            aux_frame = frame
            pos = frame.index(x)
        else:
            aux_frame = frame + (x,)
            pos = len(frame)
        sub = _triple(f.body, A, aux_frame, memo)
        tilde = tilde_forall if isinstance(f, Forall) else tilde_exists
        values = {}
        for tup in itertools.product(A.domain, repeat=len(frame)):
            aux = tup if x in frame else tup + (A.domain[0],)
            Y = {
                sub.value_at(aux[:pos] + (a,) + aux[pos + 1 :]) for a in A.domain
            }
            values[tup] = tilde(Y)
        out = triple_from_map(values)
    elif isinstance(f, FVar):
        raise ValueError("metavariable %s in a concrete formula" % f.name)
    else:
        raise TypeError("not a formula: %r" % (f,))
    memo[key] = out
    return out


def sentence_trichotomy(f: Formula, A: Structure) -> str:
    """Classify a sentence as POS (true), NEG (false) or BOTH (contradictory)."""
    fv = free_vars(f)
    if fv:
        raise ValueError("not a sentence; free variables %s" % sorted(fv))
    v = eval_formula(f, A, A.default_assignment())
    if v == ONE:
        return POS
    if v == ZERO:
        return NEG
    return BOTH


# ---------------------------------------------------------------------------
# Equality structures and name expansion


def classical_equality(domain) -> Triple:
    """The (diagonal, off-diagonal, empty) equality triple."""
    domain = tuple(domain)
    diag = {(a, a) for a in domain}
    off = {p for p in itertools.product(domain, repeat=2) if p[0] != p[1]}
    return make_triple(diag, off, set())


def is_equality_structure(A: Structure) -> bool:
    """True when the equality triple never affirms off-diagonal pairs and
    covers the whole diagonal positively or dubiously."""
    if not A.sig.has_equality:
        raise ValueError("signature has no equality")
    eq = A.preds[EQ]
    diag = frozenset((a, a) for a in A.domain)
    return eq.plus | eq.dot == diag


def expand_with_names(A: Structure, elements) -> Structure:
    """Expand with a fresh constant ``c_<e>`` naming each given element."""
    elements = list(elements)
    for e in elements:
        if e not in A.domain:
            raise ValueError("%r is not a domain element" % (e,))
    names = {e: "c_%s" % (e,) for e in elements}
    clash = sorted(set(names.values()) & A.sig.constants)
    if clash:
        raise ValueError("constant names already taken: %s" % clash)
    sig = Signature(
        dict(A.sig.predicates),
        dict(A.sig.functions),
        set(A.sig.constants) | set(names.values()),
        A.sig.has_equality,
    )
    consts = dict(A.consts)
    consts.update({name: e for e, name in names.items()})
    return Structure(sig, A.domain, dict(A.preds), dict(A.funs), consts)


def reduct(A: Structure, sig: Signature) -> Structure:
    """Forget the interpretations outside ``sig``."""
    if not (
        set(sig.predicates) <= set(A.sig.predicates)
        and set(sig.functions) <= set(A.sig.functions)
        and sig.constants <= A.sig.constants
        and sig.has_equality <= A.sig.has_equality
    ):
        raise ValueError("not a subsignature")
    keep = set(sig.predicates) | ({EQ} if sig.has_equality else set())
    return Structure(
        sig,
        A.domain,
        {k: v for k, v in A.preds.items() if k in keep},
        {k: v for k, v in A.funs.items() if k in sig.functions},
        {k: v for k, v in A.consts.items() if k in sig.constants},
    )
