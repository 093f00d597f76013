"""Hilbert-style proof checking: axiom schemas, rules, lemma citation.

A proof is a numbered list of formulas, each justified as a hypothesis, an
axiom instance, modus ponens, one of the two quantifier-introduction rules,
or an instance of a stored lemma chained through its premises.  Proofs may
be schematic: a formula metavariable stands for an arbitrary formula, and
every variable is conservatively assumed to occur free in it, so accepted
schematic proofs stay valid under instantiation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix3 import PROP_AXIOMS, is_tautology3
from .syntax import (
    And,
    CaptureError,
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
    is_free_for,
    replace_some_matches,
    substitute,
)

# ---------------------------------------------------------------------------
# Proof objects


@dataclass(frozen=True)
class AxiomRef:
    axiom_id: str


@dataclass(frozen=True)
class MP:
    i: int
    j: int  # step j must be (step i) -> (current)


@dataclass(frozen=True)
class ForallIn:
    i: int


@dataclass(frozen=True)
class ExistsIn:
    i: int


@dataclass(frozen=True)
class HypRef:
    k: int


@dataclass(frozen=True)
class LemmaRef:
    name: str
    premises: tuple[int, ...] = ()


Justification = AxiomRef | MP | ForallIn | ExistsIn | HypRef | LemmaRef


@dataclass(frozen=True)
class Step:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    name: str
    hypotheses: tuple[Formula, ...] = ()
    steps: tuple[Step, ...] = ()
    schema_atoms: frozenset = frozenset()
    # propositional lemmas declared in the header, admitted after a
    # truth-table check (sound by the matrix completeness of the calculus)
    taut_lemmas: tuple[tuple[str, Formula], ...] = ()

    @property
    def conclusion(self) -> Formula:
        return self.steps[-1].formula


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    failed_step: int | None = None  # 0 means a header declaration failed
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


class LemmaStore:
    """Named, checked lemma patterns; append-only, no redefinition."""

    def __init__(self):
        self._lemmas: dict[str, Formula] = {}

    def add(self, name: str, formula: Formula) -> None:
        old = self._lemmas.get(name)
        if old is not None and old != formula:
            raise ValueError("lemma %r already stored with a different formula" % name)
        self._lemmas[name] = formula

    def get(self, name: str) -> Formula | None:
        return self._lemmas.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._lemmas

    def names(self) -> list[str]:
        return sorted(self._lemmas)

    def copy(self) -> "LemmaStore":
        out = LemmaStore()
        out._lemmas = dict(self._lemmas)
        return out


# ---------------------------------------------------------------------------
# Conservative free-variable analysis


def possibly_free(x: str, f: Formula) -> bool:
    """Could ``x`` occur free in some instantiation of ``f``?

    Metavariables may contain anything, so they count as containing ``x``
    unless a quantifier on ``x`` stands above them.  On concrete formulas
    this is exactly ordinary freeness.
    """
    if isinstance(f, FVar):
        return True
    if isinstance(f, (Pred, Eq)):
        return x in free_vars(f)
    if isinstance(f, (Neg, Cons)):
        return possibly_free(x, f.sub)
    if isinstance(f, (And, Or, Imp)):
        return possibly_free(x, f.left) or possibly_free(x, f.right)
    if isinstance(f, (Forall, Exists)):
        return f.var != x and possibly_free(x, f.body)
    raise TypeError("not a formula: %r" % (f,))


# ---------------------------------------------------------------------------
# Pattern matching


def instantiate(pattern: Formula, env: dict) -> Formula:
    """Replace metavariables by formulas; unmapped ones are left alone."""
    if isinstance(pattern, FVar):
        return env.get(pattern.name, pattern)
    if isinstance(pattern, (Pred, Eq)):
        return pattern
    if isinstance(pattern, (Neg, Cons)):
        return type(pattern)(instantiate(pattern.sub, env))
    if isinstance(pattern, (And, Or, Imp)):
        return type(pattern)(
            instantiate(pattern.left, env), instantiate(pattern.right, env)
        )
    if isinstance(pattern, (Forall, Exists)):
        return type(pattern)(pattern.var, instantiate(pattern.body, env))
    raise TypeError("not a formula: %r" % (pattern,))


def schema_metavariables(pattern: Formula) -> tuple[str, ...]:
    """The metavariable names of a pattern, sorted."""
    out: set[str] = set()

    def walk(f: Formula) -> None:
        if isinstance(f, FVar):
            out.add(f.name)
        elif isinstance(f, (Neg, Cons)):
            walk(f.sub)
        elif isinstance(f, (And, Or, Imp)):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, (Forall, Exists)):
            walk(f.body)

    walk(pattern)
    return tuple(sorted(out))


def match_pattern(pattern: Formula, target: Formula, env: dict | None = None):
    """Match ``target`` against ``pattern``, binding metavariables.

    Returns the (extended) environment or None.  Bound variables and
    concrete atoms in the pattern must match exactly.
    """
    if env is None:
        env = {}
    if isinstance(pattern, FVar):
        bound = env.get(pattern.name)
        if bound is None:
            env = dict(env)
            env[pattern.name] = target
            return env
        return env if bound == target else None
    if type(pattern) is not type(target):
        return None
    if isinstance(pattern, (Pred, Eq)):
        return env if pattern == target else None
    if isinstance(pattern, (Neg, Cons)):
        return match_pattern(pattern.sub, target.sub, env)
    if isinstance(pattern, (And, Or, Imp)):
        env = match_pattern(pattern.left, target.left, env)
        if env is None:
            return None
        return match_pattern(pattern.right, target.right, env)
    if isinstance(pattern, (Forall, Exists)):
        if pattern.var != target.var:
            return None
        return match_pattern(pattern.body, target.body, env)
    raise TypeError("not a formula: %r" % (pattern,))


def _infer_term(body: Formula, x: str, instance: Formula) -> Term | None:
    """Find the term t with body(t/x) = instance, comparing in parallel.

    Occurrences of x bound inside ``body`` must match verbatim.  Returns
    Var(x) when the two formulas are identical (an identity substitution).
    """
    found: list[Term] = []

    def terms(a: Term, b: Term, shadowed: bool) -> bool:
        if isinstance(a, Var) and a.name == x and not shadowed:
            found.append(b)
            return True
        if type(a) is not type(b):
            return False
        if isinstance(a, (Var, Const)):
            return a == b
        return (
            a.fun == b.fun
            and len(a.args) == len(b.args)
            and all(terms(p, q, shadowed) for p, q in zip(a.args, b.args))
        )

    def walk(a: Formula, b: Formula, shadowed: bool) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Pred):
            return (
                a.name == b.name
                and len(a.args) == len(b.args)
                and all(terms(p, q, shadowed) for p, q in zip(a.args, b.args))
            )
        if isinstance(a, Eq):
            return terms(a.left, b.left, shadowed) and terms(a.right, b.right, shadowed)
        if isinstance(a, FVar):
            return a == b
        if isinstance(a, (Neg, Cons)):
            return walk(a.sub, b.sub, shadowed)
        if isinstance(a, (And, Or, Imp)):
            return walk(a.left, b.left, shadowed) and walk(a.right, b.right, shadowed)
        if isinstance(a, (Forall, Exists)):
            if a.var != b.var:
                return False
            return walk(a.body, b.body, shadowed or a.var == x)
        raise TypeError("not a formula: %r" % (a,))

    if not walk(body, instance, False):
        return None
    if not found:
        return Var(x)
    t = found[0]
    if any(u != t for u in found):
        return None
    return t


def _match_term_instance(f: Formula, quantifier, inst_on_left: bool):
    """Shared matcher for the two term-instantiation axioms.

    Shape: instance -> exists x. body (inst_on_left) or
    forall x. body -> instance.  Verifies the instance by substitution,
    which also enforces that the term is free for x.
    """
    if not isinstance(f, Imp):
        return None
    if inst_on_left:
        inst, quant = f.left, f.right
    else:
        quant, inst = f.left, f.right
    if not isinstance(quant, quantifier):
        return None
    x, body = quant.var, quant.body
    t = _infer_term(body, x, inst)
    if t is None:
        return None
    try:
        if substitute(body, x, t) != inst:
            return None
    except CaptureError:
        return None
    return {"x": x, "body": body, "t": t}


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    kind: str  # "pattern" | "ax11" | ... | "eq1" | "eq2"
    pattern: Formula | None = None


AXIOMS: dict[str, AxiomSchema] = {
    name: AxiomSchema(name, "pattern", f) for name, f in PROP_AXIOMS.items()
}
AXIOMS.update(
    {
        "Ax11": AxiomSchema("Ax11", "ax11"),
        "Ax12": AxiomSchema("Ax12", "ax12"),
        "Ax13": AxiomSchema("Ax13", "ax13"),
        "Ax14": AxiomSchema("Ax14", "ax14"),
        "Ax15": AxiomSchema("Ax15", "ax15"),
        "Ax16": AxiomSchema("Ax16", "ax16"),
        "Eq1": AxiomSchema("Eq1", "eq1"),
        "Eq2": AxiomSchema("Eq2", "eq2"),
    }
)


def match_schema(f: Formula, schema: AxiomSchema):
    """Match ``f`` as an instance of the axiom schema; None on failure."""
    kind = schema.kind
    if kind == "pattern":
        return match_pattern(schema.pattern, f)
    if kind == "ax11":  # body(t/x) -> exists x. body
        return _match_term_instance(f, Exists, inst_on_left=True)
    if kind == "ax12":  # forall x. body -> body(t/x)
        return _match_term_instance(f, Forall, inst_on_left=False)
    if kind in ("ax13", "ax14", "ax15", "ax16"):
        return _match_cons_quant(f, kind)
    if kind == "eq1":  # forall x. x = x
        if (
            isinstance(f, Forall)
            and isinstance(f.body, Eq)
            and f.body.left == Var(f.var)
            and f.body.right == Var(f.var)
        ):
            return {"x": f.var}
        return None
    if kind == "eq2":
        return _match_eq_subst(f)
    raise ValueError("unknown schema kind %r" % kind)


def _match_cons_quant(f: Formula, kind: str):
    """The four axioms moving the consistency sign through quantifiers."""
    if not isinstance(f, Imp):
        return None
    shapes = {
        # lhs shape, rhs shape: ("cons", Q) is @(Q x. body), (Q, "cons") is Q x. @body
        "ax13": (("cons", Exists), (Exists, "cons")),  # @(exists) -> exists @
        "ax14": (("cons", Forall), (Exists, "cons")),  # @(forall) -> exists @
        "ax15": ((Exists, "cons"), ("cons", Exists)),  # exists @ -> @(exists)
        "ax16": ((Exists, "cons"), ("cons", Forall)),  # exists @ -> @(forall)
    }

    def decompose(g: Formula, shape):
        if shape[0] == "cons":
            if isinstance(g, Cons) and isinstance(g.sub, shape[1]):
                return g.sub.var, g.sub.body
        else:
            if isinstance(g, shape[0]) and isinstance(g.body, Cons):
                return g.var, g.body.sub
        return None

    left = decompose(f.left, shapes[kind][0])
    right = decompose(f.right, shapes[kind][1])
    if left is None or right is None or left != right:
        return None
    return {"x": left[0], "body": left[1]}


def _match_eq_subst(f: Formula):
    """forall x. forall y. (x = y -> (phi -> phi')), phi' replacing some
    free x by y, with y free for x in phi."""
    if not (isinstance(f, Forall) and isinstance(f.body, Forall)):
        return None
    x, y = f.var, f.body.var
    inner = f.body.body
    if not (isinstance(inner, Imp) and inner.left == Eq(Var(x), Var(y))):
        return None
    if not isinstance(inner.right, Imp):
        return None
    phi, phi2 = inner.right.left, inner.right.right
    if not is_free_for(Var(y), x, phi):
        return None
    if not replace_some_matches(phi, x, y, phi2):
        return None
    return {"x": x, "y": y, "phi": phi, "phi2": phi2}


# ---------------------------------------------------------------------------
# Proof checking


def check_proof(p: Proof, sig: Signature, store: LemmaStore | None = None) -> Verdict:
    """Check every step of ``p``; stops at the first failure.

    Lemma citations resolve against ``store`` plus the proof's own header
    declarations; nothing is added to ``store`` here (see
    check_proof_sequence for session accumulation).
    """
    working = store.copy() if store is not None else LemmaStore()
    for name, formula in p.taut_lemmas:
        try:
            ok, witness = is_tautology3(formula)
        except ValueError as e:
            return Verdict(False, 0, "declared lemma %s: %s" % (name, e))
        if not ok:
            counter = {str(k): str(v) for k, v in sorted(witness.items(), key=str)}
            return Verdict(
                False, 0, "declared lemma %s is not a tautology (%s)" % (name, counter)
            )
        try:
            working.add(name, formula)
        except ValueError as e:
            return Verdict(False, 0, str(e))

    for idx, step in enumerate(p.steps, 1):
        reason = _check_step(p, sig, working, idx, step)
        if reason is not None:
            return Verdict(False, idx, reason)
    if not p.steps:
        return Verdict(False, 0, "empty proof")
    return Verdict(True)


def _check_step(p, sig, store, idx, step) -> str | None:
    f, just = step.formula, step.just

    def earlier(i):
        if not (1 <= i < idx):
            return None
        return p.steps[i - 1].formula

    if isinstance(just, HypRef):
        if not (1 <= just.k <= len(p.hypotheses)):
            return "hypothesis %d does not exist" % just.k
        if p.hypotheses[just.k - 1] != f:
            return "formula differs from hypothesis %d" % just.k
        return None

    if isinstance(just, AxiomRef):
        schema = AXIOMS.get(just.axiom_id)
        if schema is None:
            return "unknown axiom %r" % just.axiom_id
        if schema.kind in ("eq1", "eq2") and not sig.has_equality:
            return "axiom %s needs an equality signature" % schema.name
        if match_schema(f, schema) is None:
            return "not an instance of %s" % schema.name
        return None

    if isinstance(just, MP):
        minor = earlier(just.i)
        major = earlier(just.j)
        if minor is None or major is None:
            return "modus ponens cites steps that are not earlier"
        if major != Imp(minor, f):
            return "step %d is not (step %d -> this formula)" % (just.j, just.i)
        return None

    if isinstance(just, ForallIn):
        prem = earlier(just.i)
        if prem is None:
            return "cited step is not earlier"
        if not (isinstance(f, Imp) and isinstance(f.right, Forall)):
            return "conclusion must have shape a -> forall x. b"
        x = f.right.var
        if prem != Imp(f.left, f.right.body):
            return "step %d does not match the premise shape" % just.i
        if possibly_free(x, f.left):
            return "variable %s may occur free in the antecedent" % x
        return None

    if isinstance(just, ExistsIn):
        prem = earlier(just.i)
        if prem is None:
            return "cited step is not earlier"
        if not (isinstance(f, Imp) and isinstance(f.left, Exists)):
            return "conclusion must have shape (exists x. a) -> b"
        x = f.left.var
        if prem != Imp(f.left.body, f.right):
            return "step %d does not match the premise shape" % just.i
        if possibly_free(x, f.right):
            return "variable %s may occur free in the consequent" % x
        return None

    if isinstance(just, LemmaRef):
        pattern = store.get(just.name)
        if pattern is None:
            return "no lemma named %r in the store" % just.name
        chain = f
        for i in reversed(just.premises):
            prem = earlier(i)
            if prem is None:
                return "lemma premise %d is not an earlier step" % i
            chain = Imp(prem, chain)
        if match_pattern(pattern, chain) is None:
            return "not an instance of lemma %s under the cited premises" % just.name
        return None

    return "unrecognized justification %r" % (just,)


def check_proof_sequence(
    proofs, sig: Signature, store: LemmaStore | None = None
) -> tuple[list[Verdict], LemmaStore]:
    """Check proofs in order, accumulating lemmas from accepted ones.

    An accepted proof contributes its header declarations and — when it has
    no hypotheses — its conclusion under the proof's name.
    """
    store = store.copy() if store is not None else LemmaStore()
    verdicts = []
    for p in proofs:
        v = check_proof(p, sig, store)
        verdicts.append(v)
        if v.accepted:
            for name, formula in p.taut_lemmas:
                store.add(name, formula)
            if not p.hypotheses:
                store.add(p.name, p.conclusion)
    return verdicts, store


def wdmt_side_condition(p: Proof, phi: Formula) -> bool:
    """May the deduction step discharge ``phi``?

    True when no quantifier-introduction step generalizes on a variable
    (possibly) free in ``phi``.  ``phi`` must be one of the hypotheses.
    """
    if phi not in p.hypotheses:
        raise ValueError("%s is not a hypothesis of %s" % (phi, p.name))
    for step in p.steps:
        if isinstance(step.just, ForallIn) and isinstance(step.formula, Imp):
            if isinstance(step.formula.right, Forall) and possibly_free(
                step.formula.right.var, phi
            ):
                return False
        if isinstance(step.just, ExistsIn) and isinstance(step.formula, Imp):
            if isinstance(step.formula.left, Exists) and possibly_free(
                step.formula.left.var, phi
            ):
                return False
    return True
