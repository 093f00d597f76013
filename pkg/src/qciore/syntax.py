"""Terms, formulas, parsing and substitution for a three-valued first-order language.

The connectives are negation ``~``, consistency ``@``, conjunction ``&``,
disjunction ``|`` and implication ``->``.  Strong negation ``!a`` and the
biconditional ``<->`` are parsed as abbreviations (``~a & @a`` and
``(a -> b) & (b -> a)``) and never appear in the AST.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field


class ParseError(ValueError):
    pass


class CaptureError(ValueError):
    """A substitution would capture a variable (or hit a schema metavariable)."""


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fun: str
    args: tuple["Term", ...]

    def __str__(self) -> str:
        return "%s(%s)" % (self.fun, ", ".join(str(a) for a in self.args))


Term = Var | Const | App


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class FVar:
    """Formula metavariable, used in axiom schemas and schematic proofs.

    The parser never produces one; proof checking substitutes them in
    patterns and treats them as opaque atoms in proof steps.
    """

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg:
    sub: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Cons:
    sub: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return formula_to_str(self)


Formula = Pred | Eq | FVar | Neg | Cons | And | Or | Imp | Forall | Exists

BINARY_OPS = {And: "&", Or: "|", Imp: "->"}


def strong_neg(f: Formula) -> Formula:
    """The defined strong negation: ~f & @f."""
    return And(Neg(f), Cons(f))


# ---------------------------------------------------------------------------
# Signature


@dataclass
class Signature:
    """First-order signature: predicate/function arities plus constants."""

    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    constants: set[str] = field(default_factory=set)
    has_equality: bool = False


# ---------------------------------------------------------------------------
# Printing

_PREC_QUANT = 0
_PREC_IMP = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4
_PREC_ATOM = 5


def formula_to_str(f: Formula) -> str:
    """Render a formula so that parsing the result gives back an equal AST."""
    return _fmt(f, 0)


def _fmt(f: Formula, ctx: int) -> str:
    if isinstance(f, Pred):
        if not f.args:
            return f.name
        return "%s(%s)" % (f.name, ", ".join(str(a) for a in f.args))
    if isinstance(f, FVar):
        return f.name
    if isinstance(f, Eq):
        return "%s = %s" % (f.left, f.right)
    if isinstance(f, Neg):
        return "~" + _fmt(f.sub, _PREC_UNARY)
    if isinstance(f, Cons):
        return "@" + _fmt(f.sub, _PREC_UNARY)
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        s = "%s %s. %s" % (kw, f.var, _fmt(f.body, 0))
        # A quantifier swallows everything to its right, so it needs parens
        # whenever anything follows it.
        return "(%s)" % s if ctx > _PREC_QUANT else s
    if isinstance(f, And):
        s = "%s & %s" % (_fmt(f.left, _PREC_AND), _fmt(f.right, _PREC_AND + 1))
        return "(%s)" % s if ctx > _PREC_AND else s
    if isinstance(f, Or):
        s = "%s | %s" % (_fmt(f.left, _PREC_OR), _fmt(f.right, _PREC_OR + 1))
        return "(%s)" % s if ctx > _PREC_OR else s
    if isinstance(f, Imp):
        s = "%s -> %s" % (_fmt(f.left, _PREC_IMP + 1), _fmt(f.right, _PREC_IMP))
        return "(%s)" % s if ctx > _PREC_IMP else s
    raise TypeError("not a formula: %r" % (f,))


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<op><->|->|[()~@!&|,.=])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError("unexpected character %r at offset %d" % (rest[0], pos))
        if m.group("op"):
            toks.append(("op", m.group("op"), m.start()))
        else:
            toks.append(("ident", m.group("ident"), m.start()))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.sig = sig

    def error(self, msg: str) -> ParseError:
        if self.pos < len(self.toks):
            where = "at %r" % (self.toks[self.pos][1],)
        else:
            where = "at end of input"
        return ParseError("%s %s in %r" % (msg, where, self.text))

    def peek_op(self, op: str) -> bool:
        return (
            self.pos < len(self.toks)
            and self.toks[self.pos][0] == "op"
            and self.toks[self.pos][1] == op
        )

    def accept_op(self, op: str) -> bool:
        if self.peek_op(op):
            self.pos += 1
            return True
        return False

    def expect_op(self, op: str) -> None:
        if not self.accept_op(op):
            raise self.error("expected %r" % op)

    def expect_ident(self) -> str:
        if self.pos < len(self.toks) and self.toks[self.pos][0] == "ident":
            name = self.toks[self.pos][1]
            self.pos += 1
            return name
        raise self.error("expected an identifier")

    # formula levels, lowest precedence first

    def imp(self) -> Formula:
        left = self.disj()
        if self.accept_op("->"):
            return Imp(left, self.imp())
        if self.accept_op("<->"):
            right = self.imp()
            return And(Imp(left, right), Imp(right, left))
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.accept_op("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.accept_op("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept_op("~"):
            return Neg(self.unary())
        if self.accept_op("@"):
            return Cons(self.unary())
        if self.accept_op("!"):
            return strong_neg(self.unary())
        if self.pos < len(self.toks) and self.toks[self.pos][0] == "ident":
            word = self.toks[self.pos][1]
            if word in ("forall", "exists"):
                self.pos += 1
                var = self.expect_ident()
                self.expect_op(".")
                body = self.imp()  # scope extends as far right as possible
                return Forall(var, body) if word == "forall" else Exists(var, body)
        return self.atom()

    def atom(self) -> Formula:
        if self.accept_op("("):
            f = self.imp()
            self.expect_op(")")
            return f
        name = self.expect_ident()
        args: list[Term] = []
        had_parens = False
        if self.accept_op("("):
            had_parens = True
            args.append(self.term())
            while self.accept_op(","):
                args.append(self.term())
            self.expect_op(")")
        if self.accept_op("="):
            right = self.term()
            left = self.make_term(name, args, had_parens)
            return Eq(left, right)
        if self.sig is not None:
            if name in self.sig.functions or name in self.sig.constants:
                raise self.error("term symbol %r used as a predicate" % name)
            if name in self.sig.predicates:
                want = self.sig.predicates[name]
                if want != len(args):
                    raise self.error(
                        "predicate %s expects %d arguments, got %d"
                        % (name, want, len(args))
                    )
            else:
                raise self.error("unknown predicate %r" % name)
        return Pred(name, tuple(args))

    def term(self) -> Term:
        name = self.expect_ident()
        if self.accept_op("("):
            args = [self.term()]
            while self.accept_op(","):
                args.append(self.term())
            self.expect_op(")")
            return self.make_term(name, args, True)
        return self.make_term(name, [], False)

    def make_term(self, name: str, args: list[Term], had_parens: bool) -> Term:
        if had_parens:
            if self.sig is not None:
                want = self.sig.functions.get(name)
                if want is None:
                    raise self.error("unknown function %r" % name)
                if want != len(args):
                    raise self.error(
                        "function %s expects %d arguments, got %d"
                        % (name, want, len(args))
                    )
            return App(name, tuple(args))
        if self.sig is not None:
            if name in self.sig.constants:
                return Const(name)
            if name in self.sig.functions:
                raise self.error("function %r needs arguments" % name)
            if name in self.sig.predicates:
                raise self.error("predicate %r used as a term" % name)
        return Var(name)


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    """Parse ``text`` into a formula, validating symbols against ``sig``.

    With ``sig=None`` any identifier is accepted: applied identifiers in
    formula position become predicates, bare identifiers in term position
    become variables.
    """
    p = _Parser(text, sig)
    f = p.imp()
    if p.pos != len(p.toks):
        raise p.error("unexpected trailing input")
    return f


def parse_term(text: str, sig: Signature | None = None) -> Term:
    p = _Parser(text, sig)
    t = p.term()
    if p.pos != len(p.toks):
        raise p.error("unexpected trailing input")
    return t


# ---------------------------------------------------------------------------
# Variables and substitution


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    out: set[str] = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f: Formula) -> set[str]:
    """Free variables of a formula (metavariables contribute none)."""
    if isinstance(f, Pred):
        out: set[str] = set()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, FVar):
        return set()
    if isinstance(f, (Neg, Cons)):
        return free_vars(f.sub)
    if isinstance(f, (And, Or, Imp)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    raise TypeError("not a formula: %r" % (f,))


def all_vars(f: Formula) -> set[str]:
    """Every variable occurring in ``f``, free or bound."""
    if isinstance(f, (Forall, Exists)):
        return all_vars(f.body) | {f.var}
    if isinstance(f, (Neg, Cons)):
        return all_vars(f.sub)
    if isinstance(f, (And, Or, Imp)):
        return all_vars(f.left) | all_vars(f.right)
    return free_vars(f)


def is_free_for(t: Term, x: str, f: Formula) -> bool:
    """True when substituting ``t`` for free ``x`` in ``f`` captures nothing."""
    if t == Var(x):
        return True
    tv = term_vars(t)

    def rec(g: Formula) -> bool:
        if isinstance(g, (Pred, Eq)):
            return True
        if isinstance(g, FVar):
            # The metavariable may stand for anything, so only a closed term
            # is guaranteed capture-free.
            return not tv
        if isinstance(g, (Neg, Cons)):
            return rec(g.sub)
        if isinstance(g, (And, Or, Imp)):
            return rec(g.left) and rec(g.right)
        if g.var == x or x not in free_vars(g):
            return True
        return g.var not in tv and rec(g.body)

    return rec(f)


def substitute_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Const):
        return t
    return App(t.fun, tuple(substitute_term(a, x, s) for a in t.args))


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace every free occurrence of ``x`` in ``f`` by ``t``.

    Raises CaptureError if a replaced occurrence would fall inside the scope
    of a quantifier binding one of ``t``'s variables.
    """
    if t == Var(x):
        return f
    tv = term_vars(t)

    def rec(g: Formula) -> Formula:
        if isinstance(g, Pred):
            return Pred(g.name, tuple(substitute_term(a, x, t) for a in g.args))
        if isinstance(g, Eq):
            return Eq(substitute_term(g.left, x, t), substitute_term(g.right, x, t))
        if isinstance(g, FVar):
            raise CaptureError(
                "cannot substitute for %s inside metavariable %s" % (x, g.name)
            )
        if isinstance(g, Neg):
            return Neg(rec(g.sub))
        if isinstance(g, Cons):
            return Cons(rec(g.sub))
        if isinstance(g, And):
            return And(rec(g.left), rec(g.right))
        if isinstance(g, Or):
            return Or(rec(g.left), rec(g.right))
        if isinstance(g, Imp):
            return Imp(rec(g.left), rec(g.right))
        if g.var == x or x not in free_vars(g):
            return g
        if g.var in tv:
            raise CaptureError(
                "substituting %s for %s in %s captures %s" % (t, x, g, g.var)
            )
        body = rec(g.body)
        return Forall(g.var, body) if isinstance(g, Forall) else Exists(g.var, body)

    return rec(f)


def replace_some_matches(f: Formula, x: str, y: str, candidate: Formula) -> bool:
    """Is ``candidate`` obtainable from ``f`` by turning some (possibly zero,
    possibly all) free occurrences of variable ``x`` into ``y``?"""

    def rec_t(t: Term, c: Term, bound: frozenset[str]) -> bool:
        if t == c:
            return True
        if isinstance(t, Var) and t.name == x and x not in bound:
            return c == Var(y)
        if isinstance(t, App) and isinstance(c, App):
            return (
                t.fun == c.fun
                and len(t.args) == len(c.args)
                and all(rec_t(a, b, bound) for a, b in zip(t.args, c.args))
            )
        return False

    def rec(g: Formula, c: Formula, bound: frozenset[str]) -> bool:
        if type(g) is not type(c):
            return False
        if isinstance(g, Pred):
            return (
                g.name == c.name
                and len(g.args) == len(c.args)
                and all(rec_t(a, b, bound) for a, b in zip(g.args, c.args))
            )
        if isinstance(g, Eq):
            return rec_t(g.left, c.left, bound) and rec_t(g.right, c.right, bound)
        if isinstance(g, FVar):
            return g == c
        if isinstance(g, (Neg, Cons)):
            return rec(g.sub, c.sub, bound)
        if isinstance(g, (And, Or, Imp)):
            return rec(g.left, c.left, bound) and rec(g.right, c.right, bound)
        return g.var == c.var and rec(g.body, c.body, bound | {g.var})

    return rec(f, candidate, frozenset())


def universal_closure(f: Formula) -> Formula:
    """Bind the free variables of ``f`` universally, outermost first in
    lexicographic order."""
    for v in sorted(free_vars(f), reverse=True):
        f = Forall(v, f)
    return f


# ---------------------------------------------------------------------------
# Formula enumeration


def enumerate_formulas(sig: Signature, variables: list[str], max_depth: int):
    """Yield every formula over ``sig`` of depth <= max_depth exactly once.

    Atom arguments range over ``variables`` and the signature's constants;
    quantifiers bind variables from ``variables`` (shadowing permitted).
    The order is deterministic: by depth, then atoms / ~ / @ / forall /
    exists / & / | / -> within a level.
    """
    terms: list[Term] = [Var(v) for v in variables]
    terms += [Const(c) for c in sorted(sig.constants)]

    atoms: list[Formula] = []
    for name in sorted(sig.predicates):
        for args in itertools.product(terms, repeat=sig.predicates[name]):
            atoms.append(Pred(name, args))
    if sig.has_equality:
        for t1, t2 in itertools.product(terms, repeat=2):
            atoms.append(Eq(t1, t2))

    yield from atoms
    exact = atoms  # formulas of depth exactly d
    cumulative = list(atoms)  # depth <= d
    for _ in range(max_depth):
        prev_cumulative = cumulative[: len(cumulative) - len(exact)]
        level: list[Formula] = []
        for g in exact:
            level.append(Neg(g))
        for g in exact:
            level.append(Cons(g))
        for v in variables:
            for g in exact:
                level.append(Forall(v, g))
        for v in variables:
            for g in exact:
                level.append(Exists(v, g))
        for op in (And, Or, Imp):
            # at least one operand must sit at the previous exact depth
            for a in exact:
                for b in cumulative:
                    level.append(op(a, b))
            for a in prev_cumulative:
                for b in exact:
                    level.append(op(a, b))
        yield from level
        exact = level
        cumulative = cumulative + level
