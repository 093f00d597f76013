"""Exhaustive enumeration of finite structures and countermodel search.

Enumeration order is a fixed lexicographic product over interpretation
tables, so "first countermodel" is well defined and reproducible.  The
search never claims consequence: it reports either a re-checked refuting
structure or the absence of countermodels up to the size bound.  The
soundness harness instantiates every axiom schema over a generated formula
pool and asserts validity in every structure up to a size bound, and checks
that the three inference rules preserve validity structure by structure.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .hilbert import instantiate, possibly_free, schema_metavariables
from .matrix3 import CIORE, DESIGNATED, Matrix, PROP_AXIOMS, ZERO
from .structures import (
    Assignment,
    Structure,
    assignments_over,
    eval_formula,
    is_valid_in,
    make_structure,
)
from .syntax import (
    CaptureError,
    Cons,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Imp,
    Signature,
    Var,
    enumerate_formulas,
    free_vars,
    substitute,
)
from .triples import all_triples, make_triple

# ---------------------------------------------------------------------------
# Enumeration


def _equality_interpretations(domain: tuple, equality_normal: bool):
    """Interpretations of the equality predicate over ``domain``.

    Normal mode yields the diagonal-respecting triples: every diagonal pair
    is definitely-in or dubious, every off-diagonal pair definitely-out.
    Otherwise equality ranges over all triples like any binary predicate.
    """
    pairs = tuple(itertools.product(domain, repeat=2))
    if not equality_normal:
        yield from all_triples(pairs)
        return
    off = frozenset(p for p in pairs if p[0] != p[1])
    for mask in itertools.product((False, True), repeat=len(domain)):
        plus = frozenset((a, a) for a, dubious in zip(domain, mask) if not dubious)
        dot = frozenset((a, a) for a, dubious in zip(domain, mask) if dubious)
        yield make_triple(plus, off, dot)


def enumerate_structures(sig: Signature, n: int, equality_normal: bool = True):
    """Every structure with domain (e1..en), each exactly once.

    The order is deterministic: predicates in sorted name order, each
    ranging over all class assignments; then functions in sorted name order
    over all total maps; then constants in sorted name order over all
    elements; equality last.
    """
    if n < 1:
        raise ValueError("domain size must be at least 1")
    domain = tuple("e%d" % i for i in range(1, n + 1))
    pred_names = sorted(sig.predicates)
    fun_names = sorted(sig.functions)
    const_names = sorted(sig.constants)

    factors = []
    for name in pred_names:
        carrier = tuple(itertools.product(domain, repeat=sig.predicates[name]))
        factors.append(list(all_triples(carrier)))
    for name in fun_names:
        keys = tuple(itertools.product(domain, repeat=sig.functions[name]))
        factors.append(
            [
                dict(zip(keys, values))
                for values in itertools.product(domain, repeat=len(keys))
            ]
        )
    factors.append(list(itertools.product(domain, repeat=len(const_names))))
    if sig.has_equality:
        factors.append(list(_equality_interpretations(domain, equality_normal)))

    np, nf = len(pred_names), len(fun_names)
    for combo in itertools.product(*factors):
        preds = dict(zip(pred_names, combo[:np]))
        funs = dict(zip(fun_names, combo[np : np + nf]))
        consts = dict(zip(const_names, combo[np + nf]))
        if sig.has_equality:
            preds["="] = combo[-1]
        yield make_structure(sig, domain, preds, funs, consts)


def structure_count(sig: Signature, n: int, equality_normal: bool = True) -> int:
    """How many structures enumerate_structures yields, in closed form."""
    total = 1
    for arity in sig.predicates.values():
        total *= 3 ** (n**arity)
    for arity in sig.functions.values():
        total *= n ** (n**arity)
    total *= n ** len(sig.constants)
    if sig.has_equality:
        total *= 2**n if equality_normal else 3 ** (n * n)
    return total


# ---------------------------------------------------------------------------
# Countermodel search


@dataclass(frozen=True)
class SearchSpec:
    sig: Signature
    phi: Formula
    gamma: tuple[Formula, ...] = ()
    max_domain_size: int = 3
    equality_normal: bool = True
    max_structures: int | None = None
    time_budget_s: float | None = None

    def __post_init__(self):
        if self.max_domain_size < 1:
            raise ValueError("max_domain_size must be at least 1")


@dataclass
class SearchResult:
    found: bool
    structure: Structure | None = None
    assignment: Assignment | None = None
    value: Fraction | None = None
    size: int | None = None
    structures_checked: int = 0
    exhausted: bool = False
    limit_hit: str | None = None


def find_countermodel(spec: SearchSpec, progress=None, progress_every: int = 1000):
    """First structure where every premise is valid and phi is not.

    Returns the least refuting assignment with it; the refutation is
    re-evaluated from scratch before being reported.  ``progress``, if
    given, is called with (structures checked, elapsed seconds) every
    ``progress_every`` structures.
    """
    t0 = time.monotonic()
    checked = 0
    for n in range(1, spec.max_domain_size + 1):
        for A in enumerate_structures(spec.sig, n, spec.equality_normal):
            if spec.max_structures is not None and checked >= spec.max_structures:
                return SearchResult(
                    found=False, structures_checked=checked, limit_hit="structure budget"
                )
            if (
                spec.time_budget_s is not None
                and time.monotonic() - t0 > spec.time_budget_s
            ):
                return SearchResult(
                    found=False, structures_checked=checked, limit_hit="time budget"
                )
            checked += 1
            if progress is not None and checked % progress_every == 0:
                progress(checked, time.monotonic() - t0)
            if not all(is_valid_in(g, A)[0] for g in spec.gamma):
                continue
            ok, witness = is_valid_in(spec.phi, A)
            if ok:
                continue
            value = eval_formula(spec.phi, A, witness)
            if value in DESIGNATED or not all(
                is_valid_in(g, A)[0] for g in spec.gamma
            ):
                raise RuntimeError("countermodel failed its own re-check")
            return SearchResult(
                found=True,
                structure=A,
                assignment=witness,
                value=value,
                size=n,
                structures_checked=checked,
            )
    return SearchResult(found=False, structures_checked=checked, exhausted=True)


def check_consequence_bounded(
    gamma, phi: Formula, sig: Signature, max_domain_size: int, **limits
) -> SearchResult:
    """One-sided consequence check: a refutation or exhaustion, never a
    claim that the consequence holds outright."""
    spec = SearchSpec(
        sig=sig,
        phi=phi,
        gamma=tuple(gamma),
        max_domain_size=max_domain_size,
        **limits,
    )
    return find_countermodel(spec)


# ---------------------------------------------------------------------------
# Soundness harness


QUANT_AXIOM_IDS = ("Ax11", "Ax12", "Ax13", "Ax14", "Ax15", "Ax16")
EQ_AXIOM_IDS = ("Eq1", "Eq2")


@dataclass(frozen=True)
class Violation:
    kind: str  # "axiom" or "rule"
    name: str
    formula: Formula
    structure: Structure
    assignment: Assignment | None


@dataclass
class HarnessReport:
    structures_checked: int = 0
    axiom_checks: int = 0
    rule_checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _quantifier_axiom_instances(pool, variables, terms):
    """Concrete instances of the six quantifier axioms over the pool."""
    out = []
    for phi in pool:
        for x in variables:
            for t in terms:
                try:
                    inst = substitute(phi, x, t)
                except CaptureError:
                    continue
                out.append(("Ax11", Imp(inst, Exists(x, phi))))
                out.append(("Ax12", Imp(Forall(x, phi), inst)))
            out.append(("Ax13", Imp(Cons(Exists(x, phi)), Exists(x, Cons(phi)))))
            out.append(("Ax14", Imp(Cons(Forall(x, phi)), Exists(x, Cons(phi)))))
            out.append(("Ax15", Imp(Exists(x, Cons(phi)), Cons(Exists(x, phi)))))
            out.append(("Ax16", Imp(Exists(x, Cons(phi)), Cons(Forall(x, phi)))))
    return out


def _equality_axiom_instances(pool, variables, extra_var):
    out = []
    for x in variables:
        out.append(("Eq1", Forall(x, Eq(Var(x), Var(x)))))
    for phi in pool:
        for x in variables:
            y = extra_var if extra_var != x else variables[0]
            if y == x:
                continue
            header = Eq(Var(x), Var(y))
            # replacing no occurrence, and replacing every free occurrence
            out.append(("Eq2", Forall(x, Forall(y, Imp(header, Imp(phi, phi))))))
            try:
                replaced = substitute(phi, x, Var(y))
            except CaptureError:
                continue
            out.append(("Eq2", Forall(x, Forall(y, Imp(header, Imp(phi, replaced))))))
    return out


def soundness_harness(
    sig: Signature,
    axiom_pool=None,
    instance_depth: int = 1,
    max_size: int = 2,
    variables: tuple[str, ...] = ("x",),
    matrix: Matrix = CIORE,
    equality_normal: bool = True,
) -> HarnessReport:
    """Validity of axiom instances, and validity preservation of the rules.

    Every schema in ``axiom_pool`` (default: all of them) is instantiated
    with formulas of depth ≤ ``instance_depth`` over ``variables`` and
    checked for validity in every structure of size ≤ ``max_size``.  The
    propositional schemas are instantiated per structure over one
    representative formula per distinct value vector — an instance's values
    depend on its components only through those vectors, so this covers the
    whole pool.  Rule preservation (modus ponens and the two quantifier
    introductions) is checked over the full pool in every structure.
    """
    pool = list(enumerate_formulas(sig, variables, instance_depth))
    if axiom_pool is None:
        axiom_pool = (
            list(PROP_AXIOMS)
            + list(QUANT_AXIOM_IDS)
            + (list(EQ_AXIOM_IDS) if sig.has_equality else [])
        )
    prop_ids = [a for a in axiom_pool if a in PROP_AXIOMS]
    quant_ids = [a for a in axiom_pool if a in QUANT_AXIOM_IDS]
    eq_ids = [a for a in axiom_pool if a in EQ_AXIOM_IDS]
    unknown = [a for a in axiom_pool if a not in set(prop_ids + quant_ids + eq_ids)]
    if unknown:
        raise ValueError("unknown axiom schemas: %s" % ", ".join(unknown))

    extra_var = next(v for v in ("y", "z", "w", "u", "x0") if v not in variables)
    terms = (
        [Var(v) for v in variables]
        + [Var(extra_var)]
        + [Const(c) for c in sorted(sig.constants)]
    )
    fixed_instances = [
        (name, f)
        for name, f in _quantifier_axiom_instances(pool, variables, terms)
        if name in quant_ids
    ]
    if eq_ids:
        fixed_instances += [
            (name, f)
            for name, f in _equality_axiom_instances(pool, variables, extra_var)
            if name in eq_ids
        ]

    # rule templates over the full pool, built once
    imps = {}
    for a in pool:
        for b in pool:
            imps[(id(a), id(b))] = Imp(a, b)
    forall_in = [
        (imps[(id(a), id(b))], Imp(a, Forall(x, b)))
        for a in pool
        for b in pool
        for x in variables
        if not possibly_free(x, a)
    ]
    exists_in = [
        (imps[(id(a), id(b))], Imp(Exists(x, a), b))
        for a in pool
        for b in pool
        for x in variables
        if not possibly_free(x, b)
    ]

    prop_schemas = [
        (name, PROP_AXIOMS[name], schema_metavariables(PROP_AXIOMS[name]))
        for name in prop_ids
    ]
    frame = tuple(sorted(variables))
    report = HarnessReport()

    for n in range(1, max_size + 1):
        for A in enumerate_structures(sig, n, equality_normal):
            report.structures_checked += 1
            memo: dict = {}
            space = list(assignments_over(A, frame))

            def vector(f):
                return tuple(eval_formula(f, A, s, memo, matrix) for s in space)

            def first_failure(f):
                for s in space:
                    if eval_formula(f, A, s, memo, matrix) == ZERO:
                        return s
                return None

            # one representative pool formula per distinct value vector
            reps = []
            seen = set()
            for f in pool:
                v = vector(f)
                if v not in seen:
                    seen.add(v)
                    reps.append(f)

            # the memo is keyed by object identity, so every formula built
            # while it is live must be kept alive alongside it
            alive = []
            for name, pattern, mvars in prop_schemas:
                for combo in itertools.product(reps, repeat=len(mvars)):
                    inst = instantiate(pattern, dict(zip(mvars, combo)))
                    alive.append(inst)
                    report.axiom_checks += 1
                    s = first_failure(inst)
                    if s is not None:
                        report.violations.append(
                            Violation("axiom", name, inst, A, s)
                        )

            for name, inst in fixed_instances:
                report.axiom_checks += 1
                ok, witness = is_valid_in(inst, A, matrix)
                if not ok:
                    report.violations.append(Violation("axiom", name, inst, A, witness))

            valid_cache: dict[int, bool] = {}

            def valid(f):
                r = valid_cache.get(id(f))
                if r is None:
                    r = first_failure(f) is None
                    valid_cache[id(f)] = r
                return r

            for a in pool:
                for b in pool:
                    imp = imps[(id(a), id(b))]
                    report.rule_checks += 1
                    if valid(a) and valid(imp) and not valid(b):
                        report.violations.append(
                            Violation("rule", "MP", b, A, first_failure(b))
                        )
            for prem, concl in forall_in:
                report.rule_checks += 1
                if valid(prem) and not valid(concl):
                    report.violations.append(
                        Violation("rule", "forall-in", concl, A, first_failure(concl))
                    )
            for prem, concl in exists_in:
                report.rule_checks += 1
                if valid(prem) and not valid(concl):
                    report.violations.append(
                        Violation("rule", "exists-in", concl, A, first_failure(concl))
                    )
    return report
