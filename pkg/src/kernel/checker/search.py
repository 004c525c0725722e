"""Syntax-directed F0 proof search over β-normal terms.

Abstractions are checked: universal goals are generalized first, then the
arrow is introduced. Neutral terms are inferred from the head, one argument
at a time, and the inferred type is reconciled with the goal by
:func:`subsume_f0`. Instantiations are drawn from the variable pool of the
judgment: the context's type variables, then the goal's, then one fresh name.
"""

from collections.abc import Collection, Iterator

import structlog

from src.core.exceptions import PreconditionError
from src.kernel.checker.base import Aborted, NotTypable, SearchResult, Typable
from src.kernel.checker.derivation import (
    Derivation,
    QuantifierStep,
    Rule,
    apply_steps,
    generalize,
    instantiate,
)
from src.kernel.reduce import is_normal
from src.kernel.syntax import (
    App,
    Arrow,
    Context,
    Forall,
    Lam,
    Term,
    TBound,
    TVar,
    TypeExpr,
    Var,
    forall,
    free_tvars,
    free_vars,
    fresh_name,
    iter_tvars,
    mentions_bound,
    open_term,
    open_type,
    spine,
)

logger = structlog.get_logger()

DEFAULT_BUDGET = 100_000
FRESH_TVAR = "Z"
# never part of a parsed identifier
_PLACEHOLDER = "#"


def variable_pool(ctx: Context, goal: TypeExpr) -> list[str]:
    ordered = dict.fromkeys(ctx.tvar_list())
    for name in iter_tvars(goal):
        ordered.setdefault(name)
    names = list(ordered)
    names.append(fresh_name(FRESH_TVAR, names))
    return names


def _match(pattern: TypeExpr, target: TypeExpr, flexible: Collection[str], theta: dict[str, str]) -> bool:
    match pattern:
        case TVar(name) if name in flexible:
            if not isinstance(target, TVar):
                return False
            return theta.setdefault(name, target.name) == target.name
        case TVar() | TBound():
            return pattern == target
        case Arrow(dom, cod):
            return (
                isinstance(target, Arrow)
                and _match(dom, target.dom, flexible, theta)
                and _match(cod, target.cod, flexible, theta)
            )
        case Forall(body=body):
            return isinstance(target, Forall) and _match(body, target.body, flexible, theta)


def _apply_to_type(a: TypeExpr, steps: list[QuantifierStep]) -> TypeExpr:
    for step in steps:
        if step.rule is Rule.ALL_E:
            assert isinstance(a, Forall)
            a = open_type(a.body, TVar(step.variable))
        else:
            a = forall(step.variable, a)
    return a


def subsume_f0(
    have: TypeExpr,
    want: TypeExpr,
    varpool: list[str],
    fixed: Collection[str] = frozenset(),
) -> list[QuantifierStep] | None:
    """Rules (4) and (5) turning ``have`` into ``want``, or ``None``.

    Type variables in ``fixed`` occur in the context and may be neither
    generalized nor renamed. Every other free variable of ``have`` may be
    renamed by generalizing it and instantiating it again.
    """
    used = set(fixed) | free_tvars(have) | free_tvars(want) | set(varpool)

    rigid: list[str] = []
    target = want
    while isinstance(target, Forall):
        z = fresh_name(target.binder, used)
        used.add(z)
        rigid.append(z)
        target = open_type(target.body, TVar(z))

    placeholders: list[str] = []
    matrix = have
    while isinstance(matrix, Forall):
        p = f"{_PLACEHOLDER}{len(placeholders)}"
        placeholders.append(p)
        matrix = open_type(matrix.body, TVar(p))

    renamable = [name for name in dict.fromkeys(iter_tvars(have)) if name not in fixed]
    theta: dict[str, str] = {}
    if not _match(matrix, target, {*placeholders, *renamable}, theta):
        return None

    renamed = [name for name in renamable if theta.get(name, name) != name]

    default = varpool[0] if varpool else fresh_name(FRESH_TVAR, used)
    steps = [QuantifierStep(Rule.ALL_I, name) for name in renamed]
    steps += [QuantifierStep(Rule.ALL_E, theta[name]) for name in reversed(renamed)]
    steps += [QuantifierStep(Rule.ALL_E, theta.get(p, default)) for p in placeholders]
    steps += [QuantifierStep(Rule.ALL_I, z) for z in reversed(rigid)]

    if _apply_to_type(have, steps) != want:
        return None
    return steps


class _BudgetExceeded(Exception):
    pass


class _SearchRun:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.explored = 0
        self._memo: dict[tuple[Context, Term, TypeExpr], Derivation | None] = {}

    def _tick(self) -> None:
        self.explored += 1
        if self.explored > self.budget:
            raise _BudgetExceeded

    def check(self, ctx: Context, t: Term, goal: TypeExpr) -> Derivation | None:
        key = (ctx, t, goal)
        if key in self._memo:
            return self._memo[key]
        self._tick()
        result = self._check(ctx, t, goal)
        self._memo[key] = result
        return result

    def _check(self, ctx: Context, t: Term, goal: TypeExpr) -> Derivation | None:
        if isinstance(goal, Forall):
            z = fresh_name(goal.binder, ctx.free_tvars() | free_tvars(goal))
            premise = self.check(ctx, t, open_type(goal.body, TVar(z)))
            return None if premise is None else generalize(premise, z)

        if isinstance(t, Lam):
            if not isinstance(goal, Arrow):
                return None
            x = fresh_name(t.binder, ctx.names() | free_vars(t))
            premise = self.check(ctx.extend(x, goal.dom), open_term(t.body, Var(x)), goal.cod)
            return None if premise is None else Derivation(Rule.ARR_I, ctx, t, goal, (premise,))

        head, args = spine(t)
        if not isinstance(head, Var):
            return None
        declared = ctx.lookup(head.name)
        if declared is None:
            return None
        axiom = Derivation(Rule.AX, ctx, head, declared)
        return self._eliminate(ctx, axiom, args, goal, variable_pool(ctx, goal))

    def _eliminate(
        self,
        ctx: Context,
        d: Derivation,
        args: list[Term],
        goal: TypeExpr,
        pool: list[str],
    ) -> Derivation | None:
        self._tick()
        if not args:
            steps = subsume_f0(d.ty, goal, pool, ctx.free_tvars())
            return None if steps is None else apply_steps(d, steps)

        arg, rest = args[0], args[1:]
        seen: set[TypeExpr] = set()
        for inst in self._arrow_instances(d, pool):
            if inst.ty in seen:
                continue
            seen.add(inst.ty)
            assert isinstance(inst.ty, Arrow)
            arg_d = self.check(ctx, arg, inst.ty.dom)
            if arg_d is None:
                continue
            applied = Derivation(Rule.ARR_E, ctx, App(inst.subject, arg), inst.ty.cod, (inst, arg_d))
            result = self._eliminate(ctx, applied, rest, goal, pool)
            if result is not None:
                return result
        return None

    def _arrow_instances(self, d: Derivation, pool: list[str]) -> Iterator[Derivation]:
        match d.ty:
            case Arrow():
                yield d
            case Forall(body=body):
                candidates = pool if mentions_bound(body) else pool[:1]
                for name in candidates:
                    self._tick()
                    yield from self._arrow_instances(instantiate(d, TVar(name)), pool)


class SyntaxDirectedProver:
    def __init__(self, budget: int = DEFAULT_BUDGET) -> None:
        self.budget = budget

    def prove(self, ctx: Context, t: Term, goal: TypeExpr) -> SearchResult:
        if not is_normal(t):
            raise PreconditionError("proof search needs a β-normal subject")
        run = _SearchRun(self.budget)
        try:
            witness = run.check(ctx, t, goal)
        except _BudgetExceeded:
            logger.info("search_aborted", budget=self.budget)
            return Aborted(self.budget)
        logger.debug("search_finished", explored=run.explored, typable=witness is not None)
        return NotTypable() if witness is None else Typable(witness)


def search_f0(ctx: Context, t: Term, goal: TypeExpr, budget: int = DEFAULT_BUDGET) -> SearchResult:
    return SyntaxDirectedProver(budget).prove(ctx, t, goal)
