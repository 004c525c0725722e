"""Brute-force F0 prover used to cross-check the syntax-directed search.

It tries every rule backwards at every judgment, up to a derivation height.
Arrow eliminations guess their argument type from a finite universe: every
type up to a size bound over the variable pool, together with the
subformulas of the context and the goal. Quantifier eliminations guess the
premise by abstracting any subset of the occurrences of a pool variable.
"""

from collections.abc import Iterator
from functools import cache

import structlog

from src.kernel.checker.base import NotTypable, SearchResult, Typable
from src.kernel.checker.derivation import Derivation, Rule, generalize, instantiate
from src.kernel.checker.search import variable_pool
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
    free_tvars,
    free_vars,
    fresh_name,
    open_term,
    open_type,
    type_size,
)

logger = structlog.get_logger()

DEFAULT_DEPTH = 10
DEFAULT_TYPE_SIZE = 5


@cache
def _types_of_size(size: int, names: tuple[str, ...], depth: int = 0) -> tuple[TypeExpr, ...]:
    if size < 1:
        return ()
    if size == 1:
        return (*(TVar(n) for n in names), *(TBound(i) for i in range(depth)))
    out: list[TypeExpr] = [Forall("X", body) for body in _types_of_size(size - 1, names, depth + 1)]
    for left in range(1, size - 1):
        for dom in _types_of_size(left, names, depth):
            for cod in _types_of_size(size - 1 - left, names, depth):
                out.append(Arrow(dom, cod))
    return tuple(out)


def types_up_to(size: int, names: tuple[str, ...]) -> Iterator[TypeExpr]:
    for n in range(1, size + 1):
        yield from _types_of_size(n, names)


def _subformulas(a: TypeExpr, pool: tuple[str, ...]) -> Iterator[TypeExpr]:
    yield a
    match a:
        case Arrow(dom, cod):
            yield from _subformulas(dom, pool)
            yield from _subformulas(cod, pool)
        case Forall(body=body):
            for name in pool:
                yield from _subformulas(open_type(body, TVar(name)), pool)


def _abstractions(a: TypeExpr, name: str, depth: int = 0) -> Iterator[TypeExpr]:
    """Every ``D`` (under one new binder) such that ``D[name/X]`` is ``a``."""
    match a:
        case TVar(n):
            yield a
            if n == name:
                yield TBound(depth)
        case TBound(index):
            yield TBound(index + 1) if index >= depth else a
        case Arrow(dom, cod):
            for d in _abstractions(dom, name, depth):
                for c in _abstractions(cod, name, depth):
                    yield Arrow(d, c)
        case Forall(binder, body):
            for b in _abstractions(body, name, depth + 1):
                yield Forall(binder, b)


class _OracleRun:
    def __init__(self, type_size_bound: int, size_cap: int) -> None:
        self.type_size_bound = type_size_bound
        self.size_cap = size_cap
        self._found: dict[tuple[Context, Term, TypeExpr], Derivation] = {}
        self._failed: dict[tuple[Context, Term, TypeExpr], int] = {}
        self._universes: dict[tuple[Context, tuple[str, ...]], tuple[TypeExpr, ...]] = {}

    def _universe(self, ctx: Context, goal: TypeExpr, pool: tuple[str, ...]) -> tuple[TypeExpr, ...]:
        key = (ctx, pool)
        if key not in self._universes:
            ordered: dict[TypeExpr, None] = dict.fromkeys(types_up_to(self.type_size_bound, pool))
            for decl in ctx:
                ordered.update(dict.fromkeys(_subformulas(decl.ty, pool)))
            self._universes[key] = tuple(ordered)
        extra = tuple(s for s in dict.fromkeys(_subformulas(goal, pool)) if s not in self._universes[key])
        return self._universes[key] + extra

    def derive(self, ctx: Context, t: Term, goal: TypeExpr, height: int) -> Derivation | None:
        if height <= 0:
            return None
        key = (ctx, t, goal)
        found = self._found.get(key)
        if found is not None and found.height() <= height:
            return found
        if self._failed.get(key, 0) >= height:
            return None
        result = self._derive(ctx, t, goal, height)
        if result is None:
            self._failed[key] = height
        else:
            self._found[key] = result
        return result

    def _derive(self, ctx: Context, t: Term, goal: TypeExpr, height: int) -> Derivation | None:
        below = height - 1
        if isinstance(t, Var) and ctx.lookup(t.name) == goal:
            return Derivation(Rule.AX, ctx, t, goal)

        if isinstance(t, Lam) and isinstance(goal, Arrow):
            x = fresh_name(t.binder, ctx.names() | free_vars(t))
            premise = self.derive(ctx.extend(x, goal.dom), open_term(t.body, Var(x)), goal.cod, below)
            if premise is not None:
                return Derivation(Rule.ARR_I, ctx, t, goal, (premise,))

        if isinstance(goal, Forall):
            z = fresh_name(goal.binder, ctx.free_tvars() | free_tvars(goal))
            premise = self.derive(ctx, t, open_type(goal.body, TVar(z)), below)
            if premise is not None:
                return generalize(premise, z)

        pool = tuple(variable_pool(ctx, goal))

        if isinstance(t, App):
            for b in self._universe(ctx, goal, pool):
                fun = self.derive(ctx, t.fun, Arrow(b, goal), below)
                if fun is None:
                    continue
                arg = self.derive(ctx, t.arg, b, below)
                if arg is not None:
                    return Derivation(Rule.ARR_E, ctx, t, goal, (fun, arg))

        seen: set[TypeExpr] = set()
        for name in pool:
            for body in _abstractions(goal, name):
                premise_ty = Forall("X", body)
                if premise_ty in seen or type_size(premise_ty) > self.size_cap:
                    continue
                seen.add(premise_ty)
                premise = self.derive(ctx, t, premise_ty, below)
                if premise is not None:
                    return instantiate(premise, TVar(name))
        return None


class BruteForceProver:
    def __init__(self, depth: int = DEFAULT_DEPTH, type_size_bound: int = DEFAULT_TYPE_SIZE) -> None:
        self.depth = depth
        self.type_size_bound = type_size_bound

    def prove(self, ctx: Context, t: Term, goal: TypeExpr) -> SearchResult:
        size_cap = 1 + max(self.type_size_bound, type_size(goal), *(type_size(d.ty) for d in ctx))
        run = _OracleRun(self.type_size_bound, size_cap)
        witness = run.derive(ctx, t, goal, self.depth)
        logger.debug("oracle_finished", depth=self.depth, typable=witness is not None)
        return NotTypable() if witness is None else Typable(witness)
