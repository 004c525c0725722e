"""Weak-head reduction, leftmost-outermost normalization and bounded β-equivalence.

Step counts count β-contractions only. Running out of fuel is an outcome,
never an exception.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum

import structlog

from src.kernel.syntax import App, Bound, Lam, Term, Var, apply, open_term, spine

logger = structlog.get_logger()

DEFAULT_FUEL = 10_000


@dataclass(frozen=True, slots=True)
class Done:
    term: Term
    steps: int


@dataclass(frozen=True, slots=True)
class FuelExhausted:
    partial: Term
    steps: int


type ReduceOutcome = Done | FuelExhausted


@dataclass(frozen=True, slots=True)
class TraceStep:
    index: int
    path: str
    term: Term


class Equivalence(StrEnum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def contract(redex: App) -> Term:
    assert isinstance(redex.fun, Lam)
    return open_term(redex.fun.body, redex.arg)


def whnf_step(t: Term) -> Term | None:
    head, args = spine(t)
    if isinstance(head, Lam) and args:
        return apply(open_term(head.body, args[0]), *args[1:])
    return None


def whnf_trace(t: Term, fuel: int = DEFAULT_FUEL) -> Iterator[TraceStep]:
    """Yield each weak-head step; the contracted redex always sits at the end of the head spine."""
    for index in range(1, fuel + 1):
        _, args = spine(t)
        reduct = whnf_step(t)
        if reduct is None:
            return
        t = reduct
        yield TraceStep(index, "L" * (len(args) - 1), t)


def whnf(t: Term, fuel: int = DEFAULT_FUEL) -> ReduceOutcome:
    steps = 0
    while (reduct := whnf_step(t)) is not None:
        if steps >= fuel:
            logger.debug("whnf_fuel_exhausted", fuel=fuel)
            return FuelExhausted(t, steps)
        t = reduct
        steps += 1
    return Done(t, steps)


def head_reduces_to(u: Term, v: Term, fuel: int = DEFAULT_FUEL) -> bool:
    """Whether ``v`` is reached from ``u`` by zero or more weak-head steps."""
    current: Term | None = u
    for _ in range(fuel + 1):
        if current is None:
            return False
        if current == v:
            return True
        current = whnf_step(current)
    return False


def _beta_step_at(t: Term) -> tuple[Term, str] | None:
    match t:
        case Var() | Bound():
            return None
        case Lam(binder, body):
            inner = _beta_step_at(body)
            if inner is None:
                return None
            return Lam(binder, inner[0]), "B" + inner[1]
        case App(fun, arg):
            if isinstance(fun, Lam):
                return contract(t), ""
            left = _beta_step_at(fun)
            if left is not None:
                return App(left[0], arg), "L" + left[1]
            right = _beta_step_at(arg)
            if right is not None:
                return App(fun, right[0]), "R" + right[1]
            return None


def beta_step(t: Term) -> Term | None:
    """One leftmost-outermost β-step, or ``None`` when ``t`` is β-normal."""
    result = _beta_step_at(t)
    return None if result is None else result[0]


def beta_trace(t: Term, fuel: int = DEFAULT_FUEL) -> Iterator[TraceStep]:
    for index in range(1, fuel + 1):
        result = _beta_step_at(t)
        if result is None:
            return
        t, path = result
        yield TraceStep(index, path, t)


def normalize(t: Term, fuel: int = DEFAULT_FUEL) -> ReduceOutcome:
    steps = 0
    while (result := _beta_step_at(t)) is not None:
        if steps >= fuel:
            logger.debug("normalize_fuel_exhausted", fuel=fuel)
            return FuelExhausted(t, steps)
        t = result[0]
        steps += 1
    return Done(t, steps)


def is_normal(t: Term) -> bool:
    match t:
        case Var() | Bound():
            return True
        case Lam(body=body):
            return is_normal(body)
        case App(fun, arg):
            return not isinstance(fun, Lam) and is_normal(fun) and is_normal(arg)


def beta_eq(t: Term, u: Term, fuel: int = DEFAULT_FUEL) -> Equivalence:
    left = normalize(t, fuel)
    right = normalize(u, fuel)
    if isinstance(left, FuelExhausted) or isinstance(right, FuelExhausted):
        return Equivalence.UNKNOWN
    return Equivalence.YES if left.term == right.term else Equivalence.NO
