"""Deciding ``t ∈ |A|`` for ∀⁺ types.

A term belongs to the interpretation of a ∀⁺ type exactly when its β-normal
form is typable at that type in F0, so the decision normalizes and then
searches. Running out of fuel or budget is reported as ``Unknown`` and never
turned into a negative verdict.
"""

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import structlog

from src.core.exceptions import FreeVarError, MissingDeclarationError, PolarityError, PreconditionError
from src.kernel.checker import Aborted, Derivation, NotTypable, search_f0
from src.kernel.checker.search import DEFAULT_BUDGET
from src.kernel.polarity import classify, is_negative, is_positive
from src.kernel.printer import print_type
from src.kernel.reduce import DEFAULT_FUEL, FuelExhausted, normalize
from src.kernel.syntax import (
    EMPTY_CONTEXT,
    App,
    Bound,
    Context,
    Lam,
    Term,
    TypeExpr,
    Var,
    close_term,
    free_vars,
    fresh_name,
    lam,
    open_term,
)

logger = structlog.get_logger()


class NotMemberReason(StrEnum):
    SEARCH_FAILED = "search_failed"


class UnknownCause(StrEnum):
    FUEL = "fuel_exhausted"
    BUDGET = "budget_exhausted"
    DEPTH = "depth_exceeded"


@dataclass(frozen=True, slots=True)
class Member:
    normal_form: Term
    witness: Derivation
    steps: int


@dataclass(frozen=True, slots=True)
class NotMember:
    normal_form: Term
    reason: NotMemberReason = NotMemberReason.SEARCH_FAILED


@dataclass(frozen=True, slots=True)
class Unknown:
    fuel_spent: int
    cause: UnknownCause


type Verdict = Member | NotMember | Unknown


@dataclass(frozen=True, slots=True)
class NegContext:
    """A finite context whose declared types are all ∀⁻."""

    context: Context = EMPTY_CONTEXT

    def __post_init__(self) -> None:
        for decl in self.context:
            if not is_negative(decl.ty):
                raise PolarityError(
                    f"'{decl.var}' is declared at {print_type(decl.ty)}, which is {classify(decl.ty)}, not forall-"
                )


def _require_positive(a: TypeExpr) -> None:
    if not is_positive(a):
        raise PolarityError(f"{print_type(a)} is {classify(a)}; membership is only decided for forall+ types")


def _decide(t: Term, a: TypeExpr, ctx: Context, fuel: int, budget: int) -> Verdict:
    try:
        outcome = normalize(t, fuel)
        result = None if isinstance(outcome, FuelExhausted) else search_f0(ctx, outcome.term, a, budget)
    except RecursionError:
        logger.info("member_depth_exceeded")
        return Unknown(0, UnknownCause.DEPTH)
    verdict: Verdict
    if result is None:
        verdict = Unknown(outcome.steps, UnknownCause.FUEL)
    elif isinstance(result, Aborted):
        verdict = Unknown(outcome.steps, UnknownCause.BUDGET)
    elif isinstance(result, NotTypable):
        verdict = NotMember(outcome.term)
    else:
        verdict = Member(outcome.term, result.witness, outcome.steps)
    logger.debug("member_decided", verdict=type(verdict).__name__)
    return verdict


def member(t: Term, a: TypeExpr, fuel: int = DEFAULT_FUEL, budget: int = DEFAULT_BUDGET) -> Verdict:
    _require_positive(a)
    if names := free_vars(t):
        raise FreeVarError(f"term has free variables {sorted(names)}; declare them and use member_open")
    return _decide(t, a, EMPTY_CONTEXT, fuel, budget)


def member_open(
    t: Term,
    a: TypeExpr,
    gamma: NegContext,
    fuel: int = DEFAULT_FUEL,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    _require_positive(a)
    if missing := free_vars(t) - gamma.context.names():
        raise MissingDeclarationError(f"no declaration for {sorted(missing)}")
    return _decide(t, a, gamma.context, fuel, budget)


# ---------------------------------------------------------------------------
# Stability under β-expansion


class ExpansionKind(StrEnum):
    ABSTRACT_VARIABLE = "abstract_variable"
    IDENTITY = "identity"
    DISCARD = "discard"


_IDENTITY = Lam("z", Bound(0))
_SELF_APPLY = Lam("x", App(Bound(0), Bound(0)))
DISCARDED_ARGUMENTS: tuple[Term, ...] = (
    _IDENTITY,
    App(_SELF_APPLY, _SELF_APPLY),
    Lam("f", Lam("x", Bound(0))),
)


@dataclass(frozen=True, slots=True)
class Probe:
    term: Term
    kind: ExpansionKind
    verdict: Verdict


@dataclass(frozen=True, slots=True)
class StabilityReport:
    baseline: Verdict
    probes: list[Probe] = field(default_factory=list)

    @property
    def violations(self) -> list[Probe]:
        return [p for p in self.probes if _contradicts(self.baseline, p.verdict)]

    @property
    def stable(self) -> bool:
        return not self.violations


def _contradicts(a: Verdict, b: Verdict) -> bool:
    return (isinstance(a, Member) and isinstance(b, NotMember)) or (isinstance(a, NotMember) and isinstance(b, Member))


def _positions(t: Term, path: str = "") -> list[str]:
    match t:
        case Lam(body=body):
            return [path, *_positions(body, path + "B")]
        case App(fun, arg):
            return [path, *_positions(fun, path + "L"), *_positions(arg, path + "R")]
        case _:
            return [path]


type _Rewrite = Callable[[Term, frozenset[str]], Term]


def _rewrite_at(t: Term, path: str, rewrite: _Rewrite, scope: frozenset[str]) -> Term:
    """Apply ``rewrite`` to the subterm at ``path``, with enclosing binders opened to names."""
    if not path:
        return rewrite(t, scope)
    match path[0], t:
        case "B", Lam(binder, body):
            x = fresh_name(binder, scope | free_vars(body))
            inner = _rewrite_at(open_term(body, Var(x)), path[1:], rewrite, scope | {x})
            return Lam(binder, close_term(inner, x))
        case "L", App(fun, arg):
            return App(_rewrite_at(fun, path[1:], rewrite, scope), arg)
        case "R", App(fun, arg):
            return App(fun, _rewrite_at(arg, path[1:], rewrite, scope))
    raise AssertionError(f"no subterm at {path!r}")


def _expansion(kind: ExpansionKind, rng: random.Random) -> _Rewrite:
    def rewrite(u: Term, scope: frozenset[str]) -> Term:
        if kind is ExpansionKind.ABSTRACT_VARIABLE:
            y = rng.choice(sorted(free_vars(u)))
            return App(Lam(y, close_term(u, y)), Var(y))
        x = fresh_name("x", scope | free_vars(u))
        if kind is ExpansionKind.IDENTITY:
            return App(lam(x, Var(x)), u)
        return App(Lam(x, u), rng.choice(DISCARDED_ARGUMENTS))

    return rewrite


def _mentions_variable_at(t: Term, path: str) -> bool:
    found: list[bool] = []

    def look(u: Term, _scope: frozenset[str]) -> Term:
        found.append(bool(free_vars(u)))
        return u

    _rewrite_at(t, path, look, free_vars(t))
    return found[0]


def expand(
    t: Term,
    rng: random.Random,
    kinds: Sequence[ExpansionKind] = tuple(ExpansionKind),
) -> tuple[Term, ExpansionKind]:
    """One random β-expansion of ``t``; the result reduces to ``t`` in one step."""
    path = rng.choice(_positions(t))
    kind = rng.choice(list(kinds))
    if kind is ExpansionKind.ABSTRACT_VARIABLE and not _mentions_variable_at(t, path):
        kind = ExpansionKind.IDENTITY
    return _rewrite_at(t, path, _expansion(kind, rng), free_vars(t)), kind


def stability_probe(
    t: Term,
    a: TypeExpr,
    expansions: int,
    seed: int = 0,
    fuel: int = DEFAULT_FUEL,
    budget: int = DEFAULT_BUDGET,
    kinds: Sequence[ExpansionKind] = tuple(ExpansionKind),
) -> StabilityReport:
    if expansions and not kinds:
        raise PreconditionError("stability probes need at least one expansion kind")
    baseline = member(t, a, fuel, budget)
    rng = random.Random(seed)
    seen: set[Term] = {t}
    probes: list[Probe] = []
    while len(probes) < expansions:
        candidate, kind = expand(t, rng, kinds)
        while candidate in seen:
            candidate, kind = expand(candidate, rng, kinds)
        seen.add(candidate)
        probes.append(Probe(candidate, kind, member(candidate, a, fuel, budget)))
    report = StabilityReport(baseline, probes)
    if not report.stable:
        logger.warning("stability_violation", violations=len(report.violations))
    return report
