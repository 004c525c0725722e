from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum

from src.kernel.syntax import Context, Declaration, Forall, Term, TVar, TypeExpr, forall, open_type, subst_types


class Rule(StrEnum):
    AX = "Ax"
    ARR_I = "ArrI"
    ARR_E = "ArrE"
    ALL_I = "AllI"
    ALL_E = "AllE"


class SystemId(StrEnum):
    F = "f"
    F0 = "f0"


ARITY: dict[Rule, int] = {
    Rule.AX: 0,
    Rule.ARR_I: 1,
    Rule.ARR_E: 2,
    Rule.ALL_I: 1,
    Rule.ALL_E: 1,
}


@dataclass(frozen=True, slots=True)
class Derivation:
    rule: Rule
    context: Context
    subject: Term
    ty: TypeExpr
    premises: tuple[Derivation, ...] = field(default=())
    instantiation: TypeExpr | None = None
    generalized: str | None = None

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def node_count(self) -> int:
        return 1 + sum(p.node_count() for p in self.premises)


@dataclass(frozen=True, slots=True)
class QuantifierStep:
    """One rule (4) or rule (5) application that leaves the subject unchanged."""

    rule: Rule
    variable: str


def instantiate(d: Derivation, c: TypeExpr) -> Derivation:
    assert isinstance(d.ty, Forall)
    return Derivation(Rule.ALL_E, d.context, d.subject, open_type(d.ty.body, c), (d,), instantiation=c)


def generalize(d: Derivation, name: str) -> Derivation:
    return Derivation(Rule.ALL_I, d.context, d.subject, forall(name, d.ty), (d,), generalized=name)


def apply_steps(d: Derivation, steps: list[QuantifierStep]) -> Derivation:
    for step in steps:
        d = instantiate(d, TVar(step.variable)) if step.rule is Rule.ALL_E else generalize(d, step.variable)
    return d


def rename_type_variables(d: Derivation, mapping: Mapping[str, str]) -> Derivation:
    """Rename free type variables throughout a derivation, generalized variables included.

    The renaming must be injective and must not target names already used in
    ``d``; under those conditions validity is preserved.
    """
    types = {old: TVar(new) for old, new in mapping.items()}
    context = Context(tuple(Declaration(decl.var, subst_types(decl.ty, types)) for decl in d.context))
    return Derivation(
        rule=d.rule,
        context=context,
        subject=d.subject,
        ty=subst_types(d.ty, types),
        premises=tuple(rename_type_variables(p, mapping) for p in d.premises),
        instantiation=None if d.instantiation is None else subst_types(d.instantiation, types),
        generalized=None if d.generalized is None else mapping.get(d.generalized, d.generalized),
    )
