"""Rule-by-rule validation of explicit typing derivations.

Each node must be exactly reconstructible from its premises: rule (1) needs
the declaration in the context, rule (2) extends the context with one fresh
declaration, rule (3) matches ``B→C`` against ``B``, rule (4) requires the
generalized variable to be absent from the context and rule (5) must
instantiate the quantifier, with a type variable only under F0.
"""

from dataclasses import dataclass
from enum import StrEnum

from src.kernel.checker.derivation import ARITY, Derivation, Rule, SystemId
from src.kernel.syntax import App, Arrow, Forall, Lam, TVar, Var, forall, free_vars, open_term, open_type


class InvalidReason(StrEnum):
    ARITY = "arity_mismatch"
    SUBJECT_SHAPE = "subject_shape"
    TYPE_SHAPE = "type_shape"
    CONTEXT_MISMATCH = "context_mismatch"
    SUBJECT_MISMATCH = "subject_mismatch"
    TYPE_MISMATCH = "type_mismatch"
    UNDECLARED = "undeclared_variable"
    NOT_FRESH = "binder_not_fresh"
    SIDE_CONDITION = "side_condition"
    MISSING_INSTANTIATION = "missing_instantiation"
    NON_VARIABLE_INSTANTIATION = "non_variable_instantiation"
    MISSING_GENERALIZED = "missing_generalized"


@dataclass(frozen=True, slots=True)
class Valid:
    pass


@dataclass(frozen=True, slots=True)
class Invalid:
    path: tuple[int, ...]
    reason: InvalidReason
    detail: str

    @property
    def dotted_path(self) -> str:
        return ".".join(str(i) for i in self.path)


type ValidationResult = Valid | Invalid


class _Reject(Exception):
    def __init__(self, reason: InvalidReason, detail: str) -> None:
        super().__init__(detail)
        self.reason = reason
        self.detail = detail


def _require(condition: bool, reason: InvalidReason, detail: str) -> None:
    if not condition:
        raise _Reject(reason, detail)


def _check_node(d: Derivation, sys: SystemId) -> None:
    _require(len(d.premises) == ARITY[d.rule], InvalidReason.ARITY, f"{d.rule} takes {ARITY[d.rule]} premises")
    if d.rule is not Rule.ARR_I:
        for premise in d.premises:
            _require(premise.context == d.context, InvalidReason.CONTEXT_MISMATCH, "premise context differs")

    match d.rule:
        case Rule.AX:
            _require(isinstance(d.subject, Var), InvalidReason.SUBJECT_SHAPE, "axiom subject must be a variable")
            assert isinstance(d.subject, Var)
            declared = d.context.lookup(d.subject.name)
            _require(declared is not None, InvalidReason.UNDECLARED, f"'{d.subject.name}' is not declared")
            _require(declared == d.ty, InvalidReason.TYPE_MISMATCH, "axiom type differs from the declaration")

        case Rule.ARR_I:
            (premise,) = d.premises
            _require(isinstance(d.subject, Lam), InvalidReason.SUBJECT_SHAPE, "subject must be an abstraction")
            _require(isinstance(d.ty, Arrow), InvalidReason.TYPE_SHAPE, "type must be an arrow")
            assert isinstance(d.subject, Lam) and isinstance(d.ty, Arrow)
            entries = premise.context.entries
            _require(
                len(entries) == len(d.context.entries) + 1 and entries[:-1] == d.context.entries,
                InvalidReason.CONTEXT_MISMATCH,
                "premise context must extend the context by one declaration",
            )
            bound = entries[-1]
            _require(
                bound.var not in d.context.names() and bound.var not in free_vars(d.subject),
                InvalidReason.NOT_FRESH,
                f"'{bound.var}' is not fresh",
            )
            _require(bound.ty == d.ty.dom, InvalidReason.TYPE_MISMATCH, "declared type differs from the domain")
            _require(
                premise.subject == open_term(d.subject.body, Var(bound.var)),
                InvalidReason.SUBJECT_MISMATCH,
                "premise subject is not the abstraction body",
            )
            _require(premise.ty == d.ty.cod, InvalidReason.TYPE_MISMATCH, "premise type differs from the codomain")

        case Rule.ARR_E:
            fun, arg = d.premises
            _require(isinstance(d.subject, App), InvalidReason.SUBJECT_SHAPE, "subject must be an application")
            assert isinstance(d.subject, App)
            _require(
                fun.subject == d.subject.fun and arg.subject == d.subject.arg,
                InvalidReason.SUBJECT_MISMATCH,
                "premise subjects differ from the application",
            )
            _require(
                fun.ty == Arrow(arg.ty, d.ty),
                InvalidReason.TYPE_MISMATCH,
                "function premise must have type B→C with B the argument type",
            )

        case Rule.ALL_I:
            (premise,) = d.premises
            _require(d.generalized is not None, InvalidReason.MISSING_GENERALIZED, "generalized variable missing")
            assert d.generalized is not None
            _require(premise.subject == d.subject, InvalidReason.SUBJECT_MISMATCH, "subject changed")
            _require(
                d.generalized not in d.context.free_tvars(),
                InvalidReason.SIDE_CONDITION,
                f"'{d.generalized}' occurs in the context",
            )
            _require(
                d.ty == forall(d.generalized, premise.ty),
                InvalidReason.TYPE_MISMATCH,
                "type is not the generalization of the premise",
            )

        case Rule.ALL_E:
            (premise,) = d.premises
            _require(d.instantiation is not None, InvalidReason.MISSING_INSTANTIATION, "instantiation missing")
            assert d.instantiation is not None
            _require(premise.subject == d.subject, InvalidReason.SUBJECT_MISMATCH, "subject changed")
            _require(isinstance(premise.ty, Forall), InvalidReason.TYPE_SHAPE, "premise type must be universal")
            assert isinstance(premise.ty, Forall)
            if sys is SystemId.F0:
                _require(
                    isinstance(d.instantiation, TVar),
                    InvalidReason.NON_VARIABLE_INSTANTIATION,
                    "F0 only instantiates with a type variable",
                )
            _require(
                d.ty == open_type(premise.ty.body, d.instantiation),
                InvalidReason.TYPE_MISMATCH,
                "type is not the instance of the premise",
            )


def validate_derivation(d: Derivation, sys: SystemId = SystemId.F) -> ValidationResult:
    stack: list[tuple[Derivation, tuple[int, ...]]] = [(d, ())]
    while stack:
        node, path = stack.pop()
        try:
            _check_node(node, sys)
        except _Reject as exc:
            return Invalid(path, exc.reason, exc.detail)
        stack.extend((p, (*path, i)) for i, p in reversed(list(enumerate(node.premises))))
    return Valid()
