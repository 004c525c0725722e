from __future__ import annotations

from pydantic import BaseModel, Field, ValidationError

from src.core.exceptions import DerivationFormatError, KernelError
from src.kernel.checker.derivation import Derivation, Rule
from src.kernel.parser import parse_term, parse_type
from src.kernel.printer import print_term, print_type
from src.kernel.syntax import Context, Declaration


class DeclarationModel(BaseModel):
    var: str
    type: str

    def to_kernel(self) -> Declaration:
        return Declaration(self.var, parse_type(self.type))


def context_from_models(models: list[DeclarationModel]) -> Context:
    return Context(tuple(m.to_kernel() for m in models))


def context_to_models(ctx: Context) -> list[DeclarationModel]:
    return [DeclarationModel(var=decl.var, type=print_type(decl.ty)) for decl in ctx]


class DerivationNode(BaseModel):
    rule: Rule
    term: str
    type: str
    context: list[DeclarationModel] = Field(default_factory=list)
    instantiation: str | None = None
    generalized: str | None = None
    premises: list[DerivationNode] = Field(default_factory=list)

    def to_kernel(self, path: tuple[int, ...] = ()) -> Derivation:
        try:
            context = context_from_models(self.context)
            subject = parse_term(self.term)
            ty = parse_type(self.type)
            instantiation = None if self.instantiation is None else parse_type(self.instantiation)
        except KernelError as exc:
            where = ".".join(str(i) for i in path) or "root"
            raise DerivationFormatError(f"node {where}: {exc.detail}") from exc
        return Derivation(
            rule=self.rule,
            context=context,
            subject=subject,
            ty=ty,
            premises=tuple(p.to_kernel((*path, i)) for i, p in enumerate(self.premises)),
            instantiation=instantiation,
            generalized=self.generalized,
        )

    @classmethod
    def from_kernel(cls, d: Derivation) -> DerivationNode:
        return cls(
            rule=d.rule,
            term=print_term(d.subject),
            type=print_type(d.ty),
            context=context_to_models(d.context),
            instantiation=None if d.instantiation is None else print_type(d.instantiation),
            generalized=d.generalized,
            premises=[cls.from_kernel(p) for p in d.premises],
        )


def load_derivation(text: str) -> Derivation:
    try:
        node = DerivationNode.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise DerivationFormatError(f"malformed derivation at {first['loc']}: {first['msg']}") from exc
    return node.to_kernel()


def dump_derivation(d: Derivation) -> str:
    return DerivationNode.from_kernel(d).model_dump_json(exclude_none=True, indent=2)
