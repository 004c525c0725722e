from dataclasses import dataclass
from typing import Protocol

from src.kernel.checker.derivation import Derivation
from src.kernel.syntax import Context, Term, TypeExpr


@dataclass(frozen=True, slots=True)
class Typable:
    witness: Derivation


@dataclass(frozen=True, slots=True)
class NotTypable:
    pass


@dataclass(frozen=True, slots=True)
class Aborted:
    budget: int


type SearchResult = Typable | NotTypable | Aborted


class Prover(Protocol):
    def prove(self, ctx: Context, t: Term, goal: TypeExpr) -> SearchResult:
        """Typable with an F0 witness rooted at ``(ctx, t, goal)``, or why not."""
        ...
