from src.kernel.checker.base import Aborted, NotTypable, Prover, SearchResult, Typable
from src.kernel.checker.derivation import Derivation, QuantifierStep, Rule, SystemId, rename_type_variables
from src.kernel.checker.search import DEFAULT_BUDGET, search_f0, subsume_f0, variable_pool
from src.kernel.checker.validator import Invalid, InvalidReason, Valid, ValidationResult, validate_derivation


def get_prover(kind: str = "search", *, budget: int | None = None) -> Prover:
    from src.config import settings

    if kind == "oracle":
        from src.kernel.checker.oracle import BruteForceProver

        return BruteForceProver(depth=settings.oracle_depth, type_size_bound=settings.oracle_type_size)

    from src.kernel.checker.search import SyntaxDirectedProver

    return SyntaxDirectedProver(budget=settings.budget if budget is None else budget)


__all__ = [
    "DEFAULT_BUDGET",
    "Aborted",
    "Derivation",
    "Invalid",
    "InvalidReason",
    "NotTypable",
    "Prover",
    "QuantifierStep",
    "Rule",
    "SearchResult",
    "SystemId",
    "Typable",
    "Valid",
    "ValidationResult",
    "get_prover",
    "rename_type_variables",
    "search_f0",
    "subsume_f0",
    "validate_derivation",
    "variable_pool",
]
