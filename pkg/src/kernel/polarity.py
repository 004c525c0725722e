from enum import StrEnum

from src.kernel.syntax import Arrow, Forall, TBound, TVar, TypeExpr


class Polarity(StrEnum):
    POSITIVE = "forall+"
    NEGATIVE = "forall-"
    BOTH = "both"
    NEITHER = "neither"


def _flags(a: TypeExpr) -> tuple[bool, bool, frozenset[int]]:
    """``(is ∀⁺, is ∀⁻, dangling bound indices)`` in one bottom-up pass."""
    match a:
        case TVar():
            return True, True, frozenset()
        case TBound(index):
            return True, True, frozenset({index})
        case Arrow(dom, cod):
            dom_pos, dom_neg, dom_free = _flags(dom)
            cod_pos, cod_neg, cod_free = _flags(cod)
            return dom_neg and cod_pos, dom_pos and cod_neg, dom_free | cod_free
        case Forall(body=body):
            pos, _, free = _flags(body)
            # ∀X.A is ∀⁺ only when X is free in A; no clause makes it ∀⁻
            return pos and 0 in free, False, frozenset(i - 1 for i in free if i > 0)


def classify(a: TypeExpr) -> Polarity:
    pos, neg, _ = _flags(a)
    if pos and neg:
        return Polarity.BOTH
    if pos:
        return Polarity.POSITIVE
    if neg:
        return Polarity.NEGATIVE
    return Polarity.NEITHER


def is_positive(a: TypeExpr) -> bool:
    return classify(a) in (Polarity.POSITIVE, Polarity.BOTH)


def is_negative(a: TypeExpr) -> bool:
    return classify(a) in (Polarity.NEGATIVE, Polarity.BOTH)
