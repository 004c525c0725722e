"""Church encodings of booleans, naturals and lists of naturals.

Each data type is a closed ∀⁺ type whose closed normal inhabitants are
exactly the encodings of its values. Decoders normalize first and reject
anything that is not an encoding.
"""

import json
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import cache
from typing import Any

from src.core.exceptions import DecodeError, KernelError
from src.kernel.checker.derivation import Derivation, Rule, generalize
from src.kernel.printer import print_term
from src.kernel.reduce import DEFAULT_FUEL, FuelExhausted, normalize
from src.kernel.syntax import (
    EMPTY_CONTEXT,
    App,
    Arrow,
    Bound,
    Context,
    Lam,
    Term,
    TVar,
    TypeExpr,
    Var,
    apply,
    forall,
    fresh_name,
    lam,
    open_term,
)

_X = TVar("X")

BOOL_TYPE: TypeExpr = forall("X", Arrow(_X, Arrow(_X, _X)))
ENT_TYPE: TypeExpr = forall("X", Arrow(Arrow(_X, _X), Arrow(_X, _X)))
LENT_TYPE: TypeExpr = forall("X", Arrow(Arrow(ENT_TYPE, Arrow(_X, _X)), Arrow(_X, _X)))


def church_nat(n: int) -> Term:
    if n < 0:
        raise KernelError(f"no numeral for {n}")
    body: Term = Var("x")
    for _ in range(n):
        body = App(Var("f"), body)
    return lam("f", lam("x", body))


def church_bool(b: bool) -> Term:
    return lam("x", lam("y", Var("x" if b else "y")))


def church_list_nat(ns: list[int]) -> Term:
    body: Term = Var("e")
    for n in reversed(ns):
        body = apply(Var("c"), church_nat(n), body)
    return lam("c", lam("e", body))


def church_succ() -> Term:
    """``λn.λf.λx.(f)((n)f)x``"""
    return lam("n", lam("f", lam("x", App(Var("f"), apply(Var("n"), Var("f"), Var("x"))))))


def _normal_form(t: Term, fuel: int) -> Term:
    outcome = normalize(t, fuel)
    if isinstance(outcome, FuelExhausted):
        raise DecodeError(f"no normal form within {fuel} steps")
    return outcome.term


def _numeral_value(t: Term) -> int | None:
    match t:
        case Lam(body=Lam(body=body)):
            n = 0
            while isinstance(body, App) and body.fun == Bound(1):
                body = body.arg
                n += 1
            return n if body == Bound(0) else None
    return None


def decode_nat(t: Term, fuel: int = DEFAULT_FUEL) -> int:
    value = _numeral_value(_normal_form(t, fuel))
    if value is None:
        raise DecodeError(f"{print_term(t)} is not a Church numeral")
    return value


def decode_bool(t: Term, fuel: int = DEFAULT_FUEL) -> bool:
    match _normal_form(t, fuel):
        case Lam(body=Lam(body=Bound(1))):
            return True
        case Lam(body=Lam(body=Bound(0))):
            return False
    raise DecodeError(f"{print_term(t)} is not a Church boolean")


def decode_list_nat(t: Term, fuel: int = DEFAULT_FUEL) -> list[int]:
    nf = _normal_form(t, fuel)
    if isinstance(nf, Lam) and isinstance(nf.body, Lam):
        values: list[int] = []
        body = nf.body.body
        while isinstance(body, App) and isinstance(body.fun, App) and body.fun.fun == Bound(1):
            value = _numeral_value(body.fun.arg)
            if value is None:
                break
            values.append(value)
            body = body.arg
        if body == Bound(0):
            return values
    raise DecodeError(f"{print_term(t)} is not a Church list of numerals")


# ---------------------------------------------------------------------------
# Canonical derivations of encoded values


def _fresh_tvar(ctx: Context) -> TVar:
    return TVar(fresh_name("X", ctx.free_tvars()))


def _arrow_intro(ctx: Context, t: Lam, ty: Arrow, name: str, premise: Derivation) -> Derivation:
    assert premise.context == ctx.extend(name, ty.dom)
    return Derivation(Rule.ARR_I, ctx, t, ty, (premise,))


def _nat_derivation(n: int, ctx: Context) -> Derivation:
    x_ty = _fresh_tvar(ctx)
    step_ty = Arrow(x_ty, x_ty)
    f = fresh_name("f", ctx.names())
    x = fresh_name("x", ctx.names() | {f})
    outer = ctx.extend(f, step_ty)
    inner = outer.extend(x, x_ty)

    body = Derivation(Rule.AX, inner, Var(x), x_ty)
    for _ in range(n):
        step = Derivation(Rule.AX, inner, Var(f), step_ty)
        body = Derivation(Rule.ARR_E, inner, App(Var(f), body.subject), x_ty, (step, body))

    term = church_nat(n)
    assert isinstance(term.body, Lam)
    under_f = open_term(term.body, Var(f))
    assert isinstance(under_f, Lam)
    lam_x = _arrow_intro(outer, under_f, step_ty, x, body)
    lam_f = _arrow_intro(ctx, term, Arrow(step_ty, step_ty), f, lam_x)
    return generalize(lam_f, x_ty.name)


def _bool_derivation(b: bool, ctx: Context) -> Derivation:
    x_ty = _fresh_tvar(ctx)
    x = fresh_name("x", ctx.names())
    y = fresh_name("y", ctx.names() | {x})
    outer = ctx.extend(x, x_ty)
    inner = outer.extend(y, x_ty)
    body = Derivation(Rule.AX, inner, Var(x if b else y), x_ty)

    term = church_bool(b)
    under_x = open_term(term.body, Var(x))
    assert isinstance(under_x, Lam)
    lam_y = _arrow_intro(outer, under_x, Arrow(x_ty, x_ty), y, body)
    lam_x = _arrow_intro(ctx, term, Arrow(x_ty, Arrow(x_ty, x_ty)), x, lam_y)
    return generalize(lam_x, x_ty.name)


def _list_derivation(ns: list[int], ctx: Context) -> Derivation:
    x_ty = _fresh_tvar(ctx)
    cons_ty = Arrow(ENT_TYPE, Arrow(x_ty, x_ty))
    c = fresh_name("c", ctx.names())
    e = fresh_name("e", ctx.names() | {c})
    outer = ctx.extend(c, cons_ty)
    inner = outer.extend(e, x_ty)

    body = Derivation(Rule.AX, inner, Var(e), x_ty)
    for n in reversed(ns):
        cons = Derivation(Rule.AX, inner, Var(c), cons_ty)
        head = _nat_derivation(n, inner)
        partial = Derivation(Rule.ARR_E, inner, App(Var(c), head.subject), Arrow(x_ty, x_ty), (cons, head))
        body = Derivation(Rule.ARR_E, inner, App(partial.subject, body.subject), x_ty, (partial, body))

    term = church_list_nat(ns)
    under_c = open_term(term.body, Var(c))
    assert isinstance(under_c, Lam)
    lam_e = _arrow_intro(outer, under_c, Arrow(x_ty, x_ty), e, body)
    lam_c = _arrow_intro(ctx, term, Arrow(cons_ty, Arrow(x_ty, x_ty)), c, lam_e)
    return generalize(lam_c, x_ty.name)


# ---------------------------------------------------------------------------
# Registry


def _read_bool(text: str) -> bool:
    match text.strip().lower():
        case "true" | "1":
            return True
        case "false" | "0":
            return False
    raise KernelError(f"'{text}' is not a boolean")


def _read_nat(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise KernelError(f"'{text}' is not a natural number") from None
    if value < 0:
        raise KernelError(f"'{text}' is not a natural number")
    return value


def _read_list(text: str) -> list[int]:
    try:
        values = json.loads(text)
    except json.JSONDecodeError:
        values = text.replace(",", " ").split()
    if not isinstance(values, list):
        raise KernelError(f"'{text}' is not a list of naturals")
    return [_read_nat(str(v)) for v in values]


@dataclass(frozen=True, slots=True)
class DataTypeDef:
    name: str
    ty: TypeExpr
    encode: Callable[[Any], Term]
    decode: Callable[[Term, int], Any]
    read: Callable[[str], Any]
    derive: Callable[[Any, Context], Derivation]


BOOL = DataTypeDef("Bool", BOOL_TYPE, church_bool, decode_bool, _read_bool, _bool_derivation)
ENT = DataTypeDef("Ent", ENT_TYPE, church_nat, decode_nat, _read_nat, _nat_derivation)
LENT = DataTypeDef("LEnt", LENT_TYPE, church_list_nat, decode_list_nat, _read_list, _list_derivation)

DATA_TYPES: dict[str, DataTypeDef] = {"bool": BOOL, "nat": ENT, "list": LENT}


def get_data_type(kind: str) -> DataTypeDef:
    try:
        return DATA_TYPES[kind]
    except KeyError:
        raise KernelError(f"unknown data type '{kind}', expected one of {sorted(DATA_TYPES)}") from None


def derivation_for(kind: str, value: Any, ctx: Context = EMPTY_CONTEXT) -> Derivation:
    """The canonical derivation of ``ctx ⊢ ⌜value⌝ : D``; it uses no ∀-elimination."""
    return get_data_type(kind).derive(value, ctx)


# ---------------------------------------------------------------------------
# Closed normal terms

_HINTS = ("x", "y", "z", "u", "v", "w")


@cache
def _neutral(size: int, depth: int) -> tuple[Term, ...]:
    if size == 1:
        return tuple(Bound(i) for i in range(depth))
    out: list[Term] = []
    for fun_size in range(1, size - 1):
        for fun in _neutral(fun_size, depth):
            for arg in _normal(size - 1 - fun_size, depth):
                out.append(App(fun, arg))
    return tuple(out)


@cache
def _normal(size: int, depth: int) -> tuple[Term, ...]:
    if size < 1:
        return ()
    abstractions = tuple(Lam(_HINTS[depth % len(_HINTS)], body) for body in _normal(size - 1, depth + 1))
    return abstractions + _neutral(size, depth)


def enumerate_closed_normal(max_size: int) -> Iterator[Term]:
    """Every closed β-normal term of size at most ``max_size``, smallest first."""
    for size in range(1, max_size + 1):
        yield from _normal(size, 0)
