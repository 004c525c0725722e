"""Locally nameless λ-terms and System F types.

Bound variables are de Bruijn indices and free variables are names. Binder
names are kept only as printing hints and never take part in equality, so
``==`` on terms and types is α-equivalence.
"""

from __future__ import annotations

from collections.abc import Collection, Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from src.core.exceptions import PreconditionError

PRIME = "'"


def fresh_name(base: str, avoid: Collection[str]) -> str:
    name = base
    while name in avoid:
        name += PRIME
    return name


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Bound:
    index: int


@dataclass(frozen=True, slots=True)
class Lam:
    binder: str = field(compare=False)
    body: Term


@dataclass(frozen=True, slots=True)
class App:
    fun: Term
    arg: Term


type Term = Var | Bound | Lam | App


def term_size(t: Term) -> int:
    match t:
        case Var() | Bound():
            return 1
        case Lam(body=body):
            return 1 + term_size(body)
        case App(fun, arg):
            return 1 + term_size(fun) + term_size(arg)


def free_vars(t: Term) -> frozenset[str]:
    names: set[str] = set()
    stack = [t]
    while stack:
        match stack.pop():
            case Var(name):
                names.add(name)
            case Lam(body=body):
                stack.append(body)
            case App(fun, arg):
                stack.extend((fun, arg))
    return frozenset(names)


def is_locally_closed(t: Term, depth: int = 0) -> bool:
    match t:
        case Bound(index):
            return index < depth
        case Var():
            return True
        case Lam(body=body):
            return is_locally_closed(body, depth + 1)
        case App(fun, arg):
            return is_locally_closed(fun, depth) and is_locally_closed(arg, depth)


def shift_term(t: Term, by: int, cutoff: int = 0) -> Term:
    if by == 0:
        return t
    match t:
        case Bound(index):
            return Bound(index + by) if index >= cutoff else t
        case Var():
            return t
        case Lam(binder, body):
            return Lam(binder, shift_term(body, by, cutoff + 1))
        case App(fun, arg):
            return App(shift_term(fun, by, cutoff), shift_term(arg, by, cutoff))


def _instantiate(t: Term, depth: int, u: Term) -> Term:
    match t:
        case Bound(index):
            if index == depth:
                return shift_term(u, depth)
            return Bound(index - 1) if index > depth else t
        case Var():
            return t
        case Lam(binder, body):
            return Lam(binder, _instantiate(body, depth + 1, u))
        case App(fun, arg):
            return App(_instantiate(fun, depth, u), _instantiate(arg, depth, u))


def open_term(body: Term, u: Term) -> Term:
    """Replace the outermost bound variable of a binder body with ``u``."""
    return _instantiate(body, 0, u)


def _abstract(t: Term, name: str, depth: int) -> Term:
    match t:
        case Var(n):
            return Bound(depth) if n == name else t
        case Bound(index):
            return Bound(index + 1) if index >= depth else t
        case Lam(binder, body):
            return Lam(binder, _abstract(body, name, depth + 1))
        case App(fun, arg):
            return App(_abstract(fun, name, depth), _abstract(arg, name, depth))


def close_term(t: Term, name: str) -> Term:
    return _abstract(t, name, 0)


def lam(name: str, body: Term) -> Lam:
    return Lam(name, close_term(body, name))


def apply(head: Term, *args: Term) -> Term:
    result = head
    for arg in args:
        result = App(result, arg)
    return result


def spine(t: Term) -> tuple[Term, list[Term]]:
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def _subst_free(t: Term, mapping: Mapping[str, Term], depth: int) -> Term:
    match t:
        case Var(name):
            return shift_term(mapping[name], depth) if name in mapping else t
        case Bound():
            return t
        case Lam(binder, body):
            return Lam(binder, _subst_free(body, mapping, depth + 1))
        case App(fun, arg):
            return App(_subst_free(fun, mapping, depth), _subst_free(arg, mapping, depth))


def subst_terms(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution ``t[u1/x1, ..., un/xn]``."""
    if not mapping:
        return t
    return _subst_free(t, mapping, 0)


def subst_term(t: Term, x: str, u: Term) -> Term:
    return subst_terms(t, {x: u})


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True, slots=True)
class TVar:
    name: str


@dataclass(frozen=True, slots=True)
class TBound:
    index: int


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: TypeExpr
    cod: TypeExpr


@dataclass(frozen=True, slots=True)
class Forall:
    binder: str = field(compare=False)
    body: TypeExpr


type TypeExpr = TVar | TBound | Arrow | Forall


def type_size(a: TypeExpr) -> int:
    match a:
        case TVar() | TBound():
            return 1
        case Arrow(dom, cod):
            return 1 + type_size(dom) + type_size(cod)
        case Forall(body=body):
            return 1 + type_size(body)


def iter_tvars(a: TypeExpr) -> Iterator[str]:
    """Free type variables in left-to-right occurrence order, repeats included."""
    match a:
        case TVar(name):
            yield name
        case TBound():
            return
        case Arrow(dom, cod):
            yield from iter_tvars(dom)
            yield from iter_tvars(cod)
        case Forall(body=body):
            yield from iter_tvars(body)


def free_tvars(a: TypeExpr) -> frozenset[str]:
    return frozenset(iter_tvars(a))


def mentions_bound(a: TypeExpr, depth: int = 0) -> bool:
    """Whether the binder ``depth`` levels up is used in ``a``."""
    match a:
        case TBound(index):
            return index == depth
        case TVar():
            return False
        case Arrow(dom, cod):
            return mentions_bound(dom, depth) or mentions_bound(cod, depth)
        case Forall(body=body):
            return mentions_bound(body, depth + 1)


def is_closed_type(a: TypeExpr, depth: int = 0) -> bool:
    match a:
        case TBound(index):
            return index < depth
        case TVar():
            return True
        case Arrow(dom, cod):
            return is_closed_type(dom, depth) and is_closed_type(cod, depth)
        case Forall(body=body):
            return is_closed_type(body, depth + 1)


def shift_type(a: TypeExpr, by: int, cutoff: int = 0) -> TypeExpr:
    if by == 0:
        return a
    match a:
        case TBound(index):
            return TBound(index + by) if index >= cutoff else a
        case TVar():
            return a
        case Arrow(dom, cod):
            return Arrow(shift_type(dom, by, cutoff), shift_type(cod, by, cutoff))
        case Forall(binder, body):
            return Forall(binder, shift_type(body, by, cutoff + 1))


def _instantiate_type(a: TypeExpr, depth: int, c: TypeExpr) -> TypeExpr:
    match a:
        case TBound(index):
            if index == depth:
                return shift_type(c, depth)
            return TBound(index - 1) if index > depth else a
        case TVar():
            return a
        case Arrow(dom, cod):
            return Arrow(_instantiate_type(dom, depth, c), _instantiate_type(cod, depth, c))
        case Forall(binder, body):
            return Forall(binder, _instantiate_type(body, depth + 1, c))


def open_type(body: TypeExpr, c: TypeExpr) -> TypeExpr:
    """``A[C/X]`` for the body ``A`` of a quantifier ``∀X.A``."""
    return _instantiate_type(body, 0, c)


def _abstract_type(a: TypeExpr, name: str, depth: int) -> TypeExpr:
    match a:
        case TVar(n):
            return TBound(depth) if n == name else a
        case TBound(index):
            return TBound(index + 1) if index >= depth else a
        case Arrow(dom, cod):
            return Arrow(_abstract_type(dom, name, depth), _abstract_type(cod, name, depth))
        case Forall(binder, body):
            return Forall(binder, _abstract_type(body, name, depth + 1))


def close_type(a: TypeExpr, name: str) -> TypeExpr:
    return _abstract_type(a, name, 0)


def forall(name: str, body: TypeExpr) -> Forall:
    return Forall(name, close_type(body, name))


def arrows(*types: TypeExpr) -> TypeExpr:
    """Right-nested arrow ``A1→A2→...→An``."""
    result = types[-1]
    for a in reversed(types[:-1]):
        result = Arrow(a, result)
    return result


def _subst_free_type(a: TypeExpr, mapping: Mapping[str, TypeExpr], depth: int) -> TypeExpr:
    match a:
        case TVar(name):
            return shift_type(mapping[name], depth) if name in mapping else a
        case TBound():
            return a
        case Arrow(dom, cod):
            return Arrow(_subst_free_type(dom, mapping, depth), _subst_free_type(cod, mapping, depth))
        case Forall(binder, body):
            return Forall(binder, _subst_free_type(body, mapping, depth + 1))


def subst_types(a: TypeExpr, mapping: Mapping[str, TypeExpr]) -> TypeExpr:
    if not mapping:
        return a
    return _subst_free_type(a, mapping, 0)


def subst_type(a: TypeExpr, x: str, c: TypeExpr) -> TypeExpr:
    return subst_types(a, {x: c})


def alpha_eq(a: Term | TypeExpr, b: Term | TypeExpr) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# Contexts


@dataclass(frozen=True, slots=True)
class Declaration:
    var: str
    ty: TypeExpr


@dataclass(frozen=True, slots=True)
class Context:
    entries: tuple[Declaration, ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for decl in self.entries:
            if decl.var in seen:
                raise PreconditionError(f"duplicate declaration for '{decl.var}'")
            seen.add(decl.var)

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, TypeExpr]]) -> Context:
        return cls(tuple(Declaration(var, ty) for var, ty in pairs))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Declaration]:
        return iter(self.entries)

    def lookup(self, var: str) -> TypeExpr | None:
        for decl in self.entries:
            if decl.var == var:
                return decl.ty
        return None

    def extend(self, var: str, ty: TypeExpr) -> Context:
        return Context((*self.entries, Declaration(var, ty)))

    def names(self) -> frozenset[str]:
        return frozenset(decl.var for decl in self.entries)

    def tvar_list(self) -> list[str]:
        seen: dict[str, None] = {}
        for decl in self.entries:
            for name in iter_tvars(decl.ty):
                seen.setdefault(name)
        return list(seen)

    def free_tvars(self) -> frozenset[str]:
        return frozenset(self.tvar_list())

    def restrict(self, names: Collection[str]) -> Context:
        return Context(tuple(decl for decl in self.entries if decl.var in names))

    def issubset(self, other: Context) -> bool:
        return all(other.lookup(decl.var) == decl.ty for decl in self.entries)


EMPTY_CONTEXT = Context()
