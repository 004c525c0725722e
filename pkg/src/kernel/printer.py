"""Rendering terms and types back to the concrete syntax of ``parser``.

Binder names are chosen from their hints, primed away from every free name
and every enclosing binder so that printing never captures.
"""

from src.kernel.syntax import (
    App,
    Arrow,
    Bound,
    Forall,
    Lam,
    Term,
    TBound,
    TVar,
    TypeExpr,
    Var,
    apply,
    free_tvars,
    free_vars,
    fresh_name,
    spine,
)


def _is_variable(t: Term) -> bool:
    return isinstance(t, Var | Bound)


def _render_term(t: Term, scope: list[str], taken: set[str]) -> str:
    match t:
        case Var(name):
            return name
        case Bound(index):
            return scope[-1 - index]
        case Lam(binder, body):
            name = fresh_name(binder, taken)
            taken.add(name)
            scope.append(name)
            try:
                return f"λ{name}.{_render_term(body, scope, taken)}"
            finally:
                scope.pop()
                taken.discard(name)
        case App():
            head, args = spine(t)
            split = max((i for i, arg in enumerate(args[:-1]) if not _is_variable(arg)), default=-1)
            if split >= 0:
                head = apply(head, *args[: split + 1])
                args = args[split + 1 :]
            rendered = [_render_term(arg, scope, taken) for arg in args]
            return f"({_render_term(head, scope, taken)}){rendered[0]}" + "".join(f" {r}" for r in rendered[1:])


def print_term(t: Term) -> str:
    return _render_term(t, [], set(free_vars(t)))


def _render_type(a: TypeExpr, scope: list[str], taken: set[str]) -> str:
    match a:
        case TVar(name):
            return name
        case TBound(index):
            return scope[-1 - index]
        case Arrow(dom, cod):
            left = _render_type(dom, scope, taken)
            if isinstance(dom, Arrow | Forall):
                left = f"({left})"
            return f"{left}→{_render_type(cod, scope, taken)}"
        case Forall(binder, body):
            name = fresh_name(binder, taken)
            taken.add(name)
            scope.append(name)
            try:
                return f"∀{name}.{_render_type(body, scope, taken)}"
            finally:
                scope.pop()
                taken.discard(name)


def print_type(a: TypeExpr) -> str:
    return _render_type(a, [], set(free_tvars(a)))
