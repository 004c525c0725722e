"""Concrete syntax for terms and types.

Terms follow the head-parenthesized application style ``(t)u1...un`` where a
parenthesized head takes every argument written after it, so ``(f)(f)x`` is
``f`` applied to ``(f)x`` while ``(t)u v`` is ``((t)u)v``. Plain
juxtaposition ``t u v`` is accepted too, and a trailing λ extends to the
right. Both ``\\x.`` and ``λx.`` introduce abstractions; types accept ``∀``
or ``forall`` and ``→`` or ``->``.
"""

from functools import cache
from typing import cast

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from src.core.exceptions import DepthLimitError, ParseError
from src.kernel.syntax import Arrow, Term, TypeExpr, TVar, Var, apply, forall, lam

TERM_GRAMMAR = r"""
    start: term

    ?term: lam
         | app

    lam: ("\\" | "λ") NAME "." term

    ?app: NAME+ trailer?                -> juxtaposition
        | group

    ?trailer: group
            | lam

    group: "(" term ")" NAME* trailer?

    NAME: /[A-Za-z_][A-Za-z0-9_']*/

    %import common.WS
    %ignore WS
"""

TYPE_GRAMMAR = r"""
    start: type

    ?type: quantified
         | arrow

    quantified: ("∀" | "forall") NAME "." type

    ?arrow: tatom ("→" | "->") type     -> arrow
          | tatom

    ?tatom: NAME                        -> tvar
          | "(" type ")"

    NAME: /[A-Za-z_][A-Za-z0-9_']*/

    %import common.WS
    %ignore WS
"""

_END = "$END"


@v_args(inline=True)
class _TermBuilder(Transformer[Token, Term]):
    def start(self, term: Term) -> Term:
        return term

    def lam(self, name: Token, body: Term) -> Term:
        return lam(str(name), body)

    def juxtaposition(self, *items: Token | Term) -> Term:
        terms = [Var(str(item)) if isinstance(item, Token) else item for item in items]
        return apply(terms[0], *terms[1:])

    def group(self, head: Term, *items: Token | Term) -> Term:
        args = [Var(str(item)) if isinstance(item, Token) else item for item in items]
        return apply(head, *args)


@v_args(inline=True)
class _TypeBuilder(Transformer[Token, TypeExpr]):
    def start(self, ty: TypeExpr) -> TypeExpr:
        return ty

    def quantified(self, name: Token, body: TypeExpr) -> TypeExpr:
        return forall(str(name), body)

    def arrow(self, dom: TypeExpr, cod: TypeExpr) -> TypeExpr:
        return Arrow(dom, cod)

    def tvar(self, name: Token) -> TypeExpr:
        return TVar(str(name))


@cache
def _term_parser() -> Lark:
    return Lark(TERM_GRAMMAR, parser="lalr", transformer=_TermBuilder())


@cache
def _type_parser() -> Lark:
    return Lark(TYPE_GRAMMAR, parser="lalr", transformer=_TypeBuilder())


def _describe(parser: Lark, names: set[str]) -> frozenset[str]:
    described: set[str] = set()
    for name in names:
        if name == _END:
            described.add("end of input")
            continue
        try:
            pattern = parser.get_terminal(name).pattern
        except KeyError:
            described.add(name)
            continue
        described.add("identifier" if name == "NAME" else pattern.value)
    return frozenset(described)


def _to_parse_error(parser: Lark, text: str, exc: UnexpectedInput, what: str) -> ParseError:
    expected: set[str] = set()
    position = exc.pos_in_stream or 0
    if isinstance(exc, UnexpectedToken):
        expected = set(exc.expected)
        if exc.token.type == _END:
            position = len(text)
    elif isinstance(exc, UnexpectedCharacters):
        expected = set(exc.allowed)
    elif isinstance(exc, UnexpectedEOF):
        expected = set(exc.expected)
        position = len(text)
    offset = len(text[:position].encode("utf-8"))
    at = "end of input" if position >= len(text) else f"byte {offset}"
    return ParseError(f"invalid {what} at {at}", offset=offset, expected=_describe(parser, expected))


def parse_term(text: str) -> Term:
    parser = _term_parser()
    try:
        term = cast(Term, parser.parse(text))
    except UnexpectedInput as exc:
        raise _to_parse_error(parser, text, exc, "term") from None
    except RecursionError:
        raise DepthLimitError from None
    return term


def parse_type(text: str) -> TypeExpr:
    parser = _type_parser()
    try:
        ty = cast(TypeExpr, parser.parse(text))
    except UnexpectedInput as exc:
        raise _to_parse_error(parser, text, exc, "type") from None
    except RecursionError:
        raise DepthLimitError from None
    return ty
