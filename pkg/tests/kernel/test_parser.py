import pytest
from hypothesis import given
from src.core.exceptions import DepthLimitError, ParseError
from src.kernel.parser import parse_term, parse_type
from src.kernel.printer import print_term, print_type
from src.kernel.syntax import App, Arrow, Forall, Lam, Term, TBound, TVar, TypeExpr, Var, apply, forall, lam

from tests.strategies import terms, types

f, x, y = Var("f"), Var("x"), Var("y")


class TestParseTerm:
    def test_variable(self) -> None:
        assert parse_term("x") == x

    def test_parenthesized_head_takes_following_arguments(self) -> None:
        assert parse_term("(f)x y") == apply(f, x, y)

    def test_nested_head_application(self) -> None:
        assert parse_term("(f)(f)x") == App(f, App(f, x))

    def test_juxtaposition(self) -> None:
        assert parse_term("f x y") == apply(f, x, y)

    def test_backslash_and_lambda(self) -> None:
        assert parse_term("\\x.x") == parse_term("λx.x") == lam("x", x)

    def test_abstraction_extends_right(self) -> None:
        assert parse_term("λx.(x)y") == lam("x", App(x, y))

    def test_trailing_abstraction_is_an_argument(self) -> None:
        assert parse_term("(f)λx.x") == App(f, lam("x", x))

    def test_omega(self) -> None:
        delta = lam("x", App(x, x))
        assert parse_term("(λx.(x)x)λx.(x)x") == App(delta, delta)

    def test_church_numeral(self) -> None:
        assert parse_term("λf.λx.(f)(f)x") == lam("f", lam("x", App(f, App(f, x))))

    @pytest.mark.parametrize("text", ["", "λ.x", "(x", "x)", "λx x"])
    def test_rejects(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_term(text)

    def test_deep_parentheses(self) -> None:
        assert parse_term("(" * 3000 + "x" + ")" * 3000) == x

    def test_deep_abstractions_hit_the_depth_limit(self) -> None:
        with pytest.raises(DepthLimitError):
            parse_term("λx." * 3000 + "x")

    def test_error_reports_byte_offset(self) -> None:
        with pytest.raises(ParseError) as info:
            parse_term("λx.(x")
        assert info.value.offset == len("λx.(x".encode())
        assert info.value.expected


class TestParseType:
    def test_arrow_associates_right(self) -> None:
        assert parse_type("X→Y→X") == Arrow(TVar("X"), Arrow(TVar("Y"), TVar("X")))

    def test_ascii_spelling(self) -> None:
        assert parse_type("forall X.(X->X)->X->X") == parse_type("∀X.(X→X)→X→X")

    def test_quantifier_extends_right(self) -> None:
        assert parse_type("∀X.X→X") == Forall("X", Arrow(TBound(0), TBound(0)))

    def test_quantifier_in_codomain(self) -> None:
        expected = forall("X", Arrow(Arrow(TVar("X"), forall("Y", TVar("X"))), Arrow(TVar("X"), TVar("X"))))
        assert parse_type("∀X.(X→∀Y.X)→X→X") == expected

    @pytest.mark.parametrize("text", ["", "X→", "∀.X", "(X"])
    def test_rejects(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_type(text)


class TestPrinter:
    def test_head_parenthesized(self) -> None:
        assert print_term(apply(f, x, y)) == "(f)x y"
        assert print_term(App(f, App(f, x))) == "(f)(f)x"

    def test_binder_primed_away_from_free_name(self) -> None:
        assert print_term(Lam("x", App(Bound(0), x))) == "λx'.(x')x"

    def test_domain_parenthesized(self) -> None:
        assert print_type(parse_type("((X→X)→X)→X")) == "((X→X)→X)→X"
        assert print_type(parse_type("(∀X.X)→Y")) == "(∀X.X)→Y"

    def test_quantifier_primed_away_from_free_name(self) -> None:
        assert print_type(Forall("X", Arrow(TBound(0), TVar("X")))) == "∀X'.X'→X"

    @given(terms())
    def test_terms_read_back(self, t: Term) -> None:
        assert parse_term(print_term(t)) == t

    @given(types())
    def test_types_read_back(self, a: TypeExpr) -> None:
        assert parse_type(print_type(a)) == a
