import random

import pytest
from src.core.exceptions import FreeVarError, MissingDeclarationError, PolarityError, PreconditionError
from src.kernel.checker import SystemId, Valid, validate_derivation
from src.kernel.datalib import church_bool, church_list_nat, church_nat
from src.kernel.membership import (
    ExpansionKind,
    Member,
    NegContext,
    NotMember,
    Unknown,
    UnknownCause,
    expand,
    member,
    member_open,
    stability_probe,
)
from src.kernel.parser import parse_term, parse_type
from src.kernel.reduce import Done, Equivalence, beta_eq, beta_step, is_normal, normalize
from src.kernel.syntax import EMPTY_CONTEXT, Context, Term, TypeExpr, free_vars

from tests.conftest import LENT


class TestMember:
    def test_redex_reduces_to_zero(self, ent: TypeExpr) -> None:
        verdict = member(parse_term("(λz.z)λf.λx.x"), ent)
        assert isinstance(verdict, Member)
        assert verdict.normal_form == church_nat(0)
        assert verdict.steps == 1

    def test_witness_is_for_the_normal_form(self, ent: TypeExpr) -> None:
        t = parse_term("(λn.λf.λx.(f)((n)f)x)λf.λx.(f)x")
        verdict = member(t, ent)
        assert isinstance(verdict, Member)
        assert is_normal(verdict.normal_form)
        assert beta_eq(t, verdict.normal_form) is Equivalence.YES
        assert verdict.witness.subject == verdict.normal_form
        assert validate_derivation(verdict.witness, SystemId.F0) == Valid()
        assert not free_vars(verdict.normal_form)

    def test_identity_is_in_ent(self, ent: TypeExpr) -> None:
        assert isinstance(member(parse_term("λx.x"), ent), Member)

    def test_identity_is_not_a_boolean(self, bool_type: TypeExpr) -> None:
        verdict = member(parse_term("λx.x"), bool_type)
        assert verdict == NotMember(parse_term("λx.x"))

    def test_self_application_not_in_ent(self, ent: TypeExpr) -> None:
        assert isinstance(member(parse_term("λx.(x)x"), ent), NotMember)

    def test_a3_is_rejected(self, a3: TypeExpr) -> None:
        with pytest.raises(PolarityError):
            member(parse_term("λx.x"), a3)

    def test_divergence_is_unknown(self, omega: Term, ent: TypeExpr) -> None:
        verdict = member(omega, ent, fuel=50)
        assert verdict == Unknown(50, UnknownCause.FUEL)

    def test_too_deep_is_unknown(self, ent: TypeExpr) -> None:
        assert member(church_nat(500), ent) == Unknown(0, UnknownCause.DEPTH)

    def test_budget_is_unknown(self, ent: TypeExpr) -> None:
        verdict = member(church_nat(3), ent, budget=1)
        assert isinstance(verdict, Unknown)
        assert verdict.cause is UnknownCause.BUDGET

    def test_open_term_rejected(self) -> None:
        with pytest.raises(FreeVarError):
            member(parse_term("y"), parse_type("X"))

    def test_numerals(self, ent: TypeExpr) -> None:
        for n in range(51):
            assert isinstance(member(church_nat(n), ent), Member), n

    def test_booleans(self, bool_type: TypeExpr) -> None:
        assert isinstance(member(church_bool(True), bool_type), Member)
        assert isinstance(member(church_bool(False), bool_type), Member)

    def test_lists(self) -> None:
        rng = random.Random(0)
        lent = parse_type(LENT)
        for _ in range(20):
            values = [rng.randint(0, 10) for _ in range(rng.randint(0, 10))]
            assert isinstance(member(church_list_nat(values), lent), Member), values

    def test_beta_equivalent_terms_agree(self, ent: TypeExpr) -> None:
        t = parse_term("(λn.λf.λx.(f)((n)f)x)λf.λx.(f)x")
        u = church_nat(2)
        assert type(member(t, ent)) is type(member(u, ent)) is Member


class TestMemberOpen:
    @staticmethod
    def _gamma(*pairs: tuple[str, str]) -> NegContext:
        return NegContext(Context.of((x, parse_type(a)) for x, a in pairs))

    def test_axiom(self) -> None:
        assert isinstance(member_open(parse_term("y"), parse_type("X"), self._gamma(("y", "X"))), Member)

    def test_two_applications(self) -> None:
        gamma = self._gamma(("f", "X→X"), ("x", "X"))
        assert isinstance(member_open(parse_term("(f)(f)x"), parse_type("X"), gamma), Member)

    def test_wrong_variable(self) -> None:
        assert isinstance(member_open(parse_term("x"), parse_type("Y"), self._gamma(("x", "X"))), NotMember)

    def test_missing_declaration(self) -> None:
        with pytest.raises(MissingDeclarationError):
            member_open(parse_term("(f)x"), parse_type("X"), self._gamma(("x", "X")))

    def test_context_must_be_negative(self) -> None:
        with pytest.raises(PolarityError):
            self._gamma(("x", "∀X.X"))

    def test_negative_quantified_declaration(self) -> None:
        gamma = self._gamma(("g", "(∀X.X→X)→Y"))
        assert isinstance(member_open(parse_term("(g)λz.z"), parse_type("Y"), gamma), Member)

    def test_empty_context_matches_closed(self, ent: TypeExpr) -> None:
        for t in (church_nat(2), parse_term("λx.(x)x"), parse_term("(λz.z)λf.λx.x")):
            assert member_open(t, ent, NegContext(EMPTY_CONTEXT)) == member(t, ent)


class TestExpand:
    @pytest.mark.parametrize("kind", list(ExpansionKind))
    def test_one_step_back(self, kind: ExpansionKind) -> None:
        rng = random.Random(3)
        t = church_nat(2)
        for _ in range(10):
            expanded, used = expand(t, rng, [kind])
            assert expanded != t
            assert beta_step(expanded) == t
            assert used in (kind, ExpansionKind.IDENTITY)

    def test_closed_stays_closed(self) -> None:
        rng = random.Random(0)
        for _ in range(20):
            expanded, _ = expand(church_nat(1), rng)
            assert not free_vars(expanded)

    def test_expansion_normalizes_back(self) -> None:
        rng = random.Random(1)
        expanded, _ = expand(church_bool(True), rng, [ExpansionKind.DISCARD])
        assert normalize(expanded) == Done(church_bool(True), 1)


class TestStability:
    def test_numeral_stays_member(self, ent: TypeExpr) -> None:
        report = stability_probe(church_nat(2), ent, 10)
        assert len(report.probes) == 10
        assert all(isinstance(p.verdict, Member) for p in report.probes)
        assert report.stable

    def test_non_member_never_flips(self, bool_type: TypeExpr) -> None:
        report = stability_probe(parse_term("λx.x"), bool_type, 10)
        assert not any(isinstance(p.verdict, Member) for p in report.probes)
        assert report.violations == []

    def test_no_expansions(self, ent: TypeExpr) -> None:
        report = stability_probe(church_nat(1), ent, 0)
        assert report.probes == []
        assert report.stable

    def test_needs_a_kind(self, ent: TypeExpr) -> None:
        with pytest.raises(PreconditionError):
            stability_probe(church_nat(1), ent, 3, kinds=[])

    def test_seeded(self, ent: TypeExpr) -> None:
        first = stability_probe(church_nat(1), ent, 5, seed=7)
        second = stability_probe(church_nat(1), ent, 5, seed=7)
        assert [p.term for p in first.probes] == [p.term for p in second.probes]

    def test_probes_are_distinct(self, ent: TypeExpr) -> None:
        report = stability_probe(church_nat(0), ent, 15, kinds=[ExpansionKind.IDENTITY])
        terms = [p.term for p in report.probes]
        assert len(set(terms)) == len(terms)
        assert church_nat(0) not in terms
