"""Query layer shared by the command line and the HTTP front door.

Every function takes a request model, parses its text fields, runs the
kernel and returns a response model. Kernel errors propagate unchanged;
inputs nested past the interpreter stack become :class:`DepthLimitError`.
"""

from collections.abc import Callable
from functools import wraps

import structlog

from src.config import settings
from src.core.exceptions import DepthLimitError
from src.kernel.checker import Aborted, NotTypable, Valid, get_prover, validate_derivation
from src.kernel.datalib import enumerate_closed_normal, get_data_type
from src.kernel.membership import (
    Member,
    NegContext,
    NotMember,
    Unknown,
    Verdict,
    member,
    member_open,
    stability_probe,
)
from src.kernel.parser import parse_term, parse_type
from src.kernel.polarity import classify
from src.kernel.printer import print_term, print_type
from src.kernel.reduce import FuelExhausted, beta_trace, normalize, whnf, whnf_trace
from src.kernel.syntax import EMPTY_CONTEXT
from src.schemas.derivation import DerivationNode, context_from_models
from src.schemas.queries import (
    CheckRequest,
    CheckResponse,
    ClassifyRequest,
    ClassifyResponse,
    DecodeResponse,
    EncodeResponse,
    EnumerateResponse,
    MemberRequest,
    MemberResponse,
    NormalizeRequest,
    NormalizeResponse,
    ProbeModel,
    SearchRequest,
    SearchResponse,
    StabilityRequest,
    StabilityResponse,
    TraceStepModel,
)

logger = structlog.get_logger()


def depth_guarded[**P, R](fn: Callable[P, R]) -> Callable[P, R]:
    @wraps(fn)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return fn(*args, **kwargs)
        except RecursionError:
            logger.info("query_depth_exceeded", query=fn.__name__)
            raise DepthLimitError from None

    return wrapper


@depth_guarded
def normalize_query(req: NormalizeRequest) -> NormalizeResponse:
    term = parse_term(req.term)
    fuel = settings.fuel if req.fuel is None else req.fuel
    outcome = whnf(term, fuel) if req.mode == "whnf" else normalize(term, fuel)
    trace = None
    if req.trace:
        steps = whnf_trace(term, fuel) if req.mode == "whnf" else beta_trace(term, fuel)
        trace = [TraceStepModel(index=s.index, path=s.path, term=print_term(s.term)) for s in steps]
    if isinstance(outcome, FuelExhausted):
        return NormalizeResponse(
            outcome="fuel_exhausted", term=print_term(outcome.partial), steps=outcome.steps, trace=trace
        )
    return NormalizeResponse(outcome="done", term=print_term(outcome.term), steps=outcome.steps, trace=trace)


@depth_guarded
def classify_query(req: ClassifyRequest) -> ClassifyResponse:
    ty = parse_type(req.type)
    return ClassifyResponse(type=print_type(ty), polarity=classify(ty))


@depth_guarded
def search_query(req: SearchRequest) -> SearchResponse:
    ctx = context_from_models(req.context)
    term = parse_term(req.term)
    ty = parse_type(req.type)
    result = get_prover(budget=req.budget).prove(ctx, term, ty)
    if isinstance(result, Aborted):
        return SearchResponse(outcome="aborted", budget=result.budget)
    if isinstance(result, NotTypable):
        return SearchResponse(outcome="not_typable")
    return SearchResponse(outcome="typable", witness=DerivationNode.from_kernel(result.witness))


def verdict_response(verdict: Verdict) -> MemberResponse:
    match verdict:
        case Member(normal_form, witness, steps):
            return MemberResponse(
                verdict="member",
                normal_form=print_term(normal_form),
                steps=steps,
                witness=DerivationNode.from_kernel(witness),
            )
        case NotMember(normal_form, reason):
            return MemberResponse(verdict="not_member", normal_form=print_term(normal_form), reason=reason)
        case Unknown(fuel_spent, cause):
            return MemberResponse(verdict="unknown", fuel_spent=fuel_spent, cause=cause)


@depth_guarded
def member_query(req: MemberRequest) -> MemberResponse:
    term = parse_term(req.term)
    ty = parse_type(req.type)
    fuel = settings.fuel if req.fuel is None else req.fuel
    budget = settings.budget if req.budget is None else req.budget
    if req.context is None:
        verdict = member(term, ty, fuel, budget)
    else:
        gamma = NegContext(context_from_models(req.context))
        verdict = member_open(term, ty, gamma, fuel, budget)
    return verdict_response(verdict)


@depth_guarded
def check_query(req: CheckRequest) -> CheckResponse:
    result = validate_derivation(req.derivation.to_kernel(), req.sys)
    if isinstance(result, Valid):
        return CheckResponse(ok=True)
    logger.info("derivation_invalid", path=result.dotted_path, reason=result.reason)
    return CheckResponse(ok=False, path=result.dotted_path, reason=result.reason, detail=result.detail)


@depth_guarded
def stability_query(req: StabilityRequest) -> StabilityResponse:
    term = parse_term(req.term)
    ty = parse_type(req.type)
    report = stability_probe(
        term,
        ty,
        req.expansions,
        seed=settings.seed if req.seed is None else req.seed,
        fuel=settings.fuel if req.fuel is None else req.fuel,
        budget=settings.budget if req.budget is None else req.budget,
        kinds=req.kinds,
    )
    probes = [
        ProbeModel(term=print_term(p.term), kind=p.kind, verdict=verdict_response(p.verdict)) for p in report.probes
    ]
    return StabilityResponse(
        baseline=verdict_response(report.baseline),
        probes=probes,
        violations=len(report.violations),
        stable=report.stable,
    )


@depth_guarded
def encode_query(kind: str, value: str) -> EncodeResponse:
    data_type = get_data_type(kind)
    term = data_type.encode(data_type.read(value))
    return EncodeResponse(kind=kind, type=print_type(data_type.ty), term=print_term(term))


@depth_guarded
def decode_query(kind: str, term: str, fuel: int | None = None) -> DecodeResponse:
    data_type = get_data_type(kind)
    value = data_type.decode(parse_term(term), settings.fuel if fuel is None else fuel)
    return DecodeResponse(kind=kind, value=value)


@depth_guarded
def enumerate_query(max_size: int, typable_at: str | None = None, budget: int | None = None) -> EnumerateResponse:
    terms = enumerate_closed_normal(max_size)
    if typable_at is not None:
        ty = parse_type(typable_at)
        prover = get_prover(budget=budget)
        terms = (t for t in terms if not isinstance(prover.prove(EMPTY_CONTEXT, t, ty), NotTypable | Aborted))
    return EnumerateResponse(max_size=max_size, typable_at=typable_at, terms=[print_term(t) for t in terms])
