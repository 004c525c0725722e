from typing import Literal

from pydantic import BaseModel, Field

from src.config import settings
from src.kernel.checker import InvalidReason, SystemId
from src.kernel.membership import ExpansionKind
from src.kernel.polarity import Polarity
from src.schemas.derivation import DeclarationModel, DerivationNode

MAX_TEXT = settings.max_term_length


class TraceStepModel(BaseModel):
    index: int
    path: str
    term: str


class NormalizeRequest(BaseModel):
    term: str = Field(..., max_length=MAX_TEXT)
    fuel: int | None = Field(default=None, ge=0)
    mode: Literal["beta", "whnf"] = "beta"
    trace: bool = False


class NormalizeResponse(BaseModel):
    outcome: Literal["done", "fuel_exhausted"]
    term: str
    steps: int
    trace: list[TraceStepModel] | None = None


class ClassifyRequest(BaseModel):
    type: str = Field(..., max_length=MAX_TEXT)


class ClassifyResponse(BaseModel):
    type: str
    polarity: Polarity


class SearchRequest(BaseModel):
    term: str = Field(..., max_length=MAX_TEXT)
    type: str = Field(..., max_length=MAX_TEXT)
    context: list[DeclarationModel] = Field(default_factory=list)
    budget: int | None = Field(default=None, ge=1)


class SearchResponse(BaseModel):
    outcome: Literal["typable", "not_typable", "aborted"]
    witness: DerivationNode | None = None
    budget: int | None = None


class MemberRequest(BaseModel):
    term: str = Field(..., max_length=MAX_TEXT)
    type: str = Field(..., max_length=MAX_TEXT)
    context: list[DeclarationModel] | None = None
    fuel: int | None = Field(default=None, ge=0)
    budget: int | None = Field(default=None, ge=1)


class MemberResponse(BaseModel):
    verdict: Literal["member", "not_member", "unknown"]
    normal_form: str | None = None
    steps: int | None = None
    witness: DerivationNode | None = None
    reason: str | None = None
    fuel_spent: int | None = None
    cause: str | None = None


class CheckRequest(BaseModel):
    derivation: DerivationNode
    sys: SystemId = SystemId.F


class CheckResponse(BaseModel):
    ok: bool
    path: str | None = None
    reason: InvalidReason | None = None
    detail: str | None = None


class StabilityRequest(BaseModel):
    term: str = Field(..., max_length=MAX_TEXT)
    type: str = Field(..., max_length=MAX_TEXT)
    expansions: int = Field(default=10, ge=0, le=1_000)
    seed: int | None = None
    fuel: int | None = Field(default=None, ge=0)
    budget: int | None = Field(default=None, ge=1)
    kinds: list[ExpansionKind] = Field(default_factory=lambda: list(ExpansionKind), min_length=1)


class ProbeModel(BaseModel):
    term: str
    kind: ExpansionKind
    verdict: MemberResponse


class StabilityResponse(BaseModel):
    baseline: MemberResponse
    probes: list[ProbeModel]
    violations: int
    stable: bool


class EncodeResponse(BaseModel):
    kind: str
    type: str
    term: str


class DecodeResponse(BaseModel):
    kind: str
    value: bool | int | list[int]


class EnumerateResponse(BaseModel):
    max_size: int
    typable_at: str | None = None
    terms: list[str]
