import asyncio

from fastapi import APIRouter

from src.schemas.queries import (
    CheckRequest,
    CheckResponse,
    ClassifyRequest,
    ClassifyResponse,
    MemberRequest,
    MemberResponse,
    NormalizeRequest,
    NormalizeResponse,
    SearchRequest,
    SearchResponse,
    StabilityRequest,
    StabilityResponse,
)
from src.services import queries

router = APIRouter()


@router.post("/normalize", response_model=NormalizeResponse, response_model_exclude_none=True)
async def normalize(body: NormalizeRequest) -> NormalizeResponse:
    return await asyncio.to_thread(queries.normalize_query, body)


@router.post("/classify", response_model=ClassifyResponse)
async def classify(body: ClassifyRequest) -> ClassifyResponse:
    return queries.classify_query(body)


@router.post("/search", response_model=SearchResponse, response_model_exclude_none=True)
async def search(body: SearchRequest) -> SearchResponse:
    return await asyncio.to_thread(queries.search_query, body)


@router.post("/member", response_model=MemberResponse, response_model_exclude_none=True)
async def member(body: MemberRequest) -> MemberResponse:
    return await asyncio.to_thread(queries.member_query, body)


@router.post("/check", response_model=CheckResponse, response_model_exclude_none=True)
async def check(body: CheckRequest) -> CheckResponse:
    return await asyncio.to_thread(queries.check_query, body)


@router.post("/stability", response_model=StabilityResponse, response_model_exclude_none=True)
async def stability(body: StabilityRequest) -> StabilityResponse:
    return await asyncio.to_thread(queries.stability_query, body)
