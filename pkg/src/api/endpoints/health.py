import structlog
from fastapi import APIRouter

from src.core.exceptions import NotReadyError
from src.schemas.health import HealthResponse
from src.schemas.queries import MemberRequest
from src.services import queries

logger = structlog.get_logger()

router = APIRouter()

_SELF_TEST = MemberRequest(term="(λz.z)λf.λx.(f)x", type="∀X.(X→X)→X→X", fuel=100, budget=1_000)


@router.get("/health")
async def health_check() -> HealthResponse:
    return HealthResponse(status="ok")


@router.get("/ready")
async def readiness_check() -> HealthResponse:
    verdict = queries.member_query(_SELF_TEST).verdict
    if verdict != "member":
        logger.error("self_test_failed", verdict=verdict)
        raise NotReadyError("kernel self-test failed")
    return HealthResponse(status="ok")
