from fastapi import APIRouter

from src.api.endpoints import health, kernel

router = APIRouter()
router.include_router(health.router, tags=["health"])
router.include_router(kernel.router, tags=["kernel"])
