from collections.abc import AsyncIterator

import pytest
from httpx import ASGITransport, AsyncClient
from hypothesis import HealthCheck, settings
from src.kernel.parser import parse_term, parse_type
from src.kernel.syntax import Term, TypeExpr
from src.main import app

settings.register_profile("kernel", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("kernel")

ENT = "∀X.(X→X)→X→X"
BOOL = "∀X.X→X→X"
LENT = "∀X.((∀Y.(Y→Y)→Y→Y)→X→X)→X→X"
A3 = "∀X.(X→∀Y.X)→X→X"
OMEGA = "(λx.(x)x)λx.(x)x"


@pytest.fixture
async def client() -> AsyncIterator[AsyncClient]:
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        yield ac


@pytest.fixture
def ent() -> TypeExpr:
    return parse_type(ENT)


@pytest.fixture
def bool_type() -> TypeExpr:
    return parse_type(BOOL)


@pytest.fixture
def a3() -> TypeExpr:
    return parse_type(A3)


@pytest.fixture
def omega() -> Term:
    return parse_term(OMEGA)
