from httpx import AsyncClient
from src.kernel.bundled import load_bundled
from src.schemas.derivation import DerivationNode

from tests.conftest import A3, BOOL, ENT, OMEGA


async def test_normalize(client: AsyncClient) -> None:
    response = await client.post("/normalize", json={"term": "(λx.x)((λy.y)z)", "trace": True})
    assert response.status_code == 200
    data = response.json()
    assert data["outcome"] == "done"
    assert data["term"] == "z"
    assert [s["path"] for s in data["trace"]] == ["", ""]


async def test_normalize_fuel(client: AsyncClient) -> None:
    response = await client.post("/normalize", json={"term": OMEGA, "fuel": 5})
    assert response.json()["outcome"] == "fuel_exhausted"


async def test_normalize_rejects_negative_fuel(client: AsyncClient) -> None:
    response = await client.post("/normalize", json={"term": "x", "fuel": -1})
    assert response.status_code == 422


async def test_classify(client: AsyncClient) -> None:
    response = await client.post("/classify", json={"type": A3})
    assert response.status_code == 200
    assert response.json() == {"type": A3, "polarity": "neither"}


async def test_search(client: AsyncClient) -> None:
    response = await client.post("/search", json={"term": "λx.λy.x", "type": BOOL})
    data = response.json()
    assert data["outcome"] == "typable"
    assert data["witness"]["rule"] == "AllI"
    assert "budget" not in data


async def test_member(client: AsyncClient) -> None:
    response = await client.post("/member", json={"term": "(\\z.z) \\f.\\x.x", "type": ENT})
    assert response.status_code == 200
    data = response.json()
    assert data["verdict"] == "member"
    assert data["normal_form"] == "λf.λx.x"


async def test_member_open(client: AsyncClient) -> None:
    body = {"term": "x", "type": "Y", "context": [{"var": "x", "type": "X"}]}
    response = await client.post("/member", json=body)
    assert response.json()["verdict"] == "not_member"


async def test_member_missing_declaration(client: AsyncClient) -> None:
    body = {"term": "(f)x", "type": "X", "context": [{"var": "x", "type": "X"}]}
    response = await client.post("/member", json=body)
    assert response.status_code == 422
    assert response.json()["error"] == "missing_declaration"


async def test_check(client: AsyncClient) -> None:
    node = DerivationNode.from_kernel(load_bundled("i_prime_a3")).model_dump(exclude_none=True)
    ok = await client.post("/check", json={"derivation": node, "sys": "f"})
    assert ok.json() == {"ok": True}
    bad = await client.post("/check", json={"derivation": node, "sys": "f0"})
    assert bad.json()["path"] == "0.0.0"
    assert bad.json()["reason"] == "non_variable_instantiation"


async def test_check_malformed_node(client: AsyncClient) -> None:
    node = {"rule": "Ax", "term": "λ", "type": "X"}
    response = await client.post("/check", json={"derivation": node})
    assert response.status_code == 400
    assert response.json()["error"] == "derivation_format_error"


async def test_stability(client: AsyncClient) -> None:
    response = await client.post("/stability", json={"term": "λx.λy.y", "type": BOOL, "expansions": 3})
    data = response.json()
    assert data["stable"] is True
    assert len(data["probes"]) == 3


async def test_rejects_oversized_term(client: AsyncClient) -> None:
    response = await client.post("/classify", json={"type": "X" * 70_000})
    assert response.status_code == 422


async def test_too_deep_term(client: AsyncClient) -> None:
    response = await client.post("/normalize", json={"term": "λx." * 3000 + "x"})
    assert response.status_code == 422
    assert response.json()["error"] == "depth_limit"


async def test_stability_rejects_empty_kinds(client: AsyncClient) -> None:
    response = await client.post("/stability", json={"term": "λx.λy.y", "type": BOOL, "kinds": []})
    assert response.status_code == 422
