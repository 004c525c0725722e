import pytest
from src.core.exceptions import DerivationFormatError
from src.kernel.bundled import load_bundled
from src.kernel.checker import SystemId, Typable, Valid, search_f0, validate_derivation
from src.kernel.datalib import church_list_nat
from src.kernel.parser import parse_type
from src.kernel.syntax import EMPTY_CONTEXT
from src.schemas.derivation import DerivationNode, dump_derivation, load_derivation

from tests.conftest import LENT


@pytest.mark.parametrize("name", ["bool_true", "i_prime_a3"])
def test_bundled_survive_serialization(name: str) -> None:
    d = load_bundled(name)
    assert load_derivation(dump_derivation(d)) == d


def test_search_witness_survives_serialization() -> None:
    result = search_f0(EMPTY_CONTEXT, church_list_nat([0, 3]), parse_type(LENT))
    assert isinstance(result, Typable)
    restored = load_derivation(dump_derivation(result.witness))
    assert restored == result.witness
    assert validate_derivation(restored, SystemId.F0) == Valid()


def test_dump_omits_absent_fields() -> None:
    text = dump_derivation(load_bundled("bool_true"))
    assert '"instantiation"' not in text
    assert '"generalized": "X"' in text


def test_malformed_json() -> None:
    with pytest.raises(DerivationFormatError):
        load_derivation('{"rule": "Ax"}')


def test_unknown_rule() -> None:
    with pytest.raises(DerivationFormatError):
        load_derivation('{"rule": "Cut", "term": "x", "type": "X"}')


def test_bad_term_reports_node() -> None:
    node = DerivationNode.model_validate(
        {
            "rule": "ArrI",
            "term": "λx.x",
            "type": "X→X",
            "premises": [{"rule": "Ax", "term": "(x", "type": "X", "context": [{"var": "x", "type": "X"}]}],
        }
    )
    with pytest.raises(DerivationFormatError, match="node 0"):
        node.to_kernel()
