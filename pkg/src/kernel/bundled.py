"""Hand-written derivations shipped with the package."""

from pathlib import Path

from src.core.exceptions import KernelError
from src.kernel.checker.derivation import Derivation
from src.schemas.derivation import load_derivation

DATA_DIR = Path(__file__).parent / "corpus_data"

BUNDLED: dict[str, str] = {
    # λx.λy.(x)y at ∀X.(X→∀Y.X)→X→X. The vacuous ∀Y.X is instantiated with X→X where X
    # would do, so this copy is F-valid only and exercises the F0 instantiation check.
    "i_prime_a3": "i_prime_a3.json",
    # the same judgment with the vacuous quantifier instantiated at X; valid in F0 too
    "i_prime_a3_f0": "i_prime_a3_f0.json",
    "bool_true": "bool_true.json",
}


def bundled_path(name: str) -> Path:
    try:
        return DATA_DIR / BUNDLED[name]
    except KeyError:
        raise KernelError(f"unknown bundled derivation '{name}', expected one of {sorted(BUNDLED)}") from None


def load_bundled(name: str) -> Derivation:
    return load_derivation(bundled_path(name).read_text(encoding="utf-8"))
