from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.kernel.checker import SystemId
from src.kernel.membership import ExpansionKind
from src.schemas.derivation import DeclarationModel, DerivationNode


class EntryKind(StrEnum):
    NORMALIZE = "normalize"
    CLASSIFY = "classify"
    SEARCH = "search"
    MEMBER = "member"
    VALIDATE = "validate"
    STABILITY = "stability"


EXPECTED_TAGS: dict[EntryKind, frozenset[str]] = {
    EntryKind.NORMALIZE: frozenset({"done", "fuel_exhausted"}),
    EntryKind.CLASSIFY: frozenset({"forall+", "forall-", "both", "neither"}),
    EntryKind.SEARCH: frozenset({"typable", "not_typable", "aborted"}),
    EntryKind.MEMBER: frozenset(
        {"member", "not_member", "unknown", "polarity_error", "free_var_error", "missing_declaration"}
    ),
    EntryKind.VALIDATE: frozenset({"ok", "invalid"}),
    EntryKind.STABILITY: frozenset({"stable", "unstable"}),
}

_REQUIRED: dict[EntryKind, tuple[str, ...]] = {
    EntryKind.NORMALIZE: ("term",),
    EntryKind.CLASSIFY: ("type",),
    EntryKind.SEARCH: ("term", "type"),
    EntryKind.MEMBER: ("term", "type"),
    EntryKind.VALIDATE: ("derivation",),
    EntryKind.STABILITY: ("term", "type"),
}


class CorpusEntry(BaseModel):
    """One line of a JSONL corpus.

    ``derivation`` is either inline or a reference: ``bundled:<name>`` or a
    path relative to the corpus file.
    """

    model_config = ConfigDict(extra="forbid")

    id: str = Field(..., min_length=1)
    kind: EntryKind
    expected: str
    term: str | None = None
    type: str | None = None
    context: list[DeclarationModel] | None = None
    derivation: DerivationNode | str | None = None
    sys: SystemId = SystemId.F
    fuel: int | None = Field(default=None, ge=0)
    budget: int | None = Field(default=None, ge=1)
    expansions: int = Field(default=10, ge=0)
    seed: int | None = None
    kinds: list[ExpansionKind] = Field(default_factory=lambda: list(ExpansionKind), min_length=1)

    @model_validator(mode="after")
    def _check_fields(self) -> "CorpusEntry":
        if self.expected not in EXPECTED_TAGS[self.kind]:
            raise ValueError(f"expected tag '{self.expected}' is not an outcome of {self.kind}")
        missing = [name for name in _REQUIRED[self.kind] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind} entries need {', '.join(missing)}")
        return self


class EntryResult(BaseModel):
    index: int
    id: str
    kind: EntryKind | None = None
    expected: str | None = None
    actual: str
    passed: bool
    detail: str | None = None


class CorpusReport(BaseModel):
    total: int
    passed: int
    results: list[EntryResult]

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total
