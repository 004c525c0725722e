import asyncio
import json
from pathlib import Path

import structlog

from src.config import settings
from src.core.exceptions import CorpusFormatError, DepthLimitError, DerivationFormatError, KernelError
from src.kernel.bundled import load_bundled
from src.schemas.corpus import CorpusEntry, CorpusReport, EntryKind, EntryResult
from src.schemas.derivation import DerivationNode
from src.schemas.queries import (
    CheckRequest,
    ClassifyRequest,
    MemberRequest,
    NormalizeRequest,
    SearchRequest,
    StabilityRequest,
)
from src.services import queries

logger = structlog.get_logger()

BUNDLED_PREFIX = "bundled:"


def parse_corpus(text: str) -> list[CorpusEntry | EntryResult]:
    """Entries in file order; a line that cannot be read becomes a failed result in place."""
    items: list[CorpusEntry | EntryResult] = []
    seen: set[str] = set()
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        index = len(items)
        try:
            entry = CorpusEntry.model_validate(json.loads(line))
        except (json.JSONDecodeError, ValueError) as exc:
            detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            items.append(
                EntryResult(index=index, id=f"line {number}", actual="format_error", passed=False, detail=detail)
            )
            continue
        if entry.id in seen:
            items.append(
                EntryResult(index=index, id=entry.id, actual="format_error", passed=False, detail="duplicate id")
            )
            continue
        seen.add(entry.id)
        items.append(entry)
    return items


def _resolve_derivation(entry: CorpusEntry, base_dir: Path) -> DerivationNode:
    ref = entry.derivation
    if isinstance(ref, DerivationNode):
        return ref
    assert ref is not None
    if ref.startswith(BUNDLED_PREFIX):
        return DerivationNode.from_kernel(load_bundled(ref.removeprefix(BUNDLED_PREFIX)))
    try:
        text = (base_dir / ref).read_text(encoding="utf-8")
    except OSError as exc:
        raise DerivationFormatError(f"cannot read derivation '{ref}': {exc.strerror}") from exc
    return DerivationNode.model_validate_json(text)


def evaluate_entry(entry: CorpusEntry, base_dir: Path) -> str:
    """The outcome tag the kernel produces for ``entry``."""
    match entry.kind:
        case EntryKind.NORMALIZE:
            assert entry.term is not None
            return queries.normalize_query(NormalizeRequest(term=entry.term, fuel=entry.fuel)).outcome
        case EntryKind.CLASSIFY:
            assert entry.type is not None
            return queries.classify_query(ClassifyRequest(type=entry.type)).polarity.value
        case EntryKind.SEARCH:
            assert entry.term is not None and entry.type is not None
            request = SearchRequest(term=entry.term, type=entry.type, context=entry.context or [], budget=entry.budget)
            return queries.search_query(request).outcome
        case EntryKind.MEMBER:
            assert entry.term is not None and entry.type is not None
            member_request = MemberRequest(
                term=entry.term, type=entry.type, context=entry.context, fuel=entry.fuel, budget=entry.budget
            )
            return queries.member_query(member_request).verdict
        case EntryKind.VALIDATE:
            check = queries.check_query(CheckRequest(derivation=_resolve_derivation(entry, base_dir), sys=entry.sys))
            return "ok" if check.ok else "invalid"
        case EntryKind.STABILITY:
            assert entry.term is not None and entry.type is not None
            stability_request = StabilityRequest(
                term=entry.term,
                type=entry.type,
                expansions=entry.expansions,
                seed=entry.seed,
                fuel=entry.fuel,
                budget=entry.budget,
                kinds=entry.kinds,
            )
            return "stable" if queries.stability_query(stability_request).stable else "unstable"


def run_entry(index: int, entry: CorpusEntry, base_dir: Path) -> EntryResult:
    with structlog.contextvars.bound_contextvars(entry_id=entry.id):
        detail = None
        try:
            actual = evaluate_entry(entry, base_dir)
        except KernelError as exc:
            actual, detail = exc.code, exc.detail
        except RecursionError:
            actual, detail = DepthLimitError.code, DepthLimitError().detail
        except ValueError as exc:
            actual, detail = "format_error", str(exc).splitlines()[0]
        passed = actual == entry.expected
        if not passed:
            logger.info("corpus_entry_failed", expected=entry.expected, actual=actual)
        return EntryResult(
            index=index,
            id=entry.id,
            kind=entry.kind,
            expected=entry.expected,
            actual=actual,
            passed=passed,
            detail=detail,
        )


async def run_corpus_async(items: list[CorpusEntry | EntryResult], base_dir: Path, concurrency: int) -> CorpusReport:
    sem = asyncio.Semaphore(concurrency)

    async def _run_one(index: int, item: CorpusEntry | EntryResult) -> EntryResult:
        if isinstance(item, EntryResult):
            return item
        async with sem:
            return await asyncio.to_thread(run_entry, index, item, base_dir)

    results = await asyncio.gather(*[_run_one(i, item) for i, item in enumerate(items)])
    return CorpusReport(total=len(results), passed=sum(r.passed for r in results), results=list(results))


def run_corpus(path: Path, concurrency: int | None = None, seed: int | None = None) -> CorpusReport:
    """Run every entry of a JSONL corpus; ``seed`` fills in entries that leave theirs unset."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read corpus '{path}': {exc.strerror}") from exc
    items = parse_corpus(text)
    if seed is not None:
        items = [
            item.model_copy(update={"seed": seed}) if isinstance(item, CorpusEntry) and item.seed is None else item
            for item in items
        ]
    report = asyncio.run(run_corpus_async(items, path.parent, concurrency or settings.corpus_concurrency))
    logger.info("corpus_finished", total=report.total, passed=report.passed)
    return report
