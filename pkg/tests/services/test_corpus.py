import json
from pathlib import Path

import pytest
from src.core.exceptions import CorpusFormatError
from src.kernel.bundled import load_bundled
from src.schemas.corpus import CorpusEntry, EntryKind, EntryResult
from src.schemas.derivation import dump_derivation
from src.schemas.queries import StabilityRequest, StabilityResponse
from src.services import queries
from src.services.corpus import parse_corpus, run_corpus

from tests.conftest import A3, ENT

ACCEPTANCE = Path(__file__).parents[2] / "corpus" / "acceptance.jsonl"


def _write(tmp_path: Path, *entries: dict[str, object] | str) -> Path:
    lines = [e if isinstance(e, str) else json.dumps(e, ensure_ascii=False) for e in entries]
    path = tmp_path / "corpus.jsonl"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestParseCorpus:
    def test_skips_blank_lines(self) -> None:
        items = parse_corpus('\n{"id": "a", "kind": "classify", "type": "X", "expected": "both"}\n\n')
        assert len(items) == 1
        assert isinstance(items[0], CorpusEntry)

    def test_bad_json_is_reported_in_place(self) -> None:
        items = parse_corpus('{"id": "a", "kind": "classify", "type": "X", "expected": "both"}\nnot json\n')
        result = items[1]
        assert isinstance(result, EntryResult)
        assert result.id == "line 2"
        assert result.actual == "format_error"

    def test_unknown_expected_tag(self) -> None:
        items = parse_corpus('{"id": "a", "kind": "classify", "type": "X", "expected": "typable"}')
        assert isinstance(items[0], EntryResult)

    def test_missing_required_field(self) -> None:
        items = parse_corpus('{"id": "a", "kind": "search", "term": "x", "expected": "typable"}')
        assert isinstance(items[0], EntryResult)
        assert items[0].detail is not None

    def test_duplicate_id(self) -> None:
        line = '{"id": "a", "kind": "classify", "type": "X", "expected": "both"}'
        items = parse_corpus(f"{line}\n{line}")
        assert isinstance(items[1], EntryResult)
        assert items[1].detail == "duplicate id"


class TestRunCorpus:
    def test_acceptance_corpus_passes(self) -> None:
        report = run_corpus(ACCEPTANCE)
        failures = [r for r in report.results if not r.passed]
        assert failures == []
        assert report.total == report.passed > 0

    def test_empty_corpus(self, tmp_path: Path) -> None:
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        report = run_corpus(path)
        assert (report.total, report.passed) == (0, 0)
        assert report.all_passed

    def test_paired_derivation(self, tmp_path: Path) -> None:
        path = _write(
            tmp_path,
            {"id": "i-prime", "kind": "validate", "derivation": "bundled:i_prime_a3", "expected": "ok"},
            {"id": "i", "kind": "search", "term": "λx.x", "type": A3, "expected": "not_typable"},
        )
        report = run_corpus(path)
        assert (report.total, report.passed) == (2, 2)

    def test_identity_at_bool(self, tmp_path: Path) -> None:
        entry = {"id": "i", "kind": "member", "term": "λx.x", "type": "∀X.X→X→X", "expected": "not_member"}
        path = _write(tmp_path, entry)
        assert run_corpus(path).all_passed

    def test_results_in_input_order(self, tmp_path: Path) -> None:
        entries = [
            {"id": f"n{n}", "kind": "member", "term": f"λf.λx.{'(f)' * n}x", "type": ENT, "expected": "member"}
            for n in range(8)
        ]
        report = run_corpus(_write(tmp_path, *entries), concurrency=3)
        assert [r.id for r in report.results] == [f"n{n}" for n in range(8)]
        assert [r.index for r in report.results] == list(range(8))

    def test_kernel_errors_become_tags(self, tmp_path: Path) -> None:
        path = _write(
            tmp_path,
            {"id": "p", "kind": "member", "term": "(x", "type": ENT, "expected": "member"},
            {"id": "q", "kind": "member", "term": "y", "type": "X", "expected": "free_var_error"},
        )
        report = run_corpus(path)
        assert report.results[0].actual == "parse_error"
        assert not report.results[0].passed
        assert report.results[1].passed
        assert report.passed == 1

    def test_derivation_file_next_to_corpus(self, tmp_path: Path) -> None:
        (tmp_path / "bool.json").write_text(dump_derivation(load_bundled("bool_true")), encoding="utf-8")
        entry = {"id": "d", "kind": "validate", "derivation": "bool.json", "sys": "f0", "expected": "ok"}
        path = _write(tmp_path, entry)
        assert run_corpus(path).all_passed

    def test_missing_derivation_file(self, tmp_path: Path) -> None:
        path = _write(tmp_path, {"id": "d", "kind": "validate", "derivation": "nowhere.json", "expected": "ok"})
        result = run_corpus(path).results[0]
        assert result.actual == "derivation_format_error"

    def test_bad_line_does_not_stop_the_run(self, tmp_path: Path) -> None:
        path = _write(
            tmp_path,
            "{oops",
            {"id": "c", "kind": "classify", "type": "∀Y.X", "expected": "neither"},
        )
        report = run_corpus(path)
        assert report.total == 2
        assert report.passed == 1
        assert report.results[1].kind is EntryKind.CLASSIFY

    def test_unreadable_corpus(self, tmp_path: Path) -> None:
        with pytest.raises(CorpusFormatError):
            run_corpus(tmp_path / "missing.jsonl")

    def test_deterministic_report(self) -> None:
        assert run_corpus(ACCEPTANCE).model_dump_json() == run_corpus(ACCEPTANCE).model_dump_json()

    def test_empty_kinds_are_reported_in_place(self, tmp_path: Path) -> None:
        path = _write(
            tmp_path,
            {"id": "s", "kind": "stability", "term": "λx.x", "type": ENT, "kinds": [], "expected": "stable"},
            {"id": "c", "kind": "classify", "type": "X", "expected": "both"},
        )
        report = run_corpus(path)
        assert [r.actual for r in report.results] == ["format_error", "both"]
        assert report.results[0].id == "line 1"

    def test_too_deep_entry_does_not_stop_the_run(self, tmp_path: Path) -> None:
        path = _write(
            tmp_path,
            {"id": "n", "kind": "normalize", "term": "λx." * 3000 + "x", "expected": "done"},
            {"id": "c", "kind": "classify", "type": "X", "expected": "both"},
        )
        report = run_corpus(path)
        assert report.results[0].actual == "depth_limit"
        assert not report.results[0].passed
        assert report.results[1].passed

    def test_seed_override_fills_missing_seeds(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        seen: list[int | None] = []
        stability_query = queries.stability_query

        def recording(request: StabilityRequest) -> StabilityResponse:
            seen.append(request.seed)
            return stability_query(request)

        monkeypatch.setattr(queries, "stability_query", recording)
        base = {"kind": "stability", "term": "λf.λx.(f)x", "type": ENT, "expansions": 2, "expected": "stable"}
        path = _write(tmp_path, {"id": "a", **base}, {"id": "b", **base, "seed": 9})
        assert run_corpus(path, concurrency=1, seed=5).all_passed
        assert sorted(s or 0 for s in seen) == [5, 9]
