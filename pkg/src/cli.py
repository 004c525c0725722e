"""Command-line front door: ``python -m src.cli <command> ...``.

Results go to standard output, one JSON object per invocation with
``--json``; logs and diagnostics go to standard error.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

import structlog
from pydantic import BaseModel, TypeAdapter, ValidationError

from src.config import LOG_LEVELS, settings
from src.core.exceptions import EXIT_USAGE, DepthLimitError, KernelError, error_payload
from src.core.log import configure_logging
from src.kernel.bundled import load_bundled
from src.kernel.checker import SystemId
from src.kernel.membership import ExpansionKind
from src.schemas.derivation import DeclarationModel, DerivationNode, load_derivation
from src.schemas.queries import (
    CheckRequest,
    ClassifyRequest,
    MemberRequest,
    NormalizeRequest,
    SearchRequest,
    StabilityRequest,
)
from src.services import queries
from src.services.corpus import BUNDLED_PREFIX, run_corpus

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2

_CONTEXT = TypeAdapter(list[DeclarationModel])


class UsageError(KernelError):
    code = "usage_error"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _emit(args: argparse.Namespace, model: BaseModel, text: str) -> None:
    if args.json:
        print(model.model_dump_json(exclude_none=True))
    else:
        print(text)


def _read_context(spec: str | None) -> list[DeclarationModel]:
    """``--ctx`` takes a JSON file or inline JSON: ``[{"var": "x", "type": "X"}]``."""
    if spec is None:
        return []
    path = Path(spec)
    text = path.read_text(encoding="utf-8") if path.is_file() else spec
    try:
        return _CONTEXT.validate_json(text)
    except ValidationError as exc:
        raise UsageError(f"--ctx is not a list of {{var, type}} declarations: {exc.errors()[0]['msg']}") from exc


def _write_witness(path: str | None, node: DerivationNode | None) -> None:
    if path is None or node is None:
        return
    Path(path).write_text(node.model_dump_json(exclude_none=True, indent=2) + "\n", encoding="utf-8")
    logger.info("witness_written", path=path)


def _cmd_normalize(args: argparse.Namespace) -> int:
    mode = "whnf" if args.command == "whnf" else "beta"
    response = queries.normalize_query(NormalizeRequest(term=args.term, fuel=args.fuel, mode=mode, trace=args.trace))
    lines = [f"{s.index}\t{s.path or '.'}\t{s.term}" for s in response.trace or []]
    lines.append(response.term if response.outcome == "done" else f"fuel exhausted after {response.steps} steps")
    _emit(args, response, "\n".join(lines))
    return EXIT_OK if response.outcome == "done" else EXIT_INCONCLUSIVE


def _cmd_classify(args: argparse.Namespace) -> int:
    response = queries.classify_query(ClassifyRequest(type=args.type))
    _emit(args, response, response.polarity.value)
    return EXIT_OK


def _load_node(ref: str) -> DerivationNode:
    if ref.startswith(BUNDLED_PREFIX):
        return DerivationNode.from_kernel(load_bundled(ref.removeprefix(BUNDLED_PREFIX)))
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read '{ref}': {exc.strerror}") from exc
    return DerivationNode.from_kernel(load_derivation(text))


def _cmd_check(args: argparse.Namespace) -> int:
    response = queries.check_query(CheckRequest(derivation=_load_node(args.derivation), sys=SystemId(args.sys)))
    text = "ok" if response.ok else f"invalid at [{response.path}]: {response.reason} ({response.detail})"
    _emit(args, response, text)
    return EXIT_OK if response.ok else EXIT_NEGATIVE


def _cmd_search(args: argparse.Namespace) -> int:
    request = SearchRequest(term=args.term, type=args.type, context=_read_context(args.ctx), budget=args.budget)
    response = queries.search_query(request)
    _write_witness(args.emit_witness, response.witness)
    _emit(args, response, response.outcome.replace("_", " "))
    return {"typable": EXIT_OK, "not_typable": EXIT_NEGATIVE, "aborted": EXIT_INCONCLUSIVE}[response.outcome]


def _cmd_member(args: argparse.Namespace) -> int:
    context = _read_context(args.ctx) if args.ctx is not None else None
    request = MemberRequest(term=args.term, type=args.type, context=context, fuel=args.fuel, budget=args.budget)
    response = queries.member_query(request)
    _write_witness(args.emit_witness, response.witness)
    match response.verdict:
        case "member":
            text, code = f"member: {response.normal_form}", EXIT_OK
        case "not_member":
            text, code = f"not member: {response.normal_form}", EXIT_NEGATIVE
        case _:
            text, code = f"unknown: {response.cause} after {response.fuel_spent} steps", EXIT_INCONCLUSIVE
    _emit(args, response, text)
    return code


def _cmd_stability(args: argparse.Namespace) -> int:
    kinds = [ExpansionKind(k) for k in args.kinds] if args.kinds else list(ExpansionKind)
    request = StabilityRequest(
        term=args.term,
        type=args.type,
        expansions=args.expansions,
        seed=args.seed,
        fuel=args.fuel,
        budget=args.budget,
        kinds=kinds,
    )
    response = queries.stability_query(request)
    lines = [f"baseline: {response.baseline.verdict}"]
    lines += [f"{p.verdict.verdict}\t{p.kind}\t{p.term}" for p in response.probes]
    lines.append(f"{len(response.probes)} probes, {response.violations} violations")
    _emit(args, response, "\n".join(lines))
    return EXIT_OK if response.stable else EXIT_NEGATIVE


def _cmd_encode(args: argparse.Namespace) -> int:
    response = queries.encode_query(args.kind, args.value)
    _emit(args, response, response.term)
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    response = queries.decode_query(args.kind, args.term, args.fuel)
    _emit(args, response, json.dumps(response.value))
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    response = queries.enumerate_query(args.max_size, args.typable_at, args.budget)
    _emit(args, response, "\n".join(response.terms))
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    report = run_corpus(Path(args.path), args.concurrency, seed=args.seed)
    lines: list[str] = []
    for r in report.results:
        line = f"{'pass' if r.passed else 'FAIL'}\t{r.id}\t{r.expected or '-'}\t{r.actual}"
        lines.append(f"{line}\t{r.detail}" if r.detail else line)
    lines.append(f"{report.passed}/{report.total} passed")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if report.all_passed else EXIT_NEGATIVE


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("src.main:app", host=args.host, port=args.port, log_level=args.log_level or settings.log_level)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object on stdout")
    common.add_argument("--fuel", type=int, default=None, help=f"β-step fuel (default {settings.fuel})")
    common.add_argument("--budget", type=int, default=None, help=f"search node budget (default {settings.budget})")
    common.add_argument(
        "--log-level", choices=LOG_LEVELS, default=None, help=f"log level on stderr (default {settings.log_level})"
    )
    common.add_argument("--seed", type=int, default=None, help=f"seed for random expansions (default {settings.seed})")

    parser = _Parser(prog="python -m src.cli", description="System F ∀⁺ membership kernel")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
        return command

    for name in ("normalize", "whnf"):
        command = add(name, _cmd_normalize, "reduce a term to β-normal or weak-head normal form")
        command.add_argument("term")
        command.add_argument("--trace", action="store_true", help="print every step with its redex path")

    add("classify", _cmd_classify, "classify a type as forall+, forall-, both or neither").add_argument("type")

    command = add("check", _cmd_check, "validate a derivation file (or bundled:<name>)")
    command.add_argument("derivation")
    command.add_argument("--sys", choices=[s.value for s in SystemId], default=SystemId.F.value)

    for name, handler in (("search", _cmd_search), ("member", _cmd_member)):
        command = add(name, handler, "search an F0 typing" if name == "search" else "decide membership in |A|")
        command.add_argument("term")
        command.add_argument("type")
        command.add_argument("--ctx", default=None, help="context as a JSON file or inline JSON")
        command.add_argument("--emit-witness", default=None, metavar="PATH", help="write the witness derivation")

    command = add("stability", _cmd_stability, "probe membership on random β-expansions")
    command.add_argument("term")
    command.add_argument("type")
    command.add_argument("--expansions", type=int, default=10)
    command.add_argument("--kinds", nargs="*", choices=[k.value for k in ExpansionKind], default=None)

    command = add("encode", _cmd_encode, "Church-encode a value")
    command.add_argument("kind", choices=["bool", "nat", "list"])
    command.add_argument("value")

    command = add("decode", _cmd_decode, "decode a Church-encoded value")
    command.add_argument("kind", choices=["bool", "nat", "list"])
    command.add_argument("term")

    command = add("enumerate", _cmd_enumerate, "list closed β-normal terms by size")
    command.add_argument("--max-size", type=int, default=7)
    command.add_argument("--typable-at", default=None, metavar="TYPE")

    command = add("corpus", _cmd_corpus, "run a JSONL corpus")
    command.add_argument("path")
    command.add_argument("--concurrency", type=int, default=None)

    command = add("serve", _cmd_serve, "start the HTTP front door")
    command.add_argument("--host", default=settings.host)
    command.add_argument("--port", type=int, default=settings.port)

    return parser


def _report_failure(args: argparse.Namespace, exc: KernelError) -> int:
    logger.info("command_failed", command=args.command, code=exc.code)
    print(f"{exc.code}: {exc.detail}", file=sys.stderr)
    if args.json:
        print(json.dumps(error_payload(exc), ensure_ascii=False))
    return exc.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc.detail}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(stream=sys.stderr, level=args.log_level)
    try:
        code: int = args.handler(args)
    except KernelError as exc:
        return _report_failure(args, exc)
    except RecursionError:
        return _report_failure(args, DepthLimitError())
    except ValidationError as exc:
        first = exc.errors()[0]
        print(f"usage error: {'.'.join(str(p) for p in first['loc'])}: {first['msg']}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
