import structlog
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

logger = structlog.get_logger()

EXIT_USAGE = 3


class KernelError(Exception):
    status_code = 400
    exit_code = EXIT_USAGE
    code = "kernel_error"

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class ParseError(KernelError):
    code = "parse_error"

    def __init__(self, detail: str, offset: int, expected: frozenset[str] = frozenset()) -> None:
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class PolarityError(KernelError):
    status_code = 422
    code = "polarity_error"


class FreeVarError(KernelError):
    status_code = 422
    code = "free_var_error"


class MissingDeclarationError(KernelError):
    status_code = 422
    code = "missing_declaration"


class PreconditionError(KernelError):
    status_code = 422
    code = "precondition_error"


class DerivationFormatError(KernelError):
    code = "derivation_format_error"


class CorpusFormatError(KernelError):
    code = "corpus_format_error"


class DepthLimitError(KernelError):
    status_code = 422
    code = "depth_limit"

    def __init__(self, detail: str = "input nests too deeply for the kernel") -> None:
        super().__init__(detail)


class DecodeError(KernelError):
    status_code = 422
    exit_code = 1
    code = "decode_error"


class NotReadyError(KernelError):
    status_code = 503
    code = "not_ready"


def error_payload(exc: KernelError) -> dict[str, object]:
    payload: dict[str, object] = {"error": exc.code, "detail": exc.detail}
    if isinstance(exc, ParseError):
        payload["offset"] = exc.offset
        payload["expected"] = sorted(exc.expected)
    return payload


async def kernel_exception_handler(request: Request, exc: KernelError) -> JSONResponse:
    logger.info("kernel_error", code=exc.code, path=request.url.path)
    return JSONResponse(
        status_code=exc.status_code,
        content={"detail": exc.detail, **error_payload(exc)},
    )


async def validation_exception_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
    errors = [{"loc": e["loc"], "msg": e["msg"], "type": e["type"]} for e in exc.errors()]
    logger.warning("validation_error", errors=errors, path=request.url.path)
    return JSONResponse(
        status_code=422,
        content={"detail": errors},
    )


def register_exception_handlers(app: FastAPI) -> None:
    app.add_exception_handler(KernelError, kernel_exception_handler)  # type: ignore[arg-type]
    app.add_exception_handler(RequestValidationError, validation_exception_handler)  # type: ignore[arg-type]
