"""HTTP service exposing parse, linearize and validate as JSON endpoints.

The service is stateless: the lexicon is loaded once at startup and every
response is a pure function of the request body.  Diagnostics are serialized
exactly as in the CLI's JSON mode.
"""
from __future__ import annotations

import argparse
import json
import os
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .coml import from_coml, to_coml
from .diagnostics import Diagnostic, has_errors
from .lexicon import Lexicon, load_lexicon
from .linearize import linearize
from .parser import parse_document
from .validate import generate_clocks, validate_document

MAX_BODY_BYTES = 1 << 20  # 1 MiB

CORS_ENV = "CODIA_CORS_ORIGIN"
LEXICON_ENV = "CODIA_LEXICON"


class _BadRequest(Exception):
    def __init__(self, status: int, message: str) -> None:
        super().__init__(message)
        self.status = status


async def _json_body(request: Request) -> dict:
    raw = await request.body()
    if len(raw) > MAX_BODY_BYTES:
        raise _BadRequest(413, "request body exceeds 1 MiB")
    try:
        body = json.loads(raw)
    except (UnicodeDecodeError, json.JSONDecodeError):
        raise _BadRequest(400, "request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise _BadRequest(400, "request body must be a JSON object")
    return body


def _field(body: dict, name: str) -> str:
    value = body.get(name)
    if not isinstance(value, str):
        raise _BadRequest(400, f"missing or non-string field {name!r}")
    return value


def _diag_json(diagnostics: list[Diagnostic]) -> list[dict]:
    return [d.to_json() for d in diagnostics]


def create_app(lexicon: Lexicon) -> FastAPI:
    app = FastAPI(title="codia", docs_url=None, redoc_url=None)
    origin = os.environ.get(CORS_ENV, "*")
    app.add_middleware(
        CORSMiddleware, allow_origins=[origin], allow_methods=["*"],
        allow_headers=["*"])

    @app.exception_handler(_BadRequest)
    async def bad_request(request: Request, exc: _BadRequest):
        return JSONResponse({"error": str(exc)}, status_code=exc.status)

    @app.post("/api/parse")
    async def api_parse(request: Request):
        body = await _json_body(request)
        text = _field(body, "text")
        doc, diagnostics = parse_document(text, lexicon)
        if doc is not None:
            diagnostics = diagnostics + validate_document(doc)
        ok = doc is not None and not has_errors(diagnostics)
        payload = {"ok": ok, "diagnostics": _diag_json(diagnostics)}
        if ok:
            payload["coml"] = to_coml(doc)
        return JSONResponse(payload)

    @app.post("/api/linearize")
    async def api_linearize(request: Request):
        body = await _json_body(request)
        coml = _field(body, "coml")
        doc, diagnostics = from_coml(coml)
        if doc is not None:
            diagnostics = diagnostics + validate_document(doc)
        ok = doc is not None and not has_errors(diagnostics)
        payload = {"ok": ok, "diagnostics": _diag_json(diagnostics)}
        if ok:
            payload["text"] = linearize(doc, lexicon)
        return JSONResponse(payload)

    @app.post("/api/validate")
    async def api_validate(request: Request):
        body = await _json_body(request)
        if "text" in body:
            doc, diagnostics = parse_document(_field(body, "text"), lexicon)
        elif "coml" in body:
            doc, diagnostics = from_coml(_field(body, "coml"))
        else:
            raise _BadRequest(400, "provide either 'text' or 'coml'")
        clocks: list[str] = []
        if doc is not None:
            diagnostics = diagnostics + validate_document(doc)
            clocks = generate_clocks(doc)
        ok = doc is not None and not has_errors(diagnostics)
        return JSONResponse({"ok": ok, "diagnostics": _diag_json(diagnostics),
                             "clocks": clocks})

    return app


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="codia-serve", description="Run the contract validation service.")
    parser.add_argument("-l", "--lexicon", default=os.environ.get(LEXICON_ENV),
                        help="lexicon file (default: $CODIA_LEXICON)")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8741)
    args = parser.parse_args(argv)
    if not args.lexicon:
        parser.error("no lexicon given: pass --lexicon or set $CODIA_LEXICON")
    with open(args.lexicon, encoding="utf-8") as fh:
        lexicon = load_lexicon(fh.read())

    import uvicorn
    uvicorn.run(create_app(lexicon), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
