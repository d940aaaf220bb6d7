"""HTTP facade over the verification suites and the table/kernel exports.

All computation lives in the core package; the endpoints only validate
requests and shape responses.  The CLI drives the same functions in
process, so service responses and CLI output agree byte for byte on the
shared payloads.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .suites import (SUITE_NAMES, character_table_rows, gauss_payload,
                     kernel_payload, run_suite)

app = FastAPI(
    title="weilrep",
    version=__version__,
    description="Exact verification of Heisenberg/Weil representation identities over F_p.",
)


class VerifyRequest(BaseModel):
    p: int = Field(default=3, ge=3)
    N: int = Field(default=1, ge=1)
    suite: str = "all"
    seed: int = 42
    max_checks: int | None = Field(default=None, ge=1)


class FailureModel(BaseModel):
    check: str
    inputs: str
    expected: str
    actual: str


class SuiteReportModel(BaseModel):
    suite: str
    p: int
    N: int
    seed: int
    checks_run: int
    passed: bool
    counts: dict[str, int]
    failures: list[FailureModel]


class CharTableRequest(BaseModel):
    p: int = Field(default=3, ge=3)
    N: int = Field(default=1, ge=1)
    elements: list[str] | None = None
    seed: int = 42
    include_complex: bool = False


class CharTableRowModel(BaseModel):
    g: str
    in_U: bool
    ch_rho: dict
    trace_check: bool


class CharTableResponse(BaseModel):
    p: int
    N: int
    rows: list[CharTableRowModel]


class KernelRequest(BaseModel):
    p: int = Field(default=3, ge=3)
    N: int = Field(default=1, ge=1)
    g: str
    seed: int = 42
    include_complex: bool = False


class KernelResponse(BaseModel):
    p: int
    N: int
    g: str
    via: str
    values: list[dict]


class GaussResponse(BaseModel):
    p: int
    gauss_sum: dict
    square: int


@app.get("/")
def info() -> dict:
    return {"service": "weilrep", "version": __version__,
            "suites": list(SUITE_NAMES) + ["all"]}


@app.post("/verify", response_model=SuiteReportModel)
def verify(req: VerifyRequest) -> SuiteReportModel:
    try:
        report = run_suite(req.suite, req.p, req.N, seed=req.seed, max_checks=req.max_checks)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return SuiteReportModel(**report.to_json_dict())


@app.post("/chartable", response_model=CharTableResponse)
def chartable(req: CharTableRequest) -> CharTableResponse:
    try:
        rows = character_table_rows(req.p, req.N, elements=req.elements,
                                    seed=req.seed, include_complex=req.include_complex)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return CharTableResponse(p=req.p, N=req.N, rows=[CharTableRowModel(**r) for r in rows])


@app.post("/kernel", response_model=KernelResponse)
def kernel(req: KernelRequest) -> KernelResponse:
    try:
        payload = kernel_payload(req.p, req.N, req.g, seed=req.seed,
                                 include_complex=req.include_complex)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return KernelResponse(**payload)


@app.get("/gauss/{p}", response_model=GaussResponse)
def gauss(p: int) -> GaussResponse:
    try:
        return GaussResponse(**gauss_payload(p))
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
