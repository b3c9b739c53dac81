"""HTTP service exposing model checking and the benchmark runners.

The CLI talks to this app either over the network or through an in-process
client, so every feature is reachable as a request/response exchange.  Bench
endpoints return the exact `.dat` payload so clients can write it verbatim.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .bench import (
    BenchError,
    VARIANTS,
    bench_dining,
    bench_muddy_children,
    bench_sum_product,
    format_dat,
)
from .dd import ConfigError, DdError, ResourceLimitError, VocabularyError
from .epistemic import InvalidSceneError, ValidationError
from .kmodel import ParseError, check_file, parse_model
from .puzzles import InvalidInstanceError, sap_solutions

app = FastAPI(
    title="zddel",
    version=__version__,
    description=(
        "Symbolic epistemic model checking on decision diagrams, with "
        "benchmark runners for the three classic puzzle scenarios."
    ),
)


class CheckRequest(BaseModel):
    text: str = Field(description="Contents of a .kmodel file")
    rule: str = Field("BDD", description="Diagram variant: one of " + ", ".join(VARIANTS))
    node_cap: Optional[int] = None


class QueryResultModel(BaseModel):
    kind: str
    text: str
    truth: Optional[bool] = None
    states: Optional[list[list[str]]] = None


class CheckResponse(BaseModel):
    report: str
    results: list[QueryResultModel]


class McBenchRequest(BaseModel):
    n_from: int = 5
    n_to: int = 40
    step: int = 5
    m: Optional[int] = None
    variants: list[str] = Field(default_factory=lambda: list(VARIANTS))
    convert_via_t0: bool = False
    node_cap: Optional[int] = None


class DcBenchRequest(BaseModel):
    n_list: list[int] = Field(default_factory=lambda: [3, 5, 7, 9, 11, 13])
    variants: list[str] = Field(default_factory=lambda: list(VARIANTS))
    convert_via_t0: bool = False
    node_cap: Optional[int] = None


class SapBenchRequest(BaseModel):
    bound_from: int = 65
    bound_to: int = 100
    step: int = 5
    variants: list[str] = Field(default_factory=lambda: list(VARIANTS))
    convert_via_t0: bool = False
    node_cap: Optional[int] = None


class BenchResponse(BaseModel):
    dat: str
    aborted: list[str]
    rows: int


class SapSolveRequest(BaseModel):
    bound: int = 100
    rule: str = "T0"
    node_cap: Optional[int] = None


class SapSolveResponse(BaseModel):
    solutions: list[tuple[int, int]]


_CLIENT_ERRORS = (
    ParseError,
    ValidationError,
    InvalidSceneError,
    InvalidInstanceError,
    BenchError,
    VocabularyError,
    ConfigError,
)


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _CLIENT_ERRORS as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except ResourceLimitError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/variants")
def variants() -> dict:
    return {"variants": list(VARIANTS)}


@app.post("/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    def run():
        mf = parse_model(req.text)
        report = check_file(mf, rule=req.rule, node_cap=req.node_cap)
        results = []
        for r in report.results:
            states = None
            if r.states is not None:
                states = [
                    sorted(mf.vocab.names[i] for i in state) for state in r.states
                ]
            results.append(
                QueryResultModel(
                    kind=r.kind, text=r.text, truth=r.truth, states=states
                )
            )
        return CheckResponse(report=report.render(), results=results)

    return _guard(run)


def _bench_response(table) -> BenchResponse:
    return BenchResponse(
        dat=format_dat(table),
        aborted=list(table.aborted),
        rows=len(table.records),
    )


@app.post("/bench/mc", response_model=BenchResponse)
def bench_mc(req: McBenchRequest) -> BenchResponse:
    table = _guard(
        bench_muddy_children,
        n_from=req.n_from,
        n_to=req.n_to,
        step=req.step,
        m=req.m,
        variants=req.variants,
        node_cap=req.node_cap,
        convert_via_t0=req.convert_via_t0,
    )
    return _bench_response(table)


@app.post("/bench/dc", response_model=BenchResponse)
def bench_dc(req: DcBenchRequest) -> BenchResponse:
    table = _guard(
        bench_dining,
        n_list=req.n_list,
        variants=req.variants,
        node_cap=req.node_cap,
        convert_via_t0=req.convert_via_t0,
    )
    return _bench_response(table)


@app.post("/bench/sap", response_model=BenchResponse)
def bench_sap(req: SapBenchRequest) -> BenchResponse:
    table = _guard(
        bench_sum_product,
        bound_from=req.bound_from,
        bound_to=req.bound_to,
        step=req.step,
        variants=req.variants,
        node_cap=req.node_cap,
        convert_via_t0=req.convert_via_t0,
    )
    return _bench_response(table)


@app.post("/sap/solutions", response_model=SapSolveResponse)
def sap_solve(req: SapSolveRequest) -> SapSolveResponse:
    def run():
        rule = req.rule
        if rule.upper() in ("BDD", "BDDC"):
            # solving needs a rule, not a variant; both map onto EQ
            rule = "EQ"
        return sorted(sap_solutions(req.bound, rule=rule, node_cap=req.node_cap))

    return SapSolveResponse(solutions=_guard(run))
