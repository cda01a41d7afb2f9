"""HTTP service exposing the library, plus the pure handlers behind it.

Every endpoint is a thin wrapper around a handler function that maps a
pydantic request model to a pydantic response model; the CLI calls the same
handlers in-process.  Domain and validation errors surface as HTTP 400.
"""

from __future__ import annotations

import math
from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .errors import ClassError, PromwalkError, RangeError
from .extensions import linear_extensions, promotion_graph
from .matrices import evaluate, transition_matrix
from .oracle import explore_factorization, verify_spectrum
from .poset import DEFAULT_CAP, Poset, parse_poset
from .sim import simulate
from .spectra import (
    EigenvalueMultiset,
    ak_a2_minus_edge_spectrum,
    chain_union_spectrum,
    forest_ladder_spectrum,
    forest_spectrum,
    ladder_eigensystem,
)
from .stationary import (
    convergence_bound,
    mixing_time_bound,
    probability_vector,
    stationary_distribution,
)

ENGINES = ("forest", "chains", "ladder", "pipeline", "a_k_a2")


class PosetModel(BaseModel):
    n: int
    covers: list[tuple[int, int]] = Field(default_factory=list)

    def to_poset(self) -> Poset:
        return parse_poset(self.n, self.covers)


def parse_rational(text: str | int | float) -> Fraction:
    if isinstance(text, float):
        raise RangeError(f"rational expected, got float {text}")
    return Fraction(str(text))


def resolve_x(
    x: list[str] | None, p: Poset, normalize: bool
) -> tuple[Fraction, ...]:
    if x is None:
        return tuple(Fraction(1, p.n) for _ in range(p.n))
    return probability_vector([parse_rational(v) for v in x], p.n, normalize)


class ExtensionsRequest(BaseModel):
    poset: PosetModel
    cap: int = DEFAULT_CAP


class ExtensionsResponse(BaseModel):
    extensions: list[list[int]]


class GraphRequest(BaseModel):
    poset: PosetModel
    cap: int = DEFAULT_CAP


class GraphResponse(BaseModel):
    extensions: list[list[int]]
    edges: list[tuple[int, int, int]]  # (source index, target index, label)


class MatrixRequest(BaseModel):
    poset: PosetModel
    x: list[str] | None = None
    normalize: bool = False
    cap: int = DEFAULT_CAP


class MatrixResponse(BaseModel):
    basis: list[list[int]]
    entries: list[list[str]]  # linear forms, or "p/q" when x was supplied


class SpectrumRequest(BaseModel):
    poset: PosetModel
    engine: str = "pipeline"
    cap: int = DEFAULT_CAP


class SpectrumEntry(BaseModel):
    form: str
    multiplicity: int


class SpectrumResponse(BaseModel):
    engine: str
    entries: list[SpectrumEntry]
    total: int


class StationaryRequest(BaseModel):
    poset: PosetModel
    x: list[str] | None = None
    normalize: bool = False
    cap: int = DEFAULT_CAP


class StationaryEntry(BaseModel):
    extension: list[int]
    weight: str  # exact rational "p/q"


class StationaryResponse(BaseModel):
    weights: list[StationaryEntry]
    partition: str


class BoundsRequest(BaseModel):
    poset: PosetModel
    x: list[str] | None = None
    normalize: bool = False
    c: float = 3.0


class BoundsResponse(BaseModel):
    mixing_time: float
    steps: int  # ceiling of mixing_time
    tv_bound: float
    valid: bool


class SimulateRequest(BaseModel):
    poset: PosetModel
    x: list[str] | None = None
    normalize: bool = False
    steps: int = 0
    trials: int = 1
    seed: int = 0
    cap: int = DEFAULT_CAP


class SimulateResponse(BaseModel):
    steps: int
    trials: int
    seed: int
    generator: str
    extensions: list[list[int]]
    counts: list[int]
    distribution: list[float]
    tv_to_stationary: float
    chernoff_bound: float


class VerifyRequest(BaseModel):
    poset: PosetModel
    engine: str = "pipeline"
    samples: int = 3
    seed: int = 0
    cap: int = DEFAULT_CAP


class VerifyResponse(BaseModel):
    engine: str
    verdict: bool
    samples: list[list[str]]
    first_discrepancy: list[str] | None


class ExploreRequest(BaseModel):
    poset: PosetModel
    samples: int = 3
    seed: int = 0
    cap: int = DEFAULT_CAP


class ExploreResponse(BaseModel):
    samples: list[list[str]]
    entries: list[SpectrumEntry] | None


def compute_spectrum(p: Poset, engine: str, cap: int) -> EigenvalueMultiset:
    if engine == "forest":
        return forest_spectrum(p, cap)
    if engine == "chains":
        return chain_union_spectrum(p, cap)
    if engine == "ladder":
        spec = EigenvalueMultiset(p.n)
        for pair in ladder_eigensystem(p):
            spec.add(pair.value, 1)
        return spec
    if engine == "pipeline":
        return forest_ladder_spectrum(p, cap)
    if engine == "a_k_a2":
        # the poset plays no role beyond fixing k = n - 2
        return ak_a2_minus_edge_spectrum(p.n - 2)
    raise RangeError(f"unknown engine {engine!r}; choose from {ENGINES}")


def handle_extensions(req: ExtensionsRequest) -> ExtensionsResponse:
    p = req.poset.to_poset()
    return ExtensionsResponse(
        extensions=[list(w) for w in linear_extensions(p, cap=req.cap)]
    )


def handle_graph(req: GraphRequest) -> GraphResponse:
    p = req.poset.to_poset()
    exts, edges = promotion_graph(p, cap=req.cap)
    return GraphResponse(extensions=[list(w) for w in exts], edges=edges)


def handle_matrix(req: MatrixRequest) -> MatrixResponse:
    p = req.poset.to_poset()
    m = transition_matrix(p, cap=req.cap)
    if req.x is None and not req.normalize:
        entries = [[str(f) for f in row] for row in m.entries]
    else:
        x = resolve_x(req.x, p, req.normalize)
        rm = evaluate(m, x)
        entries = [[str(v) for v in row] for row in rm.entries]
    return MatrixResponse(basis=[list(w) for w in m.basis], entries=entries)


def handle_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    p = req.poset.to_poset()
    spec = compute_spectrum(p, req.engine, req.cap)
    entries = [
        SpectrumEntry(form=str(f), multiplicity=mu) for f, mu in spec.sorted_items()
    ]
    return SpectrumResponse(engine=req.engine, entries=entries, total=spec.total())


def handle_stationary(req: StationaryRequest) -> StationaryResponse:
    p = req.poset.to_poset()
    x = resolve_x(req.x, p, req.normalize)
    report = stationary_distribution(p, x, cap=req.cap)
    return StationaryResponse(
        weights=[
            StationaryEntry(extension=list(pi), weight=str(w))
            for pi, w in report.weights.items()
        ],
        partition=str(report.partition),
    )


def handle_bounds(req: BoundsRequest) -> BoundsResponse:
    p = req.poset.to_poset()
    if len(p.components()) != 1:
        raise ClassError("convergence bounds require a connected poset")
    x = resolve_x(req.x, p, req.normalize)
    p_x = min(x)
    mix = mixing_time_bound(p.n, p_x, req.c)
    steps = math.ceil(mix)
    bound, valid = convergence_bound(p.n, p_x, steps)
    return BoundsResponse(mixing_time=mix, steps=steps, tv_bound=bound, valid=valid)


def handle_simulate(req: SimulateRequest) -> SimulateResponse:
    p = req.poset.to_poset()
    x = resolve_x(req.x, p, req.normalize)
    rep = simulate(p, x, req.steps, req.trials, req.seed, cap=req.cap)
    return SimulateResponse(
        steps=rep.steps,
        trials=rep.trials,
        seed=rep.seed,
        generator=rep.generator,
        extensions=[list(w) for w in rep.extensions],
        counts=list(rep.counts),
        distribution=list(rep.distribution),
        tv_to_stationary=rep.tv_to_stationary,
        chernoff_bound=rep.chernoff_bound,
    )


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    p = req.poset.to_poset()
    spec = compute_spectrum(p, req.engine, req.cap)
    rep = verify_spectrum(p, spec, samples=req.samples, seed=req.seed, cap=req.cap)
    disc = None
    if rep.first_discrepancy is not None:
        si, ci, e, a = rep.first_discrepancy
        disc = [str(si), str(ci), str(e), str(a)]
    return VerifyResponse(
        engine=req.engine,
        verdict=rep.verdict,
        samples=[[str(v) for v in pt] for pt in rep.samples],
        first_discrepancy=disc,
    )


def handle_explore(req: ExploreRequest) -> ExploreResponse:
    p = req.poset.to_poset()
    rep = explore_factorization(p, samples=req.samples, seed=req.seed, cap=req.cap)
    entries = None
    if rep.found is not None:
        entries = [
            SpectrumEntry(form=str(f), multiplicity=mu)
            for f, mu in rep.found.sorted_items()
        ]
    return ExploreResponse(
        samples=[[str(v) for v in pt] for pt in rep.samples], entries=entries
    )


app = FastAPI(title="promwalk", version="1.0.0")


@app.exception_handler(PromwalkError)
async def promwalk_error_handler(request: Request, exc: PromwalkError):
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.post("/extensions", response_model=ExtensionsResponse)
def extensions_endpoint(req: ExtensionsRequest):
    return handle_extensions(req)


@app.post("/graph", response_model=GraphResponse)
def graph_endpoint(req: GraphRequest):
    return handle_graph(req)


@app.post("/matrix", response_model=MatrixResponse)
def matrix_endpoint(req: MatrixRequest):
    return handle_matrix(req)


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum_endpoint(req: SpectrumRequest):
    return handle_spectrum(req)


@app.post("/stationary", response_model=StationaryResponse)
def stationary_endpoint(req: StationaryRequest):
    return handle_stationary(req)


@app.post("/bounds", response_model=BoundsResponse)
def bounds_endpoint(req: BoundsRequest):
    return handle_bounds(req)


@app.post("/simulate", response_model=SimulateResponse)
def simulate_endpoint(req: SimulateRequest):
    return handle_simulate(req)


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(req: VerifyRequest):
    return handle_verify(req)


@app.post("/explore", response_model=ExploreResponse)
def explore_endpoint(req: ExploreRequest):
    return handle_explore(req)
