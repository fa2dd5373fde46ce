from datetime import datetime, timezone
from typing import List

import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from config.base import get_settings
from core.errors import SzilardError
from core.finite import frontier_sweep
from core.kelly import isomorphism_table
from core.logger import getLogger
from core.montecarlo import simulate
from core.prob_core import divergence_report
from core.risk import ce_sweep, strategy_summary
from models.risk import RiskProfile
from schemas.base import ErrorResponse, ValidationErrorResponse
from schemas.divergence import DivergenceRequest, DivergenceResponse
from schemas.finite import FrontierRow
from schemas.kelly import KellyRow
from schemas.risk import CeSweepRow, StrategyResponse
from schemas.run import CeSweepRequest, FrontierRequest, KellyRequest, SimulateRequest, StrategyRequest
from schemas.simulation import SimReport

settings = get_settings()
logger = getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="Adversarial Szilard Engine Service",
    description="Risk-sensitive work extraction: Rényi certainty equivalents, finite-n trade-offs and Kelly betting",
    version=settings.APP_VERSION,
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

ERROR_RESPONSES = {400: {"model": ErrorResponse}, 422: {"model": ValidationErrorResponse}}


@app.exception_handler(SzilardError)
def domain_error_handler(request: Request, error: SzilardError):
    logger.info(f"{request.url.path}: {type(error).__name__}: {error}")
    return JSONResponse(status_code=400, content={"detail": f"{type(error).__name__}: {error}"})


@app.post("/divergence", response_model=DivergenceResponse, responses=ERROR_RESPONSES)
def divergence(request: DivergenceRequest):
    return divergence_report(request.p, request.q, request.alphas)


@app.post("/strategy", response_model=StrategyResponse, responses=ERROR_RESPONSES)
def strategy(request: StrategyRequest):
    return strategy_summary(request.spec, RiskProfile(r=request.r))


@app.post("/ce-sweep", response_model=List[CeSweepRow], responses=ERROR_RESPONSES)
def sweep_certainty_equivalents(request: CeSweepRequest):
    return ce_sweep(request.spec, request.r_values)


@app.post("/frontier", response_model=List[FrontierRow], responses=ERROR_RESPONSES)
def frontier(request: FrontierRequest):
    return frontier_sweep(request.spec, request.ns, request.epsilons)


@app.post("/simulate", response_model=SimReport, responses=ERROR_RESPONSES)
def run_simulation(request: SimulateRequest):
    return simulate(request.config, RiskProfile(r=request.r))


@app.post("/kelly-compare", response_model=List[KellyRow], responses=ERROR_RESPONSES)
def kelly_compare(request: KellyRequest):
    return isomorphism_table(request.spec, request.r_values)


# Health check endpoint
@app.get("/health")
def health_check():
    return {"status": "healthy", "version": settings.APP_VERSION, "timestamp": datetime.now(timezone.utc)}


if __name__ == "__main__":
    uvicorn.run(app, host=settings.APP_HOST, port=settings.APP_PORT)
