"""FastAPI surface over the compute handlers."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import (
    BudgetExceededError,
    GradedSKError,
    PrecisionExhaustedError,
    UnsupportedCaseError,
)
from . import api
from . import models as m

app = FastAPI(
    title="gradedsk",
    version=__version__,
    description="Exact reduced-Whitehead-group calculator for graded division algebras",
)


def _run(fn, *args):
    try:
        return fn(*args)
    except UnsupportedCaseError as exc:
        raise HTTPException(status_code=422, detail=f"unsupported case: {exc}")
    except (BudgetExceededError, PrecisionExhaustedError) as exc:
        raise HTTPException(status_code=422, detail=f"budget or precision exhausted: {exc}")
    except (ValueError, GradedSKError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/healthz")
def healthz():
    return {"status": "ok", "version": __version__}


@app.post("/classify", response_model=m.ClassifyResponse)
def classify_endpoint(req: m.ClassifyRequest):
    return _run(api.handle_classify, req)


@app.post("/sk1", response_model=m.SK1Response)
def sk1_endpoint(req: m.SK1Request):
    return _run(api.handle_sk1, req)


@app.post("/sk1-brute", response_model=m.SK1Response)
def sk1_brute_endpoint(req: m.SK1Request):
    return _run(api.handle_sk1, req, True)


@app.post("/ck1", response_model=m.CK1Response)
def ck1_endpoint(req: m.SK1Request):
    return _run(api.handle_ck1, req)


@app.post("/sh1", response_model=m.SH1Response)
def sh1_endpoint(req: m.SK1Request):
    return _run(api.handle_sh1, req)


@app.post("/nondegenerate", response_model=m.NondegenerateResponse)
def nondegenerate_endpoint(req: m.NondegenerateRequest):
    return _run(api.handle_nondegenerate, req)


@app.post("/skew/divisor", response_model=m.SkewDivisorResponse)
def skew_divisor_endpoint(req: m.SkewDivisorRequest):
    return _run(api.handle_skew_divisor, req)


@app.post("/skew/reduce", response_model=m.SkewReduceResponse)
def skew_reduce_endpoint(req: m.SkewReduceRequest):
    return _run(api.handle_skew_reduce, req)


@app.post("/hensel", response_model=m.HenselResponse)
def hensel_endpoint(req: m.HenselRequest):
    return _run(api.handle_hensel, req)


@app.post("/norm-preimage", response_model=m.NormPreimageResponse)
def norm_preimage_endpoint(req: m.NormPreimageRequest):
    return _run(api.handle_norm_preimage, req)


@app.post("/wedderburn", response_model=m.WedderburnResponse)
def wedderburn_endpoint(req: m.WedderburnRequest):
    return _run(api.handle_wedderburn, req)


@app.post("/congruence-check", response_model=m.CongruenceResponse)
def congruence_endpoint(req: m.CongruenceRequest):
    return _run(api.handle_congruence, req)
