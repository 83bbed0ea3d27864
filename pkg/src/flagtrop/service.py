"""HTTP service exposing the library's pipelines.

Every operation is a POST with a small pydantic request model and a JSON
response.  Domain failures surface as HTTP 422 with a machine-readable
body {"error": <class name>, "message": ...}; the CLI forwards these.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .conjecture import conjecture_check, sweep
from .errors import FlagtropError
from .puiseux_crit import expand_critical_point, residual_report, series_pretty
from .quiver import build_quiver
from .rationals import rat_str
from .sections import borel_weil_valuations, nu, omega_inv
from .superpot import nu_vee, string_polytope
from .tropsolve import (
    chain_decomposition,
    ffl_check,
    ideal_filling,
    solve_tropical,
)
from .weights import is_reduced, parse_weight, reduced_words

DEFAULT_K = 8


def parse_weight_checked(spec, n):
    try:
        return parse_weight(spec, n=n)
    except (ValueError, ZeroDivisionError) as err:
        raise FlagtropError(f"bad weight spec {spec!r}: {err}") from err


def puiseux_truncation(k=None):
    """Truncation order: request value, else env override, else default."""
    if k is not None:
        return k
    return int(os.environ.get("FLAGTROP_PUISEUX_K", DEFAULT_K))


def parse_word(n, word):
    if isinstance(word, str):
        word = [int(c) for c in word.replace(",", "").strip()]
    word = tuple(int(i) for i in word)
    if len(word) != n * (n - 1) // 2 or not is_reduced(n, word):
        raise FlagtropError(
            f"{word} is not a reduced word for the longest element"
        )
    return word


class WeightRequest(BaseModel):
    n: int
    weight: str


class WordRequest(BaseModel):
    n: int
    weight: str
    word: str | list[int]


class PuiseuxRequest(BaseModel):
    n: int
    weight: str
    K: int | None = None


class FFLRequest(BaseModel):
    n: int
    weight: str
    point: list[str] | None = None


class SweepRequest(BaseModel):
    n: int
    max_coeff: int
    words: list[list[int]] | None = None
    workers: int | None = None


class QuiverRequest(BaseModel):
    n: int


app = FastAPI(title="flagtrop")


@app.exception_handler(FlagtropError)
async def domain_error_handler(_request: Request, exc: FlagtropError):
    return JSONResponse(
        status_code=422,
        content={"error": type(exc).__name__, "message": str(exc)},
    )


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/tropical")
def tropical(req: WeightRequest):
    lam = parse_weight_checked(req.weight, req.n)
    tp = solve_tropical(lam)
    out = tp.to_json()
    out["grid_denominator"] = tp.grid_denominator
    if lam.n == 3:
        out["sigma_letters"] = [rat_str(x) for x in tp.sigma_letters()]
    return out


@app.post("/filling")
def filling(req: WeightRequest):
    lam = parse_weight_checked(req.weight, req.n)
    f = ideal_filling(lam)
    return {
        "n": lam.n,
        "filling": f.to_json(),
        "pretty": f.pretty(),
        "is_integral": f.is_integral(),
    }


@app.post("/integral")
def integral(req: WeightRequest):
    lam = parse_weight_checked(req.weight, req.n)
    f = ideal_filling(lam)
    return {
        "n": lam.n,
        "integral": f.is_integral(),
        "filling": f.to_json(),
        "pretty": f.pretty(),
    }


@app.post("/chain")
def chain(req: WeightRequest):
    lam = parse_weight_checked(req.weight, req.n)
    return {
        "n": lam.n,
        "chain": [
            {"I_P": sorted(p.I_P), "coefficient": rat_str(c)}
            for p, c in chain_decomposition(lam)
        ],
    }


@app.post("/puiseux")
def puiseux(req: PuiseuxRequest):
    lam = parse_weight_checked(req.weight, req.n)
    K = puiseux_truncation(req.K)
    e = expand_critical_point(lam, K=K)
    out = e.to_json()
    out["residual"] = residual_report(e)
    out["pretty"] = {
        a.name: series_pretty(e.arrow_series(a)) for a in e.quiver.arrows
    }
    return out


@app.post("/string-polytope")
def string_polytope_endpoint(req: WordRequest):
    lam = parse_weight_checked(req.weight, req.n)
    word = parse_word(req.n, req.word)
    sp = string_polytope(lam, word)
    return sp.to_json()


@app.post("/nu-vee")
def nu_vee_endpoint(req: WordRequest):
    lam = parse_weight_checked(req.weight, req.n)
    word = parse_word(req.n, req.word)
    point = nu_vee(lam, word)
    return {
        "n": req.n,
        "word": list(word),
        "nu_vee": [rat_str(x) for x in point],
    }


@app.post("/nu")
def nu_endpoint(req: WordRequest):
    lam = parse_weight_checked(req.weight, req.n)
    word = parse_word(req.n, req.word)
    w = omega_inv(lam, word)
    point = nu(lam, word)
    return {
        "n": req.n,
        "word": list(word),
        "nu": list(point),
        "omega_inv": repr(w),
    }


@app.post("/borel-weil")
def borel_weil(req: WordRequest):
    lam = parse_weight_checked(req.weight, req.n)
    word = parse_word(req.n, req.word)
    points = borel_weil_valuations(lam, word)
    return {"n": req.n, "word": list(word), "points": [list(p) for p in points]}


@app.post("/conjecture")
def conjecture(req: WordRequest):
    lam = parse_weight_checked(req.weight, req.n)
    word = parse_word(req.n, req.word)
    return conjecture_check(lam, word)


@app.post("/ffl")
def ffl(req: FFLRequest):
    lam = parse_weight_checked(req.weight, req.n)
    if req.point is None:
        point = ideal_filling(lam).entries
    else:
        point = list(req.point)
    ok, violations = ffl_check(lam, point, report=True)
    return {
        "n": lam.n,
        "member": ok,
        "violations": [[str(x) for x in v] for v in violations],
    }


@app.post("/sweep")
def sweep_endpoint(req: SweepRequest):
    words = None if req.words is None else [tuple(w) for w in req.words]
    if words is not None:
        for w in words:
            parse_word(req.n, list(w))
    reports, failures = sweep(
        req.n, req.max_coeff, words=words, workers=req.workers
    )
    n_words = len(reduced_words(req.n)) if words is None else len(words)
    return {
        "n": req.n,
        "max_coeff": req.max_coeff,
        "cases": len(reports),
        "words": n_words,
        "verified": sum(1 for r in reports if r["equal"] is True),
        "reports": reports,
        "failures": failures,
    }


@app.post("/quiver")
def quiver_dot(req: QuiverRequest):
    q = build_quiver(req.n)
    return {"n": req.n, "dot": q.to_dot()}
