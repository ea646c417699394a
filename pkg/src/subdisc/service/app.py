"""FastAPI service wrapping the analysis library.

Endpoints mirror the CLI commands; the CLI is a thin client of this app.
Usage errors surface as 400, certified-precision or internal contract
failures as 500 with the diagnostic in the detail field.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import SubdiscError
from ..hpreal import HPReal
from ..polynomials import ComplexEnclosure, IntPolynomial
from ..sequences import build_sequence, count_series
from ..spectral import classify_roots, spectral_data
from ..twist import StabilizingVector, verify_twist_recurrence
from ..discrepancy import discrepancy_series, verify_catalan_identity
from ..experiments import (
    FIGURES,
    asymptotics_report,
    bde_report,
    figure_csv_text,
    figure_rows,
)
from .models import (
    AsymptoticsRequest,
    AsymptoticsResponse,
    CatalanCheckRequest,
    CatalanCheckResponse,
    CountRequest,
    CountResponse,
    DiscrepancyRequest,
    DiscrepancyResponse,
    DiscrepancyRow,
    FigureOut,
    FiguresRequest,
    FiguresResponse,
    FitOut,
    HealthResponse,
    PolynomialOut,
    RootOut,
    SequenceSpec,
    SpectralRequest,
    SpectralResponse,
    TermOut,
    TwistRequest,
    TwistResponse,
    VectorOut,
)


def _seq(spec: SequenceSpec):
    try:
        return build_sequence(spec.prefix, spec.tail)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _num(x, digits: int) -> str:
    if isinstance(x, HPReal):
        return str(x.mid) if x.is_exact else x.to_decimal(digits)
    return str(Fraction(x))


def _complex(z: ComplexEnclosure, digits: int) -> str:
    if z.re.is_exact and z.im.is_exact:
        return _num(z.re, digits) if z.is_real else f"{z.re.mid} + ({z.im.mid})i"
    return z.to_decimal(digits)


def _poly(p: IntPolynomial) -> PolynomialOut:
    return PolynomialOut(coeffs=list(p.coeffs), text=str(p))


def _vector(y: StabilizingVector) -> VectorOut:
    return VectorOut(prefix=[str(v) for v in y.prefix], tail=str(y.tail))


def create_app() -> FastAPI:
    app = FastAPI(title="subdisc", version=__version__)

    @app.exception_handler(SubdiscError)
    async def _subdisc_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _usage_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/api/spectral", response_model=SpectralResponse)
    def spectral(req: SpectralRequest) -> SpectralResponse:
        seq = _seq(req.sequence)
        data = spectral_data(seq, bits=req.bits)
        roots = classify_roots(seq, bits=max(128, req.bits))
        d = req.digits
        return SpectralResponse(
            sequence=seq.label(),
            mu=_num(data.mu, d),
            lam=_num(data.lam, d),
            P=_poly(data.P),
            m_mu=_poly(data.m_mu),
            Q=_poly(data.Q),
            lengths=[_num(v, d) for v in data.length_prefix],
            length_alpha=_num(data.length_alpha, d),
            length_const=_num(data.length_const, d),
            avg_length=_num(data.avg_length, d),
            density=_num(data.density, d),
            roots=[
                RootOut(
                    kind=r.kind,
                    mu_star=_complex(r.mu_star, d),
                    lambda_star=_complex(r.lambda_star, d),
                    multiplicity=r.multiplicity,
                    modulus_sq=_num(r.modulus_sq, d),
                    factor=_poly(r.factor),
                )
                for r in roots
            ],
        )

    @app.post("/api/count", response_model=CountResponse)
    def count(req: CountRequest) -> CountResponse:
        seq = _seq(req.sequence)
        if req.n_max < 0:
            raise HTTPException(status_code=400, detail="n_max must be non-negative")
        return CountResponse(
            sequence=seq.label(),
            counts=[str(c) for c in count_series(seq, req.n_max)],
        )

    @app.post("/api/discrepancy", response_model=DiscrepancyResponse)
    def discrepancy(req: DiscrepancyRequest) -> DiscrepancyResponse:
        seq = _seq(req.sequence)
        series = discrepancy_series(seq, req.n_max, bits=req.bits)
        d = req.digits
        rows = []
        for n in range(req.n_max + 1):
            enc = series.d[n]
            rows.append(
                DiscrepancyRow(
                    n=n,
                    count=str(series.counts[n]),
                    midpoint=enc.to_decimal(d).split(" +/- ")[0],
                    radius=str(enc.rad) if enc.rad == 0 else enc.to_decimal(3).split(" +/- ")[-1],
                    exact=str(enc.mid) if enc.is_exact else None,
                )
            )
        return DiscrepancyResponse(
            sequence=seq.label(),
            bits=series.bits,
            density=_num(series.spectral.density, d),
            lam=_num(series.spectral.lam, d),
            monotone_from=series.monotone_from,
            rows=rows,
        )

    @app.post("/api/catalan-check", response_model=CatalanCheckResponse)
    def catalan_check(req: CatalanCheckRequest) -> CatalanCheckResponse:
        seq = _seq(req.sequence)
        is_all_ones = seq.prefix == () and seq.tail == 1
        identity_checked = False
        first = None
        detail_parts = []
        passed = True
        if is_all_ones:
            rep = verify_catalan_identity(req.n_max)
            identity_checked = True
            passed = rep.passed
            if rep.first_mismatch is not None:
                first = f"n={rep.first_mismatch[0]}: {rep.first_mismatch[1]} != {rep.first_mismatch[2]}"
            detail_parts.append(f"direct identity: {'PASS' if rep.passed else 'FAIL'}")
        twist = verify_twist_recurrence(seq, req.n_max)
        if not twist.passed and first is None and twist.first_mismatch is not None:
            n, got, want = twist.first_mismatch
            first = f"n={n}: {got} != {want}"
        passed = passed and twist.passed
        detail_parts.append(f"twist recurrence: {'PASS' if twist.passed else 'FAIL'}")
        return CatalanCheckResponse(
            sequence=seq.label(),
            passed=passed,
            checked=req.n_max,
            first_mismatch=first,
            identity_checked=identity_checked,
            twist_checked=True,
            detail="; ".join(detail_parts),
        )

    @app.post("/api/twist", response_model=TwistResponse)
    def twist(req: TwistRequest) -> TwistResponse:
        seq = _seq(req.sequence)
        report = verify_twist_recurrence(seq, req.n_max)
        combo = report.combo
        from ..twist import growth_exponent, x_a

        qs = [growth_exponent(c).q for c in (combo.alpha, combo.beta) if any(c)]
        return TwistResponse(
            sequence=seq.label(),
            x_a=_vector(x_a(seq, combo.Q)),
            R=_poly(combo.R),
            Q=_poly(combo.Q),
            g=_poly(combo.g),
            alpha=list(combo.alpha),
            beta=list(combo.beta),
            q=min(qs),
            verified_to=report.checked,
            passed=report.passed,
            bde_report=bde_report(seq),
        )

    @app.post("/api/asymptotics", response_model=AsymptoticsResponse)
    def asymptotics(req: AsymptoticsRequest) -> AsymptoticsResponse:
        seq = _seq(req.sequence)
        rep = asymptotics_report(seq, req.n_max)
        d = req.digits

        def term_out(t) -> TermOut:
            import decimal

            from ..hpreal import decimal_str

            return TermOut(
                base=_num(t.base, d),
                coefficient_estimate=decimal_str(Fraction(t.estimate.mid), d),
                coefficient_spread=decimal_str(
                    Fraction(t.estimate.rad), 3, rounding=decimal.ROUND_CEILING
                ),
                snapped=str(t.snapped) if t.snapped is not None else None,
            )

        return AsymptoticsResponse(
            sequence=seq.label(),
            n_max=rep.n_max,
            leading=TermOut(
                base=_num(rep.lam, d),
                coefficient_estimate=_num(rep.density, d),
                coefficient_spread="0",
                snapped=str(rep.density.mid) if rep.density.is_exact else None,
            ),
            terms=[term_out(t) for t in rep.terms],
            fits=[
                FitOut(
                    parity=f.parity,
                    exponent=f.exponent,
                    window=f.window,
                    n_points=f.n_points,
                    residual_of_fit=f.residual_of_fit,
                )
                for f in rep.fits
            ],
            notes=list(rep.notes),
        )

    @app.post("/api/figures", response_model=FiguresResponse)
    def figures(req: FiguresRequest) -> FiguresResponse:
        names = req.names if req.names else sorted(FIGURES)
        out = []
        for name in names:
            rows = figure_rows(name, req.n_max)
            out.append(FigureOut(name=name, csv=figure_csv_text(rows, req.digits)))
        return FiguresResponse(figures=out)

    return app


app = create_app()
