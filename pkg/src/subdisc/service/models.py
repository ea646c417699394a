"""Pydantic request/response schemas for the analysis service.

Exact rationals travel as strings like "5/2" (they re-parse to equal
values); enclosures as "midpoint +/- radius" decimal strings; big integers
as decimal strings.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class SequenceSpec(BaseModel):
    prefix: list[int] = Field(default_factory=list)
    tail: int


class PolynomialOut(BaseModel):
    coeffs: list[int]  # ascending
    text: str


class VectorOut(BaseModel):
    prefix: list[str]  # exact rationals
    tail: str


class RootOut(BaseModel):
    kind: str  # perron | genuine-eigenvalue | fake | boundary
    mu_star: str
    lambda_star: str
    multiplicity: int
    modulus_sq: str
    factor: PolynomialOut


class SpectralRequest(BaseModel):
    sequence: SequenceSpec
    bits: int = 192
    digits: int = 30


class SpectralResponse(BaseModel):
    sequence: str
    mu: str
    lam: str
    P: PolynomialOut
    m_mu: PolynomialOut
    Q: PolynomialOut
    lengths: list[str]  # ell([0]) .. ell([k])
    length_alpha: str
    length_const: str
    avg_length: str
    density: str
    roots: list[RootOut]


class CountRequest(BaseModel):
    sequence: SequenceSpec
    n_max: int = 200


class CountResponse(BaseModel):
    sequence: str
    counts: list[str]  # exact big integers, index = n


class DiscrepancyRow(BaseModel):
    n: int
    count: str
    midpoint: str
    radius: str
    exact: str | None = None  # exact rational when available


class DiscrepancyRequest(BaseModel):
    sequence: SequenceSpec
    n_max: int = 200
    bits: int | None = None
    digits: int = 30


class DiscrepancyResponse(BaseModel):
    sequence: str
    bits: int
    density: str
    lam: str
    monotone_from: int
    rows: list[DiscrepancyRow]


class CatalanCheckRequest(BaseModel):
    sequence: SequenceSpec
    n_max: int = 200


class CatalanCheckResponse(BaseModel):
    sequence: str
    passed: bool
    checked: int
    first_mismatch: str | None
    identity_checked: bool  # direct all-ones Catalan identity
    twist_checked: bool  # general recurrence certificate
    detail: str


class TwistRequest(BaseModel):
    sequence: SequenceSpec
    n_max: int = 200


class TwistResponse(BaseModel):
    sequence: str
    x_a: VectorOut
    R: PolynomialOut
    Q: PolynomialOut
    g: PolynomialOut
    alpha: list[int]
    beta: list[int]
    q: int
    verified_to: int
    passed: bool
    bde_report: str


class TermOut(BaseModel):
    base: str
    coefficient_estimate: str
    coefficient_spread: str
    snapped: str | None  # small rational accepted for exact subtraction


class FitOut(BaseModel):
    parity: str
    exponent: float
    window: tuple[int, int]
    n_points: int
    residual_of_fit: float


class AsymptoticsRequest(BaseModel):
    sequence: SequenceSpec
    n_max: int = 200
    digits: int = 12


class AsymptoticsResponse(BaseModel):
    sequence: str
    n_max: int
    leading: TermOut
    terms: list[TermOut]
    fits: list[FitOut]
    notes: list[str]


class FiguresRequest(BaseModel):
    names: list[str] | None = None
    n_max: int = 200
    digits: int = 30


class FigureOut(BaseModel):
    name: str
    csv: str


class FiguresResponse(BaseModel):
    figures: list[FigureOut]


class HealthResponse(BaseModel):
    status: str
    version: str
