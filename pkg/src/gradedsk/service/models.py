"""Request and response models for the compute service.

Field elements are serialized as discrete logs of the canonical generator;
ring payloads carry the generator's minimal polynomial so a client can pin
the representation.  Series travel as `t^v * (c0 + c1*t + ...) [prec=N]`
literals, skew polynomials as `g^a*x^k + ...` literals.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class FieldBlock(BaseModel):
    p: int
    k: int
    generator_minpoly: list[int]


class MonomialRingModel(BaseModel):
    """{"q", "m", "n", "sigma", "r", "b", "u"} with dlog-encoded units."""

    q: int
    m: int
    n: int
    sigma: list[int]
    r: list[int]
    b: list[int]
    u: list[list[int]]
    field: Optional[FieldBlock] = None

    @model_validator(mode="after")
    def _shapes(self):
        if not (len(self.sigma) == len(self.r) == len(self.b) == self.n):
            raise ValueError("sigma, r, b must have length n")
        if len(self.u) != self.n or any(len(row) != self.n for row in self.u):
            raise ValueError("u must be an n x n matrix")
        return self


class ResidueModel(BaseModel):
    type: Literal["finite_field", "module"] = "finite_field"
    q: Optional[int] = None
    ext_degree: Optional[int] = None
    center_degree: Optional[int] = None
    group: Optional[list[int]] = None
    generators: Optional[int] = None
    relations: Optional[list[list[int]]] = None
    actions: Optional[list[list[list[int]]]] = None
    u: Optional[dict[str, list[int]]] = None  # keys "i,j" with i < j


class DescriptorModel(BaseModel):
    kind: Literal["descriptor"] = "descriptor"
    gamma_rank: int
    gamma_T: list[list[int]]
    residue: ResidueModel
    index: int


class GModuleModel(BaseModel):
    """{"group": [r1..rn], "generators": k, "relations": [[..]], "actions": [[[..]]], "u": {...}}."""

    group: list[int]
    generators: int
    relations: list[list[int]] = Field(default_factory=list)
    actions: list[list[list[int]]]
    u: dict[str, list[int]] = Field(default_factory=dict)


class AlgebraInput(BaseModel):
    """Either a monomial ring or a descriptor."""

    ring: Optional[MonomialRingModel] = None
    descriptor: Optional[DescriptorModel] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.ring is None) == (self.descriptor is None):
            raise ValueError("provide exactly one of ring or descriptor")
        return self


class Options(BaseModel):
    precision: int = 32
    budget: int = 10**6
    window_budget: int = 64
    orbit_budget: int = 10**4
    seed: int = 0


class GroupJSON(BaseModel):
    invariant_factors: list[int]


class ClassifyRequest(AlgebraInput):
    options: Options = Field(default_factory=Options)


class ClassifyResponse(BaseModel):
    classification: str
    index: int
    gamma_index: int
    residue_ext_degree: int
    theta_kernel: Optional[list[int]] = None


class SK1Request(AlgebraInput):
    options: Options = Field(default_factory=Options)


class SK1Response(BaseModel):
    classification: str
    sk1: Optional[GroupJSON]
    method: str
    symbolic: Optional[str] = None
    checks: dict
    witnesses: dict = Field(default_factory=dict)


class CK1Response(BaseModel):
    group: GroupJSON
    unit_part: GroupJSON
    grade_part: GroupJSON
    method: str


class SH1Response(BaseModel):
    group: GroupJSON
    unit_part: GroupJSON
    grade_part: GroupJSON
    norm_generators: list[dict]


class NondegenerateRequest(BaseModel):
    module: Optional[GModuleModel] = None
    ring: Optional[MonomialRingModel] = None
    options: Options = Field(default_factory=Options)

    @model_validator(mode="after")
    def _one_of(self):
        if (self.module is None) == (self.ring is None):
            raise ValueError("provide exactly one of module or ring")
        return self


class SubgroupCertificateJSON(BaseModel):
    generators: list[list[int]]
    invariants: list[int]
    value: list[int]
    nonzero: bool


class NondegenerateResponse(BaseModel):
    nondegenerate: bool
    certificates: list[SubgroupCertificateJSON]


class SkewRingModel(BaseModel):
    q: int
    m: int
    s: int = 1


class SkewDivisorRequest(BaseModel):
    ring: SkewRingModel
    poly: str
    options: Options = Field(default_factory=Options)


class SkewDivisorResponse(BaseModel):
    divisor: list[dict]
    total_degree: int
    module_route_agrees: bool


class SkewReduceRequest(BaseModel):
    ring: SkewRingModel
    f: str
    g: str
    options: Options = Field(default_factory=Options)


class SkewReduceResponse(BaseModel):
    scalar_dlog: int
    moves: int
    certificate_ok: bool
    numerator_degrees: list[int]


class GradedTermJSON(BaseModel):
    power: int
    scalar: int
    degree: str  # fraction "a/b"


class HenselRequest(BaseModel):
    q: int
    lam: str = "0"
    poly: list[str]
    mode: Literal["root", "factor"]
    root: Optional[GradedTermJSON] = None
    g: Optional[list[GradedTermJSON]] = None
    h: Optional[list[GradedTermJSON]] = None
    options: Options = Field(default_factory=Options)


class HenselResponse(BaseModel):
    mode: str
    root: Optional[str] = None
    residual_value: Optional[str] = None
    g: Optional[list[str]] = None
    h: Optional[list[str]] = None
    product_matches: Optional[bool] = None


class TowerStepModel(BaseModel):
    kind: Literal["unramified", "ramified"]
    degree: Optional[int] = None
    residue_minpoly: Optional[list[int]] = None
    e: Optional[int] = None
    power: int = 1
    unit_dlog: Optional[int] = None


class NormPreimageRequest(BaseModel):
    q: int
    tower: list[TowerStepModel]
    target: str
    options: Options = Field(default_factory=Options)


class NormPreimageResponse(BaseModel):
    verified: bool
    achieved_precision: float
    tower: list[dict]
    graded_norm_checks: list[bool]


class GradedElementJSON(BaseModel):
    coeff: int  # dlog
    degree: list[int]


class WedderburnRequest(BaseModel):
    ring: MonomialRingModel
    element: GradedElementJSON
    options: Options = Field(default_factory=Options)


class WedderburnResponse(BaseModel):
    h_a: list[Optional[GradedElementJSON]]
    factors: list[dict]  # {"root": element-json, "witness": element-json}


class CongruenceRequest(BaseModel):
    q: int
    ell: int
    s: int = 1
    element: Optional[str] = None
    random_seed: Optional[int] = None
    options: Options = Field(default_factory=Options)


class CongruenceResponse(BaseModel):
    witness: dict
    diag_consistency: dict


class Report(BaseModel):
    """Envelope every CLI/service answer travels in."""

    command: str
    version: str
    input_sha256: str
    seed: int
    result: dict
