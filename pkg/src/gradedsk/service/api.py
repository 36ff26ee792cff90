"""Handlers shared by the HTTP endpoints and the CLI.

Each handler converts the request model into core objects, runs the
computation, and packs a response model.  Everything is deterministic for a
fixed request (randomized sweeps derive their generator from options.seed).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .. import __version__
from ..errors import UnsupportedCaseError
from ..finitefield import GF, FFPoly
from ..gmodules import FiniteAbGroupSpec, GModule
from ..intlinalg import FiniteAbelianGroup
from ..monomial import (
    AbstractResidue,
    FiniteFieldResidue,
    GradedDivAlgDesc,
    MonomialGradedRing,
    classify,
)
from ..matdiv import TwistedSeriesRing, congruence_witness, ddet_diagonal_consistency
from ..series import (
    GradedPoly,
    GradedTerm,
    SeriesPoly,
    SeriesRing,
    format_series,
    hensel_lift_factorization,
    hensel_lift_root,
    parse_series,
)
from ..skewpoly import (
    SkewPolyRing,
    divisor,
    divisor_via_module,
    format_skew,
    parse_skew,
    reduce_kernel_element,
    verify_reduction_certificate,
)
from ..towers import (
    extend_ramified,
    extend_unramified,
    graded_norm_check,
    make_ground,
    norm_one_unit_preimage,
    random_element,
)
from ..wedderburn import wedderburn_factor
from ..whitehead import ck1, nondegenerate, nondegenerate_ring, sh1, sk1, sk1_bruteforce
from . import models as m


def _group_json(group) -> m.GroupJSON:
    return m.GroupJSON(invariant_factors=list(group.invariant_factors))


def _build_ring(model: m.MonomialRingModel) -> MonomialGradedRing:
    return MonomialGradedRing.from_json_dict(model.model_dump(exclude_none=True))


def _build_descriptor(model: m.DescriptorModel) -> GradedDivAlgDesc:
    res = model.residue
    if res.type == "finite_field":
        residue = FiniteFieldResidue(
            q=res.q, ext_degree=res.ext_degree, center_degree=res.center_degree
        )
    else:
        spec = FiniteAbGroupSpec(res.group)
        module = GModule(spec, res.generators, res.relations or [], res.actions)
        u = _parse_u(res.u or {})
        ext = res.ext_degree if res.ext_degree is not None else spec.order()
        residue = AbstractResidue(spec=spec, module=module, ext_degree=ext, u=u)
    return GradedDivAlgDesc(
        gamma_rank=model.gamma_rank,
        gamma_T=[list(r) for r in model.gamma_T],
        residue=residue,
        index=model.index,
    )


def _parse_u(raw: dict) -> dict:
    out = {}
    for key, vec in raw.items():
        i, j = (int(x) for x in key.split(","))
        out[(i, j)] = list(vec)
    return out


def _algebra(req: m.AlgebraInput):
    if req.ring is not None:
        return _build_ring(req.ring)
    return _build_descriptor(req.descriptor)


def handle_classify(req: m.ClassifyRequest) -> m.ClassifyResponse:
    source = _algebra(req)
    desc = source.descriptor() if isinstance(source, MonomialGradedRing) else source
    theta = None
    if isinstance(source, MonomialGradedRing):
        theta = list(desc.theta_kernel.invariant_factors)
    return m.ClassifyResponse(
        classification=classify(desc),
        index=desc.index,
        gamma_index=desc.gamma_index(),
        residue_ext_degree=desc.residue.ext_degree,
        theta_kernel=theta,
    )


def _witness_json(witnesses: dict) -> dict:
    out = {}
    for key, value in witnesses.items():
        if isinstance(value, FiniteAbelianGroup):
            out[key] = list(value.invariant_factors)
        elif hasattr(value, "__dict__") and not isinstance(value, (int, str, list)):
            out[key] = repr(value)
        else:
            out[key] = value
    return out


def handle_sk1(req: m.SK1Request, brute: bool = False) -> m.SK1Response:
    source = _algebra(req)
    desc = source.descriptor() if isinstance(source, MonomialGradedRing) else source
    kind = classify(desc)
    if brute:
        if not isinstance(source, MonomialGradedRing):
            raise UnsupportedCaseError("brute force needs a monomial ring")
        report = sk1_bruteforce(
            source, budget_units=req.options.budget, budget_window=req.options.window_budget
        )
    else:
        report = sk1(source)
    return m.SK1Response(
        classification=kind,
        sk1=_group_json(report.group) if report.group is not None else None,
        method=report.method,
        symbolic=report.symbolic,
        checks=report.checks,
        witnesses=_witness_json(report.witnesses),
    )


def handle_ck1(req: m.SK1Request) -> m.CK1Response:
    source = _algebra(req)
    report = ck1(source)
    return m.CK1Response(
        group=_group_json(report.group),
        unit_part=_group_json(report.unit_part),
        grade_part=_group_json(report.grade_part),
        method=report.method,
    )


def handle_sh1(req: m.SK1Request) -> m.SH1Response:
    source = _algebra(req)
    if not isinstance(source, MonomialGradedRing):
        raise UnsupportedCaseError("the norm cokernel needs a monomial ring")
    report = sh1(source, budget_units=req.options.budget, budget_window=req.options.window_budget)
    return m.SH1Response(
        group=_group_json(report.group),
        unit_part=_group_json(report.unit_part),
        grade_part=_group_json(report.grade_part),
        norm_generators=report.norm_generators,
    )


def handle_nondegenerate(req: m.NondegenerateRequest) -> m.NondegenerateResponse:
    if req.ring is not None:
        ok, certs = nondegenerate_ring(_build_ring(req.ring))
    else:
        spec = FiniteAbGroupSpec(req.module.group)
        module = GModule(spec, req.module.generators, req.module.relations, req.module.actions)
        ok, certs = nondegenerate(spec, module, _parse_u(req.module.u))
    cert_json = [
        m.SubgroupCertificateJSON(
            generators=[list(g) for g in c.generators],
            invariants=list(c.invariants.invariant_factors),
            value=list(c.value),
            nonzero=c.nonzero,
        )
        for c in certs
    ]
    return m.NondegenerateResponse(nondegenerate=ok, certificates=cert_json)


def handle_skew_divisor(req: m.SkewDivisorRequest) -> m.SkewDivisorResponse:
    ring = SkewPolyRing(req.ring.q, req.ring.m, req.ring.s)
    f = parse_skew(ring, req.poly)
    d = divisor(f)
    other = divisor_via_module(f)
    return m.SkewDivisorResponse(
        divisor=d.to_json(ring.K),
        total_degree=d.total_degree(),
        module_route_agrees=d == other,
    )


def handle_skew_reduce(req: m.SkewReduceRequest) -> m.SkewReduceResponse:
    ring = SkewPolyRing(req.ring.q, req.ring.m, req.ring.s)
    f = parse_skew(ring, req.f)
    g = parse_skew(ring, req.g)
    d, moves = reduce_kernel_element(f, g)
    ok = verify_reduction_certificate(f, g, d, moves)
    degrees = [f.degree] + [mv.f_after.degree for mv in moves]
    return m.SkewReduceResponse(
        scalar_dlog=ring.D.dlog(d),
        moves=len(moves),
        certificate_ok=ok,
        numerator_degrees=degrees,
    )


def _parse_graded_terms(q: int, terms) -> GradedPoly:
    out = {}
    for t in terms:
        out[t.power] = GradedTerm(q, t.scalar, Fraction(t.degree))
    return GradedPoly(q, out)


def handle_hensel(req: m.HenselRequest) -> m.HenselResponse:
    ring = SeriesRing(req.q, precision=req.options.precision)
    f = SeriesPoly(ring, [parse_series(ring, lit) for lit in req.poly])
    lam = Fraction(req.lam)
    if req.mode == "root":
        if req.root is None:
            raise ValueError("root mode needs a residual root")
        b = GradedTerm(req.q, req.root.scalar, Fraction(req.root.degree))
        a = hensel_lift_root(f, lam, b, target=req.options.precision)
        value = f.evaluate(a)
        return m.HenselResponse(
            mode="root", root=format_series(a), residual_value=format_series(value)
        )
    if req.g is None or req.h is None:
        raise ValueError("factor mode needs both residual factors")
    gp = _parse_graded_terms(req.q, req.g)
    hp = _parse_graded_terms(req.q, req.h)
    g, h = hensel_lift_factorization(f, lam, gp, hp, target=req.options.precision)
    diff = g.mul(h).sub(f)
    return m.HenselResponse(
        mode="factor",
        g=[format_series(c) for c in g.coeffs],
        h=[format_series(c) for c in h.coeffs],
        product_matches=all(c.is_zero for c in diff.coeffs),
    )


def build_tower(q: int, steps, precision: int):
    level = make_ground(q, precision)
    for step in steps:
        if step.kind == "unramified":
            if step.residue_minpoly is not None:
                fbar = FFPoly(level.residue_field, list(step.residue_minpoly))
            else:
                if step.degree is None:
                    raise ValueError("unramified step needs a degree or a residue minpoly")
                from ..finitefield import irreducible_polynomial

                fbar = irreducible_polynomial(level.residue_field, step.degree)
            level = extend_unramified(level, fbar)
        else:
            if step.e is None:
                raise ValueError("ramified step needs e")
            unit = None
            if step.unit_dlog is not None:
                unit = level.from_ground(level.ring.scalar(GF(q).exp(step.unit_dlog)))
            level = extend_ramified(level, step.e, unit_shift=unit, power=step.power)
    return level


def handle_norm_preimage(req: m.NormPreimageRequest) -> m.NormPreimageResponse:
    precision = req.options.precision + 8
    tower = build_tower(req.q, req.tower, precision)
    ground = make_ground(req.q, precision)
    t = parse_series(ground.ring, req.target)
    s, report = norm_one_unit_preimage(tower, t)
    rng = random.Random(req.options.seed)
    checks = []
    lvl = tower
    from ..towers import TowerLevel

    while isinstance(lvl, TowerLevel):
        a = random_element(lvl, rng)
        checks.append(graded_norm_check(lvl, a)["match"])
        lvl = lvl.base
    return m.NormPreimageResponse(
        verified=report["verified"] and report["achieved_precision"] >= req.options.precision,
        achieved_precision=float(report["achieved_precision"]),
        tower=tower.tower_description(),
        graded_norm_checks=checks,
    )


def _element_json(ring: MonomialGradedRing, elt) -> m.GradedElementJSON:
    return m.GradedElementJSON(coeff=ring.M.dlog(elt.coefficient()), degree=list(elt.degree()))


def handle_wedderburn(req: m.WedderburnRequest) -> m.WedderburnResponse:
    ring = _build_ring(req.ring)
    elt = ring.monomial(ring.M.exp(req.element.coeff), tuple(req.element.degree))
    res = wedderburn_factor(ring, elt, budget=req.options.orbit_budget)
    h_json = []
    for c in res.minimal.coeffs:
        h_json.append(None if c.is_zero else _element_json(ring, c))
    factors = [
        {
            "root": _element_json(ring, root).model_dump(),
            "witness": _element_json(ring, witness).model_dump(),
        }
        for root, witness in zip(res.roots, res.witnesses)
    ]
    return m.WedderburnResponse(h_a=h_json, factors=factors)


def handle_congruence(req: m.CongruenceRequest) -> m.CongruenceResponse:
    ring = TwistedSeriesRing(req.q, req.ell, req.s, precision=req.options.precision)
    if req.element is not None:
        from ..matdiv import TwistedSeries

        # reuse the series literal grammar with x in place of t
        ground = SeriesRing(ring.C.order, precision=req.options.precision)
        lit = parse_series(ground, req.element.replace("x", "t"))
        elt = TwistedSeries(ring, lit.val, lit.coeffs, lit.end)
    else:
        rng = random.Random(req.random_seed if req.random_seed is not None else req.options.seed)
        elt = ring.one().add(ring.random_element(rng, val_range=(1, 3)))
    witness = congruence_witness(ring, elt)
    rng2 = random.Random(req.options.seed + 1)
    probe = ring.random_element(rng2, val_range=(0, 2))
    diag = ddet_diagonal_consistency(ring, probe, req.ell)
    return m.CongruenceResponse(witness=witness, diag_consistency=diag)
