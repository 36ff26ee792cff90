"""Reduced Whitehead groups of graded division algebras: case formulas and oracles.

The case formulas (unramified transfer, the root-of-unity quotient for
totally ramified algebras, the pair-map cokernel for semiramified ones) act
on descriptors.  The brute-force oracle works directly on a monomial ring:
it enumerates the norm-one units of the degree-zero part and closes the
homogeneous commutators, so it is independent of every formula it checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

from .errors import BudgetExceededError, NotInKernelError, UnsupportedCaseError
from .gmodules import FiniteAbGroupSpec, GModule, wedge_map, wedge_square
from .intlinalg import (
    FiniteAbelianGroup,
    cokernel,
    lattice_contains,
    lattice_equal,
    solve_in_lattice,
)
from .monomial import (
    SEMIRAMIFIED,
    TOTALLY_RAMIFIED,
    UNRAMIFIED,
    AbstractResidue,
    FiniteFieldResidue,
    GradedDivAlgDesc,
    MonomialGradedRing,
    classify,
    reduced_norm,
    reduced_norm_residue,
)

UNRAMIFIED_TRANSFER = "UnramifiedTransfer"
TOTALLY_RAMIFIED_MU = "TotallyRamifiedMu"
SEMIRAMIFIED_SEQUENCE = "SemiramifiedSequence"
NICELY_SEMIRAMIFIED = "NicelySemiramified"
BRUTE_FORCE = "BruteForce"


@dataclass
class SK1Report:
    group: FiniteAbelianGroup | None
    method: str
    witnesses: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    symbolic: str | None = None

    def __post_init__(self):
        if self.group is not None and "index" in self.witnesses:
            n = self.witnesses["index"]
            self.checks["n_torsion"] = all(
                d != 0 and n % d == 0 for d in self.group.invariant_factors
            ) or self.group.is_trivial


@dataclass(frozen=True)
class MuQuotientSpec:
    """mu_n(T_0)/mu_e(T_0) data for a totally ramified algebra."""

    q: int
    n: int
    e: int

    def group(self) -> FiniteAbelianGroup:
        top = gcd(self.n, self.q - 1)
        bottom = gcd(self.e, self.q - 1)
        if top % bottom:
            raise UnsupportedCaseError(
                "root-of-unity groups are not nested; data cannot come from a graded division algebra"
            )
        return FiniteAbelianGroup.from_orders([top // bottom])


def _semiramified_module_data(ring: MonomialGradedRing):
    """Group spec, unit module and pair values for a semiramified monomial ring.

    Requires the center's grade lattice to be exactly the one spanned by the
    r_i; in that normal position the grade quotient is presented by the z_i
    themselves, whose residue actions and commutators are the module data.
    """
    diag = [[ring.r[i] if k == i else 0 for k in range(ring.n)] for i in range(ring.n)]
    if not lattice_equal(ring.gamma_T_basis(), diag):
        raise UnsupportedCaseError(
            "semiramified formula needs the grade lattice in diagonal position"
        )
    order = ring.M.order - 1
    spec = FiniteAbGroupSpec(ring.r)
    actions = [[[pow(ring.q, s, order)]] for s in ring.sigma]
    module = GModule(spec, 1, [[order]], actions)
    u = {}
    for i in range(ring.n):
        for j in range(i + 1, ring.n):
            u[(i, j)] = [ring.M.dlog(ring.u[i][j])]
    return spec, module, u


def sk1(source) -> SK1Report:
    """Reduced Whitehead group by the case analysis.

    Accepts a descriptor or a monomial ring (the ring is converted and, in
    the semiramified case, supplies the residue module and pair data).
    """
    ring = source if isinstance(source, MonomialGradedRing) else None
    desc = ring.descriptor() if ring is not None else source
    kind = classify(desc)
    n = desc.index
    if kind == UNRAMIFIED:
        if isinstance(desc.residue, FiniteFieldResidue) and desc.residue.commutative:
            return SK1Report(
                FiniteAbelianGroup([]),
                UNRAMIFIED_TRANSFER,
                witnesses={"index": n, "residue_field_order": desc.residue.q**desc.residue.ext_degree},
            )
        return SK1Report(
            None,
            UNRAMIFIED_TRANSFER,
            witnesses={"index": n},
            symbolic="SK1(E_0)",
        )
    if kind == TOTALLY_RAMIFIED:
        e = desc.gamma_quotient().exponent()
        mu = MuQuotientSpec(q=desc.residue.q, n=n, e=e)
        return SK1Report(
            mu.group(),
            TOTALLY_RAMIFIED_MU,
            witnesses={"index": n, "exponent": e, "mu_spec": mu},
        )
    if kind == SEMIRAMIFIED:
        if ring is not None:
            spec, module, u = _semiramified_module_data(ring)
        elif isinstance(desc.residue, AbstractResidue):
            spec = desc.residue.spec
            module = desc.residue.module
            u = desc.residue.u or {}
        else:
            raise UnsupportedCaseError("semiramified case needs residue module and pair data")
        result = wedge_map(spec, module, u)
        # commuting lifts (all u trivial) certify a totally ramified maximal
        # graded subfield next to the unramified one E_0 always provides
        nicely = all(all(c == 0 for c in v) for v in u.values())
        method = NICELY_SEMIRAMIFIED if nicely else SEMIRAMIFIED_SEQUENCE
        return SK1Report(
            result.cokernel,
            method,
            witnesses={
                "index": n,
                "h_minus1": result.h_minus1,
                "wedge_image": result.image,
                "wedge_domain": wedge_square(spec).group,
            },
        )
    raise UnsupportedCaseError(f"no formula for classification {kind}")


def _check_budget(ring: MonomialGradedRing, budget_units: int, budget_window: int):
    if ring.M.order - 1 > budget_units:
        raise BudgetExceededError(f"|E_0^*| = {ring.M.order - 1} exceeds {budget_units}")
    if prod(ring.r) > budget_window:
        raise BudgetExceededError(f"grade window {prod(ring.r)} exceeds {budget_window}")


def norm_one_subgroup_dlog(ring: MonomialGradedRing) -> int:
    """dlog index of the norm-one units: {a : Nrd(a) = 1} = <g^d> for this d."""
    order = ring.M.order - 1
    d = order
    for ell in range(order):
        if reduced_norm_residue(ring, ring.M.exp(ell)) == 1:
            d = gcd(d, ell)
    return d


def commutator_subgroup_dlog(ring: MonomialGradedRing) -> int:
    """dlog index of the commutator subgroup intersected with the units of E_0.

    Every homogeneous commutator has degree zero.  Conjugation fixes every
    subgroup of the cyclic group M*, so the subgroup generated by commutators
    of scalars with window monomials and of window monomials with each other
    is already the whole commutator intersection; a randomized containment
    sweep in the tests backs this up.
    """
    from itertools import product as iproduct

    M = ring.M
    order = M.order - 1
    d = order
    window = list(iproduct(*(range(r) for r in ring.r)))
    # scalar against monomial: c z^alpha c^-1 z^-alpha = c^(1 - q^t(alpha))
    for alpha in window:
        t = ring.sigma_power_exponent(alpha)
        d = gcd(d, pow(ring.q, t, order) - 1)
    # monomial against monomial
    for alpha in window:
        za = ring.monomial(1, alpha)
        for beta in window:
            zb = ring.monomial(1, beta)
            com = za.commutator(zb)
            assert com.degree() == (0,) * ring.n
            c = com.coefficient()
            if c != 1:
                d = gcd(d, M.dlog(c))
    return d


def sk1_bruteforce(
    ring: MonomialGradedRing, budget_units: int = 10**6, budget_window: int = 64
) -> SK1Report:
    """SK1 by enumeration: norm-one units modulo closed homogeneous commutators."""
    _check_budget(ring, budget_units, budget_window)
    order = ring.M.order - 1
    d_norm = norm_one_subgroup_dlog(ring)
    d_comm = commutator_subgroup_dlog(ring)
    if d_comm % d_norm:
        raise AssertionError("commutators failed to be norm-one units")
    e1_order = order // d_norm if order else 1
    comm_order = order // d_comm if order else 1
    group = FiniteAbelianGroup.from_orders([d_comm // d_norm])
    return SK1Report(
        group,
        BRUTE_FORCE,
        witnesses={
            "index": ring.index(),
            "norm_one_order": e1_order,
            "commutator_order": comm_order,
        },
    )


@dataclass
class CK1Report:
    group: FiniteAbelianGroup
    unit_part: FiniteAbelianGroup
    grade_part: FiniteAbelianGroup
    method: str


def _central_generators(ring: MonomialGradedRing):
    """(gamma_j, c_j) pairs: a central monomial on each grade-lattice basis row."""
    out = []
    for row in ring.gamma_T_basis():
        gamma = tuple(row)
        c = ring.central_coefficient(gamma)
        assert c is not None
        out.append((gamma, c))
    return out


def _t0_dlog(ring: MonomialGradedRing, x: int) -> int:
    """Discrete log of x in T_0^* with respect to the T_0 generator."""
    q0 = ring.t0_order()
    if q0 == 2:
        if x != 1:
            raise ValueError("not a unit of T_0")
        return 0
    order = ring.M.order - 1
    step = order // (q0 - 1)
    ell = ring.M.dlog(x)
    if ell % step:
        raise ValueError("element not in T_0^*")
    return (ell // step) % (q0 - 1)


def ck1(source) -> CK1Report:
    """E^*/(T^* E') with the extension data of its unit and grade parts."""
    if isinstance(source, MonomialGradedRing):
        return _ck1_ring(source)
    desc = source
    kind = classify(desc)
    gamma = desc.gamma_quotient()
    if kind == UNRAMIFIED:
        if not (isinstance(desc.residue, FiniteFieldResidue) and desc.residue.commutative):
            raise UnsupportedCaseError("unramified CK1 needs a finite-field residue")
        q0 = desc.residue.q
        order = (q0**desc.residue.ext_degree - 1) // (q0 - 1)
        unit = FiniteAbelianGroup.from_orders([order])
        return CK1Report(unit, unit, FiniteAbelianGroup([]), UNRAMIFIED)
    if kind == TOTALLY_RAMIFIED:
        return CK1Report(gamma, FiniteAbelianGroup([]), gamma, TOTALLY_RAMIFIED)
    raise UnsupportedCaseError("CK1 descriptor formulas cover the two extreme cases only")


def _ck1_ring(ring: MonomialGradedRing) -> CK1Report:
    M = ring.M
    order = M.order - 1
    q0 = ring.t0_order()
    d_comm = commutator_subgroup_dlog(ring)
    rows = [[order] + [0] * ring.n, [d_comm] + [0] * ring.n]
    rows.append([order // (q0 - 1) if q0 > 2 else order] + [0] * ring.n)
    for gamma, c in _central_generators(ring):
        rows.append([M.dlog(c) if c != 1 else 0] + list(gamma))
    group = cokernel(rows, 1 + ring.n)
    unit_d = gcd(order // (q0 - 1) if q0 > 2 else order, d_comm)
    unit_part = FiniteAbelianGroup.from_orders([unit_d]) if order else FiniteAbelianGroup([])
    grade_part = ring.descriptor().gamma_quotient()
    return CK1Report(group, unit_part, grade_part, BRUTE_FORCE)


@dataclass
class SH1Report:
    group: FiniteAbelianGroup
    unit_part: FiniteAbelianGroup
    grade_part: FiniteAbelianGroup
    norm_generators: list


def sh1(ring: MonomialGradedRing, budget_units: int = 10**6, budget_window: int = 64) -> SH1Report:
    """Cokernel of the reduced norm: T^*/Nrd(E^*), computed on generators.

    Nrd(E^*) is generated by the norms of the degree-zero units and of the
    z_i; T^* is presented on the T_0 generator and one central monomial per
    grade-lattice basis row.
    """
    _check_budget(ring, budget_units, budget_window)
    M = ring.M
    q0 = ring.t0_order()
    n = ring.index()
    ext = ring.residue_extension_degree()
    delta = n // ext
    centrals = _central_generators(ring)
    basis_rows = [list(g) for g, _ in centrals]
    rows = [[q0 - 1] + [0] * ring.n]
    norm_gens = []
    # norm of the unit generator of E_0
    rows.append([delta % (q0 - 1) if q0 > 2 else 0] + [0] * ring.n)
    norm_gens.append({"source": "E0_unit_generator", "t0_dlog": delta % (q0 - 1) if q0 > 2 else 0})
    for j in range(ring.n):
        nrd = reduced_norm(ring.gen(j), ring)
        deg = list(nrd.degree())
        coords = solve_in_lattice(basis_rows, deg)
        assert coords is not None, "norm degree must lie in the center's grade lattice"
        canonical = ring.one()
        for (gamma, c), a in zip(centrals, coords):
            canonical = canonical * ring.monomial(c, gamma).pow(a)
        ratio = nrd * canonical.inverse()
        assert ratio.degree() == (0,) * ring.n
        dt = _t0_dlog(ring, ratio.coefficient())
        rows.append([dt] + list(coords))
        norm_gens.append({"source": f"z_{j+1}", "t0_dlog": dt, "grade_coords": list(coords)})
    group = cokernel(rows, 1 + ring.n)
    unit_part = FiniteAbelianGroup.from_orders([gcd(delta, q0 - 1)])
    grade_rows = [row[1:] for row in rows[2:]]
    grade_part = cokernel(grade_rows, ring.n)
    return SH1Report(group, unit_part, grade_part, norm_gens)


@dataclass
class SubgroupCertificate:
    generators: tuple
    invariants: FiniteAbelianGroup
    value: list
    nonzero: bool


def _pair_value(u: dict, a, b, module: GModule):
    """Class of the commutator cocycle on (a, b) modulo the augmentation lattice."""
    k = module.generators
    out = [0] * k
    for (i, j), v in u.items():
        coef = a[i] * b[j] - a[j] * b[i]
        if coef:
            for t in range(k):
                out[t] += coef * v[t]
    return out


def nondegenerate(spec: FiniteAbGroupSpec, module: GModule, u: dict):
    """Pair data is nondegenerate iff its restriction to every rank-2 subgroup
    hits a nonzero class; returns (bool, per-subgroup certificates)."""
    for v in u.values():
        if not module.element_in_norm_kernel(list(v)):
            raise NotInKernelError(f"pair value {v} is not in the norm kernel")
    certificates = []
    overall = True
    for sub in spec.all_subgroups():
        inv = spec.subgroup_invariants(sub)
        if len(inv.invariant_factors) != 2:
            continue
        pair = spec.generating_pair(sub)
        assert pair is not None
        h1, h2 = pair
        value = _pair_value(u, h1, h2, module)
        restricted = module.restrict_to_subgroup([h1, h2])
        if not restricted.element_in_norm_kernel(value):
            raise NotInKernelError(f"restricted pair value {value} left the norm kernel")
        aug = restricted.augmentation_lattice()
        nonzero = not (
            lattice_contains(aug, value) if aug else all(x == 0 for x in value)
        )
        certificates.append(SubgroupCertificate((h1, h2), inv, value, nonzero))
        overall = overall and nonzero
    return overall, certificates


def nondegenerate_ring(ring: MonomialGradedRing):
    """Ring-level nondegeneracy: commutators of monomial lifts, reduced exactly."""
    spec, module, u = _semiramified_module_data(ring)
    # replace the cocycle formula values by exact monomial commutators in the tests;
    # here the formula values agree with them modulo the augmentation lattice
    return nondegenerate(spec, module, u)
