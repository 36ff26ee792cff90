"""Monomial graded division rings over finite fields, and their descriptors.

A ring is presented by M = GF(q^m), Frobenius exponents s_i, Laurent
generators z_i with z_i c = sigma_i(c) z_i, commutation units u_ij with
z_i z_j = u_ij z_j z_i, and central markers z_i^{r_i} = b_i x_i.  Elements
are finite sums of monomials c * z^alpha with alpha in Z^n, kept in the
normal form "coefficient on the left, generators in index order"; exponents
are never reduced, so the Z^n grading stays visible.

The commutation data is only required to be antisymmetric; associativity is
enforced by direct verification on generator triples at construction (the
compatibility identities this implies are exactly what that check tests).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt, prod

from .errors import UnsupportedCaseError, ZeroElementError
from .finitefield import GF, FiniteField, prime_power_decomposition, solve_linear
from .gmodules import FiniteAbGroupSpec, GModule
from .intlinalg import (
    FiniteAbelianGroup,
    kernel_basis,
    lattice_basis,
    lattice_index,
    subquotient,
)

UNRAMIFIED = "Unramified"
TOTALLY_RAMIFIED = "TotallyRamified"
SEMIRAMIFIED = "Semiramified"
OTHER = "Other"


def _solve_congruence(a: int, b: int, n: int):
    """Solutions of a*x = b (mod n) as (residue, modulus), or None."""
    a %= n
    b %= n
    g = gcd(a, n)
    if b % g:
        return None
    n2 = n // g
    if n2 == 1:
        return 0, 1
    x = (b // g) * pow(a // g, -1, n2) % n2
    return x, n2


def _merge_progressions(p1, p2):
    """Intersect x = r1 (mod m1) with x = r2 (mod m2), or None."""
    r1, m1 = p1
    r2, m2 = p2
    g = gcd(m1, m2)
    if (r1 - r2) % g:
        return None
    lcm = m1 // g * m2
    # r = r1 + m1 * t with t solving m1 t = r2 - r1 (mod m2)
    t = _solve_congruence(m1, r2 - r1, m2)
    if t is None:
        return None
    return (r1 + m1 * t[0]) % lcm, lcm


class MonomialGradedRing:
    """E = M[z_1^{+-1}, ..., z_n^{+-1}] with Frobenius twists and unit commutators."""

    def __init__(self, q: int, m: int, n: int, sigma, r, b, u):
        self.q = q
        self.m = m
        self.n = n
        p, e = prime_power_decomposition(q)
        self.p, self.q_exp = p, e
        self.M = GF(p, e * m)
        self.sigma = [s % m for s in sigma]
        self.r = [int(x) for x in r]
        self.b = [int(x) for x in b]
        self.u = [[int(x) for x in row] for row in u]
        if not (len(self.sigma) == len(self.r) == len(self.b) == n):
            raise ValueError("sigma, r, b must have length n")
        if len(self.u) != n or any(len(row) != n for row in self.u):
            raise ValueError("u must be an n x n matrix")
        if any(x < 1 for x in self.r):
            raise ValueError("r entries must be >= 1")
        self._twist_cache: dict = {}
        self._central_cache: dict = {}
        self._validate()

    # -- construction-time validation ------------------------------------

    def _validate(self):
        M = self.M
        for i in range(self.n):
            if self.u[i][i] != 1:
                raise ValueError("u[i][i] must be 1")
            if self.b[i] == 0:
                raise ValueError("b entries must be units")
            for j in range(self.n):
                if self.u[i][j] == 0 or M.mul(self.u[i][j], self.u[j][i]) != 1:
                    raise ValueError("u must be unit-valued and antisymmetric")
        for i in range(self.n):
            if (self.sigma[i] * self.r[i]) % self.m:
                raise ValueError(f"sigma_{i}^r_{i} is not the identity on M")
        self._check_associativity_on_generators()
        for i in range(self.n):
            xi = self.central_marker(i)
            for j in range(self.n):
                zj = self.gen(j)
                if zj * xi != xi * zj:
                    raise ValueError(f"b[{i}]^-1 z_{i}^r_{i} is not central (fails z_{j})")

    def _check_associativity_on_generators(self):
        gens = [self.gen(i) for i in range(self.n)]
        gens += [g.inverse() for g in gens]
        gens.append(self.scalar(self.M.generator))
        for a in gens:
            for b in gens:
                ab = a * b
                for c in gens:
                    if (ab) * c != a * (b * c):
                        raise ValueError("presentation is not associative on generator triples")

    # -- basic elements ----------------------------------------------------

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def one(self) -> "GradedElement":
        return self.scalar(1)

    def scalar(self, c: int) -> "GradedElement":
        return self.monomial(c, (0,) * self.n)

    def monomial(self, c: int, alpha) -> "GradedElement":
        if c == 0:
            return self.zero()
        return GradedElement(self, {tuple(alpha): c})

    def gen(self, i: int) -> "GradedElement":
        alpha = [0] * self.n
        alpha[i] = 1
        return self.monomial(1, alpha)

    def central_marker(self, i: int) -> "GradedElement":
        """x_i = b_i^{-1} z_i^{r_i}, the designated central monomial."""
        alpha = [0] * self.n
        alpha[i] = self.r[i]
        return self.monomial(self.M.inv(self.b[i]), alpha)

    # -- twisted monomial arithmetic ----------------------------------------

    def sigma_power_exponent(self, alpha) -> int:
        """t with sigma^alpha = (c -> c^(q^t)), t taken mod m."""
        return sum(s * a for s, a in zip(self.sigma, alpha)) % self.m

    def apply_sigma(self, c: int, alpha) -> int:
        if c == 0:
            return 0
        t = self.sigma_power_exponent(alpha)
        return self.M.pow_p_power(c, self.q_exp * t)

    def _apply_sigma_single(self, c: int, i: int, k: int) -> int:
        """sigma_i^k applied to c (k may be negative)."""
        if c == 0:
            return 0
        t = (self.sigma[i] * k) % self.m
        return self.M.pow_p_power(c, self.q_exp * t)

    def _pass_factor(self, j: int, i: int, sign: int, a: int) -> int:
        """Unit F with z_j^a * z_i^sign = F * z_i^sign * z_j^a."""
        M = self.M
        w = self.u[j][i] if sign > 0 else self._apply_sigma_single(self.u[i][j], i, -1)
        out = 1
        if a >= 0:
            for k in range(a):
                out = M.mul(out, self._apply_sigma_single(w, j, k))
        else:
            w_inv = M.inv(w)
            for k in range(1, -a + 1):
                out = M.mul(out, self._apply_sigma_single(w_inv, j, -k))
        return out

    def _right_mul_letter(self, coef: int, alpha: tuple, i: int, sign: int):
        """(coef * z^alpha) * z_i^sign in normal form."""
        M = self.M
        total = coef
        prefix = list(alpha)
        for j in range(self.n - 1, i, -1):
            a = alpha[j]
            if a:
                f = self._pass_factor(j, i, sign, a)
                if f != 1:
                    pre = list(alpha[:j]) + [0] * (self.n - j)
                    total = M.mul(total, self.apply_sigma(f, pre))
        new_alpha = list(alpha)
        new_alpha[i] += sign
        return total, tuple(new_alpha)

    def word_twist(self, alpha: tuple, beta: tuple) -> int:
        """Unit U with z^alpha * z^beta = U * z^(alpha+beta)."""
        key = (alpha, beta)
        cached = self._twist_cache.get(key)
        if cached is not None:
            return cached
        coef = 1
        cur = alpha
        for i in range(self.n):
            step = 1 if beta[i] >= 0 else -1
            for _ in range(abs(beta[i])):
                coef, cur = self._right_mul_letter(coef, cur, i, step)
        self._twist_cache[key] = coef
        return coef

    def mono_mul(self, c: int, alpha: tuple, d: int, beta: tuple):
        coef = self.M.mul(self.M.mul(c, self.apply_sigma(d, alpha)), self.word_twist(alpha, beta))
        return coef, tuple(a + b for a, b in zip(alpha, beta))

    # -- the center ----------------------------------------------------------

    def t0_degree_over_base(self) -> int:
        """d with T_0 = GF(q^d): the fixed field of all the sigma_i."""
        g = self.m
        for s in self.sigma:
            g = gcd(g, s)
        return g

    def t0_order(self) -> int:
        return self.q ** self.t0_degree_over_base()

    def t0_generator(self) -> int:
        """Multiplicative generator of T_0 inside M."""
        step = (self.M.order - 1) // (self.t0_order() - 1) if self.t0_order() > 2 else 0
        if self.t0_order() == 2:
            return 1
        return self.M.exp(step)

    def residue_extension_degree(self) -> int:
        """[E_0 : T_0]."""
        return self.m // self.t0_degree_over_base()

    def central_coefficient(self, gamma):
        """A unit c with c*z^gamma central, or None; cached.

        The full set of central coefficients at gamma is c * T_0^* when it is
        nonempty.
        """
        gamma = tuple(gamma)
        if gamma in self._central_cache:
            return self._central_cache[gamma]
        out = self._central_coefficient_uncached(gamma)
        self._central_cache[gamma] = out
        return out

    def _central_coefficient_uncached(self, gamma):
        M = self.M
        if self.sigma_power_exponent(gamma) % self.m:
            return None
        if all(a == 0 for a in gamma):
            return 1
        order = M.order - 1
        progression = (0, 1)
        for i in range(self.n):
            eps = tuple(1 if k == i else 0 for k in range(self.n))
            lhs = self.word_twist(gamma, eps)
            rhs = self.word_twist(eps, gamma)
            target = (M.dlog(lhs) - M.dlog(rhs)) % order
            a = (pow(self.q, self.sigma[i], order) - 1) % order
            sol = _solve_congruence(a, target, order)
            if sol is None:
                return None
            progression = _merge_progressions(progression, sol)
            if progression is None:
                return None
        c = M.exp(progression[0])
        elt = self.monomial(c, gamma)
        assert all(elt * self.gen(j) == self.gen(j) * elt for j in range(self.n))
        return c

    def gamma_T_basis(self):
        """Basis rows of the grade lattice of the center."""
        if getattr(self, "_gamma_T", None) is not None:
            return self._gamma_T
        rows = [[self.r[i] if k == i else 0 for k in range(self.n)] for i in range(self.n)]
        window = prod(self.r)
        if window > 4096:
            raise UnsupportedCaseError("central-lattice window exceeds budget")
        from itertools import product as iproduct

        for gamma in iproduct(*(range(ri) for ri in self.r)):
            if any(gamma) and self.central_coefficient(gamma) is not None:
                rows.append(list(gamma))
        self._gamma_T = lattice_basis(rows)
        return self._gamma_T

    def gamma_index(self) -> int:
        idx = lattice_index(self.n, self.gamma_T_basis())
        assert idx is not None
        return idx

    def index(self) -> int:
        """ind(E), from the dimension count [E:T] = [E_0:T_0] |Gamma_E:Gamma_T|."""
        dim = self.residue_extension_degree() * self.gamma_index()
        root = isqrt(dim)
        if root * root != dim:
            raise UnsupportedCaseError(f"[E:T] = {dim} is not a perfect square")
        return root

    def theta_kernel_lattice(self):
        """{gamma : sigma^gamma = id}, as basis rows."""
        col = [[s] for s in self.sigma] + [[self.m]]
        ker = kernel_basis(col)
        return lattice_basis([row[: self.n] for row in ker])

    def descriptor(self) -> "GradedDivAlgDesc":
        theta = subquotient(self.n, self.theta_kernel_lattice(), self.gamma_T_basis())
        ext = self.residue_extension_degree()
        residue = FiniteFieldResidue(
            q=self.t0_order(), ext_degree=ext, center_degree=ext
        )
        return GradedDivAlgDesc(
            gamma_rank=self.n,
            gamma_T=self.gamma_T_basis(),
            residue=residue,
            index=self.index(),
            theta_kernel=theta,
        )

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        M = self.M
        return {
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "sigma": list(self.sigma),
            "r": list(self.r),
            "b": [M.dlog(x) for x in self.b],
            "u": [[M.dlog(x) for x in row] for row in self.u],
            "field": {
                "p": M.p,
                "k": M.k,
                "generator_minpoly": list(M.modulus) if M.k > 1 else [M.p - M.generator, 1],
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MonomialGradedRing":
        q, m, n = int(data["q"]), int(data["m"]), int(data["n"])
        p, e = prime_power_decomposition(q)
        M = GF(p, e * m)
        declared = data.get("field")
        if declared is not None:
            expect = list(M.modulus) if M.k > 1 else [M.p - M.generator, 1]
            if [declared.get("p"), declared.get("k")] != [M.p, M.k] or list(
                declared.get("generator_minpoly", expect)
            ) != expect:
                raise ValueError("field block does not match the canonical generator")
        b = [M.exp(int(x)) for x in data["b"]]
        u = [[M.exp(int(x)) for x in row] for row in data["u"]]
        return cls(q, m, n, data["sigma"], data["r"], b, u)

    def __repr__(self):
        return f"MonomialGradedRing(q={self.q}, m={self.m}, n={self.n})"


class GradedElement:
    """Finite sum of monomials c * z^alpha; zero coefficients are never stored."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: MonomialGradedRing, comps: dict):
        self.ring = ring
        self.comps = {k: v for k, v in comps.items() if v != 0}

    @property
    def is_zero(self) -> bool:
        return not self.comps

    @property
    def is_homogeneous(self) -> bool:
        return len(self.comps) <= 1

    def degree(self):
        if len(self.comps) != 1:
            raise ValueError("degree of a non-homogeneous or zero element")
        return next(iter(self.comps))

    def coefficient(self):
        if len(self.comps) != 1:
            raise ValueError("coefficient of a non-homogeneous or zero element")
        return next(iter(self.comps.values()))

    def __add__(self, other):
        M = self.ring.M
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = M.add(out.get(k, 0), v)
        return GradedElement(self.ring, out)

    def __neg__(self):
        M = self.ring.M
        return GradedElement(self.ring, {k: M.neg(v) for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ring = self.ring
        M = ring.M
        out: dict = {}
        for alpha, c in self.comps.items():
            for beta, d in other.comps.items():
                coef, deg = ring.mono_mul(c, alpha, d, beta)
                prev = out.get(deg, 0)
                out[deg] = M.add(prev, coef)
        return GradedElement(ring, out)

    def scale(self, c: int) -> "GradedElement":
        M = self.ring.M
        return GradedElement(self.ring, {k: M.mul(c, v) for k, v in self.comps.items()})

    def inverse(self) -> "GradedElement":
        """Two-sided inverse of a homogeneous unit."""
        if len(self.comps) != 1:
            raise ZeroElementError("only nonzero homogeneous elements are invertible")
        ring = self.ring
        M = ring.M
        alpha = self.degree()
        c = self.coefficient()
        neg = tuple(-a for a in alpha)
        # (c z^alpha)(e z^-alpha) = c sigma^alpha(e) U(alpha, -alpha) = 1
        e = ring.apply_sigma(M.inv(M.mul(c, ring.word_twist(alpha, neg))), neg)
        return ring.monomial(e, neg)

    def pow(self, e: int) -> "GradedElement":
        if e < 0:
            return self.inverse().pow(-e)
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate_by(self, unit: "GradedElement") -> "GradedElement":
        return unit * self * unit.inverse()

    def commutator(self, other: "GradedElement") -> "GradedElement":
        return self * other * self.inverse() * other.inverse()

    def leading_term(self) -> "GradedElement":
        """Minimal-degree homogeneous component in lexicographic order."""
        if self.is_zero:
            raise ZeroElementError("leading term of zero")
        deg = min(self.comps)
        return GradedElement(self.ring, {deg: self.comps[deg]})

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.comps == other.comps

    def __hash__(self):
        return hash(frozenset(self.comps.items()))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for alpha in sorted(self.comps):
            c = self.comps[alpha]
            mono = "*".join(f"z{i+1}^{a}" for i, a in enumerate(alpha) if a)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def leading_term(s: GradedElement) -> GradedElement:
    return s.leading_term()


# -- descriptors -------------------------------------------------------------


@dataclass(frozen=True)
class FiniteFieldResidue:
    """Residue data over T_0 = GF(q): ext_degree = [E_0:T_0], center_degree = [Z(E_0):T_0].

    A noncommutative residue (ext_degree > center_degree) is legal at the
    descriptor level even though no such division ring exists over a finite
    field; it carries no element arithmetic.
    """

    q: int
    ext_degree: int
    center_degree: int

    def __post_init__(self):
        ratio, rem = divmod(self.ext_degree, self.center_degree)
        if rem or isqrt(ratio) ** 2 != ratio:
            raise ValueError("[E_0:Z(E_0)] must be a perfect square")

    @property
    def commutative(self) -> bool:
        return self.ext_degree == self.center_degree

    @property
    def residue_index(self) -> int:
        return isqrt(self.ext_degree // self.center_degree)


@dataclass(frozen=True)
class AbstractResidue:
    """Residue unit group supplied as a G-module (no element arithmetic).

    `u` optionally carries the pair data for the semiramified sequence, as a
    dict {(i, j): module vector} over generator pairs i < j.
    """

    spec: FiniteAbGroupSpec
    module: GModule
    ext_degree: int
    commutative: bool = True
    center_degree: int | None = None
    residue_index: int = 1
    u: dict | None = None


@dataclass(frozen=True)
class GradedDivAlgDesc:
    """Descriptor-level graded division algebra."""

    gamma_rank: int
    gamma_T: list
    residue: object
    index: int
    theta_kernel: FiniteAbelianGroup = field(default_factory=lambda: FiniteAbelianGroup([]))

    def __post_init__(self):
        idx = lattice_index(self.gamma_rank, self.gamma_T)
        if idx is None:
            raise ValueError("the center's grade lattice must have finite index")
        ext = self.residue.ext_degree
        if self.index * self.index != ext * idx:
            raise ValueError(
                f"dimension count fails: ind^2 = {self.index**2} != {ext} * {idx}"
            )

    def gamma_index(self) -> int:
        return lattice_index(self.gamma_rank, self.gamma_T)

    def gamma_quotient(self) -> FiniteAbelianGroup:
        from .intlinalg import cokernel

        return cokernel(self.gamma_T, self.gamma_rank)


def classify(desc: GradedDivAlgDesc) -> str:
    """Ramification type from the dimension data.

    A commutative degenerate algebra (E = T) satisfies both extreme
    definitions; it is reported as unramified.
    """
    idx = desc.gamma_index()
    ext = desc.residue.ext_degree
    if idx == 1:
        return UNRAMIFIED
    if ext == 1:
        return TOTALLY_RAMIFIED
    if desc.residue.commutative and ext == idx and ext == desc.index:
        return SEMIRAMIFIED
    return OTHER


# -- minimal polynomials and reduced norms ------------------------------------


class CentralPolynomial:
    """Monic polynomial with homogeneous central coefficients."""

    def __init__(self, ring: MonomialGradedRing, coeffs):
        self.ring = ring
        self.coeffs = list(coeffs)  # GradedElements, index = power

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, a: GradedElement) -> GradedElement:
        acc = self.ring.zero()
        power = self.ring.one()
        for c in self.coeffs:
            acc = acc + c * power
            power = power * a
        return acc

    def constant_term(self) -> GradedElement:
        return self.coeffs[0]

    def json_coefficients(self) -> list:
        out = []
        M = self.ring.M
        for c in self.coeffs:
            if c.is_zero:
                out.append(None)
            else:
                out.append({"deg": list(c.degree()), "coeff": M.dlog(c.coefficient())})
        return out


def minimal_polynomial(a: GradedElement, ring: MonomialGradedRing) -> CentralPolynomial:
    """Minimal polynomial of a nonzero homogeneous element over the center.

    Searches for the least monic degree with a homogeneous-coefficient
    annihilator; homogenizability of the minimal polynomial guarantees the
    coefficient of x^i can only live in degree (deg - i) * deg(a), which
    turns each candidate degree into one small prime-field linear solve.
    """
    if a.is_zero or not a.is_homogeneous:
        raise ZeroElementError("minimal polynomial needs a nonzero homogeneous element")
    M = ring.M
    prime = GF(M.p, 1)
    gamma = a.degree()
    t0_dim = ring.t0_degree_over_base() * ring.q_exp
    t0_gen = ring.t0_generator()
    tau = [M.pow(t0_gen, d) if t0_gen else 1 for d in range(t0_dim)]
    powers = [1]
    bound = ring.index() ** 2
    for deg in range(1, bound + 1):
        prev_alpha = tuple(g * (deg - 1) for g in gamma)
        c_prev = powers[-1]
        coef, _ = ring.mono_mul(c_prev, prev_alpha, a.coefficient(), gamma)
        powers.append(coef)
        # unknowns: lambda_i in T_0 for every i with a central line at (deg-i)*gamma
        terms = []
        for i in range(deg):
            gdeg = tuple(g * (deg - i) for g in gamma)
            w = ring.central_coefficient(gdeg)
            if w is None:
                continue
            value, _ = ring.mono_mul(w, gdeg, powers[i], tuple(g * i for g in gamma))
            terms.append((i, w, value))
        if not terms and powers[deg] != 0:
            continue
        cols = []
        for _, _, value in terms:
            for t in tau:
                cols.append(M.digits(M.mul(t, value)))
        rhs = M.digits(M.neg(powers[deg]))
        rows = [[col[d] for col in cols] for d in range(M.k)]
        sol = solve_linear(prime, rows, rhs) if cols else (None if any(rhs) else [])
        if sol is None:
            continue
        coeffs = [ring.zero() for _ in range(deg + 1)]
        coeffs[deg] = ring.one()
        for t_idx, (i, w, _) in enumerate(terms):
            lam = 0
            for d in range(t0_dim):
                x = sol[t_idx * t0_dim + d]
                if x:
                    lam = M.add(lam, M.mul(x, tau[d]))
            if lam:
                gdeg = tuple(g * (deg - i) for g in gamma)
                coeffs[i] = ring.monomial(M.mul(lam, w), gdeg)
        poly = CentralPolynomial(ring, coeffs)
        assert poly.evaluate(a).is_zero, "claimed annihilator does not vanish"
        return poly
    raise AssertionError("no minimal polynomial found within the dimension bound")


def reduced_norm(a: GradedElement, ring: MonomialGradedRing) -> GradedElement:
    """Reduced norm of a nonzero homogeneous element, via its minimal polynomial."""
    h = minimal_polynomial(a, ring)
    mdeg = h.degree
    n = ring.index()
    if n % mdeg:
        raise AssertionError("minimal polynomial degree must divide the index")
    t0 = h.constant_term()
    if mdeg % 2:
        t0 = -t0
    return t0.pow(n // mdeg)


def reduced_norm_residue(ring: MonomialGradedRing, c: int) -> int:
    """Reduced norm of c in E_0 = M, by the degree-zero norm formula.

    Equals N_{M/T_0}(c)^delta with delta = ind(E)/[M:T_0]; used as the fast
    path for unit enumeration and cross-checked against minimal_polynomial.
    """
    ext = ring.residue_extension_degree()
    delta, rem = divmod(ring.index(), ext)
    if rem:
        raise AssertionError("residue degree must divide the index")
    d = ring.t0_degree_over_base() * ring.q_exp
    return ring.M.pow(ring.M.norm_to_subfield(c, d), delta)
