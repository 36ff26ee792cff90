"""Tame extension towers over GF(q)((t)): arithmetic, norms, leading terms.

A tower is a chain of simple steps, each either unramified (residue field
grows) or totally ramified (value group refines); every tame extension is
reached by such chains, and both step shapes keep an exact handle on leading
terms: the power basis of an unramified step has independent residues, the
one of a ramified step has distinct values.  Elements are coefficient lists
over the level below; the ground level holds truncated Laurent series.

Each level also carries the associated graded structure as (scalar, value)
pairs normalized against canonical monomials (products of step generators),
which is what the graded-versus-series norm comparison and the one-unit
norm preimage procedure consume.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NotSimpleRootError, NotTameError, PrecisionExhaustedError, ZeroElementError
from .finitefield import GF, FFPoly, FiniteField, embed, irreducible_polynomial
from .series import INF, LaurentSeries, SeriesRing


class GroundLevel:
    """GF(q)((t)) as the bottom of a tower."""

    def __init__(self, q: int, precision: int = 32):
        self.ring = SeriesRing(q, precision)
        self.residue_field = self.ring.field
        self.ram_index = 1
        self.res_degree = 1
        self.degree_over_ground = 1
        self.base = None

    # element protocol -----------------------------------------------------
    def zero(self):
        return self.ring.zero(end=INF)

    def one(self):
        return self.ring.one()

    def add(self, a, b):
        return a.add(b)

    def sub(self, a, b):
        return a.sub(b)

    def neg(self, a):
        return a.neg()

    def mul(self, a, b):
        return a.mul(b)

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a) -> bool:
        return a.is_zero

    def val(self, a):
        v = a.valuation()
        return None if v is None else Fraction(v)

    def value_floor(self, a):
        return Fraction(a.value_lower_bound()) if a.val is None else Fraction(a.val)

    def leading_pair(self, a):
        c, v = a.leading()
        return c, Fraction(v)

    def from_ground(self, series):
        return series

    def norm_to_ground(self, a):
        return a

    def uniformizer(self):
        return self.ring.t_power(1)

    def graded_unit(self, g1: Fraction, g2: Fraction) -> int:
        return 1

    def graded_mul(self, p1, p2):
        return self.residue_field.mul(p1[0], p2[0]), p1[1] + p2[1]

    def graded_norm_step(self, pair):
        return pair

    def tower_description(self):
        return []

    def __repr__(self):
        return f"GroundLevel(GF({self.ring.field.order}))"


class TowerLevel:
    """One simple step on top of `base`; see extend_unramified / extend_ramified."""

    def __init__(self, base, kind: str, minpoly, meta: dict):
        self.base = base
        self.kind = kind
        self.minpoly = list(minpoly)  # base elements, monic
        self.degree = len(minpoly) - 1
        self.meta = meta
        self.degree_over_ground = base.degree_over_ground * self.degree
        if kind == "unramified":
            self.ram_index = base.ram_index
            self.res_degree = base.res_degree * self.degree
            self.residue_field = meta["residue_field"]
        else:
            self.ram_index = base.ram_index * self.degree
            self.res_degree = base.res_degree
            self.residue_field = base.residue_field

    @property
    def ring(self):
        lvl = self
        while isinstance(lvl, TowerLevel):
            lvl = lvl.base
        return lvl.ring

    # element protocol -----------------------------------------------------
    def zero(self):
        return [self.base.zero() for _ in range(self.degree)]

    def one(self):
        out = self.zero()
        out[0] = self.base.one()
        return out

    def embed_base(self, c):
        out = self.zero()
        out[0] = c
        return out

    def from_ground(self, series):
        return self.embed_base(self.base.from_ground(series))

    def gen(self):
        out = self.zero()
        out[1] = self.base.one()
        return out

    def add(self, a, b):
        return [self.base.add(x, y) for x, y in zip(a, b)]

    def sub(self, a, b):
        return [self.base.sub(x, y) for x, y in zip(a, b)]

    def neg(self, a):
        return [self.base.neg(x) for x in a]

    def scale_base(self, c, a):
        return [self.base.mul(c, x) for x in a]

    def mul(self, a, b):
        d = self.degree
        prod = [self.base.zero() for _ in range(2 * d - 1)]
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = self.base.add(prod[i + j], self.base.mul(x, y))
        # reduce modulo the monic minpoly
        for top in range(2 * d - 2, d - 1, -1):
            c = prod[top]
            if self.base.is_zero(c):
                continue
            for j in range(d):
                prod[top - d + j] = self.base.sub(
                    prod[top - d + j], self.base.mul(c, self.minpoly[j])
                )
            prod[top] = self.base.zero()
        return prod[:d]

    def pow(self, a, e: int):
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def mult_matrix(self, a):
        """Columns are a * gen^j in the power basis."""
        cols = []
        cur = a
        basis_elt = a
        for j in range(self.degree):
            cols.append(basis_elt)
            if j + 1 < self.degree:
                basis_elt = self.mul(basis_elt, self.gen())
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def norm_to_base(self, a):
        return _det(self.base, self.mult_matrix(a))

    def norm_to_ground(self, a):
        return self.base.norm_to_ground(self.norm_to_base(a))

    def inv(self, a):
        """Solve a * x = 1 by valuation-pivoted elimination over the base."""
        d = self.degree
        mat = self.mult_matrix(a)
        rhs = [self.base.one() if i == 0 else self.base.zero() for i in range(d)]
        cols = list(range(d))
        # forward elimination with column pivoting is unnecessary: pivot rows
        sol = _solve_linear_level(self.base, mat, rhs)
        if sol is None:
            raise PrecisionExhaustedError("singular to precision while inverting")
        assert self.is_one_to_prec(self.mul(a, sol)), "inverse verification failed"
        return sol

    def is_one_to_prec(self, a) -> bool:
        return self.is_zero(self.sub(a, self.one()))

    def val(self, a):
        if self.is_zero(a):
            return None
        return self.leading_pair(a)[1]

    def leading_pair(self, a):
        """(scalar in the residue field, value) of the leading graded term."""
        if self.kind == "ramified":
            lam = self.meta["lam"]
            best = None
            for i, c in enumerate(a):
                if self.base.is_zero(c):
                    continue
                v = self.base.val(c) + i * lam
                if best is None or v < best[0]:
                    best = (v, i, c)
            if best is None:
                raise ZeroElementError("leading term of zero")
            v, i, c = best
            scalar, _ = self.base.leading_pair(c)
            return scalar, v
        # unramified: combine residues of the minimal-value coefficients
        vals = []
        for c in a:
            vals.append(None if self.base.is_zero(c) else self.base.val(c))
        nonzero = [v for v in vals if v is not None]
        if not nonzero:
            raise ZeroElementError("leading term of zero")
        v = min(nonzero)
        big = self.residue_field
        small = self.base.residue_field
        rho = self.meta["rho"]
        scalar = 0
        for i, c in enumerate(a):
            if vals[i] == v:
                s, _ = self.base.leading_pair(c)
                scalar = big.add(scalar, big.mul(embed(small, big, s), big.pow(rho, i)))
        assert scalar != 0, "unramified power basis residues cannot cancel"
        return scalar, v

    def uniformizer(self):
        if self.kind == "ramified":
            return self.gen()
        return self.embed_base(self.base.uniformizer())

    # graded structure -------------------------------------------------------
    def _decompose(self, gamma: Fraction):
        """gamma = j * lam + rest with j in [0, e) and rest in the base group."""
        lam = self.meta["lam"]
        e = self.degree
        denom = self.ram_index
        k_num = int(lam * denom)  # lam = k_num / denom with gcd(k_num, e) = 1
        target = gamma * denom
        assert target.denominator == 1, "value outside the tower's group"
        j = int(target) * pow(k_num, -1, e) % e
        return j, gamma - j * lam

    def graded_unit(self, g1: Fraction, g2: Fraction) -> int:
        """Scalar u with m_{g1} m_{g2} = u m_{g1+g2} for canonical monomials."""
        if self.kind == "unramified":
            big, small = self.residue_field, self.base.residue_field
            return embed(small, big, self.base.graded_unit(g1, g2))
        j1, r1 = self._decompose(g1)
        j2, r2 = self._decompose(g2)
        F = self.residue_field
        if j1 + j2 < self.degree:
            return self.base.graded_unit(r1, r2)
        delta_scalar, delta_val = self.meta["delta_pair"]
        u = F.mul(self.base.graded_unit(r1, r2), delta_scalar)
        return F.mul(u, self.base.graded_unit(delta_val, r1 + r2))

    def graded_mul(self, p1, p2):
        c1, g1 = p1
        c2, g2 = p2
        F = self.residue_field
        return F.mul(F.mul(c1, c2), self.graded_unit(g1, g2)), g1 + g2

    def graded_norm_step(self, pair):
        """Norm gr(K) -> gr(base) of a homogeneous element, exactly."""
        c, gamma = pair
        F = self.residue_field
        small = self.base.residue_field
        if self.kind == "unramified":
            # matrix of multiplication on the residue basis, det over the subfield
            d = self.degree
            rho = self.meta["rho"]
            fbar = self.meta["residue_minpoly"]  # over small, degree d
            cols = []
            cur = c
            for j in range(d):
                cols.append(cur)
                if j + 1 < d:
                    cur = F.mul(cur, rho)
            # cur_j = c * rho^j written in the basis rho^0..rho^{d-1}
            mat = []
            for j in range(d):
                coords = _residue_coords(F, small, rho, fbar, cols[j])
                mat.append(coords)
            det = _ff_det(small, [[mat[j][i] for j in range(d)] for i in range(d)])
            return det, gamma * d
        # ramified: monomial matrix over the graded base, one permutation term
        e = self.degree
        lam = self.meta["lam"]
        j, _ = self._decompose(gamma)
        acc = (1, Fraction(0))
        for i in range(e):
            # b * m_{i lam} = (c * unit, gamma + i lam): base part after slot split
            unit = self.graded_unit(gamma, i * lam)
            _, base_rest = self._decompose(gamma + i * lam)
            acc = self.base.graded_mul(acc, (F.mul(c, unit), base_rest))
        if _cycle_parity(j, e) % 2:
            acc = (self.residue_field.neg(acc[0]), acc[1])
        return acc

    def graded_norm_to_ground(self, pair):
        down = self.graded_norm_step(pair)
        if isinstance(self.base, TowerLevel):
            return self.base.graded_norm_to_ground(down)
        return down

    def tower_description(self):
        out = self.base.tower_description()
        out.append({"kind": self.kind, "degree": self.degree})
        return out

    def __repr__(self):
        return f"TowerLevel({self.kind}, degree={self.degree}, over {self.base!r})"


def _certainly_zero(level, x) -> bool:
    return level.is_zero(x)


def _cycle_parity(j: int, e: int) -> int:
    """Parity of the permutation i -> (i + j) mod e."""
    g = math.gcd(j, e)
    cycles = g
    length = e // g
    return (length - 1) * cycles % 2


def _residue_coords(big: FiniteField, small: FiniteField, rho: int, fbar: FFPoly, x: int):
    """Coordinates of x in the basis {rho^i} of big over small."""
    d = fbar.degree
    from .finitefield import solve_linear

    prime = GF(big.p, 1)
    cols = []
    for i in range(d):
        for u in range(small.k):
            basis_elt = big.mul(
                big.pow(rho, i), embed(small, big, small.pow(small.generator, u) if u else 1)
            )
            cols.append(big.digits(basis_elt))
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(big.k)]
    sol = solve_linear(prime, rows, big.digits(x))
    assert sol is not None
    out = []
    for i in range(d):
        acc = 0
        for u in range(small.k):
            coef = sol[i * small.k + u]
            if coef:
                acc = small.add(acc, small.mul(coef, small.pow(small.generator, u) if u else 1))
        out.append(acc)
    return out


def _ff_det(field: FiniteField, mat) -> int:
    n = len(mat)
    m = [row[:] for row in mat]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = field.neg(det)
        det = field.mul(det, m[col][col])
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                f = field.mul(m[r][col], inv)
                m[r] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[r], m[col])]
    return det


def _det(level, mat):
    """Determinant over a tower level by valuation-pivoted elimination."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = False
    det = level.one()
    for col in range(n):
        pivot = None
        pivot_val = None
        for r in range(col, n):
            if level.is_zero(m[r][col]):
                continue
            v = level.val(m[r][col])
            if pivot is None or v < pivot_val:
                pivot, pivot_val = r, v
        if pivot is None:
            return level.zero()
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = not sign
        det = level.mul(det, m[col][col])
        inv = level.inv(m[col][col])
        for r in range(col + 1, n):
            if not level.is_zero(m[r][col]):
                f = level.mul(m[r][col], inv)
                m[r] = [level.sub(a, level.mul(f, b)) for a, b in zip(m[r], m[col])]
    return level.neg(det) if sign else det


def _solve_linear_level(level, mat, rhs):
    """Solve mat x = rhs over a level (val-pivoted); None when singular."""
    n = len(mat)
    m = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = None
        pivot_val = None
        for r in range(col, n):
            if level.is_zero(m[r][col]):
                continue
            v = level.val(m[r][col])
            if pivot is None or v < pivot_val:
                pivot, pivot_val = r, v
        if pivot is None:
            return None
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        inv = level.inv(m[col][col])
        m[col] = [level.mul(inv, x) for x in m[col]]
        for r in range(n):
            if r != col and not level.is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [level.sub(a, level.mul(f, b)) for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


# -- building towers -----------------------------------------------------------


def make_ground(q: int, precision: int = 32) -> GroundLevel:
    return GroundLevel(q, precision)


def extend_unramified(base, residue_minpoly: FFPoly) -> TowerLevel:
    """Adjoin a root of a lift of an irreducible residue polynomial."""
    small = base.residue_field
    if residue_minpoly.field != small:
        raise ValueError("residue minimal polynomial must live over the residue field")
    if not residue_minpoly.is_irreducible():
        raise NotTameError("residue polynomial must be irreducible")
    d = residue_minpoly.degree
    big = GF(small.p, small.k * d)
    minpoly = [_lift_residue_scalar(base, c) for c in residue_minpoly.coeffs]
    embedded = [embed(small, big, c) for c in residue_minpoly.coeffs]
    fbar_big = FFPoly(big, embedded)
    roots = fbar_big.roots()
    assert roots, "irreducible polynomial must split in its root field"
    rho = roots[0]
    return TowerLevel(
        base,
        "unramified",
        minpoly,
        {"residue_field": big, "rho": rho, "residue_minpoly": residue_minpoly},
    )


def _lift_residue_scalar(level, c: int):
    """Exact lift of a residue-field scalar into the level."""
    if isinstance(level, GroundLevel):
        return level.ring.scalar(c)
    if level.kind == "ramified":
        return level.embed_base(_lift_residue_scalar(level.base, c))
    # unramified: express c in the power basis of rho
    big = level.residue_field
    small = level.base.residue_field
    coords = _residue_coords(big, small, level.meta["rho"], level.meta["residue_minpoly"], c)
    return [_lift_residue_scalar(level.base, x) for x in coords]


def extend_ramified(base, e: int, unit_shift=None, power: int = 1) -> TowerLevel:
    """Adjoin a root of x^e - u * pi^power with pi the base uniformizer.

    Tameness needs gcd(e, p) = 1; total ramification of degree e needs
    gcd(power, e) = 1.
    """
    p = base.residue_field.p
    if math.gcd(e, p) != 1:
        raise NotTameError(f"ramification {e} is divisible by the residue characteristic")
    if math.gcd(power, e) != 1:
        raise ValueError("uniformizer power must be prime to the ramification index")
    pi = base.uniformizer()
    body = pi
    for _ in range(power - 1):
        body = base.mul(body, pi)
    if unit_shift is not None:
        body = base.mul(body, unit_shift)
    minpoly = [base.neg(body)] + [base.zero() for _ in range(e - 1)] + [base.one()]
    lam = Fraction(power, e * base.ram_index)
    scalar, vv = base.leading_pair(body)
    level = TowerLevel(
        base,
        "ramified",
        minpoly,
        {"lam": lam, "delta_pair": (scalar, Fraction(vv))},
    )
    assert vv == lam * e
    return level


# -- the constructive norm statements -------------------------------------------


def norm_one_unit_step(level: TowerLevel, t):
    """An s in 1+M of `level` with N_{level/base}(s) = t, for t in 1+M_base.

    Solves G(u) = 0 with G(u) = h(a u)/(a^n lead) by Newton from u = 1, where
    a is the step generator with minimal polynomial f and h is f with its
    constant term multiplied by t; tameness makes u = 1 a simple residual
    root, and N(a u)/N(a) = t then falls out of the two minimal polynomials.
    """
    base = level.base
    one_minus = base.sub(t, base.one())
    if not base.is_zero(one_minus) and base.val(one_minus) <= 0:
        raise ValueError("target is not a one-unit")
    n = level.degree
    a = level.gen()
    # G_i = f_i a^{i-n} (f monic): coefficients in the level
    a_inv = level.inv(a)
    g_coeffs = []
    for i in range(n + 1):
        fi = level.minpoly[i] if i < n else base.one()
        coef = level.embed_base(fi)
        if i == 0:
            coef = level.mul(coef, level.embed_base(t))
        power = level.pow(a_inv, n - i)
        g_coeffs.append(level.mul(coef, power))

    def geval(coeffs, u):
        acc = level.zero()
        for c in reversed(coeffs):
            acc = level.add(level.mul(acc, u), c)
        return acc

    dg_coeffs = []
    for i in range(1, n + 1):
        c = level.zero()
        for _ in range(i % level.residue_field.p):
            c = level.add(c, g_coeffs[i])
        dg_coeffs.append(c)
    u = level.one()
    d0 = geval(dg_coeffs, u)
    if level.is_zero(d0) or level.val(d0) > 0:
        raise NotSimpleRootError("step is not residually simple at 1; not tame enough")
    target_prec = _level_precision_budget(level)
    guard = 0
    while True:
        gu = geval(g_coeffs, u)
        if level.is_zero(gu) or level.val(gu) >= target_prec:
            break
        du = geval(dg_coeffs, u)
        step = level.mul(gu, level.inv(du))
        u = level.sub(u, step)
        guard += 1
        if guard > 200:
            raise PrecisionExhaustedError("norm-preimage Newton failed to converge")
    assert level.val(level.sub(u, level.one())) > 0
    return u


def _level_precision_budget(level) -> Fraction:
    lvl = level
    while isinstance(lvl, TowerLevel):
        lvl = lvl.base
    return Fraction(lvl.ring.precision - 2)


def norm_one_unit_preimage(top, t):
    """s in the top level with N_{top/ground}(s) = t, t in 1 + M of the ground.

    Walks the tower bottom-up: each step lifts the current target through its
    own norm, then the target moves up one level.
    """
    if t.is_zero or t.valuation() != 0 or t.coeffs[0] != 1:
        raise ValueError("target must be a one-unit of the ground field")
    if isinstance(top, GroundLevel):
        return t, {"achieved_precision": t.end, "verified": True}
    chain = []
    lvl = top
    while isinstance(lvl, TowerLevel):
        chain.append(lvl)
        lvl = lvl.base
    chain.reverse()
    target = t
    for level in chain:
        target = norm_one_unit_step(level, target)
    s = target
    # verify: the norm of s down the whole tower is t to precision
    nrm = top.norm_to_ground(s)
    ground_ring = nrm.ring
    err = nrm.mul(t.inverse()).sub(ground_ring.one())
    achieved = err.value_lower_bound()
    return s, {"achieved_precision": achieved, "verified": err.is_zero}


def random_tame_tower(q: int, max_total_degree: int, rng, precision: int = 40):
    """A random chain of tame steps over GF(q)((t)) of total degree <= the bound."""
    level = make_ground(q, precision)
    total = 1
    p = GF(q).p
    steps = rng.randint(1, 2)
    for _ in range(steps):
        room = max_total_degree // total
        choices = [d for d in range(2, room + 1)]
        if not choices:
            break
        d = rng.choice(choices)
        if rng.random() < 0.5:
            fbar = _random_irreducible(level.residue_field, d, rng)
            level = extend_unramified(level, fbar)
        else:
            tame = [e for e in range(2, room + 1) if math.gcd(e, p) == 1]
            if not tame:
                continue
            e = rng.choice(tame)
            unit = level.from_ground(level.ring.scalar(rng.randrange(1, q)))
            level = extend_ramified(level, e, unit_shift=unit)
        total = level.degree_over_ground
    if isinstance(level, GroundLevel):
        fbar = _random_irreducible(level.residue_field, 2, rng)
        level = extend_unramified(level, fbar)
    return level


def _random_irreducible(field: FiniteField, degree: int, rng) -> FFPoly:
    while True:
        coeffs = [rng.randrange(field.order) for _ in range(degree)] + [1]
        f = FFPoly(field, coeffs)
        if f.is_irreducible():
            return f


def random_element(level, rng, size: int = 3):
    """A random nonzero element with small exact coefficients."""
    if isinstance(level, GroundLevel):
        while True:
            coeffs = [rng.randrange(level.ring.field.order) for _ in range(size)]
            if any(coeffs):
                out = level.ring.from_coeffs(rng.randint(-2, 2), coeffs, end=INF)
                if not out.is_zero:
                    return out
    while True:
        out = [random_element(level.base, rng, size) if rng.random() < 0.8 else level.base.zero()
               for _ in range(level.degree)]
        if not level.is_zero(out):
            return out


def graded_norm_check(level: TowerLevel, a) -> dict:
    """Compare the leading term of the norm with the graded norm of the leading term.

    The left side is computed with series determinants, the right side with
    exact residue-field arithmetic on graded pairs; equality is the defect-
    free compatibility law for one step.
    """
    lhs_series = level.norm_to_base(a)
    lhs = level.base.leading_pair(lhs_series)
    rhs = level.graded_norm_step(level.leading_pair(a))
    return {
        "match": lhs[0] == rhs[0] and lhs[1] == rhs[1],
        "series_side": lhs,
        "graded_side": rhs,
    }
