"""Twisted polynomial rings T = D[x; sigma] over finite fields.

D = GF(q^m) with sigma a power of the q-Frobenius of order ell, so the
center is K[y] with K the fixed field and y = x^ell (the twist closes up
exactly on a field, so no inner correction is needed).  Division here always
means right division: f = q*g + r with deg r < deg g.

Similarity classes of irreducibles are keyed by their central annihilator,
the minimal monic polynomial in K[y] the module T/Tp kills; over finite
coefficients two irreducibles are similar exactly when these agree, every
endomorphism ring is a field, and the class of annihilator P consists of the
irreducibles of x-degree deg_y(P).  Factorization exploits that: split off
the annihilator-P socle with a central gcd, then break isotypic pieces with
eigenring zero divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DivisorMismatchError, ZeroElementError
from .finitefield import GF, FFPoly, FiniteField, embed, embed_inverse, nullspace, solve_linear


class SkewPolyRing:
    """D[x; sigma] with D = GF(q^m) and sigma = (c -> c^(q^s))."""

    def __init__(self, q: int, m: int, s: int = 1):
        from .finitefield import prime_power_decomposition

        p, e = prime_power_decomposition(q)
        self.q = q
        self.m = m
        self.s = s % m
        self.D = GF(p, e * m)
        self.q_exp = e
        g = gcd(self.s, m) if self.s else m
        self.ell = m // g
        self.K = GF(p, e * g)
        self.n = self.ell  # index of the quotient division ring
        self._class_reps: dict = {}
        self._assert_center()

    def sigma(self, c: int, times: int = 1) -> int:
        if c == 0:
            return 0
        t = (self.s * times) % self.m
        return self.D.pow_p_power(c, self.q_exp * t)

    def embed_center(self, c: int) -> int:
        """K-element -> D-element."""
        return embed(self.K, self.D, c)

    def to_center(self, d: int) -> int:
        """D-element known to be sigma-fixed -> K-element."""
        return embed_inverse(self.D, self.K, d)

    def poly(self, coeffs) -> "SkewPoly":
        return SkewPoly(self, coeffs)

    def x(self) -> "SkewPoly":
        return SkewPoly(self, [0, 1])

    def one(self) -> "SkewPoly":
        return SkewPoly(self, [1])

    def zero(self) -> "SkewPoly":
        return SkewPoly(self, [])

    def central_to_skew(self, P: FFPoly) -> "SkewPoly":
        """P(y) as an element of T (y = x^ell)."""
        coeffs = [0] * (P.degree * self.ell + 1) if not P.is_zero else []
        for k, c in enumerate(P.coeffs):
            if c:
                coeffs[k * self.ell] = self.embed_center(c)
        return SkewPoly(self, coeffs)

    def _assert_center(self):
        y = self.central_to_skew(FFPoly(self.K, [0, 1]))
        x = self.x()
        gen = SkewPoly(self, [self.D.generator])
        assert y.mul(x) == x.mul(y), "x^ell fails to be central"
        assert y.mul(gen) == gen.mul(y), "x^ell does not commute with scalars"

    # -- D as a K-vector space -----------------------------------------------

    def d_over_k_coords(self, d: int) -> list:
        """Coordinates of d in the power basis {g_D^v} of D over K."""
        table = self._coords_table()
        digits = self.D.digits(d)
        dim_k = self.K.k
        out = []
        for v in range(self.ell):
            c = 0
            for u in range(dim_k):
                x = 0
                for t, dig in enumerate(digits):
                    if dig:
                        x = (x + dig * table[v * dim_k + u][t]) % self.D.p
                if x:
                    c = self.K.add(c, self.K.mul(x, self.K.pow(self.K.generator, u)))
            out.append(c)
        return out

    def _coords_table(self):
        if getattr(self, "_coords", None) is not None:
            return self._coords
        p = self.D.p
        dim = self.D.k
        dim_k = self.K.k
        cols = []
        for v in range(self.ell):
            gv = self.D.pow(self.D.generator, v) if v else 1
            for u in range(dim_k):
                ku = self.embed_center(self.K.pow(self.K.generator, u) if u else 1)
                cols.append(self.D.digits(self.D.mul(gv, ku)))
        # invert the dim x dim matrix over GF(p)
        mat = [[cols[j][i] for j in range(dim)] for i in range(dim)]
        prime = GF(p, 1)
        inverse = []
        for b in range(dim):
            rhs = [1 if i == b else 0 for i in range(dim)]
            sol = solve_linear(prime, mat, rhs)
            assert sol is not None, "power basis failed to span"
            inverse.append(sol)
        # inverse[b][j]: coefficient of unknown j for target digit b; we need
        # per-unknown rows over target digits
        self._coords = [[inverse[b][j] for b in range(dim)] for j in range(dim)]
        return self._coords

    def __repr__(self):
        return f"SkewPolyRing(q={self.q}, m={self.m}, s={self.s})"


class SkewPoly:
    """Twisted polynomial; coeffs[i] over D is the x^i coefficient."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SkewPolyRing, coeffs):
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def monic(self) -> "SkewPoly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale_left(self.ring.D.inv(self.lc))

    def scale_left(self, c: int) -> "SkewPoly":
        D = self.ring.D
        return SkewPoly(self.ring, [D.mul(c, a) for a in self.coeffs])

    def add(self, other: "SkewPoly") -> "SkewPoly":
        D = self.ring.D
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return SkewPoly(self.ring, [D.add(x, y) for x, y in zip(a, b)])

    def neg(self) -> "SkewPoly":
        D = self.ring.D
        return SkewPoly(self.ring, [D.neg(a) for a in self.coeffs])

    def sub(self, other: "SkewPoly") -> "SkewPoly":
        return self.add(other.neg())

    def mul(self, other: "SkewPoly") -> "SkewPoly":
        if self.is_zero or other.is_zero:
            return SkewPoly(self.ring, [])
        ring = self.ring
        D = ring.D
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = D.add(out[i + j], D.mul(a, ring.sigma(b, i)))
        return SkewPoly(ring, out)

    def right_divmod(self, g: "SkewPoly") -> tuple["SkewPoly", "SkewPoly"]:
        """f = q*g + r with deg r < deg g."""
        if g.is_zero:
            raise ZeroDivisionError("skew division by zero")
        ring = self.ring
        D = ring.D
        rem = list(self.coeffs)
        while rem and rem[-1] == 0:
            rem.pop()
        dg = g.degree
        q = [0] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg and rem:
            k = len(rem) - 1 - dg
            coef = D.mul(rem[-1], D.inv(ring.sigma(g.lc, k)))
            q[k] = coef
            for j, b in enumerate(g.coeffs):
                if b:
                    rem[k + j] = D.sub(rem[k + j], D.mul(coef, ring.sigma(b, k)))
            while rem and rem[-1] == 0:
                rem.pop()
        return SkewPoly(ring, q), SkewPoly(ring, rem)

    def mod(self, g: "SkewPoly") -> "SkewPoly":
        return self.right_divmod(g)[1]

    def gcrd(self, other: "SkewPoly") -> "SkewPoly":
        """Greatest common right divisor, monic."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.mod(b)
        return a.monic()

    def constant_remainder(self, c: int) -> int:
        """Right remainder by x - c: sum_i a_i N_i(c) with the twisted powers."""
        D = self.ring.D
        acc = 0
        npow = 1  # N_0 = 1, N_{i+1} = sigma^i(c) * N_i
        for i, a in enumerate(self.coeffs):
            if a:
                acc = D.add(acc, D.mul(a, npow))
            npow = D.mul(self.ring.sigma(c, i), npow)
        return acc

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "0"
        D = self.ring.D
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            tok = f"g^{D.dlog(c)}"
            parts.append(tok if i == 0 else f"{tok}*x^{i}")
        return " + ".join(parts)


# -- the center seen from a module -------------------------------------------


def min_central_poly(f: SkewPoly) -> FFPoly:
    """Least monic C in K[y] with C(y) in Tf: the central annihilator of T/Tf.

    Computed from the Krylov chain of right remainders of y^i modulo f, with
    linear dependence detected over K.
    """
    ring = f.ring
    K = ring.K
    if f.degree == 0:
        return FFPoly(K, [1])
    f = f.monic()
    dim = f.degree * ring.ell
    y = ring.central_to_skew(FFPoly(K, [0, 1]))

    def vec(poly: SkewPoly):
        out = []
        coeffs = list(poly.coeffs) + [0] * (f.degree - len(poly.coeffs))
        for c in coeffs[: f.degree]:
            out.extend(ring.d_over_k_coords(c))
        return out

    width = dim + 2  # combos padded to a common length
    rows = []  # echelon rows: (pivot position, vector, combination)
    power = ring.one()
    i = 0
    while True:
        v = vec(power.mod(f))
        combo = [0] * width
        combo[i] = 1
        for pivot_pos, pivot_vec, pivot_combo in rows:
            c = v[pivot_pos]
            if c:
                v = [K.sub(a, K.mul(c, b)) for a, b in zip(v, pivot_vec)]
                combo = [K.sub(a, K.mul(c, b)) for a, b in zip(combo, pivot_combo)]
        lead = next((t for t, a in enumerate(v) if a), None)
        if lead is None:
            inv = K.inv(combo[i])
            return FFPoly(K, [K.mul(inv, c) for c in combo[: i + 1]])
        inv = K.inv(v[lead])
        v = [K.mul(inv, a) for a in v]
        combo = [K.mul(inv, c) for c in combo]
        rows.append((lead, v, combo))
        power = power.mul(y)
        i += 1
        assert i <= dim + 1, "Krylov chain failed to close"


# -- eigenrings and factorization ----------------------------------------------


def _flat(ring: SkewPolyRing, poly: SkewPoly, width: int) -> list:
    """GF(p)-digit vector of a polynomial, width coefficients."""
    out = []
    coeffs = list(poly.coeffs) + [0] * (width - len(poly.coeffs))
    for c in coeffs[:width]:
        out.extend(ring.D.digits(c))
    return out


def _unflat(ring: SkewPolyRing, vec: list, width: int) -> SkewPoly:
    dim = ring.D.k
    coeffs = []
    for j in range(width):
        coeffs.append(ring.D.from_digits(vec[j * dim : (j + 1) * dim]))
    return SkewPoly(ring, coeffs)


def eigenring_basis(h: SkewPoly) -> list:
    """Basis over GF(p) of {u : deg u < deg h, h*u = 0 mod Th}.

    These are exactly the endomorphisms of T/Th (acting by right
    multiplication), composed by polynomial product modulo h.
    """
    ring = h.ring
    prime = GF(ring.D.p, 1)
    width = h.degree
    dim = ring.D.k
    cols = []
    for j in range(width):
        for d in range(dim):
            vec = [0] * (width * dim)
            vec[j * dim + d] = 1
            u = _unflat(ring, vec, width)
            image = h.mul(u).mod(h)
            cols.append(_flat(ring, image, width))
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(width * dim)]
    basis = nullspace(prime, rows)
    return [_unflat(ring, v, width) for v in basis]


def _kernel_generator(h: SkewPoly, u: SkewPoly):
    """Minimal-degree monic v != 0 with v*u = 0 mod Th, or None if u is invertible.

    Such a v generates the kernel of the endomorphism u of T/Th and is
    therefore a right divisor of h.
    """
    ring = h.ring
    prime = GF(ring.D.p, 1)
    dim = ring.D.k
    for dv in range(1, h.degree):
        width = dv + 1
        cols = []
        for j in range(width):
            for d in range(dim):
                vec = [0] * (width * dim)
                vec[j * dim + d] = 1
                v = _unflat(ring, vec, width)
                cols.append(_flat(ring, v.mul(u).mod(h), h.degree))
        rows = [[cols[c][r] for c in range(len(cols))] for r in range(h.degree * dim)]
        sols = nullspace(prime, rows)
        best = None
        for s in sols:
            v = _unflat(ring, s, width)
            if v.is_zero:
                continue
            key = (v.degree, v.monic().coeffs)
            if best is None or key < best[0]:
                best = (key, v.monic())
        if best is not None:
            return best[1]
    return None


def _endo_min_poly(h: SkewPoly, u: SkewPoly) -> FFPoly:
    """Minimal polynomial over K of the endomorphism u of T/Th."""
    ring = h.ring
    K = ring.K
    dim = h.degree * ring.ell

    def vec(poly):
        out = []
        coeffs = list(poly.coeffs) + [0] * (h.degree - len(poly.coeffs))
        for c in coeffs[: h.degree]:
            out.extend(ring.d_over_k_coords(c))
        return out

    width = dim + 2
    rows = []
    power = ring.one()
    i = 0
    while True:
        v = vec(power.mod(h))
        combo = [0] * width
        combo[i] = 1
        for pivot_pos, pivot_vec, pivot_combo in rows:
            c = v[pivot_pos]
            if c:
                v = [K.sub(a, K.mul(c, b)) for a, b in zip(v, pivot_vec)]
                combo = [K.sub(a, K.mul(c, b)) for a, b in zip(combo, pivot_combo)]
        lead = next((t for t, a in enumerate(v) if a), None)
        if lead is None:
            inv = K.inv(combo[i])
            return FFPoly(K, [K.mul(inv, c) for c in combo[: i + 1]])
        inv = K.inv(v[lead])
        rows.append((lead, [K.mul(inv, a) for a in v], [K.mul(inv, c) for c in combo]))
        power = power.mul(u).mod(h)
        i += 1
        assert i <= dim + 1, "endomorphism Krylov chain failed to close"


def _evaluate_endo_poly(h: SkewPoly, u: SkewPoly, poly: FFPoly) -> SkewPoly:
    """poly(u) inside the eigenring of h (composition = product mod h)."""
    ring = h.ring
    acc = ring.zero()
    power = ring.one()
    for c in poly.coeffs:
        if c:
            acc = acc.add(power.scale_left(ring.embed_center(c)))
        power = power.mul(u).mod(h)
    return acc.mod(h)


def split_isotypic(h: SkewPoly, P: FFPoly) -> list:
    """Factor a monic h with T/Th killed by the irreducible central P.

    Such a module is semisimple isotypic; irreducible factors all have
    x-degree deg(P).  Zero divisors of the endomorphism ring split it.
    """
    e = P.degree
    if h.degree == e:
        return [h]
    assert h.degree % e == 0
    ring = h.ring
    basis = eigenring_basis(h)
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append(basis[i].add(basis[j]))
    for u in candidates:
        u = u.mod(h)
        if u.is_zero:
            continue
        mu = _endo_min_poly(h, u)
        factors = mu.factor()
        if len(factors) == 1 and factors[0][1] == 1:
            continue  # u generates a field; try the next one
        A = factors[0][0]
        w = _evaluate_endo_poly(h, u, A)
        if w.is_zero:
            continue
        g = _kernel_generator(h, w)
        if g is None or not (0 < g.degree < h.degree):
            continue
        h2, r = h.right_divmod(g)
        assert r.is_zero, "kernel generator must right-divide"
        return split_isotypic(h2.monic(), P) + split_isotypic(g, P)
    raise AssertionError("isotypic module admitted no zero divisor")


def factor_skew(f: SkewPoly):
    """(unit, factors): f = unit * factors[0] * ... * factors[-1], all monic irreducible."""
    if f.is_zero:
        raise ZeroElementError("cannot factor zero")
    ring = f.ring
    unit = f.lc
    fm = f.monic()
    if fm.degree == 0:
        return unit, []
    mu = min_central_poly(fm)
    plist = [P for P, _ in mu.factor()]
    chunks = []
    while fm.degree > 0:
        progressed = False
        for P in plist:
            while fm.degree > 0:
                h = fm.gcrd(ring.central_to_skew(P))
                if h.degree == 0:
                    break
                parts = split_isotypic(h, P)
                w, r = fm.right_divmod(h)
                assert r.is_zero
                chunks.append(parts)
                fm = w.monic() if not w.is_monic else w
                progressed = True
        assert progressed, "no class peeled a factor"
    factors = []
    for chunk in reversed(chunks):
        factors.extend(chunk)
    check = ring.poly([unit])
    for p in factors:
        check = check.mul(p)
    assert check == f, "refactored product does not match"
    return unit, factors


def is_irreducible_skew(f: SkewPoly) -> bool:
    if f.degree < 1:
        return False
    return len(factor_skew(f)[1]) == 1


# -- divisors -------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleClassLabel:
    """Canonical label of a similarity class: the central annihilator over K."""

    ann: tuple  # coefficients of the monic irreducible P in K[y]

    def degree(self) -> int:
        return len(self.ann) - 1

    def format(self, K: FiniteField) -> str:
        return FFPoly(K, list(self.ann)).format("y")


class Divisor:
    """Formal Z-combination of simple classes, keyed by annihilator labels."""

    __slots__ = ("classes", "side")

    def __init__(self, classes=None, side: str = "T"):
        self.classes = {k: v for k, v in (classes or {}).items() if v}
        self.side = side

    def add(self, other: "Divisor") -> "Divisor":
        out = dict(self.classes)
        for k, v in other.classes.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out, self.side)

    def neg(self) -> "Divisor":
        return Divisor({k: -v for k, v in self.classes.items()}, self.side)

    def sub(self, other: "Divisor") -> "Divisor":
        return self.add(other.neg())

    def scale(self, c: int) -> "Divisor":
        return Divisor({k: c * v for k, v in self.classes.items()}, self.side)

    @property
    def is_zero(self) -> bool:
        return not self.classes

    def total_degree(self) -> int:
        return sum(m * k.degree() for k, m in self.classes.items())

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.classes == other.classes
            and self.side == other.side
        )

    def __repr__(self):
        inner = ", ".join(f"{k.ann}:{v}" for k, v in sorted(self.classes.items(), key=lambda t: t[0].ann))
        return f"Divisor[{self.side}]({inner})"

    def to_json(self, K: FiniteField) -> list:
        items = sorted(self.classes.items(), key=lambda t: (t[0].degree(), t[0].ann))
        return [{"class_label": k.format(K), "multiplicity": v} for k, v in items]


def annihilator_label(p: SkewPoly) -> SimpleClassLabel:
    P = min_central_poly(p.monic())
    assert P.is_irreducible(), "annihilator of an irreducible must be irreducible"
    return SimpleClassLabel(P.coeffs)


def divisor(f: SkewPoly) -> Divisor:
    """Composition-series divisor of T/Tf via factorization and classing."""
    if f.is_zero:
        raise ZeroElementError("divisor of zero")
    _, factors = factor_skew(f)
    out: dict = {}
    for p in factors:
        label = annihilator_label(p)
        out[label] = out.get(label, 0) + 1
    return Divisor(out, "T")


def _y_action_matrix(f: SkewPoly):
    """Matrix over K of multiplication by y on T/Tf (columns = images)."""
    ring = f.ring
    K = ring.K
    df = f.degree
    dim = df * ring.ell
    g_pows = [ring.D.pow(ring.D.generator, v) if v else 1 for v in range(ring.ell)]
    cols = []
    reduced = []
    for j in range(df):
        xp = SkewPoly(ring, [0] * (ring.ell + j) + [1]).mod(f)
        reduced.append(xp)
    for j in range(df):
        for v in range(ring.ell):
            image = reduced[j].scale_left(g_pows[v])
            col = []
            coeffs = list(image.coeffs) + [0] * (df - len(image.coeffs))
            for c in coeffs[:df]:
                col.extend(ring.d_over_k_coords(c))
            cols.append(col)
    return [[cols[c][r] for c in range(dim)] for r in range(dim)]


def divisor_via_module(f: SkewPoly) -> Divisor:
    """Independent oracle for the divisor: primary dimension counts of the
    y-action, never touching the skew factorization."""
    ring = f.ring
    K = ring.K
    fm = f.monic()
    if fm.degree == 0:
        return Divisor({}, "T")
    A = _y_action_matrix(fm)
    dim = len(A)
    mu = min_central_poly(fm)
    out = {}
    for P, _ in mu.factor():
        B = _eval_matrix_poly(K, A, P)
        C = B
        prev = -1
        kdim = _nullity(K, C)
        while kdim != prev:
            prev = kdim
            C = _mat_mul_ff(K, C, B)
            kdim = _nullity(K, C)
        m_P, rem = divmod(kdim, P.degree * ring.ell)
        assert rem == 0, "primary block dimension must be divisible"
        if m_P:
            out[SimpleClassLabel(P.coeffs)] = m_P
    return Divisor(out, "T")


def _mat_mul_ff(K: FiniteField, a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            c = a[i][k]
            if c:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] = K.add(out[i][j], K.mul(c, b[k][j]))
    return out


def _eval_matrix_poly(K: FiniteField, A, P: FFPoly):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    power = ident
    for c in P.coeffs:
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] = K.add(out[i][j], K.mul(c, power[i][j]))
        power = _mat_mul_ff(K, power, A)
    return out


def _nullity(K: FiniteField, mat) -> int:
    return len(nullspace(K, mat))


# -- similarity ------------------------------------------------------------------


def similar(f: SkewPoly, g: SkewPoly):
    """Witness (s, t) with f*s = t*g, deg s = deg t < deg f, or None.

    For monic irreducibles of equal degree a nonzero witness is exactly an
    isomorphism T/Tf = T/Tg.
    """
    if f.degree != g.degree or f.degree < 1:
        return None
    ring = f.ring
    if f == g:
        return ring.one(), ring.one()
    prime = GF(ring.D.p, 1)
    dim = ring.D.k
    width = f.degree  # deg s, t <= deg f - 1
    total = 2 * f.degree + 1
    cols = []
    for j in range(width):
        for d in range(dim):
            vec = [0] * (width * dim)
            vec[j * dim + d] = 1
            s = _unflat(ring, vec, width)
            cols.append(_flat(ring, f.mul(s), total))
    for j in range(width):
        for d in range(dim):
            vec = [0] * (width * dim)
            vec[j * dim + d] = 1
            t = _unflat(ring, vec, width)
            cols.append(_flat(ring, t.mul(g).neg(), total))
    rows = [[cols[c][r] for c in range(len(cols))] for r in range(total * dim)]
    sols = nullspace(prime, rows)
    best = None
    for sol in sols:
        s = _unflat(ring, sol[: width * dim], width)
        t = _unflat(ring, sol[width * dim :], width)
        if s.is_zero:
            continue
        key = (s.degree, s.coeffs, t.coeffs)
        if best is None or key < best[0]:
            best = (key, s, t)
    if best is None:
        return None
    s, t = best[1], best[2]
    assert f.mul(s) == t.mul(g)
    assert s.degree == t.degree < f.degree
    return s, t


# -- kernel reduction -------------------------------------------------------------


@dataclass
class ReductionMove:
    """One degree-lowering rewrite: replace p q^{-1} by t s^{-1} using p s = t q."""

    unit_f: int
    p: SkewPoly
    f1_factors: list
    unit_g: int
    g_left: list
    q: SkewPoly
    g_right: list
    s: SkewPoly
    t: SkewPoly
    f_after: SkewPoly
    g_after: SkewPoly


def reduce_kernel_element(f: SkewPoly, g: SkewPoly):
    """Reduce a divisor-matched fraction f g^{-1} to a scalar, with a certificate.

    Implements the degree-reduction loop: peel the leftmost irreducible of
    the numerator, match a similar factor in the denominator, and replace the
    matched pair through the similarity witness.  Each move is an equality
    modulo the commutator subgroup of the quotient division ring; the moves
    are recorded so the whole run can be replayed and checked step by step.
    """
    if f.is_zero or g.is_zero:
        raise ZeroElementError("kernel reduction needs nonzero polynomials")
    if divisor(f) != divisor(g):
        raise DivisorMismatchError("divisors differ; fraction is not in the kernel")
    ring = f.ring
    moves = []
    while f.degree > 0:
        unit_f, pf = factor_skew(f)
        p, f1_factors = pf[0], pf[1:]
        unit_g, pg = factor_skew(g)
        split_at = None
        witness = None
        for idx, cand in enumerate(pg):
            w = similar(p, cand)
            if w is not None:
                split_at, witness = idx, w
                break
        assert split_at is not None, "matched divisors must share a similarity class"
        s, t = witness
        q = pg[split_at]
        g_left, g_right = pg[:split_at], pg[split_at + 1 :]
        new_f = ring.poly([unit_f])
        for part in f1_factors:
            new_f = new_f.mul(part)
        new_f = new_f.mul(t)
        new_g = ring.poly([unit_g])
        for part in g_left + g_right:
            new_g = new_g.mul(part)
        new_g = new_g.mul(s)
        assert new_f.degree < f.degree, "numerator degree must strictly drop"
        assert new_f.degree == new_g.degree
        moves.append(
            ReductionMove(unit_f, p, f1_factors, unit_g, g_left, q, g_right, s, t, new_f, new_g)
        )
        f, g = new_f, new_g
    d = ring.D.mul(f.coeffs[0], ring.D.inv(g.coeffs[0]))
    return d, moves


def verify_reduction_certificate(f: SkewPoly, g: SkewPoly, d: int, moves) -> bool:
    """Replay every move of a reduction transcript against the exact identities."""
    ring = f.ring
    cur_f, cur_g = f, g
    for mv in moves:
        rebuilt_f = ring.poly([mv.unit_f]).mul(mv.p)
        for part in mv.f1_factors:
            rebuilt_f = rebuilt_f.mul(part)
        if rebuilt_f != cur_f:
            return False
        rebuilt_g = ring.poly([mv.unit_g])
        for part in mv.g_left:
            rebuilt_g = rebuilt_g.mul(part)
        rebuilt_g = rebuilt_g.mul(mv.q)
        for part in mv.g_right:
            rebuilt_g = rebuilt_g.mul(part)
        if rebuilt_g != cur_g:
            return False
        if mv.p.mul(mv.s) != mv.t.mul(mv.q):
            return False
        expected_f = ring.poly([mv.unit_f])
        for part in mv.f1_factors:
            expected_f = expected_f.mul(part)
        expected_f = expected_f.mul(mv.t)
        expected_g = ring.poly([mv.unit_g])
        for part in mv.g_left + mv.g_right:
            expected_g = expected_g.mul(part)
        expected_g = expected_g.mul(mv.s)
        if expected_f != mv.f_after or expected_g != mv.g_after:
            return False
        if mv.f_after.degree >= cur_f.degree:
            return False
        cur_f, cur_g = mv.f_after, mv.g_after
    if cur_f.degree != 0 or cur_g.degree != 0:
        return False
    D = ring.D
    return D.mul(cur_f.coeffs[0], D.inv(cur_g.coeffs[0])) == d


# -- reduced norms on divisors -------------------------------------------------


def nrd_element(f: SkewPoly) -> FFPoly:
    """Reduced norm of f as an element of K[y], via the splitting representation.

    Q splits over the maximal subfield D(y); left multiplication by f on the
    right-D(y) basis {1, x, ..., x^{ell-1}} has an ell x ell matrix over D[y]
    whose determinant is the reduced norm.
    """
    ring = f.ring
    D = ring.D
    ell = ring.ell
    zero = FFPoly(D, [])
    mat = [[zero for _ in range(ell)] for _ in range(ell)]
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        for j in range(ell):
            a, t = divmod(i + j, ell)
            entry = [0] * (a + 1)
            entry[a] = ring.sigma(c, -t)
            mat[t][j] = mat[t][j].add(FFPoly(D, entry))
    det = _ffpoly_det(D, mat)
    coeffs = []
    for c in det.coeffs:
        assert ring.sigma(c) == c, "norm coefficients must be sigma-fixed"
        coeffs.append(ring.to_center(c))
    return FFPoly(ring.K, coeffs)


def _ffpoly_det(field: FiniteField, mat) -> FFPoly:
    n = len(mat)
    if n == 0:
        return FFPoly(field, [1])
    if n == 1:
        return mat[0][0]
    out = FFPoly(field, [])
    sign_neg = False
    for j in range(n):
        entry = mat[0][j]
        if entry.is_zero:
            sign_neg = not sign_neg
            continue
        minor = [[mat[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = entry.mul(_ffpoly_det(field, minor))
        if sign_neg:
            term = term.scale(field.neg(1))
        out = out.add(term)
        sign_neg = not sign_neg
    return out


def central_divisor(ring: SkewPolyRing, C: FFPoly) -> Divisor:
    """Divisor over R = K[y] of a central polynomial: its prime factorization."""
    out = {}
    for P, mult in C.factor():
        out[SimpleClassLabel(P.coeffs)] = mult
    return Divisor(out, "R")


def class_representative(ring: SkewPolyRing, label: SimpleClassLabel) -> SkewPoly:
    """A monic irreducible with the given annihilator (deterministic, cached)."""
    cached = ring._class_reps.get(label)
    if cached is not None:
        return cached
    P = FFPoly(ring.K, list(label.ann))
    parts = split_isotypic(ring.central_to_skew(P).monic(), P)
    rep = min(parts, key=lambda p: p.coeffs)
    ring._class_reps[label] = rep
    return rep


def nrd_divisor(ring: SkewPolyRing, d: Divisor) -> Divisor:
    """Reduced-norm map Div(T) -> Div(R): [S_P] -> n_S [R/P], by dimension counts."""
    out = {}
    for label, mult in d.classes.items():
        n_s = _class_norm_multiplicity(ring, label)
        out[label] = out.get(label, 0) + mult * n_s
    return Divisor(out, "R")


def _class_norm_multiplicity(ring: SkewPolyRing, label: SimpleClassLabel) -> int:
    """n_S from dimension counts: T/ann(S) is a matrix ring over End(S).

    The class of x is special (its annihilator is Tx, strictly above T*y),
    so everything is measured from the representative rather than assumed
    from the generic matrix picture.
    """
    e = label.degree()
    rep = class_representative(ring, label)
    dim_p_s = rep.degree * ring.D.k
    endo_dim_p = len(eigenring_basis(rep))
    k_size, rem = divmod(dim_p_s, endo_dim_p)
    assert rem == 0, "simple module dimension must be a multiple of End"
    delta_dim_rp, rem = divmod(endo_dim_p, ring.K.k * e)
    assert rem == 0, "endomorphism field must contain the central residue"
    dim_rp_tm = k_size * k_size * delta_dim_rp
    n_s, rem = divmod(dim_rp_tm, ring.n * k_size)
    assert rem == 0, "norm multiplicity must be integral"
    # End(S) is a finite division ring, hence a field of index 1
    assert n_s == 1, "finite coefficients force norm multiplicity ind(T/M) = 1"
    return n_s


def restriction_divisor(ring: SkewPolyRing, d: Divisor) -> Divisor:
    """Plain restriction Div(T) -> Div(R): view a simple module over the center."""
    out = {}
    for label, mult in d.classes.items():
        e = label.degree()
        rep = class_representative(ring, label)
        value, rem = divmod(rep.degree * ring.ell, e)
        assert rem == 0
        out[label] = out.get(label, 0) + mult * value
    return Divisor(out, "R")


def scalar_extension_divisor(ring: SkewPolyRing, d: Divisor) -> Divisor:
    """rho: Div(R) -> Div(T), [R/P] -> divisor of P(y) in T."""
    out = Divisor({}, "T")
    for label, mult in d.classes.items():
        P = FFPoly(ring.K, list(label.ann))
        out = out.add(divisor(ring.central_to_skew(P)).scale(mult))
    return out


# -- text format ------------------------------------------------------------------


def format_skew(f: SkewPoly) -> str:
    """`g^a*x^k + ...` with coefficients as discrete logs of the field generator."""
    return repr(f)


def parse_skew(ring: SkewPolyRing, text: str) -> SkewPoly:
    text = text.strip()
    if text == "0":
        return ring.zero()
    coeffs: dict = {}
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            continue
        if "*" in term:
            coef_tok, _, pow_tok = term.partition("*")
            if not pow_tok.startswith("x"):
                raise ValueError(f"bad term {term!r}")
            k = 1 if pow_tok == "x" else int(pow_tok.split("^")[1])
        else:
            coef_tok, k = term, 0
        coef_tok = coef_tok.strip()
        if coef_tok.startswith("g^"):
            c = ring.D.exp(int(coef_tok[2:]))
        elif coef_tok == "g":
            c = ring.D.generator
        elif coef_tok.startswith("x"):
            c = 1
            k = 1 if coef_tok == "x" else int(coef_tok.split("^")[1])
        else:
            c = int(coef_tok) % ring.D.p if ring.D.k == 1 else int(coef_tok)
        coeffs[k] = ring.D.add(coeffs.get(k, 0), c)
    width = max(coeffs) + 1 if coeffs else 0
    return SkewPoly(ring, [coeffs.get(i, 0) for i in range(width)])
