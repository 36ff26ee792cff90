"""Matrices over a truncated twisted Laurent-series division ring.

The ring C = GF(q^ell)((x; sigma)) is handled at fixed working precision;
weights gamma_i cut out the subring R (entries valued at least gamma_i -
gamma_j), its ideal J (strictly), and the congruence neighborhood 1+J whose
row reduction never leaves it.  Determinant claims are never normalized
modulo commutators; they are downgraded to the two computable invariants
that survive the quotient: the valuation and the reduced norm of the leading
term, the latter evaluated in the associated rank-one graded ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PrecisionExhaustedError, SplittingBaseError, ZeroElementError
from .finitefield import GF, prime_power_decomposition
from .monomial import GradedElement, MonomialGradedRing, reduced_norm

INF = math.inf


class TwistedSeriesRing:
    """GF(q^ell)((x; sigma)) truncated; sigma = (c -> c^(q^s)), commutative when s = 0."""

    def __init__(self, q: int, ell: int, s: int = 1, precision: int = 24):
        p, e = prime_power_decomposition(q)
        self.q = q
        self.ell = ell
        self.s = s % ell if ell > 1 else 0
        self.C = GF(p, e * ell)
        self.q_exp = e
        self.precision = precision
        # leading terms live in the rank-one monomial graded ring over the same data
        self.graded = MonomialGradedRing(
            q, ell, 1, sigma=[self.s], r=[self._twist_order()], b=[1], u=[[1]]
        )

    def _twist_order(self) -> int:
        if self.s == 0:
            return 1
        o = 1
        acc = self.s % self.ell
        while acc % self.ell:
            acc += self.s
            o += 1
        return o

    def sigma(self, c: int, times: int = 1) -> int:
        if c == 0:
            return 0
        t = (self.s * times) % self.ell
        return self.C.pow_p_power(c, self.q_exp * t)

    def zero(self, end=None):
        return TwistedSeries(self, None, (), self.precision if end is None else end)

    def exact_zero(self):
        return TwistedSeries(self, None, (), INF)

    def one(self):
        return TwistedSeries(self, 0, (1,), INF)

    def scalar(self, c: int):
        return TwistedSeries(self, 0, (c,), INF) if c else self.exact_zero()

    def x_power(self, k: int, c: int = 1):
        return TwistedSeries(self, k, (c,), INF) if c else self.exact_zero()

    def from_coeffs(self, val: int, coeffs, end=None):
        return TwistedSeries(self, val, tuple(coeffs), val + len(coeffs) if end is None else end)

    def random_element(self, rng, val_range=(0, 3), length=None):
        length = length or self.precision
        val = rng.randint(*val_range)
        coeffs = [rng.randrange(1, self.C.order)] + [
            rng.randrange(self.C.order) for _ in range(length - 1)
        ]
        return TwistedSeries(self, val, coeffs, val + length)

    def __repr__(self):
        return f"TwistedSeriesRing(GF({self.C.order}), s={self.s}, prec={self.precision})"


class TwistedSeries:
    """Sum of c_j x^j on [val, end) with x c = sigma(c) x."""

    __slots__ = ("ring", "val", "coeffs", "end")

    def __init__(self, ring, val, coeffs, end):
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = None
        if val is not None and val + len(coeffs) > end:
            keep = int(end) - val
            coeffs = coeffs[:keep]
            if not coeffs:
                val = None
        self.ring = ring
        self.val = val
        self.coeffs = tuple(coeffs)
        self.end = end

    @property
    def is_zero(self) -> bool:
        return self.val is None

    def w(self):
        """Valuation; None for zero-to-precision."""
        return self.val

    def w_lower_bound(self):
        return self.end if self.val is None else self.val

    def leading_graded(self) -> GradedElement:
        if self.val is None:
            raise ZeroElementError("leading term of zero")
        return self.ring.graded.monomial(self.coeffs[0], (self.val,))

    def add(self, other):
        F = self.ring.C
        end = min(self.end, other.end)
        if self.val is None and other.val is None:
            return TwistedSeries(self.ring, None, (), end)
        lo = min(x for x in (self.val, other.val) if x is not None)
        width = max(int(min(end, max(
            (self.val + len(self.coeffs)) if self.val is not None else lo,
            (other.val + len(other.coeffs)) if other.val is not None else lo,
        )) - lo), 0)
        out = [0] * width
        for src in (self, other):
            if src.val is None:
                continue
            for i, c in enumerate(src.coeffs):
                k = src.val + i - lo
                if 0 <= k < width:
                    out[k] = F.add(out[k], c)
        return TwistedSeries(self.ring, lo, out, end)

    def neg(self):
        F = self.ring.C
        return TwistedSeries(self.ring, self.val, tuple(F.neg(c) for c in self.coeffs), self.end)

    def sub(self, other):
        return self.add(other.neg())

    def mul(self, other):
        ring = self.ring
        F = ring.C
        if self.val is None or other.val is None:
            a_bound = self.end if self.val is None else self.val
            b_bound = other.end if other.val is None else other.val
            return TwistedSeries(ring, None, (), a_bound + b_bound)
        end = min(self.val + other.end, other.val + self.end)
        width = max(int(min(end - self.val - other.val, len(self.coeffs) + len(other.coeffs) - 1)), 0)
        out = [0] * width
        for i, a in enumerate(self.coeffs):
            if a:
                twist = self.val + i
                for j, b in enumerate(other.coeffs):
                    if b and i + j < width:
                        out[i + j] = F.add(out[i + j], F.mul(a, ring.sigma(b, twist)))
        return TwistedSeries(ring, self.val + other.val, out, end)

    def inverse(self):
        """Twisted geometric series; exact monomials invert exactly."""
        if self.val is None:
            raise PrecisionExhaustedError("cannot invert a zero-to-precision element")
        ring = self.ring
        F = ring.C
        v = self.val
        if len(self.coeffs) == 1 and self.end == INF:
            c_inv = F.inv(ring.sigma(self.coeffs[0], -v))
            return TwistedSeries(ring, -v, (c_inv,), INF)
        rel = self.end - v
        if rel == INF:
            rel = ring.precision
        width = int(rel)
        # solve (sum b_k x^{k-v}) * self = 1 coefficient by coefficient
        a = list(self.coeffs[:width]) + [0] * max(width - len(self.coeffs), 0)
        b = [0] * width
        # b_0 x^{-v} * a_0 x^{v}: b_0 sigma^{-v}(a_0) = 1
        b[0] = F.inv(ring.sigma(a[0], -v))
        for k in range(1, width):
            acc = 0
            for i in range(1, k + 1):
                if i < len(a) and a[i] and b[k - i]:
                    acc = F.add(acc, F.mul(b[k - i], ring.sigma(a[i], k - i - v)))
            b[k] = F.neg(F.mul(acc, F.inv(ring.sigma(a[0], k - v))))
        return TwistedSeries(ring, -v, b, -v + rel)

    def truncate(self, end):
        return TwistedSeries(self.ring, self.val, self.coeffs, min(self.end, end))

    def known_equal(self, other) -> bool:
        return self.sub(other).is_zero

    def is_one_unit(self) -> bool:
        """In 1 + (positive valuation): certified."""
        diff = self.sub(self.ring.one())
        return diff.is_zero or diff.val > 0

    def __eq__(self, other):
        return (
            isinstance(other, TwistedSeries)
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.end == other.end
        )

    def __repr__(self):
        prec = "inf" if self.end == INF else str(int(self.end))
        if self.val is None:
            return f"0 [prec={prec}]"
        inner = " + ".join(
            (f"{c}" if i + self.val == 0 else f"{c}*x^{i + self.val}")
            for i, c in enumerate(self.coeffs)
            if c
        )
        return f"({inner}) [prec={prec}]"


# -- weighted matrices ----------------------------------------------------------

IN_R = "InR"
IN_J = "InJ"
IN_ONE_PLUS_J = "InOnePlusJ"
OUTSIDE = "Outside"


class WeightedMatrixRing:
    """ell x ell matrices with weight thresholds gamma_i."""

    def __init__(self, ring: TwistedSeriesRing, weights):
        self.ring = ring
        self.weights = list(weights)
        self.size = len(self.weights)

    def zero_matrix(self):
        return [[self.ring.exact_zero() for _ in range(self.size)] for _ in range(self.size)]

    def identity(self):
        out = self.zero_matrix()
        for i in range(self.size):
            out[i][i] = self.ring.one()
        return out

    def mat_mul(self, a, b):
        n = self.size
        out = self.zero_matrix()
        for i in range(n):
            for k in range(n):
                if a[i][k].is_zero and a[i][k].end == INF:
                    continue
                for j in range(n):
                    out[i][j] = out[i][j].add(a[i][k].mul(b[k][j]))
        return out

    def mat_sub_identity(self, m):
        out = [row[:] for row in m]
        for i in range(self.size):
            out[i][i] = out[i][i].sub(self.ring.one())
        return out

    def _entry_at_least(self, entry, bound) -> bool:
        """Certified w(entry) >= bound."""
        if entry.val is not None:
            return entry.val >= bound
        if entry.end > bound:
            return True
        raise PrecisionExhaustedError(
            f"cannot certify weight bound {bound} at precision {entry.end}"
        )

    def _entry_above(self, entry, bound) -> bool:
        if entry.val is not None:
            return entry.val > bound
        if entry.end > bound:
            return True
        raise PrecisionExhaustedError(
            f"cannot certify strict weight bound {bound} at precision {entry.end}"
        )

    def membership(self, m) -> str:
        """Classification by the certified weight inequalities.

        An entry that is zero to a precision beyond its threshold counts as
        satisfying the strict bound; an uncertifiable inequality raises.
        """
        in_j = True
        in_r = True
        for i in range(self.size):
            for j in range(self.size):
                bound = self.weights[i] - self.weights[j]
                if not self._entry_at_least(m[i][j], bound):
                    return OUTSIDE
                if in_j and not self._entry_above(m[i][j], bound):
                    in_j = False
        if in_j:
            return IN_J
        shifted = self.mat_sub_identity(m)
        try:
            for i in range(self.size):
                for j in range(self.size):
                    bound = self.weights[i] - self.weights[j]
                    if not self._entry_above(shifted[i][j], bound):
                        return IN_R
        except PrecisionExhaustedError:
            return IN_R
        return IN_ONE_PLUS_J

    def reduce_one_plus_J(self, m):
        """Row-reduce a 1+J matrix to upper triangular form inside 1+J.

        Returns (triangular, transcript) where transcript lists the unipotent
        lower-triangular matrices Y_k applied left to right; every Y_k and
        every intermediate product is certified to stay in 1+J, and the
        final diagonal consists of one-units.
        """
        if self.membership(m) != IN_ONE_PLUS_J:
            raise ValueError("reduction requires a matrix in 1+J")
        n = self.size
        cur = [row[:] for row in m]
        transcript = []
        for k in range(n - 1):
            y = self.identity()
            pivot_inv = cur[k][k].inverse()
            for i in range(k + 1, n):
                if cur[i][k].is_zero and cur[i][k].end == INF:
                    continue
                y[i][k] = cur[i][k].mul(pivot_inv).neg()
            assert self.membership(y) == IN_ONE_PLUS_J, "elementary matrix left 1+J"
            cur = self.mat_mul(y, cur)
            assert self.membership(cur) == IN_ONE_PLUS_J, "intermediate left 1+J"
            transcript.append(y)
        for i in range(self.size):
            assert cur[i][i].is_one_unit(), "diagonal entry is not a one-unit"
        return cur, transcript


# -- determinant invariants -------------------------------------------------------


@dataclass
class DeterminantInvariants:
    """The two commutator-stable determinant invariants we can evaluate."""

    valuation: int
    leading_norm: GradedElement

    def __eq__(self, other):
        return (
            isinstance(other, DeterminantInvariants)
            and self.valuation == other.valuation
            and self.leading_norm == other.leading_norm
        )


def element_invariants(ring: TwistedSeriesRing, elt: TwistedSeries) -> DeterminantInvariants:
    lead = elt.leading_graded()
    return DeterminantInvariants(elt.w(), reduced_norm(lead, ring.graded))


def product_invariants(ring: TwistedSeriesRing, factors, extra_sign: int = 0) -> DeterminantInvariants:
    total_val = 0
    nrd = ring.graded.one()
    for f in factors:
        lead = f.leading_graded()
        total_val += f.w()
        nrd = nrd * reduced_norm(lead, ring.graded)
    if extra_sign % 2:
        minus = ring.graded.scalar(ring.C.neg(1))
        nrd = nrd * reduced_norm(minus, ring.graded)
    return DeterminantInvariants(total_val, nrd)


def ddet_invariants(ring: TwistedSeriesRing, matrix) -> DeterminantInvariants:
    """Dieudonne determinant through row reduction, reported as invariants.

    Row operations with unipotent elementary matrices do not move the class;
    a row swap contributes a factor -1.  The result is the diagonal product's
    invariant pair.
    """
    n = len(matrix)
    m = [row[:] for row in matrix]
    swaps = 0
    for col in range(n):
        pivot = None
        pivot_val = None
        for r in range(col, n):
            if m[r][col].is_zero:
                continue
            v = m[r][col].w()
            if pivot is None or v < pivot_val:
                pivot, pivot_val = r, v
        if pivot is None:
            raise ZeroElementError("matrix is singular to precision")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            swaps += 1
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if not m[r][col].is_zero:
                f = m[r][col].mul(inv)
                m[r] = [a.sub(f.mul(b)) for a, b in zip(m[r], m[col])]
    return product_invariants(ring, [m[i][i] for i in range(n)], extra_sign=swaps)


def ddet_diagonal_consistency(ring: TwistedSeriesRing, a: TwistedSeries, ell: int) -> dict:
    """Check that the determinant of diag(a, ..., a) matches a^ell invariantly."""
    if a.is_zero:
        raise ZeroElementError("needs a nonzero element")
    mat = [[ring.exact_zero() for _ in range(ell)] for _ in range(ell)]
    for i in range(ell):
        mat[i][i] = a
    got = ddet_invariants(ring, mat)
    power = ring.one()
    for _ in range(ell):
        power = power.mul(a)
    want = element_invariants(ring, power)
    return {
        "match": got == want,
        "valuation": got.valuation,
        "expected_valuation": want.valuation,
        "leading_norm": repr(got.leading_norm),
        "expected_leading_norm": repr(want.leading_norm),
    }


# -- the splitting-base model -------------------------------------------------------


def verify_splitting_base(ring: TwistedSeriesRing, base):
    """Exact test of the min-of-values law for a left-coefficient base.

    Coefficients range over the centralizer C = GF(q^ell)((x^ell)), whose
    value group is ell*Z and whose residue field is all of GF(q^ell).  A
    scalar multiple of a base vector can therefore reach every leading
    coefficient at every value in its class, so two base vectors sharing a
    value class always admit a cancelling combination; the law holds for
    every tuple exactly when the base values are pairwise distinct mod ell.
    """
    vals = []
    for b in base:
        if b.is_zero:
            raise SplittingBaseError("zero base element cannot split the valuation")
        vals.append(b.w())
    seen = {}
    for idx, v in enumerate(vals):
        cls = v % ring.ell
        if cls in seen:
            raise SplittingBaseError(
                f"base elements {seen[cls]} and {idx} share the value class {cls} (mod {ring.ell})"
            )
        seen[cls] = idx
    return vals


def multiplication_matrix(ring: TwistedSeriesRing, m_elt: TwistedSeries):
    """Matrix over the centralizer of right multiplication by m_elt on the
    canonical base {1, x, ..., x^{ell-1}}.

    The centralizer of the maximal unramified subfield is GF(q^ell)((x^ell));
    its elements are represented as twist-free series supported on exponent
    multiples of ell, so valuations stay in the same units as the weights.
    """
    ell = ring.ell
    cring = TwistedSeriesRing(ring.q, ring.ell, 0, precision=ring.precision)
    rows = []
    for i in range(ell):
        bi = ring.x_power(i)
        image = bi.mul(m_elt)
        row = [cring.zero(end=image.end - j if image.end != INF else INF) for j in range(ell)]
        if not image.is_zero:
            buckets: dict = {}
            for idx, c in enumerate(image.coeffs):
                k = image.val + idx
                buckets.setdefault(k % ell, []).append((k, c))
            for j in range(ell):
                terms = {k - j: c for k, c in buckets.get(j, [])}
                if terms:
                    lo, hi = min(terms), max(terms)
                    coeffs = [terms.get(t, 0) for t in range(lo, hi + 1)]
                    end = INF if image.end == INF else image.end - j
                    row[j] = TwistedSeries(cring, lo, coeffs, end)
        rows.append(row)
    return rows, cring


def congruence_witness(ring: TwistedSeriesRing, a: TwistedSeries, base=None) -> dict:
    """Split a one-unit through the canonical matrix model and reduce it in 1+J.

    Models right multiplication by a on the base {x^i} over the centralizer
    of the maximal unramified subfield; a - 1 lands in J, so the matrix sits
    in 1+J and its reduction certifies a diagonal of one-units.
    """
    if not a.is_one_unit():
        raise ValueError("element must be a one-unit")
    ell = ring.ell
    if base is None:
        base = [ring.x_power(i) for i in range(ell)]
        weights = list(range(ell))
        verify_splitting_base(ring, base)
    else:
        verify_splitting_base(ring, base)
        weights = [b.w() for b in base]
    m_elt = a.sub(ring.one())
    s_mat, cring = multiplication_matrix(ring, m_elt)
    wring = WeightedMatrixRing(cring, weights)
    s_class = wring.membership(s_mat)
    if s_class != IN_J:
        raise AssertionError("multiplication by a - 1 must land in J")
    full = [row[:] for row in s_mat]
    for i in range(ell):
        full[i][i] = full[i][i].add(cring.one())
    assert wring.membership(full) == IN_ONE_PLUS_J
    tri, transcript = wring.reduce_one_plus_J(full)
    diag_product = cring.one()
    for i in range(ell):
        diag_product = diag_product.mul(tri[i][i])
    assert diag_product.is_one_unit()
    return {
        "size": ell,
        "weights": weights,
        "s_in_J": True,
        "matrix_in_one_plus_J": True,
        "diagonal_product_is_one_unit": diag_product.is_one_unit(),
        "transcript_length": len(transcript),
        "diagonal_product": repr(diag_product),
    }
