"""Truncated Laurent series over GF(q), slope polynomials, Hensel lifting.

A series knows its coefficients on [val, end) and nothing past `end`; every
operation propagates the certified window, and anything that would need an
uncertified coefficient raises PrecisionExhaustedError.  Exact elements use
end = +infinity.

A polynomial is a "lambda polynomial" when all its algebraic-closure roots
have value lambda, equivalently when v(a_i) >= (n-i)*lambda + v(a_n) with
equality at i = 0.  Homogenization keeps exactly the coefficients meeting
that bound, producing a polynomial over the associated graded field whose
coefficients are single graded terms.  Root lifting is plain Newton;
factor lifting substitutes x -> c*x to reduce any rational slope to the
classic integral Hensel setting over GF(q)((s)) with t = s^e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotCoprimeError,
    NotLambdaPolyError,
    NotSimpleRootError,
    PrecisionExhaustedError,
    ZeroElementError,
)
from .finitefield import GF, FFPoly, FiniteField

INF = math.inf


class SeriesRing:
    """GF(q)((t)) with a default working precision (number of known terms)."""

    def __init__(self, q: int, precision: int = 32):
        self.field = GF(q)
        self.precision = precision

    def zero(self, end=None) -> "LaurentSeries":
        return LaurentSeries(self, None, (), self.precision if end is None else end)

    def one(self) -> "LaurentSeries":
        return LaurentSeries(self, 0, (1,), INF)

    def scalar(self, c: int) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries(self, None, (), INF)
        return LaurentSeries(self, 0, (c,), INF)

    def t_power(self, k: int, c: int = 1) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries(self, None, (), INF)
        return LaurentSeries(self, k, (c,), INF)

    def from_coeffs(self, val: int, coeffs, end=None) -> "LaurentSeries":
        end = val + len(coeffs) if end is None else end
        return LaurentSeries(self, val, tuple(coeffs), end)

    def geometric_unit(self, rng, length=None) -> "LaurentSeries":
        length = length or self.precision
        q = self.field.order
        coeffs = [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(length - 1)]
        return LaurentSeries(self, 0, tuple(coeffs), length)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and self.field == other.field

    def __hash__(self):
        return hash(("SeriesRing", self.field.p, self.field.k))

    def __repr__(self):
        return f"SeriesRing(GF({self.field.order}), prec={self.precision})"


class LaurentSeries:
    """Certified-window Laurent series: sum of coeffs[i] t^(val+i), zero on
    [val+len(coeffs), end), unknown from end on."""

    __slots__ = ("ring", "val", "coeffs", "end")

    def __init__(self, ring: SeriesRing, val, coeffs, end):
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = None
        if val is not None and val + len(coeffs) > end:
            # trim to the certified window
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
        """Zero on the whole certified window."""
        return self.val is None

    def is_exactly_zero(self) -> bool:
        return self.val is None and self.end == INF

    def valuation(self):
        if self.val is None:
            return None
        return self.val

    def value_lower_bound(self):
        return self.end if self.val is None else self.val

    def coefficient(self, k: int) -> int:
        if k >= self.end:
            raise PrecisionExhaustedError(f"coefficient of t^{k} is beyond precision")
        if self.val is None or k < self.val or k >= self.val + len(self.coeffs):
            return 0
        return self.coeffs[k - self.val]

    def leading(self):
        """(coefficient, valuation) of the lowest term."""
        if self.val is None:
            raise ZeroElementError("leading term of a zero-to-precision series")
        return self.coeffs[0], self.val

    def add(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.ring.field
        end = min(self.end, other.end)
        if self.val is None and other.val is None:
            return LaurentSeries(self.ring, None, (), end)
        lo = min(x for x in (self.val, other.val) if x is not None)
        hi = min(end, max(
            (self.val + len(self.coeffs)) if self.val is not None else lo,
            (other.val + len(other.coeffs)) if other.val is not None else lo,
        ))
        width = max(int(hi - lo), 0)
        out = [0] * width
        for src in (self, other):
            if src.val is None:
                continue
            for i, c in enumerate(src.coeffs):
                k = src.val + i - lo
                if 0 <= k < width:
                    out[k] = F.add(out[k], c)
        return LaurentSeries(self.ring, lo, out, end)

    def neg(self) -> "LaurentSeries":
        F = self.ring.field
        return LaurentSeries(self.ring, self.val if self.val is not None else None,
                             tuple(F.neg(c) for c in self.coeffs), self.end)

    def sub(self, other: "LaurentSeries") -> "LaurentSeries":
        return self.add(other.neg())

    def mul(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.ring.field
        if self.val is None or other.val is None:
            a_bound = self.end if self.val is None else self.val
            b_bound = other.end if other.val is None else other.val
            return LaurentSeries(self.ring, None, (), a_bound + b_bound)
        end = min(self.val + other.end, other.val + self.end)
        width = int(min(end - self.val - other.val, len(self.coeffs) + len(other.coeffs) - 1))
        out = [0] * max(width, 0)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b and i + j < width:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return LaurentSeries(self.ring, self.val + other.val, out, end)

    def scale(self, c: int) -> "LaurentSeries":
        F = self.ring.field
        if c == 0:
            return LaurentSeries(self.ring, None, (), INF if self.val is None else self.val + (self.end - self.val))
        return LaurentSeries(self.ring, self.val, tuple(F.mul(c, x) for x in self.coeffs), self.end)

    def shift(self, k: int) -> "LaurentSeries":
        return LaurentSeries(
            self.ring, None if self.val is None else self.val + k, self.coeffs, self.end + k
        )

    def inverse(self) -> "LaurentSeries":
        if self.val is None:
            raise PrecisionExhaustedError("cannot invert a zero-to-precision series")
        F = self.ring.field
        if len(self.coeffs) == 1 and self.end == INF:
            return LaurentSeries(self.ring, -self.val, (F.inv(self.coeffs[0]),), INF)
        rel = self.end - self.val
        if rel == INF:
            rel = self.ring.precision
        width = int(rel)
        a = list(self.coeffs[:width]) + [0] * max(width - len(self.coeffs), 0)
        b = [0] * width
        b[0] = F.inv(a[0])
        for k in range(1, width):
            acc = 0
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i] and b[k - i]:
                    acc = F.add(acc, F.mul(a[i], b[k - i]))
            b[k] = F.neg(F.mul(b[0], acc))
        return LaurentSeries(self.ring, -self.val, b, -self.val + rel)

    def truncate(self, end) -> "LaurentSeries":
        return LaurentSeries(self.ring, self.val if self.val is not None else None,
                             self.coeffs, min(self.end, end))

    def known_equal(self, other: "LaurentSeries") -> bool:
        """Equal on the common certified window."""
        return self.sub(other).is_zero

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.end == other.end
        )

    def __hash__(self):
        return hash((self.val, self.coeffs, self.end))

    def __repr__(self):
        return format_series(self)


def format_series(s: LaurentSeries) -> str:
    """`t^v * (c0 + c1*t + ...) [prec=N]` literal."""
    prec = "inf" if s.end == INF else str(int(s.end))
    if s.val is None:
        return f"0 [prec={prec}]"
    inner = " + ".join(
        (f"{c}" if i == 0 else (f"{c}*t" if i == 1 else f"{c}*t^{i}"))
        for i, c in enumerate(s.coeffs)
        if c != 0
    )
    return f"t^{s.val} * ({inner or '0'}) [prec={prec}]"


def parse_series(ring: SeriesRing, text: str) -> LaurentSeries:
    text = text.strip()
    prec = INF
    if "[prec=" in text:
        text, _, tail = text.partition("[prec=")
        tail = tail.rstrip("]").strip()
        prec = INF if tail == "inf" else int(tail)
        text = text.strip()
    if text == "0":
        return ring.zero(end=prec)
    val = 0
    if text.startswith("t^"):
        head, _, rest = text.partition("*")
        val = int(head[2:])
        text = rest.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    coeffs: dict = {}
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            continue
        if "*" in term:
            c_tok, _, t_tok = term.partition("*")
            power = 1 if t_tok.strip() == "t" else int(t_tok.strip().split("^")[1])
            c = int(c_tok.strip())
        elif term.startswith("t"):
            power = 1 if term == "t" else int(term.split("^")[1])
            c = 1
        else:
            power, c = 0, int(term)
        coeffs[power] = ring.field.add(coeffs.get(power, 0), c % ring.field.order)
    width = max(coeffs) + 1 if coeffs else 0
    out = [coeffs.get(i, 0) for i in range(width)]
    if prec == INF:
        return LaurentSeries(ring, val, out, INF)
    return LaurentSeries(ring, val, out, max(prec, val + width))


# -- polynomials over the series field ---------------------------------------


class SeriesPoly:
    """Dense polynomial with LaurentSeries coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SeriesRing, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero and coeffs[-1].end == INF:
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> LaurentSeries:
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero(end=INF)

    def add(self, other: "SeriesPoly") -> "SeriesPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly(
            self.ring,
            [self.coefficient(i).add(other.coefficient(i)) for i in range(n)],
        )

    def sub(self, other: "SeriesPoly") -> "SeriesPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly(
            self.ring,
            [self.coefficient(i).sub(other.coefficient(i)) for i in range(n)],
        )

    def mul(self, other: "SeriesPoly") -> "SeriesPoly":
        if not self.coeffs or not other.coeffs:
            return SeriesPoly(self.ring, [])
        out = [self.ring.zero(end=INF) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j].add(a.mul(b))
        return SeriesPoly(self.ring, out)

    def scale(self, s: LaurentSeries) -> "SeriesPoly":
        return SeriesPoly(self.ring, [c.mul(s) for c in self.coeffs])

    def evaluate(self, a: LaurentSeries) -> LaurentSeries:
        acc = self.ring.zero(end=INF)
        for c in reversed(self.coeffs):
            acc = acc.mul(a).add(c)
        return acc

    def derivative(self) -> "SeriesPoly":
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.ring.zero(end=INF)
            for _ in range(i % self.ring.field.p):
                c = c.add(self.coeffs[i])
            out.append(c)
        return SeriesPoly(self.ring, out)

    def divmod_monic(self, other: "SeriesPoly") -> tuple["SeriesPoly", "SeriesPoly"]:
        lead = other.coeffs[-1]
        assert lead.val == 0 and lead.coeffs == (1,), "divisor must be exactly monic"
        rem = list(self.coeffs)
        db = other.degree
        q = [self.ring.zero(end=INF) for _ in range(max(len(rem) - db, 0))]
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c.is_zero and c.end == INF:
                continue
            q[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = rem[i - db + j].sub(c.mul(other.coefficient(j)))
        return SeriesPoly(self.ring, q), SeriesPoly(self.ring, rem[:db])

    def truncate(self, end) -> "SeriesPoly":
        return SeriesPoly(self.ring, [c.truncate(end) for c in self.coeffs])

    def __repr__(self):
        return " , ".join(repr(c) for c in self.coeffs)


# -- graded terms and homogenized polynomials ----------------------------------


@dataclass(frozen=True)
class GradedTerm:
    """Homogeneous element of a graded field: scalar times the degree monomial."""

    field_order: int
    scalar: int
    degree: Fraction

    def is_zero(self) -> bool:
        return self.scalar == 0

    def mul(self, other: "GradedTerm") -> "GradedTerm":
        F = GF(self.field_order)
        return GradedTerm(self.field_order, F.mul(self.scalar, other.scalar), self.degree + other.degree)

    def add(self, other: "GradedTerm") -> "GradedTerm":
        if self.scalar == 0:
            return other
        if other.scalar == 0:
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add graded terms of different degrees")
        F = GF(self.field_order)
        return GradedTerm(self.field_order, F.add(self.scalar, other.scalar), self.degree)


class GradedPoly:
    """Polynomial over a graded field with at most one term per coefficient."""

    def __init__(self, field_order: int, terms: dict):
        self.field_order = field_order
        self.terms = {i: t for i, t in terms.items() if t.scalar != 0}

    @property
    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def coefficient(self, i: int) -> GradedTerm:
        return self.terms.get(i, GradedTerm(self.field_order, 0, Fraction(0)))

    def mul(self, other: "GradedPoly") -> "GradedPoly":
        out: dict = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                prod = a.mul(b)
                if i + j in out:
                    out[i + j] = out[i + j].add(prod)
                else:
                    out[i + j] = prod
        return GradedPoly(self.field_order, out)

    def derivative(self) -> "GradedPoly":
        F = GF(self.field_order)
        out = {}
        for i, t in self.terms.items():
            if i == 0:
                continue
            scalar = 0
            for _ in range(i % F.p):
                scalar = F.add(scalar, t.scalar)
            if scalar:
                out[i - 1] = GradedTerm(self.field_order, scalar, t.degree)
        return GradedPoly(self.field_order, out)

    def evaluate(self, b: GradedTerm) -> GradedTerm:
        F = GF(self.field_order)
        total_scalar = 0
        total_degree = None
        for i, t in sorted(self.terms.items()):
            term = t
            for _ in range(i):
                term = term.mul(b)
            if term.scalar:
                if total_degree is None:
                    total_degree = term.degree
                elif term.degree != total_degree:
                    raise ValueError("inhomogeneous evaluation")
                total_scalar = F.add(total_scalar, term.scalar)
        return GradedTerm(self.field_order, total_scalar, total_degree or Fraction(0))

    def residue_poly(self) -> FFPoly:
        """Scalar parts as a polynomial over GF(q) (degrees forgotten)."""
        F = GF(self.field_order)
        width = self.degree + 1
        return FFPoly(F, [self.coefficient(i).scalar for i in range(max(width, 0))])

    def __eq__(self, other):
        return isinstance(other, GradedPoly) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(
            f"({t.scalar}, t^{t.degree})x^{i}" for i, t in sorted(self.terms.items())
        )


# -- slope conditions ------------------------------------------------------------


def forced_slope(f: SeriesPoly) -> Fraction:
    """(v(a_0) - v(a_n)) / n: the only possible slope of an irreducible."""
    a0 = f.coefficient(0)
    an = f.coeffs[-1]
    if a0.is_zero or an.is_zero:
        raise ZeroElementError("slope needs nonzero end coefficients")
    return Fraction(a0.valuation() - an.valuation(), f.degree)


def is_lambda_polynomial(f: SeriesPoly, lam: Fraction) -> bool:
    """All-roots-have-value-lambda test via the coefficient inequalities."""
    n = f.degree
    a0 = f.coefficient(0)
    an = f.coeffs[-1]
    if n < 1 or a0.is_zero or an.is_zero:
        return False
    lam = Fraction(lam)
    vn = an.valuation()
    if Fraction(a0.valuation()) != n * lam + vn:
        return False
    for i in range(1, n):
        ai = f.coefficient(i)
        bound = (n - i) * lam + vn
        if ai.is_zero:
            if ai.end != INF and Fraction(ai.end) < bound:
                raise PrecisionExhaustedError(
                    f"coefficient {i} is zero only to precision {ai.end} < bound {bound}"
                )
            continue
        if Fraction(ai.valuation()) < bound:
            return False
    return True


def homogenize(f: SeriesPoly, lam: Fraction) -> GradedPoly:
    """Keep exactly the coefficients on the slope boundary, as graded terms."""
    lam = Fraction(lam)
    if not is_lambda_polynomial(f, lam):
        raise NotLambdaPolyError(f"not a {lam}-polynomial")
    n = f.degree
    vn = f.coeffs[-1].valuation()
    q = f.ring.field.order
    out = {}
    for i in range(n + 1):
        ai = f.coefficient(i)
        bound = (n - i) * lam + vn
        if not ai.is_zero and Fraction(ai.valuation()) == bound:
            out[i] = GradedTerm(q, ai.leading()[0], bound)
    return GradedPoly(q, out)


# -- Hensel lifting ----------------------------------------------------------------


def hensel_lift_root(f: SeriesPoly, lam, b: GradedTerm, target=None) -> LaurentSeries:
    """Newton-lift the simple residual root b of the homogenized polynomial.

    b must live in the graded field of the base (integral degree); the lift
    a satisfies v(f(a)) >= target and has leading term b.
    """
    lam = Fraction(lam)
    ring = f.ring
    hom = homogenize(f, lam)
    if b.degree != lam or b.degree.denominator != 1:
        raise NotSimpleRootError("root must be homogeneous of the slope degree")
    if hom.evaluate(b).scalar != 0:
        raise NotSimpleRootError("not a root of the homogenized polynomial")
    if hom.derivative().evaluate(b).scalar == 0:
        raise NotSimpleRootError("residual root is not simple")
    target = ring.precision if target is None else target
    a = ring.t_power(int(b.degree), b.scalar).truncate(int(b.degree) + ring.precision)
    deriv = f.derivative()
    guard = 0
    while True:
        fa = f.evaluate(a)
        if fa.is_zero and fa.end >= target:
            break
        dfa = deriv.evaluate(a)
        if dfa.is_zero:
            raise PrecisionExhaustedError("derivative vanished to precision during Newton")
        step = fa.mul(dfa.inverse())
        if step.is_zero and step.end >= target:
            break
        a = a.sub(step)
        guard += 1
        if guard > 4 * ring.precision:
            raise PrecisionExhaustedError("Newton iteration failed to converge")
    lead_c, lead_v = a.leading()
    assert lead_c == b.scalar and lead_v == b.degree
    return a


def _extended_gcd_ffpoly(a: FFPoly, b: FFPoly):
    """(g, s, t) with s a + t b = g, g monic gcd."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = FFPoly(F, [1]), FFPoly(F, [])
    t0, t1 = FFPoly(F, []), FFPoly(F, [1])
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0.sub(q.mul(s1))
        t0, t1 = t1, t0.sub(q.mul(t1))
    if r0.is_zero:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.monic(), s0.scale(inv), t0.scale(inv)


def _poly_from_ffpoly(ring: SeriesRing, f: FFPoly) -> SeriesPoly:
    return SeriesPoly(ring, [ring.scalar(c) for c in f.coeffs])


def _exactify(poly: SeriesPoly, cutoff: int) -> SeriesPoly:
    """Drop coefficient terms at or past the cutoff and mark the result exact.

    Hensel iterates are polynomials we construct, not measurements, so their
    higher terms are zero by fiat; this keeps the window bookkeeping from
    eating the quadratic convergence.
    """
    ring = poly.ring
    out = []
    for c in poly.coeffs:
        if c.val is None:
            out.append(LaurentSeries(ring, None, (), INF))
        else:
            keep = [x for i, x in enumerate(c.coeffs) if c.val + i < cutoff]
            out.append(LaurentSeries(ring, c.val, keep, INF))
    return SeriesPoly(ring, out)


def _hensel_monic_zero_slope(f: SeriesPoly, gbar: FFPoly, hbar: FFPoly, precision: int):
    """Classic quadratic Hensel over GF(q)[[t]] for monic f with f-bar = g-bar h-bar."""
    ring = f.ring
    g0, s0, t0 = _extended_gcd_ffpoly(gbar, hbar)
    if g0.degree != 0:
        raise NotCoprimeError("residual factors share a root")
    g = _poly_from_ffpoly(ring, gbar)
    h = _poly_from_ffpoly(ring, hbar)
    s = _poly_from_ffpoly(ring, s0)
    t = _poly_from_ffpoly(ring, t0)
    f_exact = _exactify(f, precision + 1)
    k = 1
    while k < precision:
        k2 = min(2 * k, precision + 1)
        e = _exactify(f_exact.sub(g.mul(h)), k2)
        # s g + t h = 1, so t h = 1 mod g: the correction to g is t e mod g
        q, r = t.mul(e).divmod_monic(g)
        g_new = _exactify(g.add(r), k2)
        h_new = _exactify(h.add(s.mul(e)).add(q.mul(h)), k2)
        b = _exactify(s.mul(g_new).add(t.mul(h_new)).sub(SeriesPoly(ring, [ring.one()])), k2)
        c, d = t.mul(b).divmod_monic(g_new)
        t = _exactify(t.sub(d), k2)
        s = _exactify(s.sub(s.mul(b)).sub(c.mul(h_new)), k2)
        g, h = g_new, h_new
        k = k2
    return g.truncate(precision), h.truncate(precision)


def hensel_lift_factorization(f: SeriesPoly, lam, gp: GradedPoly, hp: GradedPoly, target=None):
    """Lift a coprime residual factorization f^(lam) = gp * hp to f = g * h.

    Any rational slope is reduced to slope zero over GF(q)((s)), s^e = t, by
    the substitution x -> c x with v(c) = lam; the lifted monic factors
    descend back to the base because their s-exponents stay multiples of e.
    Returns (g, h) with g^(lam) = gp and h^(lam) = hp exactly.
    """
    lam = Fraction(lam)
    ring = f.ring
    target = ring.precision if target is None else target
    hom = homogenize(f, lam)
    if hom.terms != gp.mul(hp).terms:
        raise ValueError("gp * hp must equal the homogenization of f")
    if gp.degree == 0:
        h, g = hensel_lift_factorization(f, lam, hp, gp, target)
        return g, h
    if hp.degree == 0:
        unit = hp.coefficient(0)
        if unit.degree.denominator != 1:
            raise ValueError("a degree-zero factor must have integral value")
        h = SeriesPoly(ring, [ring.t_power(int(unit.degree), unit.scalar)])
        g = f.scale(h.coeffs[0].inverse())
        return g, h
    e = lam.denominator
    k_num = lam.numerator  # c = s^k_num inside GF(q)((s)), t = s^e
    n = f.degree
    big_prec = (int(target) + 4) * e
    big = SeriesRing(ring.field.order, precision=big_prec)

    def to_big(series: LaurentSeries) -> LaurentSeries:
        if series.val is None:
            return LaurentSeries(big, None, (), series.end * e)
        out = [0] * ((len(series.coeffs) - 1) * e + 1)
        for i, c in enumerate(series.coeffs):
            out[i * e] = c
        return LaurentSeries(big, series.val * e, out, series.end * e)

    an = f.coeffs[-1]
    an_inv = an.inverse()
    # monic zero-slope polynomial f0(x~) = f(c x~) / (a_n c^n)
    f0 = SeriesPoly(
        big,
        [to_big(f.coefficient(i).mul(an_inv)).shift((i - n) * k_num) for i in range(n + 1)],
    )
    gbar = gp.residue_poly().monic()
    hbar = hp.residue_poly().monic()
    f0_bar = FFPoly(ring.field, [c.coefficient(0) if c.end > 0 else 0 for c in f0.coeffs])
    assert gbar.mul(hbar) == f0_bar, "monic residual factors must multiply to the residue"
    g_big, h_big = _hensel_monic_zero_slope(f0, gbar, hbar, big_prec - e)

    def from_big(series: LaurentSeries, extra_shift: int) -> LaurentSeries:
        series = series.shift(extra_shift)
        if series.val is None:
            return LaurentSeries(ring, None, (), math.floor(series.end / e))
        if series.val % e:
            raise PrecisionExhaustedError("lift failed to descend to the base field")
        out = []
        for i, c in enumerate(series.coeffs):
            if c and i % e:
                raise PrecisionExhaustedError("lift failed to descend to the base field")
            if i % e == 0:
                out.append(c)
        return LaurentSeries(ring, series.val // e, out, math.floor(series.end / e))

    dg, dh = gp.degree, hp.degree
    g_monic = SeriesPoly(ring, [from_big(g_big.coefficient(i), (dg - i) * k_num) for i in range(dg + 1)])
    h_monic = SeriesPoly(ring, [from_big(h_big.coefficient(j), (dh - j) * k_num) for j in range(dh + 1)])
    # distribute the leading data: g = U g_monic with U the exact lead of gp
    u = gp.coefficient(dg)
    if u.degree.denominator != 1:
        raise ValueError("factor leading coefficients must have integral value")
    U = ring.t_power(int(u.degree), u.scalar)
    g = g_monic.scale(U)
    h = h_monic.scale(an.mul(U.inverse()))
    assert homogenize(g, lam).terms == gp.terms
    assert homogenize(h, lam).terms == hp.terms
    return g, h
