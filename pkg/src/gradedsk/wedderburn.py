"""Constructive factorization of minimal polynomials over monomial graded rings.

The minimal polynomial of a homogeneous element splits into linear factors
with conjugate roots; the factorization is built exactly as the splitting
argument runs: keep a maximal right factor that kills part of the conjugacy
class, and as long as some class member survives, a twisted evaluation
identity hands over a conjugate root of the left cofactor to extend with.

The conjugacy class is closed under conjugation by the unit generators; the
window is finite because conjugating by z_i^{r_i} is conjugation by a
degree-zero unit, which the scalar orbit already covers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OrbitBudgetError, ZeroElementError
from .monomial import CentralPolynomial, GradedElement, MonomialGradedRing, minimal_polynomial


@dataclass
class ConjugacyClass:
    """Orbit of a homogeneous element under unit conjugation, with witnesses."""

    base: GradedElement
    members: list  # coefficients d with d z^gamma in the class, sorted
    witnesses: dict  # coefficient -> unit u with u * base * u^-1 = d z^gamma

    def __len__(self):
        return len(self.members)


def conjugacy_class(ring: MonomialGradedRing, a: GradedElement, budget: int = 10**4) -> ConjugacyClass:
    """BFS closure under conjugation by the field generator and each z_i."""
    if a.is_zero or not a.is_homogeneous:
        raise ZeroElementError("conjugacy class needs a nonzero homogeneous element")
    gamma = a.degree()
    gens = [ring.scalar(ring.M.generator)] + [ring.gen(i) for i in range(ring.n)]
    start = a.coefficient()
    witnesses = {start: ring.one()}
    frontier = [start]
    while frontier:
        d = frontier.pop()
        elt = ring.monomial(d, gamma)
        for u in gens:
            conj = u * elt * u.inverse()
            assert conj.is_homogeneous and conj.degree() == gamma
            c = conj.coefficient()
            if c not in witnesses:
                if len(witnesses) >= budget:
                    raise OrbitBudgetError(f"conjugacy orbit exceeded {budget}")
                witnesses[c] = u * witnesses[d]
                frontier.append(c)
    members = sorted(witnesses)
    return ConjugacyClass(a, members, witnesses)


class RingPoly:
    """Polynomial over the graded ring in a central variable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: MonomialGradedRing, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.ring = ring
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def evaluate(self, b: GradedElement) -> GradedElement:
        """Twisted evaluation: coefficients stay left of the powers."""
        acc = self.ring.zero()
        power = self.ring.one()
        for c in self.coeffs:
            acc = acc + c * power
            power = power * b
        return acc

    def left_mul_linear(self, root: GradedElement) -> "RingPoly":
        """(x - root) * self."""
        ring = self.ring
        out = [ring.zero() for _ in range(len(self.coeffs) + 1)]
        for j, c in enumerate(self.coeffs):
            out[j + 1] = out[j + 1] + c
            out[j] = out[j] - root * c
        return RingPoly(ring, out)

    def right_div_linear(self, root: GradedElement) -> tuple["RingPoly", GradedElement]:
        """(quotient, remainder) for division by the monic x - root on the right."""
        ring = self.ring
        m = self.degree
        b = [ring.zero() for _ in range(max(m, 0))]
        carry = ring.zero()
        for k in range(m, 0, -1):
            b[k - 1] = self.coeffs[k] + carry
            carry = b[k - 1] * root
        rem = self.coeffs[0] + carry if self.coeffs else ring.zero()
        return RingPoly(ring, b), rem

    def right_divmod(self, divisor: "RingPoly") -> tuple["RingPoly", "RingPoly"]:
        """Division by a monic divisor."""
        ring = self.ring
        assert divisor.coeffs and divisor.coeffs[-1] == ring.one()
        rem = list(self.coeffs)
        dd = divisor.degree
        q = [ring.zero() for _ in range(max(len(rem) - dd, 0))]
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c.is_zero:
                continue
            q[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] = rem[i - dd + j] - c * divisor.coeffs[j]
        return RingPoly(ring, q), RingPoly(ring, rem[:dd])

    @classmethod
    def from_central(cls, h: CentralPolynomial) -> "RingPoly":
        return cls(h.ring, list(h.coeffs))

    def __eq__(self, other):
        return isinstance(other, RingPoly) and self.coeffs == other.coeffs


@dataclass
class FactorizationResult:
    minimal: CentralPolynomial
    roots: list  # GradedElements, a_1 first
    witnesses: list  # units u_i with u_i a u_i^-1 = a_i

    def expanded(self) -> RingPoly:
        ring = self.minimal.ring
        poly = RingPoly(ring, [ring.one()])
        for root in self.roots:
            poly = poly.left_mul_linear(root)
        return poly


def wedderburn_factor(ring: MonomialGradedRing, a: GradedElement, budget: int = 10**4) -> FactorizationResult:
    """Split the minimal polynomial of `a` into linear factors over the ring.

    Returns roots a_1, ..., a_m (conjugates of a, witnesses recorded) with
    h_a = (x - a_m) ... (x - a_1) verified coefficient-exactly.
    """
    h = minimal_polynomial(a, ring)
    h_poly = RingPoly.from_central(h)
    orbit = conjugacy_class(ring, a, budget)
    gamma = a.degree()
    roots = [a]
    witnesses = [ring.one()]
    k = RingPoly(ring, [-a, ring.one()])
    while True:
        survivor = None
        for d in orbit.members:
            b = ring.monomial(d, gamma)
            if not k.evaluate(b).is_zero:
                survivor = b
                break
        if survivor is None:
            break
        g, rem = h_poly.right_divmod(k)
        assert all(c.is_zero for c in rem.coeffs), "maximal factor must divide"
        e = k.evaluate(survivor)
        assert e.is_homogeneous and not e.is_zero
        b_prime = e * survivor * e.inverse()
        assert g.evaluate(b_prime).is_zero, "twisted evaluation identity failed"
        roots.append(b_prime)
        witnesses.append(e * orbit.witnesses[survivor.coefficient()])
        k = k.left_mul_linear(b_prime)
        assert k.degree <= h.degree, "factor chain exceeded the minimal polynomial"
    assert k.degree == h.degree, "splitting terminated before reaching full degree"
    result = FactorizationResult(h, roots, witnesses)
    expanded = result.expanded()
    assert expanded == RingPoly.from_central(h), "expansion does not reproduce the minimal polynomial"
    for root, w in zip(result.roots, result.witnesses):
        assert w * a * w.inverse() == root, "witness fails to conjugate"
    return result


def dickson_conjugate(ring: MonomialGradedRing, a: GradedElement, b: GradedElement, budget: int = 10**4):
    """A unit u with u a u^-1 = b when the minimal polynomials agree, else None."""
    if a.is_zero or b.is_zero or not (a.is_homogeneous and b.is_homogeneous):
        raise ZeroElementError("conjugacy test needs nonzero homogeneous elements")
    if a == b:
        return ring.one()
    ha = minimal_polynomial(a, ring)
    hb = minimal_polynomial(b, ring)
    if len(ha.coeffs) != len(hb.coeffs) or any(x != y for x, y in zip(ha.coeffs, hb.coeffs)):
        return None
    if a.degree() != b.degree():
        return None
    orbit = conjugacy_class(ring, a, budget)
    target = b.coefficient()
    if target not in orbit.witnesses:
        raise AssertionError("equal minimal polynomials must force conjugacy")
    return orbit.witnesses[target]
