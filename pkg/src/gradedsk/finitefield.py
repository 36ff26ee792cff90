"""Finite fields GF(p^k) with discrete-log tables, plus dense polynomials.

Elements are nonnegative ints packing base-p digits of the polynomial
representation, so 0 and 1 are the field's zero and one for every field.
Each field fixes a generator: for k == 1 the least primitive root, otherwise
the class of x modulo the least monic primitive polynomial (least when the
coefficient tuple is read as a base-p integer).  That generator and its
minimal polynomial are what the JSON interfaces serialize discrete logs
against.

Multiplication runs through exp/log tables, so field construction is O(p^k);
the intended range is |field| <= ~2^21, which covers every budget in this
package.
"""

from __future__ import annotations

import math
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorint(n: int) -> dict:
    """Prime factorization by trial division (fine for the sizes used here)."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """q = p^e with p prime, else ValueError."""
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = f.items()
    return p, e


_MAX_TABLE = 1 << 21


class FiniteField:
    """GF(p^k) calculator; use ``GF(q)`` or ``GF(p, k)`` to get cached instances."""

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.order = p**k
        if self.order > _MAX_TABLE:
            raise ValueError(f"field of order {self.order} exceeds the table budget")
        if k == 1:
            self.modulus = (0, 1)  # placeholder: x - generator is not used
            self.generator = self._least_primitive_root()
        else:
            self.modulus = self._least_primitive_polynomial()
            self.generator = p  # the class of x
        self._build_tables()

    # -- construction helpers -------------------------------------------

    def _least_primitive_root(self) -> int:
        n = self.p - 1
        primes = list(factorint(n))
        for g in range(2, self.p):
            if all(pow(g, n // r, self.p) != 1 for r in primes):
                return g
        return 1  # p == 2

    def _poly_mul_mod(self, a: int, b: int, modulus) -> int:
        """Packed polynomial product modulo `modulus`, digitwise mod p."""
        p, k = self.p, self.k
        da = self._digits(a)
        db = self._digits(b)
        prod = [0] * (len(da) + len(db) - 1 or 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce: modulus is a tuple of k+1 digits, monic
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * modulus[j]) % p
        out = 0
        for i in range(min(len(prod), k) - 1, -1, -1):
            out = out * p + prod[i]
        return out

    def _least_primitive_polynomial(self):
        p, k = self.p, self.k
        n = self.order - 1
        primes = list(factorint(n))
        for packed in range(self.order):
            mod = tuple(self._digits(packed, k)) + (1,)
            if mod[0] == 0:
                continue
            # x must have multiplicative order exactly p^k - 1; that also
            # forces irreducibility, since x would otherwise be a zero
            # divisor or lie in a proper subring
            x = p
            if self._packed_pow(x, n, mod) != 1:
                continue
            if any(self._packed_pow(x, n // r, mod) == 1 for r in primes):
                continue
            return mod
        raise AssertionError("no primitive polynomial found")

    def _packed_pow(self, a: int, e: int, mod) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._poly_mul_mod(result, a, mod)
            a = self._poly_mul_mod(a, a, mod)
            e >>= 1
        return result

    def _build_tables(self):
        n = self.order - 1
        exp = [1] * n
        g = self.generator
        if self.k == 1:
            for i in range(1, n):
                exp[i] = exp[i - 1] * g % self.p
        else:
            for i in range(1, n):
                exp[i] = self._poly_mul_mod(exp[i - 1], g, self.modulus)
        log = [0] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    # -- representation ---------------------------------------------------

    def _digits(self, a: int, width: int | None = None):
        p = self.p
        out = []
        while a:
            out.append(a % p)
            a //= p
        if width is not None:
            out += [0] * (width - len(out))
        return out or ([0] * (width or 1))

    def digits(self, a: int) -> list:
        """Coordinates of `a` in the polynomial basis over GF(p)."""
        return self._digits(a, self.k)

    def from_digits(self, digits) -> int:
        out = 0
        for d in reversed(list(digits)):
            out = out * self.p + d % self.p
        return out

    def elements(self):
        return range(self.order)

    def units(self):
        return self._exp

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = 0
        shift = 1
        while a or b:
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = 0
        shift = 1
        while a:
            out += (-a % p) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.order - 1
        return self._exp[(self._log[a] + self._log[b]) % n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        n = self.order - 1
        return self._exp[(-self._log[a]) % n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        n = self.order - 1
        return self._exp[(self._log[a] * e) % n]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("discrete log of zero")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.order - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        """a ^ (p^times); `times` may be negative."""
        return self.pow_p_power(a, times)

    def pow_p_power(self, a: int, j: int) -> int:
        if a == 0:
            return 0
        n = self.order - 1
        return self._exp[(self._log[a] * pow(self.p, j % self.k, n)) % n]

    def power_map_exponent(self, q_sub: int, j: int) -> int:
        """Exponent of the map a -> a^(q_sub^j) on dlogs, mod order-1."""
        return pow(q_sub, j, self.order - 1)

    # -- subfields ---------------------------------------------------------

    def subfield_order(self, d: int) -> int:
        if self.k % d:
            raise ValueError("not a subfield degree")
        return self.p**d

    def in_subfield(self, a: int, d: int) -> bool:
        """Is `a` in the subfield of order p^d?"""
        if a == 0:
            return True
        if self.k % d:
            return False
        step = (self.order - 1) // (self.p**d - 1)
        return self._log[a] % step == 0

    def subfield_elements(self, d: int):
        """All elements of the subfield GF(p^d) (as elements of this field)."""
        if self.k % d:
            raise ValueError("not a subfield degree")
        step = (self.order - 1) // (self.p**d - 1)
        return [0] + [self._exp[i * step] for i in range(self.p**d - 1)]

    def norm_to_subfield(self, a: int, d: int) -> int:
        """Field norm GF(p^k) -> GF(p^d)."""
        if self.k % d:
            raise ValueError("not a subfield degree")
        if a == 0:
            return 0
        e = (self.order - 1) // (self.p**d - 1)
        return self.pow(a, e)

    def trace_to_subfield(self, a: int, d: int) -> int:
        if self.k % d:
            raise ValueError("not a subfield degree")
        out = 0
        for j in range(self.k // d):
            out = self.add(out, self.pow_p_power(a, d * j))
        return out

    def minimal_polynomial(self, a: int, d: int = 1) -> "FFPoly":
        """Minimal polynomial of `a` over the subfield GF(p^d)."""
        sub = GF(self.p, d)
        conj = []
        c = a
        while c not in conj:
            conj.append(c)
            c = self.pow_p_power(c, d)
        poly = FFPoly(self, [1])
        for c in conj:
            poly = poly.mul(FFPoly(self, [self.neg(c), 1]))
        # coefficients lie in GF(p^d); rewrite them there
        coeffs = [embed_inverse(self, sub, c) for c in poly.coeffs]
        return FFPoly(sub, coeffs)

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))


@lru_cache(maxsize=None)
def _field(p: int, k: int) -> FiniteField:
    return FiniteField(p, k)


def GF(q: int, k: int | None = None) -> FiniteField:
    """GF(q) for q a prime power, or GF(p, k)."""
    if k is None:
        p, e = prime_power_decomposition(q)
        return _field(p, e)
    return _field(q, k)


def embed(small: FiniteField, big: FiniteField, a: int) -> int:
    """Image of `a` under the canonical embedding GF(p^d) -> GF(p^k).

    The embedding sends the generator of the small field to the first root
    (by discrete log) of its minimal polynomial in the big field, which makes
    the map deterministic.
    """
    if a == 0:
        return 0
    table = _embedding_table(small, big)
    return big.exp(small.dlog(a) * table)


@lru_cache(maxsize=None)
def _embedding_table(small: FiniteField, big: FiniteField) -> int:
    if small.p != big.p or big.k % small.k:
        raise ValueError("not a subfield pair")
    if small.k == big.k:
        return 1
    # candidate images of the small generator: elements of exact order
    # |small*| inside big; pick the first that satisfies the minimal polynomial
    n_small = small.order - 1
    step = (big.order - 1) // n_small
    minpoly = small_minpoly_coeffs(small)
    for j in range(n_small):
        if math.gcd(j, n_small) != 1:
            continue
        cand_log = step * j
        cand = big.exp(cand_log)
        acc = 0
        powc = 1
        ok = True
        for c in minpoly:
            if c:
                acc = big.add(acc, big.mul(embed_prime(small, big, c), powc))
            powc = big.mul(powc, cand)
        if acc == 0:
            return (step * j) % (big.order - 1)
    raise AssertionError("embedding not found")


def embed_prime(small: FiniteField, big: FiniteField, c: int) -> int:
    """Embed a prime-field constant (works for any GF(p) digit)."""
    out = 0
    one = 1
    for _ in range(c % small.p):
        out = big.add(out, one)
    return out


@lru_cache(maxsize=None)
def small_minpoly_coeffs(small: FiniteField):
    if small.k == 1:
        return (small.neg(small.generator), 1)
    return small.modulus


def embed_inverse(big: FiniteField, small: FiniteField, a: int) -> int:
    """Preimage in the small field of an element lying in its image."""
    if a == 0:
        return 0
    table = _embedding_table(small, big)
    n_small = small.order - 1
    la = big.dlog(a)
    # solve table * x = la  (mod big.order - 1)
    g = math.gcd(table, big.order - 1)
    if la % g:
        raise ValueError("element not in subfield image")
    m = (big.order - 1) // g
    x = (la // g) * pow(table // g, -1, m) % m
    return small.exp(x % n_small)


# -- linear algebra over a finite field -----------------------------------


def solve_linear(field: FiniteField, rows, rhs):
    """One solution x of x^T unknowns: sum_j rows[i][j] * x[j] = rhs[i], or None."""
    m = [row[:] + [b] for row, b in zip(rows, rhs)]
    n_rows = len(m)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if m[i][n_cols]:
            return None
    x = [0] * n_cols
    for i, c in enumerate(pivots):
        x[c] = m[i][n_cols]
    return x


def nullspace(field: FiniteField, rows):
    """Basis of {x : rows @ x = 0} as a list of column vectors."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    m = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n_cols
        v[fc] = 1
        for i, c in enumerate(pivots):
            v[c] = field.neg(m[i][fc])
        basis.append(v)
    return basis


def matrix_rank(field: FiniteField, rows) -> int:
    n_cols = len(rows[0]) if rows else 0
    return n_cols - len(nullspace(field, rows)) if rows else 0


# -- dense polynomials over a finite field ---------------------------------


class FFPoly:
    """Dense polynomial over a FiniteField; coeffs[i] is the x^i coefficient."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs):
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self) -> "FFPoly":
        if self.is_zero or self.lc == 1:
            return self
        inv = self.field.inv(self.lc)
        return FFPoly(self.field, [self.field.mul(inv, c) for c in self.coeffs])

    def add(self, other: "FFPoly") -> "FFPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return FFPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def sub(self, other: "FFPoly") -> "FFPoly":
        return self.add(other.scale(self.field.neg(1)))

    def scale(self, c: int) -> "FFPoly":
        F = self.field
        return FFPoly(F, [F.mul(c, x) for x in self.coeffs])

    def mul(self, other: "FFPoly") -> "FFPoly":
        if self.is_zero or other.is_zero:
            return FFPoly(self.field, [])
        F = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return FFPoly(F, out)

    def divmod(self, other: "FFPoly") -> tuple["FFPoly", "FFPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        dinv = F.inv(other.lc)
        db = other.degree
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                f = F.mul(c, dinv)
                q[i - db] = f
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] = F.sub(rem[i - db + j], F.mul(f, y))
        return FFPoly(F, q), FFPoly(F, rem)

    def mod(self, other: "FFPoly") -> "FFPoly":
        return self.divmod(other)[1]

    def gcd(self, other: "FFPoly") -> "FFPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.mod(b)
        return a.monic() if not a.is_zero else a

    def pow_mod(self, e: int, modulus: "FFPoly") -> "FFPoly":
        result = FFPoly(self.field, [1])
        base = self.mod(modulus)
        while e:
            if e & 1:
                result = result.mul(base).mod(modulus)
            base = base.mul(base).mod(modulus)
            e >>= 1
        return result

    def derivative(self) -> "FFPoly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = 0
            for _ in range(i % F.p):
                c = F.add(c, self.coeffs[i])
            out.append(c)
        return FFPoly(F, out)

    def evaluate(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def is_irreducible(self) -> bool:
        """Rabin test: x^{q^n} = x mod f and gcd conditions on x^{q^{n/r}} - x."""
        if self.degree <= 0:
            return False
        if self.degree == 1:
            return True
        F = self.field
        f = self.monic()
        q = F.order
        n = f.degree
        x = FFPoly(F, [0, 1])
        for r in factorint(n):
            h = x.pow_mod(q ** (n // r), f).sub(x)
            if f.gcd(h).degree != 0:
                return False
        return x.pow_mod(q**n, f).sub(x).mod(f).is_zero

    def factor(self) -> list[tuple["FFPoly", int]]:
        """Monic irreducible factorization [(g, multiplicity), ...], deterministic.

        Peels one smallest irreducible factor at a time and divides it out,
        which avoids multiplicty bookkeeping in the squarefree decomposition.
        """
        F = self.field
        if self.degree < 1:
            return []
        f = self.monic()
        out: dict[tuple, int] = {}
        while f.degree > 0:
            d = f.derivative()
            if d.is_zero:
                # f = g(x^p): c^(1/p) = c^(p^(k-1)) in GF(p^k)
                root = [F.pow_p_power(c, F.k - 1) for c in f.coeffs[:: F.p]]
                for g, m in FFPoly(F, root).factor():
                    out[g.coeffs] = out.get(g.coeffs, 0) + m * F.p
                break
            sqfree = f.divmod(f.gcd(d))[0]
            g = _smallest_irreducible_factor(sqfree)
            m = 0
            while True:
                q, r = f.divmod(g)
                if r.is_zero:
                    f = q
                    m += 1
                else:
                    break
            out[g.coeffs] = out.get(g.coeffs, 0) + m
        check = FFPoly(F, [1])
        for coeffs, m in out.items():
            g = FFPoly(F, list(coeffs))
            for _ in range(m):
                check = check.mul(g)
        assert check.coeffs == self.monic().coeffs, "factorization lost factors"
        items = [(FFPoly(F, list(c)), m) for c, m in out.items()]
        items.sort(key=lambda t: (t[0].degree, t[0].coeffs))
        return items

    def roots(self) -> list[int]:
        F = self.field
        return sorted(a for a in F.elements() if self.evaluate(a) == 0) if self.degree >= 1 else []

    def __eq__(self, other):
        return isinstance(other, FFPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __repr__(self):
        return f"FFPoly({self.field!r}, {list(self.coeffs)})"

    def format(self, var: str = "y") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{var}" if c == 1 else f"{c}*{var}")
            else:
                parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
        return " + ".join(parts)


def _smallest_irreducible_factor(f: FFPoly) -> FFPoly:
    """Smallest-degree (then lex-least) irreducible factor of squarefree monic f."""
    F = f.field
    q = F.order
    x = FFPoly(F, [0, 1])
    h = x
    for d in range(1, f.degree // 2 + 1):
        h = h.pow_mod(q, f)
        g = f.gcd(h.sub(x))
        if g.degree > 0:
            return min(_equal_degree_split(g, d), key=lambda t: t.coeffs)
    return f  # irreducible


def _equal_degree_split(f: FFPoly, d: int) -> list[FFPoly]:
    """Split a product of irreducibles all of degree d (seeded, deterministic)."""
    F = f.field
    if f.degree == d:
        return [f.monic()]
    import random

    rng = random.Random(hash((F.p, F.k, f.coeffs)) & 0xFFFFFFFF)
    q = F.order
    while True:
        t = FFPoly(F, [rng.randrange(q) for _ in range(f.degree)] + [1])
        if F.p == 2:
            # trace-map splitting in characteristic two
            acc = t.mod(f)
            tr = acc
            for _ in range(d * F.k - 1):
                acc = acc.mul(acc).mod(f)
                tr = tr.add(acc)
            g = f.gcd(tr)
        else:
            e = (q**d - 1) // 2
            g = f.gcd(t.pow_mod(e, f).sub(FFPoly(F, [1])))
        if 0 < g.degree < f.degree:
            return sorted(
                _equal_degree_split(g, d) + _equal_degree_split(f.divmod(g)[0], d),
                key=lambda h: (h.degree, h.coeffs),
            )


def irreducible_polynomial(field: FiniteField, degree: int) -> FFPoly:
    """Least monic irreducible of the given degree (coefficients as base-q int)."""
    q = field.order
    for packed in range(q**degree):
        coeffs = []
        v = packed
        for _ in range(degree):
            coeffs.append(v % q)
            v //= q
        f = FFPoly(field, coeffs + [1])
        if f.is_irreducible():
            return f
    raise AssertionError("unreachable")
