"""Exact integer linear algebra: Smith normal form, lattices, finite abelian groups.

Matrices are plain row-major lists of lists of Python ints, so everything is
arbitrary precision.  All functions are pure; nothing here mutates its input.
"""

from __future__ import annotations

from math import gcd, prod

from .errors import ContainmentError

Matrix = list  # list[list[int]], row-major


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def mat_vec(v, m: Matrix):
    """Row vector times matrix."""
    cols = len(m[0]) if m else 0
    out = [0] * cols
    for k, vk in enumerate(v):
        if vk:
            mk = m[k]
            for j in range(cols):
                out[j] += vk * mk[j]
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_pow(a: Matrix, e: int) -> Matrix:
    result = identity(len(a))
    base = mat_copy(a)
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = mat_copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (u, s, v) with u*m*v = s, u and v unimodular, s diagonal with
    s1 | s2 | ... and nonnegative entries.

    Pivoting always picks the smallest-magnitude nonzero entry of the
    remaining block, which keeps intermediate entries from exploding.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    s = mat_copy(m)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(rows, cols)):
        while True:
            # smallest-magnitude nonzero pivot in the trailing block
            pi = pj = -1
            best = 0
            for i in range(t, rows):
                for j in range(t, cols):
                    e = s[i][j]
                    if e and (best == 0 or abs(e) < best):
                        best = abs(e)
                        pi, pj = i, j
            if pi < 0:
                break  # block is zero
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if s[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry; if not, fold the
            # offending row in and restart this block
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i][j] % s[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
    return u, s, v


def diagonal(s: Matrix) -> list:
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


class FiniteAbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    Factors are stored as d1 | d2 | ... | dk with 0 encoding an infinite
    cyclic factor (0 sits at the end since everything divides 0).  Factors
    equal to 1 are dropped, so equality of groups is equality of tuples.
    """

    __slots__ = ("invariant_factors",)

    def __init__(self, factors):
        cleaned = [abs(int(d)) for d in factors if abs(int(d)) != 1]
        prev = None
        seen_zero = False
        for d in cleaned:
            if d == 0:
                seen_zero = True
            elif seen_zero or (prev is not None and d % prev):
                raise ValueError(f"not a divisibility chain: {cleaned}")
            else:
                prev = d
        self.invariant_factors = tuple(cleaned)

    @classmethod
    def from_orders(cls, orders) -> "FiniteAbelianGroup":
        """Canonicalize an arbitrary list of cyclic orders via SNF."""
        orders = [int(d) for d in orders if int(d) != 1]
        if not orders:
            return cls(())
        n = len(orders)
        diag = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cokernel(diag, n)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def order(self):
        """Group order, or None when infinite."""
        if any(d == 0 for d in self.invariant_factors):
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def exponent(self):
        if any(d == 0 for d in self.invariant_factors):
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __eq__(self, other):
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.invariant_factors)})"

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join("Z" if d == 0 else f"C{d}" for d in self.invariant_factors)


def cokernel(rows: Matrix, ambient_rank: int) -> FiniteAbelianGroup:
    """Invariant factors of Z^ambient_rank / (row space of rows)."""
    if not rows:
        return FiniteAbelianGroup([0] * ambient_rank)
    _, s, _ = smith_normal_form(rows)
    diag = [d for d in diagonal(s) if d != 0]
    return FiniteAbelianGroup(diag + [0] * (ambient_rank - len(diag)))


def lattice_basis(rows: Matrix):
    """A basis (as rows) of the lattice spanned by the given rows."""
    if not rows:
        return []
    u, s, v = smith_normal_form(rows)
    d = diagonal(s)
    rank = sum(1 for x in d if x != 0)
    # rows of s*v^{-1}... easier: basis = nonzero rows of  s * v_inv; but
    # u*m = s*v_inv, so basis rows are the first `rank` rows of u*m.
    um = mat_mul(u, rows)
    return [row[:] for row in um[:rank]]


def solve_in_lattice(rows: Matrix, target):
    """Find integer x with x*rows == target, or None.

    `rows` need not be a basis.  Returns a coefficient list of len(rows).
    """
    if not rows:
        return [] if all(t == 0 for t in target) else None
    u, s, v = smith_normal_form(rows)
    tv = mat_vec(target, v)
    d = diagonal(s)
    y = [0] * len(rows)
    for j, tj in enumerate(tv):
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            if tj != 0:
                return None
        else:
            if tj % dj:
                return None
            y[j] = tj // dj
    return mat_vec(y, u)


def lattice_contains(rows: Matrix, vector) -> bool:
    return solve_in_lattice(rows, vector) is not None


def lattice_equal(rows_a: Matrix, rows_b: Matrix) -> bool:
    return all(lattice_contains(rows_a, r) for r in rows_b) and all(
        lattice_contains(rows_b, r) for r in rows_a
    )


def kernel_basis(m: Matrix):
    """Basis rows of {x : x*m == 0}."""
    if not m:
        return []
    u, s, _ = smith_normal_form(m)
    d = diagonal(s)
    rank = sum(1 for x in d if x != 0)
    return [row[:] for row in u[rank:]]


def subquotient(ambient_rank: int, numerator_gens: Matrix, denominator_gens: Matrix) -> FiniteAbelianGroup:
    """Invariant factors of (lattice N)/(lattice D) inside Z^ambient_rank.

    Raises ContainmentError when D is not inside N.
    """
    for row in list(numerator_gens) + list(denominator_gens):
        if len(row) != ambient_rank:
            raise ValueError("row length does not match ambient rank")
    basis = lattice_basis(numerator_gens)
    coords = []
    for row in denominator_gens:
        x = solve_in_lattice(basis, row)
        if x is None:
            raise ContainmentError(f"denominator row {row} outside numerator lattice")
        coords.append(x)
    return cokernel(coords, len(basis))


def lattice_index(ambient_rank: int, rows: Matrix):
    """Index of the lattice spanned by rows in Z^ambient_rank (None if infinite)."""
    if ambient_rank == 0:
        return 1
    _, s, _ = smith_normal_form(rows) if rows else (None, zeros(1, ambient_rank), None)
    d = [x for x in diagonal(s) if x != 0]
    if len(d) < ambient_rank:
        return None
    return prod(d)


def group_exponent_of_quotient(ambient_rank: int, rows: Matrix):
    """Exponent of Z^ambient_rank / rows (None if the quotient is infinite)."""
    return cokernel(rows, ambient_rank).exponent()


def gcd_all(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, x)
    return g
