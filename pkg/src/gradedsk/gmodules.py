"""Finite abelian groups acting on finitely presented Z-modules.

A module is Z^k modulo a relation lattice, with one integer action matrix
per group generator (elements are row vectors, acting on the right).  The
norm map sums the whole group orbit; its kernel modulo the augmentation
sublattice is the degree -1 Tate group, which is the engine behind every
group formula in this package.
"""

from __future__ import annotations

from itertools import product
from math import gcd, prod

from .errors import NotInKernelError
from .intlinalg import (
    FiniteAbelianGroup,
    cokernel,
    identity,
    kernel_basis,
    lattice_basis,
    lattice_contains,
    mat_add,
    mat_mul,
    mat_pow,
    mat_sub,
    mat_vec,
    smith_normal_form,
    solve_in_lattice,
    subquotient,
    zeros,
)


class FiniteAbGroupSpec:
    """G = Z_{r1} x ... x Z_{rn}, elements as exponent tuples."""

    __slots__ = ("orders",)

    def __init__(self, orders):
        orders = tuple(int(r) for r in orders)
        if any(r < 1 for r in orders):
            raise ValueError("cyclic orders must be >= 1")
        self.orders = orders

    @property
    def rank(self) -> int:
        return len(self.orders)

    def order(self) -> int:
        return prod(self.orders) if self.orders else 1

    def elements(self):
        return product(*(range(r) for r in self.orders))

    def add(self, g, h):
        return tuple((a + b) % r for a, b, r in zip(g, h, self.orders))

    def neg(self, g):
        return tuple((-a) % r for a, r in zip(g, self.orders))

    def zero(self):
        return tuple([0] * self.rank)

    def generators(self):
        out = []
        for i in range(self.rank):
            g = [0] * self.rank
            g[i] = 1
            out.append(tuple(g))
        return out

    def subgroup_elements(self, gens) -> frozenset:
        """Closure of gens under the group operation."""
        seen = {self.zero()}
        frontier = [self.zero()]
        gens = [tuple(g) for g in gens]
        while frontier:
            v = frontier.pop()
            for g in gens:
                w = self.add(v, g)
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return frozenset(seen)

    def all_subgroups(self):
        """Every subgroup, as a sorted list of frozensets (BFS over closures)."""
        trivial = frozenset([self.zero()])
        found = {trivial}
        frontier = [trivial]
        elems = list(self.elements())
        while frontier:
            sub = frontier.pop()
            for g in elems:
                if g in sub:
                    continue
                new = self.subgroup_elements(list(sub) + [g])
                if new not in found:
                    found.add(new)
                    frontier.append(new)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def subgroup_invariants(self, elements) -> FiniteAbelianGroup:
        """Abelian invariants of a subgroup given by its element set."""
        rows = [list(e) for e in elements]
        rows += [[r if i == j else 0 for j in range(self.rank)] for i, r in enumerate(self.orders)]
        relation_rows = [[r if i == j else 0 for j in range(self.rank)] for i, r in enumerate(self.orders)]
        return subquotient(self.rank, rows, relation_rows)

    def generating_pair(self, elements):
        """A pair of elements generating the given subgroup (None if impossible)."""
        elems = sorted(elements)
        for a in elems:
            for b in elems:
                if self.subgroup_elements([a, b]) == frozenset(elements):
                    return a, b
        return None

    def __repr__(self):
        return f"FiniteAbGroupSpec({list(self.orders)})"


class GModule:
    """Z^k modulo a relation lattice, with commuting generator actions.

    Construction validates that each action preserves the relation lattice,
    has the right order modulo relations, and that actions commute modulo
    relations; silent inconsistency here would corrupt every group computed
    downstream.
    """

    def __init__(self, spec: FiniteAbGroupSpec, generators: int, relations, actions):
        self.spec = spec
        self.generators = generators
        self.relations = [list(r) for r in relations]
        self.actions = [[list(row) for row in a] for a in actions]
        if len(self.actions) != spec.rank:
            raise ValueError("one action matrix per group generator required")
        for a in self.actions:
            if len(a) != generators or any(len(row) != generators for row in a):
                raise ValueError("action matrix has wrong shape")
        for r in self.relations:
            if len(r) != generators:
                raise ValueError("relation row has wrong length")
        self._validate()

    def _validate(self):
        k = self.generators
        ident = identity(k)
        for i, (a, r) in enumerate(zip(self.actions, self.spec.orders)):
            for row in self.relations:
                if not self._in_relations(mat_vec(row, a)):
                    raise ValueError(f"action {i} does not preserve the relation lattice")
            power = mat_pow(a, r)
            for row in mat_sub(power, ident):
                if not self._in_relations(row):
                    raise ValueError(f"action {i} does not have order dividing {r}")
        for i in range(len(self.actions)):
            for j in range(i + 1, len(self.actions)):
                diff = mat_sub(
                    mat_mul(self.actions[i], self.actions[j]),
                    mat_mul(self.actions[j], self.actions[i]),
                )
                for row in diff:
                    if not self._in_relations(row):
                        raise ValueError(f"actions {i} and {j} do not commute")

    def _in_relations(self, vector) -> bool:
        if not self.relations:
            return all(x == 0 for x in vector)
        return lattice_contains(self.relations, vector)

    def action_of(self, g) -> list:
        """Matrix of the group element g (an exponent tuple)."""
        out = identity(self.generators)
        for a, e in zip(self.actions, g):
            out = mat_mul(out, mat_pow(a, e))
        return out

    def norm_matrix(self) -> list:
        total = zeros(self.generators, self.generators)
        for g in self.spec.elements():
            total = mat_add(total, self.action_of(g))
        return total

    def element_in_norm_kernel(self, v) -> bool:
        return self._in_relations(mat_vec(v, self.norm_matrix()))

    def norm_kernel_lattice(self) -> list:
        """Generators of {x in Z^k : x . N lies in the relation lattice}."""
        n = self.norm_matrix()
        if not self.relations:
            return kernel_basis(n)
        stacked = [row[:] for row in n] + [row[:] for row in self.relations]
        ker = kernel_basis(stacked)
        # first k coordinates give the module part
        rows = [row[: self.generators] for row in ker]
        rows += [row[:] for row in self.relations]
        return lattice_basis(rows)

    def augmentation_lattice(self) -> list:
        """Lattice generated by v - v.A_i together with the relations."""
        k = self.generators
        rows = [row[:] for row in self.relations]
        ident = identity(k)
        for a in self.actions:
            for row in mat_sub(ident, a):
                rows.append(row)
        return lattice_basis(rows) if rows else []

    def direct_sum(self, other: "GModule") -> "GModule":
        if self.spec.orders != other.spec.orders:
            raise ValueError("direct sum needs the same group")
        k1, k2 = self.generators, other.generators
        relations = [r + [0] * k2 for r in self.relations]
        relations += [[0] * k1 + r for r in other.relations]
        actions = []
        for a, b in zip(self.actions, other.actions):
            m = zeros(k1 + k2, k1 + k2)
            for i in range(k1):
                for j in range(k1):
                    m[i][j] = a[i][j]
            for i in range(k2):
                for j in range(k2):
                    m[k1 + i][k1 + j] = b[i][j]
            actions.append(m)
        return GModule(self.spec, k1 + k2, relations, actions)

    def restrict_to_subgroup(self, gens) -> "GModule":
        """Same underlying module, acted on by the subgroup the gens generate.

        The subgroup is presented by the given generators with their orders
        in G; that presentation may be redundant, which is harmless here.
        """
        orders = []
        actions = []
        for g in gens:
            o = 1
            acc = g
            while any(acc):
                acc = self.spec.add(acc, g)
                o += 1
            orders.append(o)
            actions.append(self.action_of(g))
        return GModule(FiniteAbGroupSpec(orders), self.generators, self.relations, actions)


def norm_endomorphism(m: GModule) -> list:
    """Matrix of the full-orbit sum acting on the module."""
    return m.norm_matrix()


def tate_h_minus1(m: GModule) -> FiniteAbelianGroup:
    """ker(norm)/augmentation, as a finite abelian group."""
    return subquotient(m.generators, m.norm_kernel_lattice(), m.augmentation_lattice())


class WedgeGroup:
    """Exterior square of a finite abelian group with its pair basis."""

    def __init__(self, spec: FiniteAbGroupSpec):
        self.spec = spec
        self.pairs = [(i, j) for i in range(spec.rank) for j in range(i + 1, spec.rank)]
        self.pair_orders = [gcd(spec.orders[i], spec.orders[j]) for i, j in self.pairs]
        self.group = FiniteAbelianGroup.from_orders(self.pair_orders)

    def __repr__(self):
        return f"WedgeGroup({self.group!r}, pairs={self.pairs})"


def wedge_square(spec: FiniteAbGroupSpec) -> WedgeGroup:
    return WedgeGroup(spec)


class WedgeMapResult:
    """Image and cokernel of the pair map into the degree -1 Tate group."""

    def __init__(self, image, cokernel_group, h_minus1, values):
        self.image = image
        self.cokernel = cokernel_group
        self.h_minus1 = h_minus1
        self.values = values

    def __repr__(self):
        return f"WedgeMapResult(image={self.image}, cokernel={self.cokernel})"


def wedge_map(spec: FiniteAbGroupSpec, m: GModule, u: dict) -> WedgeMapResult:
    """Map sending the (i, j) wedge generator to the module element u[(i, j)].

    Every u value must lie in the kernel of the norm (checked); only the
    class modulo the augmentation lattice matters.  The cokernel is the
    group the semiramified sequence leaves after the pair classes are
    divided out.
    """
    ker = m.norm_kernel_lattice()
    aug = m.augmentation_lattice()
    values = {}
    for (i, j), v in u.items():
        if i >= j:
            raise ValueError("supply u values for i < j only")
        v = list(v)
        if not m.element_in_norm_kernel(v):
            raise NotInKernelError(f"u[{i},{j}] = {v} is not in the norm kernel")
        values[(i, j)] = v
    with_u = [row[:] for row in aug] + [list(v) for v in values.values()]
    image = subquotient(m.generators, with_u, aug)
    cok = subquotient(m.generators, ker, with_u)
    h1 = subquotient(m.generators, ker, aug)
    return WedgeMapResult(image, cok, h1, values)


def permutation_module(spec: FiniteAbGroupSpec, subgroup_gens) -> GModule:
    """Z[G/H] with coset-permutation action matrices."""
    sub = spec.subgroup_elements(subgroup_gens)
    cosets = {}
    reps = []
    for g in spec.elements():
        coset = frozenset(spec.add(g, h) for h in sub)
        if coset not in cosets:
            cosets[coset] = len(reps)
            reps.append(min(coset))
    k = len(reps)
    rep_index = {}
    for coset, idx in cosets.items():
        for g in coset:
            rep_index[g] = idx
    actions = []
    for gen in spec.generators():
        a = zeros(k, k)
        for coset, idx in cosets.items():
            target = rep_index[spec.add(next(iter(coset)), gen)]
            a[idx][target] = 1
        actions.append(a)
    return GModule(spec, k, [], actions)


def regular_module(spec: FiniteAbGroupSpec) -> GModule:
    return permutation_module(spec, [])


def cyclic_unit_module(q: int, m: int, frobenius_exponents) -> GModule:
    """Unit group of GF(q^m) as a module over the group the exponents present.

    Written additively via discrete logs: the module is Z/(q^m - 1) and the
    i-th generator acts by multiplication by q^{s_i}.
    """
    order = q**m - 1
    spec_orders = []
    actions = []
    for s in frobenius_exponents:
        o = 1
        acc = s % m
        while acc % m:
            acc += s
            o += 1
        spec_orders.append(o)
        actions.append([[pow(q, s % m, order) if order > 1 else 0]])
    spec = FiniteAbGroupSpec(spec_orders)
    return GModule(spec, 1, [[order]], actions)


def abelian_groups_of_order(n: int):
    """All abelian groups of order n, as lists of cyclic orders (one per iso class)."""
    from .finitefield import factorint

    def partitions(k):
        if k == 0:
            yield []
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or rest[0] <= first:
                    yield [first] + rest

    per_prime = []
    for p, e in factorint(n).items():
        per_prime.append([[p**part for part in parts] for parts in partitions(e)])
    out = [[]]
    for choices in per_prime:
        out = [acc + choice for acc in out for choice in choices]
    return out if n > 1 else [[]]
