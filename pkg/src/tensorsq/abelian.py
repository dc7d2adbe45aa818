"""Finitely generated abelian groups and the closed-form tensor calculus.

An abelian group is always reported as :class:`AbelianInvariants`: a free
rank plus the invariant-factor chain d1 | d2 | ... | dm with every di >= 2.
Subgroups and quotients are computed from integer relation matrices through
:func:`~tensorsq.snf.smith_normal_form`; free factors are carried
symbolically (cyclic order 0 means Z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

from sympy import factorint

from .snf import Matrix, identity, left_kernel, smith_normal_form


@dataclass(frozen=True, order=True)
class AbelianInvariants:
    """Canonical form Z^rank x Z/d1 x ... x Z/dm with d1 | d2 | ... | dm."""

    rank: int = 0
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        f = tuple(int(d) for d in self.factors)
        if any(d < 2 for d in f):
            raise ValueError(f"invariant factors must be >= 2, got {f}")
        if any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not a divisibility chain: {f}")
        object.__setattr__(self, "factors", f)

    @classmethod
    def from_cyclic(cls, orders: Iterable[int], rank: int = 0) -> "AbelianInvariants":
        """Canonicalize an arbitrary direct sum of cyclic groups.

        An order of 0 stands for a copy of Z; orders of 1 are dropped.
        """
        orders = [abs(int(d)) for d in orders]
        rank += sum(1 for d in orders if d == 0)
        finite = [d for d in orders if d > 1]
        by_prime: dict[int, list[int]] = {}
        for d in finite:
            for p, e in factorint(d).items():
                by_prime.setdefault(p, []).append(p**e)
        width = max((len(v) for v in by_prime.values()), default=0)
        chain = [1] * width
        for p, powers in by_prime.items():
            powers.sort(reverse=True)
            for i, q in enumerate(powers):
                chain[width - 1 - i] *= q
        return cls(rank, tuple(d for d in chain if d > 1))

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], ngens: int) -> "AbelianInvariants":
        """Invariants of Z^ngens modulo the row span of ``relations``."""
        if ngens == 0:
            return cls()
        rows = [list(r) for r in relations if any(r)]
        if not rows:
            return cls(ngens, ())
        diag = smith_normal_form(rows).diagonal
        nonzero = [d for d in diag if d]
        return cls(ngens - len(nonzero), tuple(d for d in nonzero if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.factors

    @property
    def torsion_order(self) -> int:
        return prod(self.factors)

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` for an infinite group."""
        return None if self.rank else self.torsion_order

    @property
    def even_factors(self) -> int:
        """Number of even invariant factors (the same in every cyclic decomposition)."""
        return sum(1 for d in self.factors if d % 2 == 0)

    def cyclic_orders(self) -> list[int]:
        """Orders of the cyclic factors, free ones first as 0."""
        return [0] * self.rank + list(self.factors)

    def primary_parts(self) -> list[int]:
        """Sorted prime-power orders of the primary decomposition (torsion only)."""
        out = []
        for d in self.factors:
            out.extend(p**e for p, e in factorint(d).items())
        return sorted(out)

    def __add__(self, other: "AbelianInvariants") -> "AbelianInvariants":
        return AbelianInvariants.from_cyclic(
            list(self.factors) + list(other.factors), self.rank + other.rank
        )

    def __sub__(self, other: "AbelianInvariants") -> "AbelianInvariants":
        """Cancel a direct summand (finite abelian groups cancel uniquely)."""
        if other.rank > self.rank:
            raise ValueError(f"{other} is not a direct summand of {self}")
        parts = self.primary_parts()
        for q in other.primary_parts():
            try:
                parts.remove(q)
            except ValueError:
                raise ValueError(f"{other} is not a direct summand of {self}") from None
        return AbelianInvariants.from_cyclic(parts, self.rank - other.rank)

    def to_json(self) -> dict:
        return {"rank": self.rank, "factors": list(self.factors)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianInvariants":
        return cls(int(data["rank"]), tuple(data["factors"]))

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.factors]
        return " x ".join(parts) if parts else "0"


def elementary_two(n: int) -> AbelianInvariants:
    """(Z/2)^n."""
    return AbelianInvariants(0, (2,) * n)


def subquotient(
    relations: Sequence[Sequence[int]],
    ngens: int,
    sub: Sequence[Sequence[int]] | None = None,
    mod: Sequence[Sequence[int]] = (),
) -> AbelianInvariants:
    """Invariants of S/M inside A = Z^ngens / <relations>.

    ``sub`` lists generators of S as coordinate rows (``None`` means all of
    A); ``mod`` lists generators of M, which must lie in S. The answer is
    Z^s modulo the lattice of coefficient vectors c with c @ sub in
    <mod> + <relations>, read off a left kernel of the stacked matrix.
    """
    subrows = identity(ngens) if sub is None else [list(r) for r in sub]
    s = len(subrows)
    if s == 0:
        return AbelianInvariants()
    stacked = subrows + [list(r) for r in mod] + [list(r) for r in relations]
    if ngens == 0:
        return AbelianInvariants.from_relations(identity(s), s)
    kernel = left_kernel(stacked)
    return AbelianInvariants.from_relations([row[:s] for row in kernel], s)


@dataclass(frozen=True)
class BasedAbelianGroup:
    """An abelian group given by labelled generators and a relation matrix."""

    labels: tuple
    relations: tuple[tuple[int, ...], ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def vector(self, coeffs: dict) -> list[int]:
        v = [0] * self.ngens
        for lab, c in coeffs.items():
            v[self.index[lab]] += c
        return v

    def invariants(self) -> AbelianInvariants:
        return AbelianInvariants.from_relations(self.relations, self.ngens)

    def subgroup(self, gens: Sequence[Sequence[int]]) -> AbelianInvariants:
        return subquotient(self.relations, self.ngens, gens)

    def quotient(self, gens: Sequence[Sequence[int]]) -> AbelianInvariants:
        return subquotient(self.relations, self.ngens, None, gens)

    def subquotient(self, sub, mod) -> AbelianInvariants:
        return subquotient(self.relations, self.ngens, sub, mod)


def abelian_tensor_square(A: AbelianInvariants) -> BasedAbelianGroup:
    """A (x) A on the basis e_ij = x_i (x) x_j of the cyclic factors of A.

    Each e_ij is killed by d_i and by d_j (free factors impose nothing), so
    e_ij has order gcd(d_i, d_j).
    """
    orders = A.cyclic_orders()
    n = len(orders)
    labels = tuple((i, j) for i in range(n) for j in range(n))
    rels = []
    for k, (i, j) in enumerate(labels):
        for d in {orders[i], orders[j]}:
            if d:
                row = [0] * len(labels)
                row[k] = d
                rels.append(tuple(row))
    return BasedAbelianGroup(labels, tuple(rels))


def nabla_generators(T: BasedAbelianGroup, n: int) -> Matrix:
    """Rows for e_ii and e_ij + e_ji (i < j)."""
    rows = [T.vector({(i, i): 1}) for i in range(n)]
    rows += [T.vector({(i, j): 1, (j, i): 1}) for i in range(n) for j in range(i + 1, n)]
    return rows


def delta_generators(T: BasedAbelianGroup, n: int) -> Matrix:
    """Rows for e_ij + e_ji over all ordered pairs, so 2 e_ii is included."""
    return [_sym(T, i, j) for i in range(n) for j in range(n)]


def _sym(T: BasedAbelianGroup, i: int, j: int) -> list[int]:
    v = [0] * T.ngens
    v[T.index[(i, j)]] += 1
    v[T.index[(j, i)]] += 1
    return v


@dataclass(frozen=True)
class AbelianSubquotients:
    tensor: AbelianInvariants
    nabla: AbelianInvariants
    delta: AbelianInvariants
    nabla_mod_delta: AbelianInvariants
    exterior: AbelianInvariants
    symmetric_tensor: AbelianInvariants
    r: int
    k: int


def abelian_subquotients(A: AbelianInvariants) -> AbelianSubquotients:
    """nabla, Delta and the derived quotients of A (x) A, all by SNF."""
    n = A.rank + len(A.factors)
    T = abelian_tensor_square(A)
    nab = nabla_generators(T, n)
    dlt = delta_generators(T, n)
    out = AbelianSubquotients(
        tensor=T.invariants(),
        nabla=T.subgroup(nab),
        delta=T.subgroup(dlt),
        nabla_mod_delta=T.subquotient(nab, dlt),
        exterior=T.quotient(nab),
        symmetric_tensor=T.quotient(dlt),
        r=A.rank,
        k=A.even_factors,
    )
    expected = elementary_two(out.r + out.k)
    if out.nabla_mod_delta != expected:
        raise AssertionError(f"nabla/Delta = {out.nabla_mod_delta}, expected {expected}")
    return out


def gcd_table(A: AbelianInvariants) -> AbelianInvariants:
    """A (x) A straight from the gcd formula; an oracle for the SNF route."""
    orders = A.cyclic_orders()
    return AbelianInvariants.from_cyclic(gcd(a, b) for a in orders for b in orders)
