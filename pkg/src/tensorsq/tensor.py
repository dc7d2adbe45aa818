"""The nonabelian tensor square G (x) G and the invariants read off it.

Elements of G are indexed by their position in ``G.elements`` (identity
first). The symbol g (x) h with g, h at positions i, j is generator number
``i * |G| + j + 1`` of the presentation. Conjugation is on the left,
``g`` acting on ``x`` as ``g x g^-1``, and the commutator is
``[g, h] = g h g^-1 h^-1``.

The relators are, for all g, g', h, h' in G,

    (g g') (x) h   =  (g g' g^-1 (x) g h g^-1) (g (x) h)
    g (x) (h h')   =  (g (x) h) (h g h^-1 (x) h h' h^-1)

and each is stored as the word ``a * b * c^-1`` for ``c = a * b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .abelian import AbelianInvariants, abelian_subquotients, elementary_two
from .coset import (
    DEFAULT_MAX_CELLS,
    CosetGroup,
    CosetTable,
    EnumerationExceeded,
    FpGroup,
    todd_coxeter,
)
from .groups import (
    AbelianClosure,
    BoundExceeded,
    FiniteGroup,
    GroupError,
    abelianization,
    derived_subgroup,
)

DEFAULT_ORDER_CAP = 24
SAMPLES = 200


class InfeasibleMethod(ValueError):
    """The requested method cannot handle this group."""


@dataclass(frozen=True)
class SymbolIndex:
    """Bijection between pairs of element positions and generator numbers."""

    n: int

    def generator(self, i: int, j: int) -> int:
        """1-based generator of the symbol with element positions (i, j)."""
        return i * self.n + j + 1

    def column(self, i: int, j: int) -> int:
        return 2 * (i * self.n + j)

    def pair(self, generator: int) -> tuple[int, int]:
        return divmod(generator - 1, self.n)


def _conj_table(G: FiniteGroup) -> np.ndarray:
    """``C[g, x]`` is the position of g x g^-1."""
    M = G.table
    inv = G.inverse_index
    n = G.order()
    return M[M[np.arange(n)[:, None], np.arange(n)[None, :]], inv[:, None]]


def commutator_table(G: FiniteGroup) -> np.ndarray:
    """``K[g, h]`` is the position of g h g^-1 h^-1."""
    M = G.table
    inv = G.inverse_index
    return M[M[M, inv[:, None]], inv[None, :]]


def tensor_square_presentation(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> tuple[FpGroup, SymbolIndex]:
    """The presentation on all |G|^2 symbols with 2|G|^3 relators, none dropped."""
    n = G.order()
    if n > cap:
        raise BoundExceeded(f"|G| = {n} exceeds the tensor-square cap {cap}")
    M = G.table.astype(np.int64)
    C = _conj_table(G).astype(np.int64)
    g, a, b = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    g, a, b = g.ravel(), a.ravel(), b.ravel()

    def sym(i, j):
        return i * n + j + 1

    # first family: g runs over g, a over g', b over h
    first = np.stack([sym(C[g, a], C[g, b]), sym(g, b), -sym(M[g, a], b)], axis=1)
    # second family: g over g, a over h, b over h'
    second = np.stack([sym(g, a), sym(C[a, g], C[a, b]), -sym(g, M[a, b])], axis=1)
    rels = np.empty((2 * n**3, 3), dtype=np.int64)
    rels[0::2] = first
    rels[1::2] = second
    return FpGroup(n * n, tuple(map(tuple, rels.tolist()))), SymbolIndex(n)


@dataclass(frozen=True)
class HomotopyInvariants:
    """pi3 = J, pi2s = J/Delta, h2 = J/nabla, plus the three group orders.

    Orders are ``None`` when the closed form cannot determine them.
    """

    pi3: AbelianInvariants | None
    pi2s: AbelianInvariants
    h2: AbelianInvariants
    order_tensor: int | None
    order_exterior: int | None
    order_symmetric: int | None
    method: str

    def to_json(self) -> dict:
        def enc(x):
            return None if x is None else x.to_json()

        return {
            "pi3": enc(self.pi3),
            "pi2s": enc(self.pi2s),
            "h2": enc(self.h2),
            "order_tensor": self.order_tensor,
            "order_exterior": self.order_exterior,
            "order_symmetric": self.order_symmetric,
        }

    @classmethod
    def from_json(cls, data: dict, method: str = "presentation") -> "HomotopyInvariants":
        def dec(x):
            return None if x is None else AbelianInvariants.from_json(x)

        return cls(
            dec(data["pi3"]),
            dec(data["pi2s"]),
            dec(data["h2"]),
            data["order_tensor"],
            data["order_exterior"],
            data["order_symmetric"],
            method,
        )


class TensorSquare:
    """G (x) G realized as the regular representation of its presentation.

    Construction enumerates the presentation, checks the table against every
    relator, builds the commutator map on the whole group and verifies that
    its kernel is central. Everything else is derived lazily.
    """

    def __init__(
        self,
        G: FiniteGroup,
        *,
        cap: int = DEFAULT_ORDER_CAP,
        max_cells: int = DEFAULT_MAX_CELLS,
    ):
        self.G = G
        self.n = G.order()
        self.presentation, self.symbols = tensor_square_presentation(G, cap)
        ct = todd_coxeter(self.presentation, max_cells=max_cells)
        if not ct.complete:
            raise EnumerationExceeded(
                f"coset enumeration for |G| = {self.n} needed more than {max_cells} cells"
            )
        ct.check(self.presentation.relators)
        self.table: CosetTable = ct
        self.T = CosetGroup(ct)
        n = self.n
        # lam[i, j] is the element i (x) j of T
        self.lam = self.T.letter_cols()[0::2].reshape(n, n).astype(np.int64)
        K = commutator_table(G).astype(np.int64).ravel()
        inv = G.inverse_index.astype(np.int64)
        images = np.empty(2 * n * n, dtype=np.int64)
        images[0::2] = K
        images[1::2] = inv[K]
        self.kappa = self.T.hom_values(images, G.table)

    def __repr__(self) -> str:
        return f"TensorSquare({self.G.name or self.n}, order={self.order})"

    @property
    def order(self) -> int:
        return self.T.order()

    def symbol(self, g: int, h: int) -> int:
        """Element g (x) h of T for element positions g, h."""
        return int(self.lam[g, h])

    @cached_property
    def derived_positions(self) -> np.ndarray:
        D = derived_subgroup(self.G)
        return np.array(sorted(self.G.index(x) for x in D.elements), dtype=np.int64)

    @cached_property
    def J(self) -> np.ndarray:
        """Kernel of the commutator map, as sorted elements of T."""
        return np.nonzero(self.kappa == 0)[0]

    @cached_property
    def J_closure(self) -> AbelianClosure:
        """J with coordinates; raises unless J is central (hence abelian)."""
        cl = _central_closure(self.T, self.J)
        if cl.order != len(self.J) or not np.all(self.kappa[cl.members] == 0):
            raise AssertionError("kernel of the commutator map is not generated as expected")
        return cl

    @cached_property
    def nabla_generators(self) -> list[int]:
        return sorted({self.symbol(x, x) for x in range(self.n)})

    @cached_property
    def delta_generators(self) -> list[int]:
        T = self.T
        return sorted({T.mul(self.symbol(x, y), self.symbol(y, x)) for x in range(self.n) for y in range(self.n)})

    @cached_property
    def nabla(self) -> AbelianClosure:
        return _central_closure(self.T, self.nabla_generators)

    @cached_property
    def delta(self) -> AbelianClosure:
        return _central_closure(self.T, self.delta_generators)

    def invariants(self) -> HomotopyInvariants:
        Jc = self.J_closure
        return HomotopyInvariants(
            pi3=Jc.invariants(),
            pi2s=Jc.quotient_invariants(self.delta.kept),
            h2=Jc.quotient_invariants(self.nabla.kept),
            order_tensor=self.order,
            order_exterior=self.order // self.nabla.order,
            order_symmetric=self.order // self.delta.order,
            method="presentation",
        )

    def lifted_action(self, g: int) -> np.ndarray:
        """The automorphism a (x) b -> (g a g^-1) (x) (g b g^-1) of T, as an index map."""
        n = self.n
        C = _conj_table(self.G)
        cols = np.empty(2 * n * n, dtype=np.int64)
        a, b = np.divmod(np.arange(n * n), n)
        cols[0::2] = 2 * (C[g, a] * n + C[g, b])
        cols[1::2] = cols[0::2] + 1
        return self.T.letter_hom(cols, self.T)

    def check_properties(self, rng: np.random.Generator | None = None) -> dict[str, bool]:
        """Structural identities every tensor square satisfies; see :func:`property_report`."""
        return property_report(self, rng)


def _central_closure(T: CosetGroup, gens: Sequence[int]) -> AbelianClosure:
    cl = AbelianClosure.build(T.order(), 0, [int(g) for g in gens], T.perm)
    for g in cl.kept:
        if not T.is_central(g):
            raise AssertionError(f"element {g} is not central")
    return cl


def commutator_map(TS: TensorSquare) -> tuple[np.ndarray, np.ndarray]:
    """Values of the commutator map on all of T and its kernel J."""
    image = np.unique(TS.kappa)
    if not np.array_equal(image, TS.derived_positions):
        raise AssertionError("image of the commutator map differs from the derived subgroup")
    TS.J_closure  # asserts centrality
    return TS.kappa, TS.J


def canonical_subgroups(TS: TensorSquare) -> tuple[np.ndarray, np.ndarray]:
    """Sorted members of nabla and Delta."""
    nab = np.sort(TS.nabla.members)
    dlt = np.sort(TS.delta.members)
    if not np.isin(dlt, nab).all():
        raise AssertionError("Delta is not contained in nabla")
    return nab, dlt


def property_report(TS: TensorSquare, rng: np.random.Generator | None = None) -> dict[str, bool]:
    rng = rng if rng is not None else np.random.default_rng(0)
    T = TS.T
    Gp = TS.derived_positions
    n = TS.n
    out: dict[str, bool] = {}
    out["kappa_image_is_derived"] = bool(np.array_equal(np.unique(TS.kappa), Gp))
    try:
        TS.J_closure
        out["J_central"] = True
    except AssertionError:
        out["J_central"] = False
    out["order_J_times_derived"] = T.order() == len(TS.J) * len(Gp)

    if len(Gp) <= 64:
        xs = Gp
    else:
        xs = rng.choice(Gp, SAMPLES)
    out["diagonal_trivial_on_derived"] = all(TS.symbol(x, x) == 0 for x in xs)

    if len(Gp) * n <= SAMPLES:
        pairs = [(x, a) for x in Gp for a in range(n)]
    else:
        pairs = list(zip(rng.choice(Gp, SAMPLES), rng.integers(0, n, SAMPLES)))
    out["symmetric_product_trivial_on_derived"] = all(
        T.mul(TS.symbol(x, a), TS.symbol(a, x)) == 0 for x, a in pairs
    )

    nab = T.mask(TS.nabla.members)
    Jm = T.mask(TS.J)
    out["delta_in_nabla"] = bool(nab[TS.delta.members].all())
    out["nabla_in_J"] = bool(Jm[TS.nabla.members].all())

    gens = [TS.G.index(g) for g in TS.G.gens]
    Jgens = TS.J_closure.kept
    out["G_acts_trivially_on_J"] = all(
        np.array_equal(TS.lifted_action(g)[Jgens], Jgens) for g in gens
    )

    inv = TS.invariants()
    d = len(Gp)
    out["exact_rows"] = (
        inv.order_tensor == inv.pi3.order * d
        and inv.order_exterior == inv.h2.order * d
        and inv.order_symmetric == inv.pi2s.order * d
    )
    r_plus_k = _r_plus_k(abelianization(TS.G))
    out["pi2s_is_h2_plus_twos"] = inv.pi2s == inv.h2 + elementary_two(r_plus_k)
    return out


def _r_plus_k(A: AbelianInvariants) -> int:
    return A.rank + A.even_factors


def tensor_square(G: FiniteGroup, *, cap: int = DEFAULT_ORDER_CAP, max_cells: int = DEFAULT_MAX_CELLS) -> TensorSquare:
    return TensorSquare(G, cap=cap, max_cells=max_cells)


def closed_form_abelian(A: AbelianInvariants) -> HomotopyInvariants:
    sq = abelian_subquotients(A)
    return HomotopyInvariants(
        pi3=sq.tensor,
        pi2s=sq.symmetric_tensor,
        h2=sq.exterior,
        order_tensor=sq.tensor.order,
        order_exterior=sq.exterior.order,
        order_symmetric=sq.symmetric_tensor.order,
        method="closed-form",
    )


def _has_complement(G: FiniteGroup) -> bool:
    from .groups import find_complement

    try:
        return find_complement(G, derived_subgroup(G)) is not None
    except BoundExceeded:
        return False


def closed_form(G: FiniteGroup, catalog_name: str | None = None) -> HomotopyInvariants:
    """Abelian calculus for abelian G; otherwise catalog values.

    For a nonabelian catalog group, missing entries are filled only where a
    formula determines them: h2 by cancelling (Z/2)^(r+k) from pi2s, and
    pi3 as h2 plus nabla of the abelianization when G' has a complement.
    """
    from .catalog import catalog_lookup, CatalogError

    if G.is_abelian():
        from .groups import abelian_invariants

        return closed_form_abelian(abelian_invariants(G))
    name = catalog_name or G.name
    try:
        rec = catalog_lookup(name)
    except CatalogError:
        raise InfeasibleMethod(f"no closed form for nonabelian group {name!r}") from None
    Gab = abelianization(G)
    d = G.order() // Gab.order
    pi2s = rec.pi2s
    h2 = rec.h2 if rec.h2 is not None else pi2s - elementary_two(_r_plus_k(Gab))
    pi3 = rec.pi3
    if pi3 is None and _has_complement(G):
        pi3 = h2 + abelian_subquotients(Gab).nabla
    return HomotopyInvariants(
        pi3=pi3,
        pi2s=pi2s,
        h2=h2,
        order_tensor=None if pi3 is None else pi3.order * d,
        order_exterior=h2.order * d,
        order_symmetric=pi2s.order * d,
        method="closed-form",
    )


def homotopy_invariants(
    G: FiniteGroup,
    method: str = "auto",
    *,
    cap: int = DEFAULT_ORDER_CAP,
    max_cells: int = DEFAULT_MAX_CELLS,
    catalog_name: str | None = None,
) -> HomotopyInvariants:
    """pi3, pi2s and h2 of G.

    ``auto`` uses the abelian calculus for abelian groups and the
    presentation otherwise; ``closed-form`` never enumerates.
    """
    if method not in ("auto", "presentation", "closed-form"):
        raise ValueError(f"unknown method {method!r}")
    if method == "closed-form" or (method == "auto" and G.is_abelian()):
        return closed_form(G, catalog_name)
    return TensorSquare(G, cap=cap, max_cells=max_cells).invariants()
