"""Finite permutation groups.

Permutations act on the right on points 0..n-1 and multiply left to right:
``(p * q)(i) == q(p(i))``. Group-theoretic conventions on top of that follow
the usual left-conjugation rule, ``conj(g, x) == g * x * g**-1`` and
``commutator(g, h) == g * h * g**-1 * h**-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .abelian import AbelianInvariants


class GroupError(ValueError):
    """Raised for invalid group-theoretic input (non-member, not normal, ...)."""


class BoundExceeded(RuntimeError):
    """A configured size bound would be exceeded."""


class Perm:
    """An immutable permutation of ``range(degree)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        self.images = tuple(int(i) for i in images)
        if check and sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a permutation: {self.images}")
        self._hash = hash(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int, *, base: int = 1) -> "Perm":
        """Build from cycle notation; points are ``base``-indexed."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            pts = [c - base for c in cyc]
            if any(p < 0 or p >= degree for p in pts) or seen & set(pts) or len(set(pts)) != len(pts):
                raise GroupError(f"bad cycle {tuple(cyc)} for degree {degree}")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(img, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        return Perm([o[i] for i in self.images], check=False)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv, check=False)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-indexed."""
        out, seen = [], set()
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc, p = [], start
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = self.images[p]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity else 1

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)


def conj(g: Perm, x: Perm) -> Perm:
    """Left conjugate g x g^-1."""
    return g * x * g.inverse()


def commutator(g: Perm, h: Perm) -> Perm:
    return g * h * g.inverse() * h.inverse()


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {}


class StabilizerChain:
    """Deterministic Schreier-Sims base and strong generating set."""

    def __init__(self, gens: Sequence[Perm], degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        ident = Perm.identity(degree)
        for g in gens:
            if g.is_identity:
                continue
            self._add_strong(g, 0)
        self._complete(ident)

    def _moved_point(self, g: Perm) -> int:
        base = {lv.point for lv in self.levels}
        for i, j in enumerate(g.images):
            if i != j and i not in base:
                return i
        raise AssertionError("element fixes every point yet is not the identity")

    def _add_strong(self, g: Perm, level: int) -> None:
        if level == len(self.levels):
            self.levels.append(_Level(self._moved_point(g)))
        for lv in self.levels[: level + 1]:
            lv.gens.append(g)
        # the element also fixes the earlier base points, so it lives in
        # every stabilizer down to `level`
        for lv in self.levels[: level + 1]:
            lv.transversal = {}

    def _orbit(self, lv: _Level, ident: Perm) -> None:
        trans = {lv.point: ident}
        queue = [lv.point]
        for b in queue:
            u = trans[b]
            for s in lv.gens:
                c = s.images[b]
                if c not in trans:
                    trans[c] = u * s
                    queue.append(c)
        lv.transversal = trans

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through the chain; returns the residue and the level it stopped at."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g.images[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = g * u.inverse()
        return g, len(self.levels)

    def _complete(self, ident: Perm) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            self._orbit(lv, ident)
            restarted = False
            for b, u in list(lv.transversal.items()):
                for s in lv.gens:
                    h = u * s * lv.transversal[s.images[b]].inverse()
                    if h.is_identity:
                        continue
                    res, j = self.sift(h, i + 1)
                    if not res.is_identity:
                        self._add_strong(res, j)
                        for k in range(i + 1, len(self.levels)):
                            self._orbit(self.levels[k], ident)
                        i = j
                        restarted = True
                        break
                if restarted:
                    break
            if not restarted:
                i -= 1
        for lv in self.levels:
            if not lv.transversal:
                self._orbit(lv, ident)

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        res, _ = self.sift(g)
        return res.is_identity


ENUMERATION_LIMIT = 100_000


class FiniteGroup:
    """A permutation group given by generators.

    The stabilizer chain is built on construction; the element list and the
    multiplication table are computed on first use and cached.
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None, name: str | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise GroupError("degree required for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise GroupError("generators of mixed degree")
        self.degree = degree
        self.gens = gens
        self.name = name
        self.identity = Perm.identity(degree)
        self.chain = StabilizerChain(gens, degree)

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.gens)} generators>"
        return f"FiniteGroup({label}, order={self.order()})"

    def order(self) -> int:
        return self.chain.order

    def __len__(self) -> int:
        return self.order()

    def __contains__(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a, b in itertools.combinations(self.gens, 2))

    @cached_property
    def _enumeration(self) -> tuple[list[Perm], dict[Perm, int]]:
        if self.order() > ENUMERATION_LIMIT:
            raise BoundExceeded(f"refusing to enumerate a group of order {self.order()}")
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in self.gens:
                    y = x * s
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        elems = sorted(seen)
        assert len(elems) == self.order()
        return elems, {e: i for i, e in enumerate(elems)}

    @property
    def elements(self) -> list[Perm]:
        """All elements in lexicographic order of images (identity first)."""
        return self._enumeration[0]

    def index(self, g: Perm) -> int:
        try:
            return self._enumeration[1][g]
        except KeyError:
            raise GroupError(f"{g!r} is not an element") from None

    @cached_property
    def words(self) -> dict[Perm, tuple[int, ...]]:
        """Shortlex-minimal word (generator indices, positive powers) for each element."""
        out = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                w = out[x]
                for k, s in enumerate(self.gens):
                    y = x * s
                    if y not in out:
                        out[y] = w + (k,)
                        nxt.append(y)
            frontier = nxt
        return out

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j] == index(elements[i] * elements[j])``."""
        n = self.order()
        if n > 4096:
            raise BoundExceeded(f"multiplication table for order {n} is too large")
        elems, idx = self._enumeration
        cols = [np.array([idx[e * g] for e in elems], dtype=np.int32) for g in elems]
        return np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int32)

    @cached_property
    def inverse_index(self) -> np.ndarray:
        return np.array([self.index(e.inverse()) for e in self.elements], dtype=np.int32)

    def right_mult(self, g: Perm) -> np.ndarray:
        """Index map x -> x * g over the element list."""
        elems, idx = self._enumeration
        return np.array([idx[e * g] for e in elems], dtype=np.int64)

    def random_element(self, rng: np.random.Generator) -> Perm:
        return self.elements[int(rng.integers(self.order()))]


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by generators."""

    parent: FiniteGroup
    generators: tuple[Perm, ...]
    normal: bool = False
    group: FiniteGroup = field(init=False, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if g not in self.parent:
                raise GroupError(f"{g!r} is not in the parent group")
        object.__setattr__(self, "group", FiniteGroup(self.generators, self.parent.degree))

    def order(self) -> int:
        return self.group.order()

    def __contains__(self, g: Perm) -> bool:
        return g in self.group

    @property
    def elements(self) -> list[Perm]:
        return self.group.elements

    def is_normal(self) -> bool:
        return all(conj(t, s) in self.group for s in self.generators for t in self.parent.gens)


def order(G: FiniteGroup) -> int:
    return G.order()


def normal_closure(G: FiniteGroup, S: Iterable[Perm]) -> Subgroup:
    gens = [s for s in S if not s.is_identity]
    for s in gens:
        if s not in G:
            raise GroupError(f"{s!r} is not in the group")
    H = FiniteGroup(gens, G.degree)
    queue = list(gens)
    while queue:
        s = queue.pop(0)
        for t in G.gens:
            c = conj(t, s)
            if c not in H:
                gens.append(c)
                queue.append(c)
                H = FiniteGroup(gens, G.degree)
    return Subgroup(G, tuple(gens), normal=True)


def subgroup_generated(G: FiniteGroup, S: Iterable[Perm], normal_closure_: bool = False) -> Subgroup:
    """Subgroup generated by ``S`` (or its normal closure)."""
    S = list(S)
    if normal_closure_:
        return normal_closure(G, S)
    sub = Subgroup(G, tuple(S))
    if sub.is_normal():
        object.__setattr__(sub, "normal", True)
    return sub


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    comms = [commutator(a, b) for a, b in itertools.combinations(G.gens, 2)]
    return normal_closure(G, comms)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (), normal=True)


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, G.gens, normal=True)


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    """Homomorphism determined by the images of the domain generators.

    Construction checks well-definedness: every product when both groups are
    small enough to carry tables, otherwise every edge of the Cayley graph
    (equivalently, every defining relation).
    """

    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple[Perm, ...]
    mapping: dict = field(init=False, repr=False)

    def __post_init__(self):
        D, C = self.domain, self.codomain
        if len(self.images) != len(D.gens):
            raise GroupError("one image per domain generator required")
        for y in self.images:
            if y not in C:
                raise GroupError(f"image {y!r} is not in the codomain")
        mapping = {D.identity: C.identity}
        frontier = [D.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, t in zip(D.gens, self.images):
                    y = x * s
                    val = mapping[x] * t
                    old = mapping.get(y)
                    if old is None:
                        mapping[y] = val
                        nxt.append(y)
                    elif old != val:
                        raise GroupError("generator images do not define a homomorphism")
            frontier = nxt
        object.__setattr__(self, "mapping", mapping)
        if D.order() <= 1000 and C.order() <= 1000:
            m = np.array([C.index(mapping[x]) for x in D.elements])
            if not np.array_equal(m[D.table], C.table[m[:, None], m[None, :]]):
                raise GroupError("generator images do not define a homomorphism")

    def __call__(self, g: Perm) -> Perm:
        try:
            return self.mapping[g]
        except KeyError:
            raise GroupError(f"{g!r} is not in the domain") from None

    def kernel(self) -> Subgroup:
        ker = [x for x, y in self.mapping.items() if y.is_identity and not x.is_identity]
        return subgroup_generated(self.domain, _small_generating_set(self.domain, ker))

    def image_order(self) -> int:
        return len(set(self.mapping.values()))


def _small_generating_set(G: FiniteGroup, elems: Sequence[Perm]) -> list[Perm]:
    gens: list[Perm] = []
    H = FiniteGroup([], G.degree)
    for x in sorted(elems):
        if x not in H:
            gens.append(x)
            H = FiniteGroup(gens, G.degree)
    return gens


class Quotient(NamedTuple):
    group: FiniteGroup
    projection: GroupHomomorphism


def quotient_group(G: FiniteGroup, N: Subgroup) -> Quotient:
    """G/N acting on the right cosets of N."""
    if not N.is_normal():
        raise GroupError("quotient by a subgroup that is not normal")
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    Nel = N.elements
    for g in G.elements:
        if g in coset_of:
            continue
        c = len(reps)
        reps.append(g)
        for n in Nel:
            coset_of[n * g] = c
    perms = [Perm([coset_of[r * s] for r in reps], check=False) for s in G.gens]
    Q = FiniteGroup(perms, max(len(reps), 1) if reps else 1)
    assert Q.order() * N.order() == G.order()
    return Quotient(Q, GroupHomomorphism(G, Q, tuple(perms)))


@dataclass
class AbelianClosure:
    """An abelian subgroup of a group whose elements are indexed 0..size-1.

    Built by adjoining generators one at a time; each new generator g of
    order k modulo the current subgroup S contributes the relation
    k*e_g = coords(g^k). ``coords[pos[x]]`` are the coordinates of member x.
    """

    members: np.ndarray
    coords: np.ndarray
    pos: np.ndarray
    kept: list[int]
    relations: list[list[int]]

    @classmethod
    def build(cls, size, identity, gens, right_mult) -> "AbelianClosure":
        pos = np.full(size, -1, dtype=np.int64)
        pos[identity] = 0
        members = np.array([identity], dtype=np.int64)
        coords = np.zeros((1, 0), dtype=np.int64)
        kept: list[int] = []
        relations: list[list[int]] = []
        for g in gens:
            g = int(g)
            if pos[g] >= 0:
                continue
            R = right_mult(g)
            layers, layer_coords = [members], [coords]
            layer = members
            k = 0
            while True:
                layer = R[layer]
                k += 1
                if pos[layer[0]] >= 0:
                    break
                if (pos[layer] >= 0).any():
                    raise GroupError("generators do not commute")
                pos[layer] = len(members) * k + np.arange(len(layer))
                layers.append(layer)
                layer_coords.append(coords)
            power = coords[pos[layer[0]]]
            width = coords.shape[1]
            new_coords = np.concatenate(
                [np.hstack([c, np.full((len(c), 1), j, dtype=np.int64)]) for j, c in enumerate(layer_coords)]
            )
            relations = [r + [0] for r in relations]
            relations.append([-int(v) for v in power] + [k])
            members = np.concatenate(layers)
            coords = new_coords
            kept.append(g)
            assert coords.shape == (len(members), width + 1)
        return cls(members, coords, pos, kept, relations)

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, x: int) -> bool:
        return self.pos[x] >= 0

    def coordinates(self, x: int) -> list[int]:
        p = self.pos[x]
        if p < 0:
            raise GroupError(f"element {x} is not in the subgroup")
        return [int(v) for v in self.coords[p]]

    def invariants(self) -> AbelianInvariants:
        return AbelianInvariants.from_relations(self.relations, len(self.kept))

    def quotient_invariants(self, mod_elements: Iterable[int]) -> AbelianInvariants:
        """Invariants of this subgroup modulo the subgroup generated by ``mod_elements``."""
        rows = [self.coordinates(int(x)) for x in mod_elements]
        return AbelianInvariants.from_relations(self.relations + rows, len(self.kept))


def abelian_invariants(G: FiniteGroup) -> AbelianInvariants:
    """Invariants of an abelian permutation group."""
    if not G.is_abelian():
        raise GroupError("group is not abelian")
    gens = [G.index(g) for g in G.gens]
    return AbelianClosure.build(G.order(), 0, gens, lambda i: G.right_mult(G.elements[i])).invariants()


def abelian_invariants_of_quotient(G: FiniteGroup, N: Subgroup) -> AbelianInvariants:
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    Q = quotient_group(G, N).group
    if not Q.is_abelian():
        raise GroupError("quotient is not abelian")
    return abelian_invariants(Q)


def abelianization(G: FiniteGroup) -> AbelianInvariants:
    return abelian_invariants_of_quotient(G, derived_subgroup(G))


class SemidirectProduct(NamedTuple):
    group: FiniteGroup
    embed_n: GroupHomomorphism
    embed_h: GroupHomomorphism
    projection: GroupHomomorphism


def _automorphism_table(N: FiniteGroup, images: Sequence[Perm]) -> np.ndarray:
    """Index array of the endomorphism of N sending N.gens to ``images``; must be bijective."""
    hom = GroupHomomorphism(N, N, tuple(images))
    arr = np.array([N.index(hom(x)) for x in N.elements], dtype=np.int64)
    if len(np.unique(arr)) != len(arr):
        raise GroupError("action of a generator is not bijective")
    return arr


def semidirect_product(
    N: FiniteGroup,
    H: FiniteGroup,
    phi: Sequence[Sequence[Perm]] | Callable[[Perm, Perm], Perm],
) -> SemidirectProduct:
    """N x| H for a left action of H on N by automorphisms.

    ``phi`` gives, for each generator of H, the images of the generators of
    N; or it is a callable ``phi(h, n)`` evaluated on generators only.
    Elements are pairs (n, h) multiplied by (n1,h1)(n2,h2) = (n1 phi_h1(n2), h1 h2);
    the group is realized by its right regular representation on pairs.
    """
    if callable(phi):
        phi = [[phi(h, n) for n in N.gens] for h in H.gens]
    if len(phi) != len(H.gens):
        raise GroupError("one automorphism per generator of H required")
    gen_auts = [_automorphism_table(N, imgs) for imgs in phi]

    # extend to all of H, checking that h -> phi_h is a homomorphism
    ident = np.arange(N.order())
    auts: dict[Perm, np.ndarray] = {H.identity: ident}
    frontier = [H.identity]
    while frontier:
        nxt = []
        for h in frontier:
            for s, a in zip(H.gens, gen_auts):
                y = h * s
                val = auts[h][a]
                if y not in auts:
                    auts[y] = val
                    nxt.append(y)
                elif not np.array_equal(auts[y], val):
                    raise GroupError("phi is not an action of H")
        frontier = nxt

    nE, hE = N.elements, H.elements
    nH = len(hE)
    Nt = N.table

    def pair_index(i: int, j: int) -> int:
        return i * nH + j

    def right_perm(n0: int, h0: Perm) -> Perm:
        img = [0] * (len(nE) * nH)
        for j, h in enumerate(hE):
            a = auts[h]
            jh = H.index(h * h0)
            for i in range(len(nE)):
                img[pair_index(i, j)] = pair_index(int(Nt[i, a[n0]]), jh)
        return Perm(img, check=False)

    n_gens = [right_perm(N.index(g), H.identity) for g in N.gens]
    h_gens = [right_perm(0, g) for g in H.gens]
    G = FiniteGroup(n_gens + h_gens, len(nE) * nH)
    assert G.order() == N.order() * H.order()
    embed_n = GroupHomomorphism(N, G, tuple(n_gens))
    embed_h = GroupHomomorphism(H, G, tuple(h_gens))
    proj = GroupHomomorphism(G, H, tuple([H.identity] * len(n_gens) + list(H.gens)))
    return SemidirectProduct(G, embed_n, embed_h, proj)


COMPLEMENT_BOUND = 1000


def _closure_indices(table: np.ndarray, seed: Iterable[int]) -> frozenset[int]:
    elems = {0}
    gens = list(seed)
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def find_complement(G: FiniteGroup, N: Subgroup, bound: int = COMPLEMENT_BOUND) -> Subgroup | None:
    """A subgroup B with B & N = 1 and |B| |N| = |G|, or None if none exists.

    Exhaustive: subgroups meeting N trivially are grown one generator at a
    time, pruned by Lagrange (|B| must divide the index of N).
    """
    if G.order() > bound:
        raise BoundExceeded(f"complement search limited to order {bound}")
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    m = G.order() // N.order()
    T = G.table
    in_n = np.zeros(G.order(), dtype=bool)
    for x in N.elements:
        in_n[G.index(x)] = True
    cands = [i for i, e in enumerate(G.elements) if i and not in_n[i] and m % e.order() == 0]
    seen: set[frozenset[int]] = set()

    def grow(gens: list[int], elems: frozenset[int], start: int):
        if len(elems) == m:
            return gens
        for idx in range(start, len(cands)):
            g = cands[idx]
            if g in elems:
                continue
            new = _closure_indices(T, gens + [g])
            if m % len(new) or any(in_n[x] for x in new if x):
                continue
            if new in seen:
                continue
            seen.add(new)
            found = grow(gens + [g], new, idx + 1)
            if found is not None:
                return found
        return None

    found = grow([], frozenset({0}), 0)
    if found is None:
        return None
    B = Subgroup(G, tuple(G.elements[i] for i in found))
    assert B.order() * N.order() == G.order()
    assert not any(x in N for x in B.elements if not x.is_identity)
    return B


ActionSpec = Callable[[Perm, Perm], Perm] | Sequence[Sequence[Perm]]


def _action_tables(acting: FiniteGroup, target: FiniteGroup, action: ActionSpec) -> dict[Perm, np.ndarray]:
    """Index arrays of the automorphism of ``target`` for every element of ``acting``."""
    if callable(action):
        tables = {}
        for g in acting.elements:
            arr = np.array([target.index(action(g, x)) for x in target.elements], dtype=np.int64)
            tables[g] = arr
        ident = tables[acting.identity]
        if not np.array_equal(ident, np.arange(target.order())):
            raise GroupError("identity does not act trivially")
        T = target.table
        for g, a in tables.items():
            if len(np.unique(a)) != len(a) or not np.array_equal(a[T], T[a[:, None], a[None, :]]):
                raise GroupError("action is not by automorphisms")
        for g in acting.gens:
            for h in acting.elements:
                if not np.array_equal(tables[h * g], tables[h][tables[g]]):
                    raise GroupError("not a left action")
        return tables
    gen_auts = [_automorphism_table(target, imgs) for imgs in action]
    tables = {acting.identity: np.arange(target.order())}
    frontier = [acting.identity]
    while frontier:
        nxt = []
        for h in frontier:
            for s, a in zip(acting.gens, gen_auts):
                y = h * s
                val = tables[h][a]
                if y not in tables:
                    tables[y] = val
                    nxt.append(y)
                elif not np.array_equal(tables[y], val):
                    raise GroupError("generator automorphisms do not define an action")
        frontier = nxt
    return tables


@dataclass(eq=False)
class ActionPair:
    """Mutual left actions of G on H and of H on G."""

    G: FiniteGroup
    H: FiniteGroup
    act_gh: ActionSpec
    act_hg: ActionSpec

    @classmethod
    def conjugation(cls, G: FiniteGroup) -> "ActionPair":
        return cls(G, G, conj, conj)

    @classmethod
    def trivial(cls, G: FiniteGroup, H: FiniteGroup) -> "ActionPair":
        return cls(G, H, lambda g, h: h, lambda h, g: g)


class CompatibilityResult(NamedTuple):
    compatible: bool
    witness: tuple | None = None


def check_compatible_actions(pair: ActionPair, bound: int = 1000) -> CompatibilityResult:
    """Exhaustive check of both compatibility identities.

    First: act_gh(act_hg(h, g), h') == h (g (h^-1 h' h)) h^-1, i.e. the
    element h g h^-1 acting as a composite on H. Second, symmetrically,
    with the roles of G and H exchanged. A failing instance comes back as
    ``("G", g, h, h')`` or ``("H", h, g, g')``.
    """
    G, H = pair.G, pair.H
    if G.order() > bound or H.order() > bound:
        raise BoundExceeded(f"compatibility check limited to order {bound}")
    gh = _action_tables(G, H, pair.act_gh)
    hg = _action_tables(H, G, pair.act_hg)
    Ge, He = G.elements, H.elements
    Gt, Ht = G.table, H.table
    Gi, Hi = G.inverse_index, H.inverse_index
    all_h = np.arange(H.order())
    all_g = np.arange(G.order())
    for hi, h in enumerate(He):
        hinv = Hi[hi]
        conj_in = Ht[Ht[hinv, all_h], hi]  # h^-1 h' h
        for gi, g in enumerate(Ge):
            lhs = gh[Ge[hg[h][gi]]]
            rhs = Ht[Ht[hi, gh[g][conj_in]], hinv]
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                return CompatibilityResult(False, ("G", g, h, He[bad[0]]))
    for gi, g in enumerate(Ge):
        ginv = Gi[gi]
        conj_in = Gt[Gt[ginv, all_g], gi]
        for hi, h in enumerate(He):
            lhs = hg[He[gh[g][hi]]]
            rhs = Gt[Gt[gi, hg[h][conj_in]], ginv]
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                return CompatibilityResult(False, ("H", h, g, Ge[bad[0]]))
    return CompatibilityResult(True)
