"""Finitely presented groups and Todd-Coxeter coset enumeration.

Words are tuples of signed, 1-based generator indices: ``2`` is x2 and
``-2`` is x2^-1. Inside the enumerator generator ``k`` (0-based) owns two
table columns, ``2k`` for x and ``2k+1`` for x^-1, so ``col ^ 1`` is the
inverse column.

The enumerator is deduction driven: the first undefined entry of the first
live coset receives a new coset, and every new entry is pushed on a
deduction stack whose processing scans each cyclic conjugate of each
relator (and inverse) that starts with the new letter. Coincidences are
resolved immediately with a union-find forwarding array. The finished
table is renumbered in breadth-first order, so the result depends only on
the presentation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from numba import njit

Word = tuple[int, ...]

DEFAULT_MAX_CELLS = 2_000_000


class EnumerationExceeded(RuntimeError):
    """Coset enumeration ran out of room; raise the cap or use the closed form."""


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i : j + 1])


def invert(word: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(word))


@dataclass(frozen=True)
class FpGroup:
    """Generators x1..xn and relator words."""

    ngens: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        for r in self.relators:
            for a in r:
                if a == 0 or abs(a) > self.ngens:
                    raise ValueError(f"letter {a} out of range in relator {r}")

    def to_text(self) -> str:
        gens = " ".join(f"x{i + 1}" for i in range(self.ngens))
        rels = " / ".join(word_to_text(r) for r in self.relators)
        return f"generators: {gens}\nrelators: {rels}\n"

    @classmethod
    def from_text(cls, text: str) -> "FpGroup":
        fields = {}
        for line in text.strip().splitlines():
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
        gens = fields.get("generators", "").split()
        for k, g in enumerate(gens):
            if g != f"x{k + 1}":
                raise ValueError(f"expected generator x{k + 1}, got {g!r}")
        rel_text = fields.get("relators", "")
        rels = tuple(word_from_text(r) for r in rel_text.split("/")) if rel_text else ()
        return cls(len(gens), rels)


def word_to_text(word: Sequence[int]) -> str:
    if not word:
        return "1"
    return "*".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in word)


_LETTER = re.compile(r"x(\d+)(\^-1)?$")


def word_from_text(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    out = []
    for tok in text.split("*"):
        m = _LETTER.match(tok.strip())
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        k = int(m.group(1))
        out.append(-k if m.group(2) else k)
    return tuple(out)


def _letters(word: Word) -> list[int]:
    return [2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1 for a in word]


# ---------------------------------------------------------------------------
# compiled kernel

@njit(cache=True)
def _rep(p, c):
    r = c
    while p[r] != r:
        r = p[r]
    while p[c] != r:
        nxt = p[c]
        p[c] = r
        c = nxt
    return r


@njit(cache=True)
def _merge(p, queue, qlen, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a == b:
        return qlen
    if a > b:
        a, b = b, a
    p[b] = a
    queue[qlen] = b
    return qlen + 1


@njit(cache=True)
def _push(stack, top, c, x):
    if top + 2 > stack.shape[0]:
        grown = np.empty(stack.shape[0] * 2, np.int32)
        grown[:top] = stack[:top]
        stack = grown
    stack[top] = c
    stack[top + 1] = x
    return stack, top + 2


@njit(cache=True)
def _coincidence(table, p, queue, stack, top, a, b):
    ncols = table.shape[1]
    qlen = _merge(p, queue, 0, a, b)
    i = 0
    while i < qlen:
        e = queue[i]
        i += 1
        for x in range(ncols):
            f = table[e, x]
            if f >= 0:
                xi = x ^ 1
                table[f, xi] = -1
                e1 = _rep(p, e)
                f1 = _rep(p, f)
                if table[e1, x] >= 0:
                    qlen = _merge(p, queue, qlen, f1, table[e1, x])
                elif table[f1, xi] >= 0:
                    qlen = _merge(p, queue, qlen, e1, table[f1, xi])
                else:
                    table[e1, x] = f1
                    table[f1, xi] = e1
                    stack, top = _push(stack, top, e1, x)
    return stack, top, qlen


@njit(cache=True)
def _scan(table, p, queue, stack, top, c, letters, s, e):
    """Scan word letters[s:e] at coset c without defining; returns cosets killed."""
    f = c
    i = s
    while i < e:
        nf = table[f, letters[i]]
        if nf < 0:
            break
        f = nf
        i += 1
    if i == e:
        if f != c:
            return _coincidence(table, p, queue, stack, top, f, c)
        return stack, top, 0
    b = c
    j = e - 1
    while j >= i:
        nb = table[b, letters[j] ^ 1]
        if nb < 0:
            break
        b = nb
        j -= 1
    if j < i:
        if f != b:
            return _coincidence(table, p, queue, stack, top, f, b)
        return stack, top, 0
    if j == i:
        table[f, letters[i]] = b
        table[b, letters[i] ^ 1] = f
        stack, top = _push(stack, top, f, letters[i])
    return stack, top, 0


@njit(cache=True)
def _process(table, p, queue, stack, top, letters, rw_off, bl_off, bl_idx):
    killed = 0
    while top > 0:
        top -= 2
        a = stack[top]
        y = stack[top + 1]
        if p[a] != a:
            continue
        for k in range(bl_off[y], bl_off[y + 1]):
            w = bl_idx[k]
            stack, top, n = _scan(table, p, queue, stack, top, a, letters, rw_off[w], rw_off[w + 1])
            killed += n
            if p[a] != a:
                break
    return stack, top, killed


@njit(cache=True)
def _enumerate(ncols, letters, rw_off, bl_off, bl_idx, sub_letters, sub_off, max_cosets, init_cap):
    cap = min(init_cap, max_cosets)
    table = np.full((cap, ncols), -1, np.int32)
    p = np.arange(cap).astype(np.int32)
    queue = np.empty(cap, np.int32)
    stack = np.empty(1024, np.int32)
    top = 0
    nrows = 1
    nlive = 1

    # subgroup generators: scan and fill at coset 0
    for g in range(sub_off.shape[0] - 1):
        s = sub_off[g]
        e = sub_off[g + 1]
        while True:
            f = 0
            i = s
            while i < e and table[f, sub_letters[i]] >= 0:
                f = table[f, sub_letters[i]]
                i += 1
            if i == e:
                if f != 0:
                    stack, top, n = _coincidence(table, p, queue, stack, top, f, 0)
                    nlive -= n
                break
            b = 0
            j = e - 1
            while j >= i and table[b, sub_letters[j] ^ 1] >= 0:
                b = table[b, sub_letters[j] ^ 1]
                j -= 1
            if j < i:
                if f != b:
                    stack, top, n = _coincidence(table, p, queue, stack, top, f, b)
                    nlive -= n
                break
            if j == i:
                table[f, sub_letters[i]] = b
                table[b, sub_letters[i] ^ 1] = f
                stack, top = _push(stack, top, f, sub_letters[i])
                break
            if nrows >= max_cosets:
                return table[:nrows], p[:nrows], nrows, nlive, 1
            if nrows >= cap:
                cap = min(cap * 2, max_cosets)
                t2 = np.full((cap, ncols), -1, np.int32)
                t2[:nrows] = table[:nrows]
                table = t2
                p2 = np.arange(cap).astype(np.int32)
                p2[:nrows] = p[:nrows]
                p = p2
                queue = np.empty(cap, np.int32)
            d = nrows
            nrows += 1
            nlive += 1
            table[f, sub_letters[i]] = d
            table[d, sub_letters[i] ^ 1] = f
            stack, top = _push(stack, top, f, sub_letters[i])
        stack, top, n = _process(table, p, queue, stack, top, letters, rw_off, bl_off, bl_idx)
        nlive -= n

    stack, top, n = _process(table, p, queue, stack, top, letters, rw_off, bl_off, bl_idx)
    nlive -= n
    c = 0
    while c < nrows:
        if p[c] == c:
            for x in range(ncols):
                if p[c] != c:
                    break
                if table[c, x] >= 0:
                    continue
                if nrows >= max_cosets:
                    return table[:nrows], p[:nrows], nrows, nlive, 1
                if nrows >= cap:
                    cap = min(cap * 2, max_cosets)
                    t2 = np.full((cap, ncols), -1, np.int32)
                    t2[:nrows] = table[:nrows]
                    table = t2
                    p2 = np.arange(cap).astype(np.int32)
                    p2[:nrows] = p[:nrows]
                    p = p2
                    queue = np.empty(cap, np.int32)
                d = nrows
                nrows += 1
                nlive += 1
                table[c, x] = d
                table[d, x ^ 1] = c
                stack, top = _push(stack, top, c, x)
                stack, top, n = _process(table, p, queue, stack, top, letters, rw_off, bl_off, bl_idx)
                nlive -= n
        c += 1
    return table[:nrows], p[:nrows], nrows, nlive, 0


@njit(cache=True)
def _standardize(table, p, nlive):
    """Renumber live cosets breadth-first from 0; also return the BFS tree."""
    nrows, ncols = table.shape
    new = np.full(nrows, -1, np.int64)
    order = np.empty(nlive, np.int64)
    parent = np.full(nlive, -1, np.int64)
    via = np.full(nlive, -1, np.int64)
    new[0] = 0
    order[0] = 0
    cnt = 1
    head = 0
    while head < cnt:
        c = order[head]
        for x in range(ncols):
            d = table[c, x]
            if d < 0:
                continue
            d = _rep(p, d)
            if new[d] < 0:
                new[d] = cnt
                order[cnt] = d
                parent[cnt] = head
                via[cnt] = x
                cnt += 1
        head += 1
    out = np.full((cnt, ncols), -1, np.int32)
    for i in range(cnt):
        c = order[i]
        for x in range(ncols):
            d = table[c, x]
            if d >= 0:
                out[i, x] = new[_rep(p, d)]
    return out, parent[:cnt], via[:cnt]


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Result of an enumeration: ``table[c, col]`` is a coset index, or -1."""

    table: np.ndarray
    ngens: int
    status: str
    parent: np.ndarray = field(repr=False)
    via: np.ndarray = field(repr=False)
    defined: int = 0
    trivial_subgroup: bool = True

    @property
    def index(self) -> int:
        return self.table.shape[0]

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def column(self, letter: int) -> np.ndarray:
        """Column of a signed 1-based letter."""
        return self.table[:, _letters((letter,))[0]]

    def trace(self, word: Sequence[int], start=0):
        """Coset reached from ``start`` (an int or an index array) along ``word``."""
        c = start
        for col in _letters(tuple(word)):
            c = self.table[c, col]
        return c

    def check(self, relators: Iterable[Word] = ()) -> None:
        """Assert completeness, inverse consistency, bijective columns, and relators."""
        T = self.table
        n = self.index
        assert self.complete and (T >= 0).all(), "table has undefined entries"
        idx = np.arange(n)
        for k in range(self.ngens):
            fwd, back = T[:, 2 * k], T[:, 2 * k + 1]
            assert np.array_equal(back[fwd], idx), f"columns of x{k + 1} are not mutually inverse"
            assert len(np.unique(fwd)) == n, f"column x{k + 1} is not a permutation"
        for r in relators:
            assert np.array_equal(self.trace(r, idx), idx), f"relator {word_to_text(r)} fails"

    def to_csv(self) -> str:
        head = ",".join(["coset"] + [f"x{k + 1}" for k in range(self.ngens)])
        lines = [head]
        for c in range(self.index):
            lines.append(",".join([str(c)] + [str(int(self.table[c, 2 * k])) for k in range(self.ngens)]))
        return "\n".join(lines) + "\n"


def prepare_relators(relators: Iterable[Word]) -> list[Word]:
    """Free and cyclic reduction; empty and repeated words are dropped."""
    seen = set()
    out = []
    for r in relators:
        w = cyclic_reduce(r)
        if w and w not in seen:
            seen.add(w)
            out.append(w)
    return out


def _rotation_index(relators: list[Word], ncols: int):
    rotations = {}
    for r in relators:
        for w in (r, invert(r)):
            for i in range(len(w)):
                rot = w[i:] + w[:i]
                rotations.setdefault(rot, None)
    rots = list(rotations)
    letters = []
    off = [0]
    first = []
    for w in rots:
        cols = _letters(w)
        letters.extend(cols)
        off.append(len(letters))
        first.append(cols[0])
    first = np.array(first, dtype=np.int64)
    order = np.argsort(first, kind="stable")
    counts = np.bincount(first, minlength=ncols) if len(first) else np.zeros(ncols, np.int64)
    bl_off = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return (
        np.array(letters, dtype=np.int32),
        np.array(off, dtype=np.int64),
        bl_off,
        order.astype(np.int64),
    )


def todd_coxeter(
    P: FpGroup,
    subgroup_generators: Sequence[Word] = (),
    max_cosets: int | None = None,
    *,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_generators``.

    The coset limit is ``max_cosets`` or ``max_cells // (2 * ngens)``,
    whichever is smaller; running out gives a table with status
    ``"exceeded"`` rather than an exception.
    """
    ncols = 2 * P.ngens
    limit = max_cells // max(ncols, 1)
    if max_cosets is not None:
        if max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        limit = min(limit, max_cosets)
    limit = max(limit, 1)
    rels = prepare_relators(P.relators)
    if ncols == 0:
        empty = np.zeros((1, 0), np.int32)
        return CosetTable(empty, 0, "complete", np.array([-1]), np.array([-1]), 1)
    letters, rw_off, bl_off, bl_idx = _rotation_index(rels, ncols)
    subs = [free_reduce(w) for w in subgroup_generators]
    sub_letters = np.array([c for w in subs for c in _letters(w)], dtype=np.int32)
    sub_off = np.concatenate([[0], np.cumsum([len(w) for w in subs])]).astype(np.int64)
    table, p, nrows, nlive, exceeded = _enumerate(
        ncols, letters, rw_off, bl_off, bl_idx, sub_letters, sub_off, limit, 1024
    )
    std, parent, via = _standardize(table, p, nlive)
    status = "exceeded" if exceeded else "complete"
    return CosetTable(
        std, P.ngens, status, parent, via, int(nrows), trivial_subgroup=not any(subs)
    )


class CosetGroup:
    """The group acting regularly on a complete coset table of the trivial subgroup.

    Element ``c`` is the group element w_c whose coset is ``c``; coset 0 is
    the identity. Right multiplication by generator ``k`` is column ``2k``,
    and ``perm(c)`` is right multiplication by w_c on all cosets.
    """

    def __init__(self, ct: CosetTable):
        if not ct.complete:
            raise ValueError("coset table is incomplete")
        if not ct.trivial_subgroup:
            raise ValueError("regular representation needs the trivial subgroup")
        self.ct = ct
        self.table = ct.table
        self.ngens = ct.ngens
        self._perm_cache: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"CosetGroup(order={self.order()}, ngens={self.ngens})"

    def order(self) -> int:
        return self.ct.index

    def __len__(self) -> int:
        return self.order()

    def generator(self, k: int) -> int:
        """Element of the 0-based generator ``k``."""
        return int(self.table[0, 2 * k])

    def letter_cols(self) -> np.ndarray:
        """Elements of every letter column: generator k at 2k, its inverse at 2k+1."""
        return self.table[0]

    def word_cols(self, c: int) -> list[int]:
        """Column letters of the spanning-tree word of element ``c``."""
        out = []
        parent, via = self.ct.parent, self.ct.via
        while c:
            out.append(int(via[c]))
            c = int(parent[c])
        return out[::-1]

    def word(self, c: int) -> Word:
        return tuple((col >> 1) + 1 if col % 2 == 0 else -((col >> 1) + 1) for col in self.word_cols(c))

    def evaluate(self, word: Sequence[int]) -> int:
        return int(self.ct.trace(word, 0))

    def mul(self, a: int, b: int) -> int:
        c = int(a)
        for col in self.word_cols(int(b)):
            c = int(self.table[c, col])
        return c

    def inverse(self, a: int) -> int:
        c = 0
        for col in reversed(self.word_cols(int(a))):
            c = int(self.table[c, col ^ 1])
        return c

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        R = self.perm(a)
        c = 0
        for _ in range(k):
            c = int(R[c])
        return c

    def element_order(self, a: int) -> int:
        R = self.perm(a)
        c, k = int(R[0]), 1
        while c:
            c = int(R[c])
            k += 1
        return k

    def perm(self, a: int) -> np.ndarray:
        """Right multiplication by element ``a`` as an index map on all elements."""
        a = int(a)
        R = self._perm_cache.get(a)
        if R is None:
            R = np.arange(self.order(), dtype=np.int64)
            for col in self.word_cols(a):
                R = self.table[R, col].astype(np.int64)
            if len(self._perm_cache) < 4096:
                self._perm_cache[a] = R
        return R

    def is_central(self, a: int) -> bool:
        """a commutes with every generator: a*x (table row) equals x*a (R_a on the x column)."""
        return bool(np.array_equal(self.perm(a)[self.table[0]], self.table[int(a)]))

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = sorted({int(g) for g in gens if int(g) != 0})
        mask = np.zeros(self.order(), dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.int64)
        perms = [self.perm(g) for g in gens]
        while len(frontier):
            nxt = []
            for R in perms:
                img = np.unique(R[frontier])
                img = img[~mask[img]]
                mask[img] = True
                nxt.append(img)
            frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
        return np.nonzero(mask)[0]

    def generating_set(self, elements: Iterable[int]) -> list[int]:
        """Greedy subset of ``elements`` generating the same subgroup."""
        gens: list[int] = []
        mask = np.zeros(self.order(), dtype=bool)
        mask[0] = True
        for x in elements:
            x = int(x)
            if not mask[x]:
                gens.append(x)
                mask[:] = False
                mask[self.closure(gens)] = True
        return gens

    @cached_property
    def generators(self) -> list[int]:
        return self.generating_set(self.table[0, 0::2])

    def conjugate(self, a: int, g: int) -> int:
        """g^-1 a g."""
        return self.mul(self.mul(self.inverse(g), a), g)

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        return self.mul(self.mul(a, b), self.inverse(self.mul(b, a)))

    def normal_closure(self, gens: Iterable[int]) -> np.ndarray:
        gens = [int(g) for g in gens if int(g) != 0]
        members = self.closure(gens)
        mask = self.mask(members)
        queue = list(gens)
        while queue:
            a = queue.pop()
            for g in self.generators:
                c = self.conjugate(a, g)
                if not mask[c]:
                    gens.append(c)
                    queue.append(c)
                    members = self.closure(gens)
                    mask = self.mask(members)
        return members

    def derived_subgroup(self) -> np.ndarray:
        gens = self.generators
        return self.normal_closure(
            [self.commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1 :]]
        )

    def mask(self, members: np.ndarray) -> np.ndarray:
        m = np.zeros(self.order(), dtype=bool)
        m[members] = True
        return m

    def hom_values(self, images: np.ndarray, codomain_table: np.ndarray) -> np.ndarray:
        """Values of the homomorphism sending letter column ``col`` to codomain index ``images[col]``.

        ``codomain_table`` is a multiplication table of the codomain with
        identity 0. Values are filled along the spanning tree and then
        checked on every edge of the table, which proves the homomorphism
        property on the whole group.
        """
        n = self.order()
        val = np.zeros(n, dtype=np.int64)
        parent, via = self.ct.parent, self.ct.via
        for c in range(1, n):
            val[c] = codomain_table[val[parent[c]], images[via[c]]]
        lhs = val[self.table]
        rhs = codomain_table[val[:, None], images[None, :]]
        if not np.array_equal(lhs, rhs):
            raise ValueError("images do not define a homomorphism")
        return val


    def letter_hom(self, colmap: np.ndarray, codomain: "CosetGroup") -> np.ndarray:
        """Homomorphism sending letter column ``col`` to letter column ``colmap[col]`` of ``codomain``.

        Returns the value array and raises ``ValueError`` unless the
        assignment is consistent on every edge of the table.
        """
        colmap = np.asarray(colmap, dtype=np.int64)
        n = self.order()
        val = np.zeros(n, dtype=np.int64)
        parent, via = self.ct.parent, self.ct.via
        Ct = codomain.table
        for c in range(1, n):
            val[c] = Ct[val[parent[c]], colmap[via[c]]]
        if not np.array_equal(val[self.table], Ct[val[:, None], colmap[None, :]]):
            raise ValueError("letter images do not define a homomorphism")
        return val

    def element_hom(self, images: Sequence[int], codomain: "CosetGroup") -> np.ndarray:
        """Homomorphism sending letter column ``col`` to element ``images[col]`` of ``codomain``."""
        images = [int(x) for x in images]
        perms = {x: codomain.perm(x) for x in set(images)}
        n = self.order()
        val = np.zeros(n, dtype=np.int64)
        parent, via = self.ct.parent, self.ct.via
        for c in range(1, n):
            val[c] = perms[images[via[c]]][val[parent[c]]]
        for col in range(self.table.shape[1]):
            if not np.array_equal(val[self.table[:, col]], perms[images[col]][val]):
                raise ValueError("element images do not define a homomorphism")
        return val


def regular_permutation_rep(T: CosetTable):
    """The concrete group of a complete trivial-subgroup table and its word evaluator."""
    G = CosetGroup(T)
    return G, G.evaluate
