"""Verifiers for structural identities of tensor squares.

Every verifier recomputes both sides of the identity it checks and never
assumes the identity itself. A report is ``pass`` when every check holds,
``fail`` otherwise, and ``not-applicable`` when the hypotheses are not met
(no complement, an even diagonal order, and so on).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm, prod

import numpy as np
from sympy import factorint

from .abelian import AbelianInvariants, abelian_subquotients, elementary_two
from .coset import DEFAULT_MAX_CELLS
from .groups import (
    BoundExceeded,
    FiniteGroup,
    GroupError,
    Subgroup,
    abelianization,
    derived_subgroup,
    find_complement,
    quotient_group,
    semidirect_product,
)
from .tensor import (
    DEFAULT_ORDER_CAP,
    HomotopyInvariants,
    InfeasibleMethod,
    TensorSquare,
    closed_form,
)

PASS, FAIL, NA = "pass", "fail", "not-applicable"


def _status(checks: dict[str, bool]) -> str:
    return PASS if all(checks.values()) else FAIL


def _inv_json(x: AbelianInvariants | None):
    return None if x is None else x.to_json()


def _r_plus_k(A: AbelianInvariants) -> int:
    return A.rank + A.even_factors


# ---------------------------------------------------------------------------
# maps between tensor squares


def _positions(f, source: FiniteGroup, target: FiniteGroup) -> np.ndarray:
    return np.array([target.index(f(x)) for x in source.elements], dtype=np.int64)


def _induced_columns(pos: np.ndarray, n_target: int) -> np.ndarray:
    """Letter columns of f (x) f for an element map given by positions."""
    n = len(pos)
    a, b = np.divmod(np.arange(n * n), n)
    cols = np.empty(2 * n * n, dtype=np.int64)
    cols[0::2] = 2 * (pos[a] * n_target + pos[b])
    cols[1::2] = cols[0::2] + 1
    return cols


def induced_map(src: TensorSquare, dst: TensorSquare, pos: np.ndarray) -> np.ndarray:
    """Values of f (x) f : src -> dst for the element map ``pos``; checked on every edge."""
    return src.T.letter_hom(_induced_columns(pos, dst.n), dst.T)


# ---------------------------------------------------------------------------
# semidirect decompositions


@dataclass
class DecompositionReport:
    order_tensor: int
    order_H_tensor: int
    order_exterior: int
    order_H_exterior: int
    order_nabla: int
    order_H_nabla: int
    order_delta: int
    order_H_delta: int
    order_symmetric: int
    order_H_symmetric: int
    K: dict[str, int]
    parts: dict[str, dict[str, bool]]
    section_homomorphism: bool

    @property
    def status(self) -> str:
        ok = self.section_homomorphism and all(all(p.values()) for p in self.parts.values())
        return PASS if ok else FAIL

    def part_status(self, part: str) -> str:
        return _status(self.parts[part])

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "K": dict(self.K),
            "orders": {
                "tensor": [self.order_tensor, self.order_H_tensor],
                "exterior": [self.order_exterior, self.order_H_exterior],
                "nabla": [self.order_nabla, self.order_H_nabla],
                "delta": [self.order_delta, self.order_H_delta],
                "symmetric": [self.order_symmetric, self.order_H_symmetric],
            },
            "parts": {k: dict(v) for k, v in self.parts.items()},
            "section_homomorphism": self.section_homomorphism,
        }


def verify_semidirect_decomposition(
    N: FiniteGroup,
    H: FiniteGroup,
    phi=None,
    *,
    cap: int = DEFAULT_ORDER_CAP,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> DecompositionReport:
    """Kernels of p (x) p and its exterior, nabla, Delta and symmetric versions.

    ``phi`` is the action of H on N in any form accepted by
    :func:`~tensorsq.groups.semidirect_product`; ``None`` is the trivial
    action. ``p`` is the projection onto H and ``alpha`` the inclusion of H.
    """
    if phi is None:
        phi = [list(N.gens) for _ in H.gens]
    sd = semidirect_product(N, H, phi)
    G = sd.group
    TG = TensorSquare(G, cap=cap, max_cells=max_cells)
    TH = TensorSquare(H, cap=cap, max_cells=max_cells)
    p = _positions(sd.projection, G, H)
    a = _positions(sd.embed_h, H, G)
    nG, nH = TG.order, TH.order

    pp = induced_map(TG, TH, p)
    try:
        aa = induced_map(TH, TG, a)
        section_hom = True
    except ValueError:
        aa = None
        section_hom = False

    G_mask = lambda members: TG.T.mask(members)  # noqa: E731
    H_mask = lambda members: TH.T.mask(members)  # noqa: E731

    nabG, nabH = G_mask(TG.nabla.members), H_mask(TH.nabla.members)
    dltG, dltH = G_mask(TG.delta.members), H_mask(TH.delta.members)
    K1 = np.nonzero(pp == 0)[0]
    K1m = G_mask(K1)
    onto = len(np.unique(pp)) == nH

    npos = sorted({G.index(sd.embed_n(x)) for x in N.elements})
    gens_gn = sorted(
        {TG.symbol(g, m) for g in range(TG.n) for m in npos} | {TG.symbol(m, g) for g in range(TG.n) for m in npos}
    )
    K1_closure = TG.T.normal_closure(gens_gn)

    parts: dict[str, dict[str, bool]] = {}
    sec = section_hom and bool(np.array_equal(pp[aa], np.arange(nH)))
    parts["i"] = {
        "p_tensor_p_onto": onto,
        "order_identity": nG == len(K1) * nH,
        "kernel_is_normal_closure": bool(np.array_equal(K1_closure, K1)),
        "section": sec,
        "section_meets_kernel_trivially": section_hom and int(K1m[aa].sum()) == 1,
    }

    # exterior: kernel of T_G / nabla_G -> T_H / nabla_H
    pre_nab = nabH[pp]
    K2 = int(pre_nab.sum()) // TG.nabla.order
    ext_G, ext_H = nG // TG.nabla.order, nH // TH.nabla.order
    gens_wedge = sorted({TG.symbol(g, m) for g in range(TG.n) for m in npos}) + list(TG.nabla.kept)
    K2_closure = TG.T.normal_closure(gens_wedge)
    parts["ii"] = {
        "nabla_maps_onto_nabla": bool(np.array_equal(np.unique(pp[TG.nabla.members]), np.sort(TH.nabla.members))),
        "order_identity": ext_G == K2 * ext_H,
        "kernel_generated_by_wedges": bool(np.array_equal(K2_closure, np.nonzero(pre_nab)[0])),
        "section_preserves_nabla": section_hom and bool(nabG[aa[TH.nabla.members]].all()),
    }

    K3 = np.nonzero(nabG & K1m)[0]
    k3_gens = [TG.T.mul(TG.symbol(g, m), TG.symbol(m, g)) for g in range(TG.n) for m in npos]
    k3_gens += [TG.symbol(m, m) for m in npos]
    K3_closure = TG.T.closure(k3_gens)
    parts["iii"] = {
        "order_identity": TG.nabla.order == len(K3) * TH.nabla.order,
        "kernel_generated": bool(np.array_equal(K3_closure, K3)),
    }

    K4 = np.nonzero(dltG & K1m)[0]
    parts["iv"] = {
        "delta_maps_onto_delta": bool(np.array_equal(np.unique(pp[TG.delta.members]), np.sort(TH.delta.members))),
        "order_identity": TG.delta.order == len(K4) * TH.delta.order,
    }

    pre_dlt = dltH[pp]
    K5 = int(pre_dlt.sum()) // TG.delta.order
    sym_G, sym_H = nG // TG.delta.order, nH // TH.delta.order
    k5_gens = sorted({TG.symbol(g, m) for g in range(TG.n) for m in npos}) + list(TG.delta.kept)
    K5_closure = TG.T.closure(k5_gens)
    parts["v"] = {
        "order_identity": sym_G == K5 * sym_H,
        "kernel_generated": bool(np.array_equal(K5_closure, np.nonzero(pre_dlt)[0])),
        "section_preserves_delta": section_hom and bool(dltG[aa[TH.delta.members]].all()),
    }

    return DecompositionReport(
        order_tensor=nG,
        order_H_tensor=nH,
        order_exterior=ext_G,
        order_H_exterior=ext_H,
        order_nabla=TG.nabla.order,
        order_H_nabla=TH.nabla.order,
        order_delta=TG.delta.order,
        order_H_delta=TH.delta.order,
        order_symmetric=sym_G,
        order_H_symmetric=sym_H,
        K={"K1": len(K1), "K2": K2, "K3": len(K3), "K4": len(K4), "K5": K5},
        parts=parts,
        section_homomorphism=section_hom,
    )


# ---------------------------------------------------------------------------


def pi2s_closed_form(G_ab: AbelianInvariants, h2: AbelianInvariants) -> AbelianInvariants:
    """h2 plus (Z/2)^(r+k), where r is the free rank and k the number of even invariant factors."""
    return h2 + elementary_two(_r_plus_k(G_ab))


@dataclass
class SplittingWitness:
    """The retraction onto nabla sending g (x) h to ((g (x) h)(h (x) g))^-n, m = 2n + 1."""

    applicable: bool
    m: int
    n: int | None
    images: np.ndarray | None = field(repr=False, default=None)
    values: np.ndarray | None = field(repr=False, default=None)
    checks: dict[str, bool] = field(default_factory=dict)
    reason: str | None = None

    @property
    def status(self) -> str:
        return NA if not self.applicable else _status(self.checks)

    def to_json(self) -> dict:
        return {"status": self.status, "m": self.m, "n": self.n, "checks": dict(self.checks), "reason": self.reason}


def odd_splitting(TS: TensorSquare) -> SplittingWitness:
    T = TS.T
    diag = [TS.symbol(g, g) for g in range(TS.n)]
    m = lcm(*(T.element_order(x) for x in diag)) if diag else 1
    if m % 2 == 0:
        return SplittingWitness(False, m, None, reason=f"a diagonal symbol has even order (lcm {m})")
    n = (m - 1) // 2
    size = TS.n
    images = np.empty(2 * size * size, dtype=np.int64)
    for g in range(size):
        for h in range(size):
            t = T.mul(TS.symbol(g, h), TS.symbol(h, g))
            x = T.power(t, -n)
            images[2 * (g * size + h)] = x
            images[2 * (g * size + h) + 1] = T.inverse(x)
    checks: dict[str, bool] = {}
    ok_rel = True
    for r in TS.presentation.relators:
        c = 0
        for a in r:
            c = T.mul(c, int(images[2 * (a - 1)] if a > 0 else images[2 * (-a - 1) + 1]))
        if c:
            ok_rel = False
            break
    checks["relators"] = ok_rel
    try:
        values = T.element_hom(images, T)
        checks["homomorphism"] = True
    except ValueError:
        values = None
        checks["homomorphism"] = False
    nab = TS.nabla.members
    dlt = TS.delta.members
    if values is not None:
        nab_mask = T.mask(nab)
        checks["identity_on_nabla_generators"] = all(values[v] == v for v in TS.nabla_generators)
        checks["identity_on_nabla"] = bool(np.array_equal(values[nab], nab))
        checks["image_in_nabla"] = bool(nab_mask[values].all())
        kernel = int((values == 0).sum())
        checks["order_identity"] = T.order() == len(nab) * kernel and T.order() == len(nab) * (T.order() // len(nab))
    checks["nabla_equals_delta"] = bool(np.array_equal(np.sort(nab), np.sort(dlt)))
    inv = TS.invariants()
    checks["pi2s_equals_h2"] = inv.pi2s == inv.h2
    return SplittingWitness(True, m, n, images, values, checks)


# ---------------------------------------------------------------------------


@dataclass
class ComplementReport:
    applicable: bool
    checks: dict[str, bool] = field(default_factory=dict)
    nabla: AbelianInvariants | None = None
    nabla_ab: AbelianInvariants | None = None
    delta: AbelianInvariants | None = None
    delta_ab: AbelianInvariants | None = None
    reason: str | None = None

    @property
    def status(self) -> str:
        return NA if not self.applicable else _status(self.checks)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checks": dict(self.checks),
            "nabla": _inv_json(self.nabla),
            "nabla_ab": _inv_json(self.nabla_ab),
            "delta": _inv_json(self.delta),
            "delta_ab": _inv_json(self.delta_ab),
            "reason": self.reason,
        }


def verify_complement_case(G: FiniteGroup, TS: TensorSquare | None = None, **kw) -> ComplementReport:
    """When G' has a complement: nabla and Delta match those of G_ab and nabla splits off."""
    D = derived_subgroup(G)
    try:
        B = find_complement(G, D)
    except BoundExceeded as exc:
        return ComplementReport(False, reason=str(exc))
    if B is None:
        return ComplementReport(False, reason="the derived subgroup has no complement")
    TS = TS or TensorSquare(G, **kw)
    Gab = abelianization(G)
    sq = abelian_subquotients(Gab)
    inv = TS.invariants()
    nab = TS.nabla.invariants()
    dlt = TS.delta.invariants()
    T = TS.T
    comm = T.derived_subgroup()
    checks = {
        "nabla_matches_abelianization": nab == sq.nabla,
        "delta_matches_abelianization": dlt == sq.delta,
        "order_identity": TS.order == TS.nabla.order * inv.order_exterior,
        "nabla_meets_commutator_trivially": int(T.mask(TS.nabla.members)[comm].sum()) == 1,
        "pi3_is_h2_plus_nabla": inv.pi3 == inv.h2 + sq.nabla,
    }
    return ComplementReport(True, checks, nab, sq.nabla, dlt, sq.delta)


# ---------------------------------------------------------------------------


@dataclass
class BoundReport:
    factorization: dict[int, int]
    r: int
    k: int
    bound: int
    measured: int | None

    @property
    def status(self) -> str:
        if self.measured is None:
            return NA
        return PASS if self.measured <= self.bound else FAIL

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "factorization": [[p, a] for p, a in sorted(self.factorization.items())],
            "r": self.r,
            "k": self.k,
            "bound": self.bound,
            "measured": self.measured,
        }


def green_bound(order: int, r: int, k: int) -> int:
    return 2 ** (r + k) * prod(p ** (a * (a - 1) // 2) for p, a in factorint(order).items())


def green_bound_check(G: FiniteGroup, measured_pi2s: AbelianInvariants | None) -> BoundReport:
    Gab = abelianization(G)
    fac = {int(p): int(a) for p, a in factorint(G.order()).items()}
    r, k = Gab.rank, Gab.even_factors
    measured = None if measured_pi2s is None else measured_pi2s.order
    return BoundReport(fac, r, k, green_bound(G.order(), r, k), measured)


# ---------------------------------------------------------------------------


@dataclass
class SequenceReport:
    """Right exactness of X(N) -> X(G) -> X(G/N) -> 0 for X = pi3, h2, pi2s."""

    mode: str
    orders: dict[str, list]
    checks: dict[str, bool]
    applicable: bool = True
    reason: str | None = None

    @property
    def status(self) -> str:
        return NA if not self.applicable else _status(self.checks)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "mode": self.mode,
            "orders": {k: list(v) for k, v in self.orders.items()},
            "checks": dict(self.checks),
            "reason": self.reason,
        }


def _level_sets(TS: TensorSquare):
    """(subgroup mask of J, mask of the subgroup divided out) for each level."""
    T = TS.T
    J = T.mask(TS.J)
    one = np.zeros(T.order(), dtype=bool)
    one[0] = True
    return {
        "pi3": (J, one),
        "h2": (J, T.mask(TS.nabla.members)),
        "pi2s": (J, T.mask(TS.delta.members)),
    }


def verify_perfect_normal_sequences(
    G: FiniteGroup,
    N: Subgroup,
    *,
    cap: int = DEFAULT_ORDER_CAP,
    max_cells: int = DEFAULT_MAX_CELLS,
    catalog_names: tuple[str | None, str | None, str | None] = (None, None, None),
) -> SequenceReport:
    """Check X(N) -> X(G) -> X(G/N) -> 0 with the maps induced by inclusion and projection.

    When all three tensor squares fit the caps the maps are built and
    exactness is checked on subgroups. Otherwise the closed forms are used
    and only the order consequences are checked (``mode = "orders"``); a
    level whose values are unknown is reported as forced when its third
    term is trivial.
    """
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    NG = N.group
    if derived_subgroup(NG).order() != NG.order():
        raise GroupError("subgroup is not perfect")
    Q, proj = quotient_group(G, N)
    groups = (NG, G, Q)

    try:
        TSs = [TensorSquare(X, cap=cap, max_cells=max_cells) for X in groups]
    except BoundExceeded:
        TSs = None

    if TSs is not None:
        TN, TG, TQ = TSs
        inc = _positions(lambda x: x, NG, G)
        pr = _positions(proj, G, Q)
        i_map = induced_map(TN, TG, inc)
        p_map = induced_map(TG, TQ, pr)
        sN, sG, sQ = _level_sets(TN), _level_sets(TG), _level_sets(TQ)
        orders, checks = {}, {}
        invs = [X.invariants() for X in TSs]
        for lvl in ("pi3", "h2", "pi2s"):
            JN, MN = sN[lvl]
            JG, MG = sG[lvl]
            JQ, MQ = sQ[lvl]
            orders[lvl] = [getattr(v, lvl).order for v in invs]
            # onto: J_G maps onto J_Q, hence onto every quotient of it
            checks[f"{lvl}_onto"] = bool(np.array_equal(np.unique(p_map[np.nonzero(JG)[0]]), np.nonzero(JQ)[0]))
            # middle: elements of J_G landing in M_Q are exactly image(J_N) * M_G
            image = np.unique(i_map[np.nonzero(JN)[0]])
            gens = list(image) + list(np.nonzero(MG)[0])
            span = TG.T.mask(TG.T.closure(gens))
            kernel = JG & MQ[p_map]
            checks[f"{lvl}_exact_middle"] = bool(np.array_equal(span, kernel))
            checks[f"{lvl}_maps_into_J"] = bool(JG[image].all())
        return SequenceReport("maps", orders, checks)

    names = catalog_names
    vals: list[HomotopyInvariants | None] = []
    for X, name in zip(groups, names):
        try:
            if X.order() <= cap and not X.is_abelian():
                vals.append(TensorSquare(X, cap=cap, max_cells=max_cells).invariants())
            else:
                vals.append(closed_form(X, name))
        except (InfeasibleMethod, BoundExceeded):
            vals.append(None)
    orders, checks = {}, {}
    for lvl in ("pi3", "h2", "pi2s"):
        o = [None if v is None or getattr(v, lvl) is None else getattr(v, lvl).order for v in vals]
        orders[lvl] = o
        oN, oG, oQ = o
        if oQ == 1:
            checks[f"{lvl}_onto_forced"] = True
        elif oG is not None and oQ is not None:
            checks[f"{lvl}_onto_orders"] = oG % oQ == 0
        if None not in o:
            checks[f"{lvl}_middle_orders"] = oG % oQ == 0 and oN % (oG // oQ) == 0
    return SequenceReport("orders", orders, checks)
