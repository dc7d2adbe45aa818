"""Group-spec mini-language.

Grammar (whitespace is ignored)::

    spec    := factor ("x" factor)*
    factor  := "S"n | "A"n | "D"order | "Q8" | "V4" | "C"n
             | "GL(" n "," p ")" | "SL(" n "," p ")"
             | "perm:" gen (";" gen)*          gen = cycles such as (1 2 3)(4 5)
             | "sdp(" spec "," spec "," action ")"
    action  := "trivial" | "inversion" | "cycle" | "power:" k

``D<order>`` is indexed by order, so D8 is the symmetries of a square.
``sdp`` actions act through every generator of H: ``inversion`` inverts the
generators of an abelian N, ``cycle`` sends x1 -> x2 -> ... -> xk -> x1 x2 ... xk
(the 3-cycle on the involutions of C2xC2), ``power:k`` raises them to the k-th power.
"""

from __future__ import annotations

import itertools
import re
from math import prod

from .groups import FiniteGroup, GroupError, Perm, SemidirectProduct, semidirect_product

GL_ORDER_LIMIT = 10_000
MAX_DEGREE = 64


class GroupSpecError(ValueError):
    pass


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("C<n> needs n >= 1")
    return FiniteGroup([Perm.from_cycles([range(1, n + 1)], n)] if n > 1 else [], n, f"C{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("S<n> needs n >= 1")
    if n == 1:
        return FiniteGroup([], 1, "S1")
    gens = [Perm.from_cycles([[1, 2]], n)]
    if n > 2:
        gens.append(Perm.from_cycles([range(1, n + 1)], n))
    return FiniteGroup(gens, n, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("A<n> needs n >= 1")
    if n < 3:
        return FiniteGroup([], n, f"A{n}")
    gens = [Perm.from_cycles([[1, 2, 3]], n)]
    if n > 3:
        cyc = range(1, n + 1) if n % 2 else range(2, n + 1)
        gens.append(Perm.from_cycles([cyc], n))
    return FiniteGroup(gens, n, f"A{n}")


def dihedral(order: int) -> FiniteGroup:
    if order < 4 or order % 2:
        raise GroupSpecError("D<order> needs an even order >= 4")
    n = order // 2
    if n == 2:
        G = direct_product([cyclic(2), cyclic(2)])
        G.name = "D4"
        return G
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    return FiniteGroup([rot, ref], n, f"D{order}")


def quaternion() -> FiniteGroup:
    i = Perm.from_cycles([[1, 2, 4, 7], [3, 6, 8, 5]], 8)
    j = Perm.from_cycles([[1, 3, 4, 8], [2, 5, 7, 6]], 8)
    return FiniteGroup([i, j], 8, "Q8")


def direct_product(factors: list[FiniteGroup]) -> FiniteGroup:
    degree = sum(F.degree for F in factors)
    gens = []
    offset = 0
    for F in factors:
        for g in F.gens:
            img = list(range(degree))
            for a, b in enumerate(g.images):
                img[offset + a] = offset + b
            gens.append(Perm(img, check=False))
        offset += F.degree
    return FiniteGroup(gens, degree, "x".join(F.name or "?" for F in factors))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _primitive_root(p: int) -> int:
    for w in range(1, p):
        if len({pow(w, k, p) for k in range(1, p)}) == p - 1:
            return w
    raise AssertionError


def gl_order(n: int, p: int) -> int:
    return prod(p**n - p**i for i in range(n))


def linear_group(n: int, p: int, special: bool = False) -> FiniteGroup:
    """GL(n,p) or SL(n,p) acting on the nonzero vectors of F_p^n."""
    if n < 1 or not _is_prime(p):
        raise GroupSpecError(f"need n >= 1 and p prime, got ({n},{p})")
    size = gl_order(n, p) // ((p - 1) if special else 1)
    if size > GL_ORDER_LIMIT:
        raise GroupSpecError(f"|{'SL' if special else 'GL'}({n},{p})| = {size} exceeds {GL_ORDER_LIMIT}")
    if p**n - 1 > MAX_DEGREE:
        raise GroupSpecError(f"F_{p}^{n} has too many nonzero vectors")
    vectors = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    index = {v: i for i, v in enumerate(vectors)}

    def perm(M):
        return Perm(
            [index[tuple(sum(M[r][c] * v[c] for c in range(n)) % p for r in range(n))] for v in vectors]
        )

    mats = []
    for i in range(n):
        for j in range(n):
            if i != j:
                M = [[int(r == c) for c in range(n)] for r in range(n)]
                M[i][j] = 1
                mats.append(M)
    if not special and p > 2:
        M = [[int(r == c) for c in range(n)] for r in range(n)]
        M[0][0] = _primitive_root(p)
        mats.append(M)
    G = FiniteGroup([perm(M) for M in mats], len(vectors), f"{'SL' if special else 'GL'}({n},{p})")
    assert G.order() == size
    return G


_ATOM = re.compile(r"(S|A|D|C|Q|V)(\d+)$")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_perm_gens(body: str) -> FiniteGroup:
    gens_cycles = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        cycles = re.findall(r"\(([^()]*)\)", chunk)
        if not cycles or re.sub(r"\([^()]*\)", "", chunk).strip():
            raise GroupSpecError(f"bad permutation {chunk!r}")
        gens_cycles.append([[int(x) for x in re.split(r"[,\s]+", c.strip()) if x] for c in cycles])
    points = [x for g in gens_cycles for c in g for x in c]
    if not points:
        raise GroupSpecError("perm: needs at least one point")
    degree = max(points)
    if degree > MAX_DEGREE:
        raise GroupSpecError(f"degree {degree} exceeds {MAX_DEGREE}")
    try:
        gens = [Perm.from_cycles(g, degree) for g in gens_cycles]
    except GroupError as exc:
        raise GroupSpecError(str(exc)) from None
    return FiniteGroup(gens, degree, "perm:" + body)


def _action(N: FiniteGroup, H: FiniteGroup, action: str):
    action = action.strip()
    k = len(N.gens)
    if action == "trivial":
        imgs = list(N.gens)
    elif action == "inversion":
        imgs = [g.inverse() for g in N.gens]
    elif action == "cycle":
        if k == 0:
            imgs = []
        else:
            last = N.identity
            for g in N.gens:
                last = last * g
            imgs = list(N.gens[1:]) + [last]
    elif action.startswith("power:"):
        try:
            e = int(action[len("power:") :])
        except ValueError:
            raise GroupSpecError(f"bad action {action!r}") from None
        imgs = [g**e for g in N.gens]
    else:
        raise GroupSpecError(f"unknown action {action!r}")
    return [imgs for _ in H.gens]


def make_semidirect(n_spec: str, h_spec: str, action: str) -> SemidirectProduct:
    N = make_named_group(n_spec)
    H = make_named_group(h_spec)
    if action.strip() in ("inversion", "power") or action.strip().startswith("power:"):
        if not N.is_abelian():
            raise GroupSpecError(f"action {action!r} needs an abelian N")
    try:
        sd = semidirect_product(N, H, _action(N, H, action))
    except GroupError as exc:
        raise GroupSpecError(f"sdp({n_spec},{h_spec},{action}): {exc}") from None
    sd.group.name = f"sdp({n_spec},{h_spec},{action.strip()})"
    return sd


def parse_sdp(spec: str) -> SemidirectProduct:
    s = spec.replace(" ", "")
    if not (s.startswith("sdp(") and s.endswith(")")):
        raise GroupSpecError(f"not an sdp spec: {spec!r}")
    args = _split_top(s[4:-1], ",")
    if len(args) != 3:
        raise GroupSpecError("sdp needs three arguments")
    return make_semidirect(*args)


def make_named_group(spec: str) -> FiniteGroup:
    """Build a group from the mini-language; generator choice is fixed per name."""
    s = spec.strip()
    if s.startswith("perm:"):
        return _parse_perm_gens(s[5:])
    s = s.replace(" ", "")
    if not s:
        raise GroupSpecError("empty group spec")
    factors = _split_top(s, "x")
    if len(factors) > 1:
        G = direct_product([make_named_group(f) for f in factors])
        G.name = s
        return G
    if s.startswith("sdp("):
        return parse_sdp(s).group
    m = re.fullmatch(r"(GL|SL)\((\d+),(\d+)\)", s)
    if m:
        return linear_group(int(m.group(2)), int(m.group(3)), special=m.group(1) == "SL")
    m = _ATOM.match(s)
    if not m:
        raise GroupSpecError(f"unknown group {spec!r}")
    kind, n = m.group(1), int(m.group(2))
    if n > MAX_DEGREE and kind in "SAC":
        raise GroupSpecError(f"{s}: degree exceeds {MAX_DEGREE}")
    if kind == "S":
        return symmetric(n)
    if kind == "A":
        return alternating(n)
    if kind == "C":
        return cyclic(n)
    if kind == "D":
        if n > 2 * MAX_DEGREE:
            raise GroupSpecError(f"{s}: degree exceeds {MAX_DEGREE}")
        return dihedral(n)
    if kind == "Q" and n == 8:
        return quaternion()
    if kind == "V" and n == 4:
        G = direct_product([cyclic(2), cyclic(2)])
        G.name = "V4"
        return G
    raise GroupSpecError(f"unknown group {spec!r}")
