"""Abelian groups: the closed form against the full enumeration."""

from tensorsq import abelian_subquotients, homotopy_invariants, make_named_group
from tensorsq.abelian import AbelianInvariants

A = AbelianInvariants.from_cyclic([2, 4])
sq = abelian_subquotients(A)
print("tensor    ", sq.tensor)
print("exterior  ", sq.exterior)
print("symmetric ", sq.symmetric_tensor)
print("nabla     ", sq.nabla, "  delta", sq.delta)

# free rank works too
print(abelian_subquotients(AbelianInvariants(2, (3,))).tensor)

for spec in ["C6", "C2xC4", "C3xC3", "C2xC2xC2"]:
    G = make_named_group(spec)
    by_cosets = homotopy_invariants(G, "presentation")
    by_formula = homotopy_invariants(G, "closed-form")
    same = by_cosets.to_json() == by_formula.to_json()
    print(f"{spec:9s} pi2s={by_cosets.pi2s!s:24s} agree={same}")
