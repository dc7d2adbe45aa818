"""Verifiers on a few small groups."""

from tensorsq import (
    green_bound_check,
    make_named_group,
    odd_splitting,
    verify_complement_case,
    verify_semidirect_decomposition,
)
from tensorsq.named import cyclic
from tensorsq.tensor import TensorSquare

# S3 as C3 : C2 with the inversion action
C3, C2 = cyclic(3), cyclic(2)
rep = verify_semidirect_decomposition(C3, C2, [[C3.gens[0].inverse()]])
print("decomposition", rep.status, rep.K)

# odd order: nabla = Delta and the retraction onto nabla exists
for spec in ["C5", "C3xC3", "sdp(C7,C3,power:2)"]:
    w = odd_splitting(TensorSquare(make_named_group(spec)))
    print(f"{spec:20s} m={w.m} {w.status}")

# derived subgroup with a complement
A4 = make_named_group("A4")
print("A4 complement case:", verify_complement_case(A4).status)
print("Q8 complement case:", verify_complement_case(make_named_group("Q8")).status)

# the bound on |pi2s|
TS = TensorSquare(make_named_group("D8"))
b = green_bound_check(TS.G, TS.invariants().pi2s)
print("D8 bound", b.measured, "<=", b.bound, b.status)
