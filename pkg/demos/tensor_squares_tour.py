"""A short tour: build groups, enumerate their tensor squares, read off invariants."""

import numpy as np

from tensorsq import TensorSquare, homotopy_invariants, make_named_group, tensor_square_presentation

# small groups by name
S3 = make_named_group("S3")
Q8 = make_named_group("Q8")
print(S3.order(), Q8.order())

# the presentation has |G|^2 generators and 2 |G|^3 relators
P, symbols = tensor_square_presentation(S3)
print(P.ngens, len(P.relators))
print(P.to_text().splitlines()[1][:80], "...")

# coset enumeration gives the regular representation of G (x) G
TS = TensorSquare(S3)
print("|S3 (x) S3| =", TS.order)

# the commutator map and its kernel J
print("image of kappa:", np.unique(TS.kappa))
print("|J| =", len(TS.J))

# nabla sits inside J, Delta inside nabla
print("|nabla| =", TS.nabla.order, " |Delta| =", TS.delta.order)

inv = TS.invariants()
print("pi3  ", inv.pi3)
print("pi2s ", inv.pi2s)
print("h2   ", inv.h2)

# same thing in one call, for a few groups
for spec in ["D8", "Q8", "A4", "C2xC4"]:
    r = homotopy_invariants(make_named_group(spec), "presentation")
    print(f"{spec:6s} |T|={r.order_tensor:4d}  pi3={r.pi3!s:20s} pi2s={r.pi2s!s:16s} h2={r.h2}")
