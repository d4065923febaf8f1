"""Why cylinder transfer breaks down on the counterexample.

Transferring a cylinder along a weak equivalence w: X -> X' pushes the old
cylinder out along w + w.  The construction yields a genuine cylinder for
X' whenever w + w (between the under-coproducts) is again a weak
equivalence.  For w = multiplication by 2 from (Z/4, struct 1) to
(Z/4, struct 2) that hypothesis fails: the under-coproduct of the target
with itself has carrier Z/4 + Z/2, and w + w has stable reduction 0 -> Z/2,
which is not invertible.  This is the precise point where the homotopy
relation stops transferring, opening the door to the counterexample.

Run with `python3 demos/transfer_diagnosis.py`.
"""

from stablecat import FinModule, ModMorphism, UnderMorphism, UnderObject, standard_cylinder
from stablecat.frobenius import is_weak_equivalence, stable_reduction
from stablecat.under import transfer_cylinder

Z4 = FinModule.of(4)

x_unit = UnderObject(Z4, ModMorphism(Z4, Z4, [[1]]))  # cofibrant: struct map is 1
x = UnderObject(Z4, ModMorphism(Z4, Z4, [[2]]))       # the counterexample source
w = UnderMorphism(x_unit, x, ModMorphism(Z4, Z4, [[2]]))

print(f"w: (Z/4, struct 1) -> (Z/4, struct 2), matrix {w.map.matrix}")
print(f"w is a weak equivalence: {is_weak_equivalence(w.map)}")
assert is_weak_equivalence(w.map)

tr = transfer_cylinder(w, standard_cylinder(x_unit))
d = tr.diagnostics
print()
print("transfer diagnostics:")
print(f"  w + w is a weak equivalence:        {d.coproduct_of_w_is_weak_equivalence}")
print(f"  comparison map is a weak equivalence: {d.comparison_is_weak_equivalence}")
print(f"  projection is a weak equivalence:   {d.sigma_is_weak_equivalence}")
print(f"  transferred cylinder is valid:      {d.cylinder_valid}")
assert not d.all_ok()

red = stable_reduction(tr.ww.map)
print()
print(f"carrier of the under-coproduct (x, struct 2) + (x, struct 2): "
      f"{tr.ww.target.carrier.orders}")
print(f"stable reduction of w + w: {red.source_dim} -> {red.target_dim} "
      f"dimensional, matrix {red.matrix}")
print()
print("w + w collapses onto the Z/2 summand it cannot hit, so the transferred")
print("object fails to be a cylinder and homotopies do not transport along w.")
print()

# Control: transfer along the identity of x keeps every hypothesis intact.
ident = UnderMorphism(x, x, ModMorphism.identity(Z4))
ok = transfer_cylinder(ident, standard_cylinder(x)).diagnostics
print(f"control, transfer along the identity: all hypotheses hold = {ok.all_ok()}")
assert ok.all_ok()
