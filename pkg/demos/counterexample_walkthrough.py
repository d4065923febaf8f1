"""Walk through the non-faithfulness counterexample step by step.

Two morphisms under Z/4, given by the row vectors [1 0] and [1 1], land in
the same object (Z/4 + Z/2 with structure map [2 0]).  We show:

  1. every homotopy difference out of the source lies in the subgroup
     S = 2 * Hom(Z/4, Z/4 + Z/2) = {(0,0), (2,0)},
  2. the difference of the two morphisms is (0,1), which is not in S, so
     they stay distinct in the quotient of morphisms by homotopy,
  3. yet after the cofibrant replacement of the source they become
     homotopic, so the localisation functor identifies them.

Together: the quotient by homotopy does not embed faithfully into the
homotopy category.  Run with `python3 demos/counterexample_walkthrough.py`.
"""

from stablecat import (
    FinModule,
    ModMorphism,
    UnderMorphism,
    UnderObject,
    cofibrant_replacement,
    standard_cylinder,
)
from stablecat.homotopy import (
    decide_ho_equal,
    distinct_in_quotient,
    homotopy_difference_bound,
    solve_homotopy,
)

Z4 = FinModule.of(4)
Z42 = FinModule.of(4, 2)

x = UnderObject(Z4, ModMorphism(Z4, Z4, [[2]]))
y = UnderObject(Z42, ModMorphism(Z4, Z42, [[2, 0]]))
f = UnderMorphism(x, y, ModMorphism(Z4, Z42, [[1, 0]]))
g = UnderMorphism(x, y, ModMorphism(Z4, Z42, [[1, 1]]))

print("source x: carrier Z/4, structure map *2")
print("target y: carrier Z/4 + Z/2, structure map [2 0]")
print(f"f = {f.map.matrix}, g = {g.map.matrix}")
print()

# Step 1: the homotopy-difference bound.
s = homotopy_difference_bound(x, y)
members = sorted(
    v
    for v in ((a, b) for a in range(4) for b in range(2))
    if s.contains(ModMorphism(Z4, Z42, [list(v)]))
)
print(f"step 1: homotopy differences out of x lie in S = {members}")
assert members == [(0, 0), (2, 0)]

# Step 2: f and g stay distinct in the quotient by homotopy.
wit = distinct_in_quotient(f, g)
assert wit is not None
print(f"step 2: g - f = {wit.difference.matrix} is outside S "
      f"(refuting column {wit.refuting_column}); no cylinder homotopy exists")
assert solve_homotopy(standard_cylinder(x), f, g) is None

# Step 3: they agree in the homotopy category.
equal, cert = decide_ho_equal(f, g)
assert equal and cert is not None
q = cert.replacement
print(f"step 3: cofibrant replacement carrier {q.source.carrier.orders}, "
      f"q = {q.map.matrix} is a weak equivalence")
print(f"        homotopy H = {cert.homotopy.h.map.matrix} between q;f and q;g")
assert cert.validate(f, g)

print()
print("conclusion: [f] != [g] modulo homotopy, but f = g in the homotopy")
print("category, so the quotient-by-homotopy functor is not faithful.")
