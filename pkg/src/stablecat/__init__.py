"""Exact workbench for the stable module category of Z/4.

Everything is computed over Z with exact congruence arithmetic; no floats,
no tolerances. The package decides monos, epis and stable (weak)
equivalences in fgMod(Z/4), builds cylinders and homotopies in the
under-category (Z/4 | fgMod(Z/4)), and certifies that the quotient of the
fibrant objects by homotopy does not embed faithfully into the homotopy
category.
"""

from .modules import (
    FinModule,
    ModMorphism,
    ObjectMismatch,
    compose,
    cokernel,
    direct_sum,
    is_epi,
    is_mono,
    kernel,
    pushout,
)
from .frobenius import (
    factor_cof_then_trivfib,
    factor_trivcof_then_fib,
    factors_through_bijective,
    injective_envelope,
    is_bijective_object,
    is_weak_equivalence,
    stable_reduction,
    stably_homotopic,
)
from .under import (
    UnderMorphism,
    UnderObject,
    cofibrant_replacement,
    coproduct_under,
    is_cofibrant,
    standard_cylinder,
    transfer_cylinder,
    transfer_homotopy,
)
from .homotopy import (
    decide_ho_equal,
    distinct_in_quotient,
    faithfulness_report,
    homotopy_difference_bound,
    solve_homotopy,
)

__all__ = [
    "FinModule",
    "ModMorphism",
    "ObjectMismatch",
    "UnderMorphism",
    "UnderObject",
    "cofibrant_replacement",
    "cokernel",
    "compose",
    "coproduct_under",
    "decide_ho_equal",
    "direct_sum",
    "distinct_in_quotient",
    "factor_cof_then_trivfib",
    "factor_trivcof_then_fib",
    "factors_through_bijective",
    "faithfulness_report",
    "homotopy_difference_bound",
    "injective_envelope",
    "is_bijective_object",
    "is_cofibrant",
    "is_epi",
    "is_mono",
    "is_weak_equivalence",
    "kernel",
    "pushout",
    "solve_homotopy",
    "stable_reduction",
    "stably_homotopic",
    "standard_cylinder",
    "transfer_cylinder",
    "transfer_homotopy",
]
