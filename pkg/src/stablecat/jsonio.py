"""JSON forms of the domain objects, as consumed and emitted by the CLI.

Schemas (version 1):

* FinModule:       {"orders": [4, 4, 2]}         entries in {2, 4}
* ModMorphism:     {"source": ..., "target": ..., "matrix": [[...]]}
                   row = source generator, entries 0..3
* UnderObject:     {"base": ..., "carrier": ..., "struct_map": ...}
* UnderMorphism:   {"source": ..., "target": ..., "matrix": [[...]]}
"""

from __future__ import annotations

from typing import Any

from .frobenius import FactorWitness
from .homotopy import HomotopyWitness, HoEqualityWitness, QuotientDistinctnessWitness
from .modules import FinModule, ModMorphism
from .under import Cylinder, UnderMorphism, UnderObject

SCHEMA_VERSION = 1


class InputError(ValueError):
    """Malformed JSON input; the CLI maps this to exit code 2."""


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def module_to_json(m: FinModule) -> dict:
    return {"orders": list(m.orders)}


def module_from_json(data: Any) -> FinModule:
    _expect(isinstance(data, dict) and "orders" in data, "module needs an 'orders' list")
    orders = data["orders"]
    _expect(
        isinstance(orders, list) and all(o in (2, 4) for o in orders),
        f"orders must be a list over {{2, 4}}, got {orders!r}",
    )
    try:
        return FinModule.of(*orders)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def morphism_to_json(f: ModMorphism) -> dict:
    return {
        "source": module_to_json(f.source),
        "target": module_to_json(f.target),
        "matrix": [list(row) for row in f.matrix],
    }


def morphism_from_json(data: Any) -> ModMorphism:
    _expect(
        isinstance(data, dict) and {"source", "target", "matrix"} <= set(data),
        "morphism needs 'source', 'target' and 'matrix'",
    )
    src = module_from_json(data["source"])
    tgt = module_from_json(data["target"])
    matrix = data["matrix"]
    _expect(
        isinstance(matrix, list) and all(isinstance(r, list) for r in matrix),
        "matrix must be a list of rows",
    )
    try:
        return ModMorphism(src, tgt, matrix)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def under_object_to_json(x: UnderObject) -> dict:
    return {
        "base": module_to_json(x.base),
        "carrier": module_to_json(x.carrier),
        "struct_map": morphism_to_json(x.struct_map),
    }


def under_object_from_json(data: Any) -> UnderObject:
    _expect(
        isinstance(data, dict) and {"base", "carrier", "struct_map"} <= set(data),
        "under-object needs 'base', 'carrier' and 'struct_map'",
    )
    base = module_from_json(data["base"])
    carrier = module_from_json(data["carrier"])
    raw = data["struct_map"]
    if isinstance(raw, list):
        # bare matrix form: endpoints are already fixed by base and carrier
        try:
            struct = ModMorphism(base, carrier, raw)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    else:
        struct = morphism_from_json(raw)
        _expect(struct.source == base, "struct_map must start at the base")
        _expect(struct.target == carrier, "struct_map must land in the carrier")
    return UnderObject(carrier, struct)


def under_morphism_to_json(f: UnderMorphism) -> dict:
    return {
        "source": under_object_to_json(f.source),
        "target": under_object_to_json(f.target),
        "matrix": [list(row) for row in f.map.matrix],
    }


def under_morphism_from_json(data: Any) -> UnderMorphism:
    _expect(
        isinstance(data, dict) and {"source", "target", "matrix"} <= set(data),
        "under-morphism needs 'source', 'target' and 'matrix'",
    )
    src = under_object_from_json(data["source"])
    tgt = under_object_from_json(data["target"])
    mat = data["matrix"]
    try:
        carrier_map = ModMorphism(src.carrier, tgt.carrier, mat)
        return UnderMorphism(src, tgt, carrier_map)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def factor_witness_to_json(w: FactorWitness) -> dict:
    return {
        "kind": "factorization-through-bijective",
        "through": module_to_json(w.through),
        "first": morphism_to_json(w.first),
        "second": morphism_to_json(w.second),
    }


def cylinder_to_json(c: Cylinder) -> dict:
    return {
        "space": under_object_to_json(c.space),
        "ins0": [list(r) for r in c.ins0.map.matrix],
        "ins1": [list(r) for r in c.ins1.map.matrix],
        "sigma": [list(r) for r in c.sigma.map.matrix],
    }


def homotopy_witness_to_json(w: HomotopyWitness) -> dict:
    return {
        "kind": "cylinder-homotopy",
        "cylinder": cylinder_to_json(w.cylinder),
        "h": [list(r) for r in w.h.map.matrix],
    }


def ho_equality_witness_to_json(w: HoEqualityWitness) -> dict:
    return {
        "kind": "homotopy-category-equality",
        "replacement": under_morphism_to_json(w.replacement),
        "homotopy": homotopy_witness_to_json(w.homotopy),
    }


def distinctness_witness_to_json(w: QuotientDistinctnessWitness) -> dict:
    return {
        "kind": "quotient-distinctness",
        "subgroup_generators": [[list(r) for r in g.matrix] for g in w.subgroup.generators],
        "difference": [list(r) for r in w.difference.matrix],
        "refuting_column": w.refuting_column,
    }
