"""Command-line driver.

Subcommands:

* ``stablecat verify-counterexample [--base-zero] [--json] [--seed N]
  [--sweep-depth K]`` runs the end-to-end verification; exit 0 means every
  step was certified, exit 1 identifies a falsified step.
* ``stablecat decide <kind> --input file.json [--check-certificate]``
  decides a single query (mono, epi, we, homotopic, ho-equal, distinct)
  and emits a JSON verdict with a certificate where one exists.
* ``stablecat check-hypotheses --input w.json`` reports whether the
  coproduct of a weak equivalence with itself is again a weak equivalence.

Exit codes: 0 verified / decided, 1 falsified claim, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import frobenius, homotopy, jsonio, modules, sweeps, under
from .jsonio import InputError, SCHEMA_VERSION
from .modules import FinModule, ModMorphism, compose
from .under import UnderMorphism, UnderObject


@dataclass
class Step:
    claim: str
    passed: bool
    evidence: dict | str
    statement: str  # the mathematical statement being certified


@dataclass
class VerificationReport:
    steps: list[Step] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(s.passed for s in self.steps)

    def add(self, claim: str, passed: bool, evidence, statement: str) -> None:
        self.steps.append(Step(claim, passed, evidence, statement))

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "summary": "verified" if self.verified else "falsified",
            "steps": [
                {
                    "claim": s.claim,
                    "status": "pass" if s.passed else "fail",
                    "evidence": s.evidence,
                    "statement": s.statement,
                }
                for s in self.steps
            ],
        }

    def format_text(self) -> str:
        lines = []
        for i, s in enumerate(self.steps, 1):
            mark = "ok " if s.passed else "FAIL"
            lines.append(f"[{mark}] step {i}: {s.claim}")
            lines.append(f"        {s.statement}")
        lines.append("summary: " + ("verified" if self.verified else "falsified"))
        return "\n".join(lines)


def _counterexample_instance():
    z4 = FinModule.of(4)
    z42 = FinModule.of(4, 2)
    x = UnderObject(z4, ModMorphism(z4, z4, [[2]]))
    x_unit = UnderObject(z4, ModMorphism(z4, z4, [[1]]))
    y = UnderObject(z42, ModMorphism(z4, z42, [[2, 0]]))
    f = UnderMorphism(x, y, ModMorphism(z4, z42, [[1, 0]]))
    g = UnderMorphism(x, y, ModMorphism(z4, z42, [[1, 1]]))
    w = UnderMorphism(x_unit, x, ModMorphism(z4, z4, [[2]]))
    return x, y, f, g, w


def verify_counterexample(seed: int = 0, sweep_depth: int = 2) -> VerificationReport:
    """The full certified chain behind the non-faithfulness example."""
    report = VerificationReport()
    x, y, f, g, w = _counterexample_instance()
    rng = random.Random(seed)

    # 1. Fibrancy: the map to the terminal object (the zero module) is an epi
    #    for every module, sampled over random under-objects.
    sampled = []
    ok = True
    for _ in range(10):
        carrier = rng.choice(sweeps.modules_up_to_order(16))
        to_zero = ModMorphism.zero(carrier, FinModule.zero())
        fib = modules.is_epi(to_zero)
        sampled.append({"carrier": jsonio.module_to_json(carrier), "fibrant": fib})
        ok = ok and fib
    report.add(
        "all sampled objects are fibrant",
        ok,
        sampled,
        "every module maps onto the zero module, so every under-object is fibrant",
    )

    # 2. The standard cylinder of (Z/4, 2) has a bijective space carrier.
    cyl = under.standard_cylinder(x)
    bij = frobenius.is_bijective_object(cyl.space.carrier) and cyl.validate()
    report.add(
        "standard cylinder of (Z/4, 2) is bijective",
        bij,
        jsonio.cylinder_to_json(cyl),
        "a cylinder for (Z/4, 2) has free carrier, forcing its two inclusions "
        "to agree mod 2",
    )

    # 3. Obstruction subgroup, sweep-validated over free cylinders.
    s = homotopy.homotopy_difference_bound(x, y)
    sweep = sweeps.obstruction_soundness_sweep(x, y, k_max=sweep_depth)
    report.add(
        "obstruction subgroup bounds all homotopy differences",
        sweep.sound,
        {
            "generators": [[list(r) for r in m.matrix] for m in s.generators],
            "cylinders": sweep.cylinders,
            "homotopies": sweep.homotopies,
            "escapes": sweep.escapes,
            "max_free_rank": sweep_depth,
        },
        "every single-step homotopy difference out of (Z/4, 2) is twice a morphism",
    )

    # 4. The pair is distinct in the homotopy quotient.
    wit = homotopy.distinct_in_quotient(f, g)
    distinct_ok = wit is not None and wit.validate(f, g)
    report.add(
        "[1 0] and [1 1] are distinct in the quotient by homotopy",
        distinct_ok,
        jsonio.distinctness_witness_to_json(wit) if wit else "no witness",
        "their difference [0 1] has a nonzero second component, outside the "
        "obstruction subgroup",
    )

    # 5. Precomposition with the weak equivalence w = 2 equalizes the pair.
    w_we = frobenius.is_weak_equivalence(w.map)
    equal_after_w = compose(w.map, f.map) == compose(w.map, g.map)
    report.add(
        "w = 2 is a weak equivalence and equalizes the pair on the nose",
        w_we and equal_after_w,
        {
            "w": jsonio.under_morphism_to_json(w),
            "w_then_f": [list(r) for r in compose(w.map, f.map).matrix],
            "w_then_g": [list(r) for r in compose(w.map, g.map).matrix],
        },
        "2 [1 0] = [2 0] = 2 [1 1] as morphisms from (Z/4, 1)",
    )

    # 6. The pair becomes equal in the homotopy category, with certificate.
    ho_eq, ho_wit = homotopy.decide_ho_equal(f, g)
    ho_ok = ho_eq and ho_wit is not None and ho_wit.validate(f, g)
    report.add(
        "[1 0] and [1 1] become equal in the homotopy category",
        ho_ok,
        jsonio.ho_equality_witness_to_json(ho_wit) if ho_wit else "no certificate",
        "a weak-equivalence precomposition admits an explicit homotopy, so the "
        "localisation identifies the pair",
    )

    # 7. Conclusion.
    report.add(
        "the canonical functor from the homotopy quotient is not faithful",
        distinct_ok and ho_ok,
        {"distinct_in_quotient": distinct_ok, "equal_in_homotopy_category": ho_eq},
        "a pair distinct in the quotient but identified in the homotopy "
        "category witnesses non-faithfulness",
    )
    return report


def verify_base_zero(seed: int = 0, max_order: int = 16) -> VerificationReport:
    """Positive control: no violations where the sufficient criterion holds."""
    report = VerificationReport()
    sweep = sweeps.base_zero_faithfulness_sweep(max_order=max_order, seed=seed)
    report.add(
        f"no faithfulness violations over modules of order <= {max_order}",
        sweep.violations == 0,
        {
            "module_pairs": len(sweep.results),
            "differences_checked": sweep.total_differences,
            "violations": sweep.violations,
        },
        "in plain fgMod(Z/4) homotopy-category equality coincides with stable "
        "homotopy, pair by pair",
    )
    return report


# ---------------------------------------------------------------------------
# decide


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON input: {exc}") from exc


def _parallel_under_pair(data) -> tuple[UnderMorphism, UnderMorphism]:
    if not isinstance(data, dict) or "f" not in data or "g" not in data:
        raise InputError("input needs under-morphisms 'f' and 'g'")
    f = jsonio.under_morphism_from_json(data["f"])
    g = jsonio.under_morphism_from_json(data["g"])
    if f.source != g.source or f.target != g.target:
        raise InputError("'f' and 'g' must be parallel")
    return f, g


def decide(kind: str, data) -> dict:
    out = {"schema": SCHEMA_VERSION, "kind": kind, "query": data}
    if kind in ("mono", "epi", "we"):
        f = jsonio.morphism_from_json(data)
        if kind == "mono":
            out["verdict"] = modules.is_mono(f)
        elif kind == "epi":
            out["verdict"] = modules.is_epi(f)
        else:
            out["verdict"] = frobenius.is_weak_equivalence(f)
            red = frobenius.stable_reduction(f)
            out["certificate"] = {
                "kind": "stable-reduction",
                "source_dim": red.source_dim,
                "target_dim": red.target_dim,
                "matrix": [list(r) for r in red.matrix],
            }
    elif kind == "homotopic":
        if not isinstance(data, dict) or "f" not in data or "g" not in data:
            raise InputError("input needs morphisms 'f' and 'g'")
        f = jsonio.morphism_from_json(data["f"])
        g = jsonio.morphism_from_json(data["g"])
        if f.source != g.source or f.target != g.target:
            raise InputError("'f' and 'g' must be parallel")
        wit = frobenius.factors_through_bijective(g - f)
        out["verdict"] = wit is not None
        if wit is not None:
            out["certificate"] = jsonio.factor_witness_to_json(wit)
    elif kind == "ho-equal":
        f, g = _parallel_under_pair(data)
        verdict, wit = homotopy.decide_ho_equal(f, g)
        out["verdict"] = verdict
        if wit is not None:
            out["certificate"] = jsonio.ho_equality_witness_to_json(wit)
        else:
            out["trusted_criterion"] = homotopy.TRUSTED_NEGATIVE
    elif kind == "distinct":
        f, g = _parallel_under_pair(data)
        try:
            wit = homotopy.distinct_in_quotient(f, g)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        out["verdict"] = wit is not None
        if wit is not None:
            out["certificate"] = jsonio.distinctness_witness_to_json(wit)
    else:
        raise InputError(f"unknown decision kind {kind!r}")
    return out


def check_certificate(kind: str, data) -> dict:
    """Re-validate a previously emitted verdict-with-certificate."""
    if not isinstance(data, dict) or "query" not in data or "verdict" not in data:
        raise InputError("certificate check expects a previously emitted verdict")
    fresh = decide(kind, data["query"])
    valid = fresh["verdict"] == data["verdict"]
    cert = data.get("certificate")
    if valid and cert is not None:
        valid = _validate_certificate(kind, data["query"], cert)
    return {
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "certificate_valid": bool(valid),
    }


def _validate_certificate(kind: str, query, cert) -> bool:
    try:
        return _validate_certificate_inner(kind, query, cert)
    except (KeyError, TypeError, ValueError, modules.ObjectMismatch) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc


def _validate_certificate_inner(kind: str, query, cert) -> bool:
    if kind == "homotopic":
        f = jsonio.morphism_from_json(query["f"])
        g = jsonio.morphism_from_json(query["g"])
        w = frobenius.FactorWitness(
            through=jsonio.module_from_json(cert["through"]),
            first=jsonio.morphism_from_json(cert["first"]),
            second=jsonio.morphism_from_json(cert["second"]),
        )
        return w.validate(g - f)
    if kind == "we":
        f = jsonio.morphism_from_json(query)
        red = frobenius.stable_reduction(f)
        return (
            cert.get("source_dim") == red.source_dim
            and cert.get("target_dim") == red.target_dim
            and [list(r) for r in red.matrix] == cert.get("matrix")
        )
    if kind == "ho-equal":
        f, g = _parallel_under_pair(query)
        q = jsonio.under_morphism_from_json(cert["replacement"])
        cyl_data = cert["homotopy"]["cylinder"]
        cyl = under.standard_cylinder(q.source)
        if jsonio.cylinder_to_json(cyl) != cyl_data:
            return False
        h = ModMorphism(cyl.space.carrier, f.target.carrier, cert["homotopy"]["h"])
        wit = homotopy.HoEqualityWitness(
            q, homotopy.HomotopyWitness(cyl, UnderMorphism(cyl.space, f.target, h))
        )
        return wit.validate(f, g)
    if kind == "distinct":
        f, g = _parallel_under_pair(query)
        sub = homotopy.homotopy_difference_bound(f.source, f.target)
        wit = homotopy.QuotientDistinctnessWitness(
            subgroup=sub,
            difference=ModMorphism(
                f.source.carrier, f.target.carrier, cert["difference"]
            ),
            refuting_column=cert["refuting_column"],
        )
        return wit.validate(f, g)
    return True


def check_hypotheses(data) -> dict:
    """Instance-level diagnosis of the sufficient criterion's hypothesis.

    For a weak equivalence w, reports whether w + w (the induced morphism of
    under-coproducts) is again a weak equivalence.
    """
    w = jsonio.under_morphism_from_json(data)
    if not frobenius.is_weak_equivalence(w.map):
        raise InputError("input morphism is not a weak equivalence")
    cop_src = under.coproduct_under(w.source, w.source)
    cop_tgt = under.coproduct_under(w.target, w.target)
    ww = under.coproduct_of_morphisms(cop_src, cop_tgt, w, w)
    red = frobenius.stable_reduction(ww.map)
    return {
        "schema": SCHEMA_VERSION,
        "w": jsonio.under_morphism_to_json(w),
        "coproduct_source_carrier": jsonio.module_to_json(cop_src.object.carrier),
        "coproduct_target_carrier": jsonio.module_to_json(cop_tgt.object.carrier),
        "w_coproduct_matrix": [list(r) for r in ww.map.matrix],
        "stable_reduction": {
            "source_dim": red.source_dim,
            "target_dim": red.target_dim,
            "matrix": [list(r) for r in red.matrix],
        },
        "w_coproduct_is_weak_equivalence": frobenius.is_weak_equivalence(ww.map),
    }


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablecat",
        description="exact workbench for the stable module category of Z/4",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify-counterexample", help="run the certified chain")
    p_verify.add_argument("--base-zero", action="store_true", help="run the positive control instead")
    p_verify.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--sweep-depth", type=int, default=2, help="max free rank in the cylinder sweep")
    p_verify.add_argument("--max-order", type=int, default=16, help="module order bound for --base-zero")

    p_decide = sub.add_parser("decide", help="decide a single query from JSON input")
    p_decide.add_argument("kind", choices=["mono", "epi", "we", "homotopic", "ho-equal", "distinct"])
    p_decide.add_argument("--input", required=True)
    p_decide.add_argument("--check-certificate", action="store_true")

    p_hyp = sub.add_parser("check-hypotheses", help="diagnose the w + w hypothesis for a weak equivalence")
    p_hyp.add_argument("--input", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify-counterexample":
            if args.base_zero:
                report = verify_base_zero(seed=args.seed, max_order=args.max_order)
            else:
                report = verify_counterexample(seed=args.seed, sweep_depth=args.sweep_depth)
            if args.json:
                print(json.dumps(report.to_json(), indent=2))
            else:
                print(report.format_text())
            return 0 if report.verified else 1
        if args.command == "decide":
            data = _load_json(args.input)
            if args.check_certificate:
                out = check_certificate(args.kind, data)
                print(json.dumps(out, indent=2))
                return 0 if out["certificate_valid"] else 1
            out = decide(args.kind, data)
            print(json.dumps(out, indent=2))
            return 0
        if args.command == "check-hypotheses":
            out = check_hypotheses(_load_json(args.input))
            print(json.dumps(out, indent=2))
            return 0
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
