//! JSON renderings of analysis results, shared by the CLI and bindings.

use serde_json::{json, Value};

use crate::field::{format_rational, ExtScalar, Scalar};
use crate::json::Json;
use crate::pencil::{CaseSet, CaseThree, CaseTwo, ExtensionCertificate};
use crate::pit::{PitVerdict, SimplicityReport, SzVerdict};
use crate::qform::{FactorKind, FactorWitness};
use crate::quadsg::{CrossPair, PartitionStats, TheoremReport, ValidationReport, Violation};
use crate::sg::{EkBoundReport, EkReport, PartialEkReport, SgBoundReport};

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(Json::to_json).collect())
}

pub fn ext_scalar(x: &ExtScalar) -> Value {
    match x.as_scalar() {
        Some(s) => s.to_json(),
        None => json!({
            "rational": x.rational_part().to_json(),
            "radical": x.radical_part().to_json(),
            "sqrt_of": x.disc().to_json(),
        }),
    }
}

pub fn factor_witness(w: &FactorWitness) -> Value {
    let kind = match w.kind {
        FactorKind::Square => "square",
        FactorKind::Product => "product",
        FactorKind::Irreducible => "irreducible",
    };
    json!({
        "kind": kind,
        "scale": w.scale.to_json(),
        "factors": w.factors.iter().map(|f| Value::Array(f.iter().map(ext_scalar).collect())).collect::<Vec<_>>(),
        "disc": w.disc.to_json(),
        "needs_extension": w.needs_extension(),
    })
}

fn extension(c: &ExtensionCertificate) -> Value {
    json!({"disc": c.disc.as_ref().map(Json::to_json), "reason": c.reason})
}

pub fn case_set(c: &CaseSet) -> Value {
    let span_member = c
        .case_i
        .as_ref()
        .map(|(k, a, b)| json!({"third_index": k, "alpha": a.to_json(), "beta": b.to_json()}));
    let reducible = c.case_ii.as_ref().map(|x| match x {
        CaseTwo::Rational { alpha, beta, witness, by_square } => json!({
            "alpha": alpha.to_json(),
            "beta": beta.to_json(),
            "factorization": factor_witness(witness),
            "by_square": by_square,
        }),
        CaseTwo::Irrational { min_poly } => json!({"ratio_min_poly": scalars(min_poly)}),
    });
    let common_space = c.case_iii.as_ref().map(|x| match x {
        CaseThree::Space { w, third } => json!({"space": w.to_json(), "third_vanishing": third}),
        CaseThree::Extension(e) => json!({"extension": extension(e)}),
    });
    json!({
        "span_member": span_member,
        "reducible_combination": reducible,
        "common_codim2_zero": common_space,
    })
}

fn pair_key((a, b): &CrossPair) -> String {
    format!("T{}[{}]~T{}[{}]", a.0 + 1, a.1, b.0 + 1, b.1)
}

pub fn violation(v: &Violation) -> Value {
    json!({
        "kind": v.kind,
        "first": [v.first.0 + 1, v.first.1],
        "second": v.second.map(|s| json!([s.0 + 1, s.1])),
    })
}

pub fn partition_stats(p: &PartitionStats) -> Value {
    let sets: Vec<Value> = p
        .sets
        .iter()
        .map(|s| {
            let size = s.iter().filter(|m| !m.exempt).count();
            json!({
                "irreducible": size,
                "span_member_part": s.iter().filter(|m| m.p_i).count(),
                "common_zero_part": s.iter().filter(|m| m.p_iii).count(),
                "members": s,
            })
        })
        .collect();
    json!({"delta": format_rational(&p.delta), "sets": sets})
}

pub fn validation(r: &ValidationReport) -> Value {
    let witnesses: serde_json::Map<String, Value> =
        r.witnesses.iter().map(|(k, w)| (pair_key(k), json!(w))).collect();
    let cases: serde_json::Map<String, Value> = r.pair_cases.iter().map(|(k, c)| (pair_key(k), case_set(c))).collect();
    json!({
        "ok": r.all_ok(),
        "independence_ok": r.independence_ok,
        "shape_ok": r.shape_ok,
        "vanishing_ok": r.vanishing_ok,
        "violations": r.violations.iter().map(violation).collect::<Vec<_>>(),
        "vanishing_witnesses": witnesses,
        "large_witness_pairs": r.large_witness_pairs().iter().map(pair_key).collect::<Vec<_>>(),
        "pair_cases": cases,
        "partition": partition_stats(&r.partition_stats),
    })
}

pub fn theorem(r: &TheoremReport) -> Value {
    json!({
        "span_dim": r.span_dim,
        "predicted": r.predicted,
        "lambda_test": r.lambda_test,
        "within_lambda": r.within_lambda,
        "matches_prediction": r.matches_prediction,
        "passed": r.passed(),
    })
}

pub fn pit_verdict(v: &PitVerdict) -> Value {
    match v {
        PitVerdict::Witness { index, point, value } => json!({
            "zero": false,
            "index": index.to_string(),
            "point": scalars(point),
            "value": value.to_json(),
        }),
        PitVerdict::ZeroOnH { points } => json!({"zero": true, "points": points.to_string()}),
    }
}

pub fn sz_verdict(v: &SzVerdict) -> Value {
    json!({
        "zero": v.witness.is_none(),
        "trials": v.trials,
        "witness": v.witness.as_ref().map(|(p, x)| json!({"point": scalars(p), "value": x.to_json()})),
    })
}

pub fn simplicity(r: &SimplicityReport) -> Value {
    json!({
        "simple": r.simple,
        "minimal": r.minimal,
        "gate_zero": r.gate_zero,
        "pair_zero": r.pair_zero,
        "total_zero": r.total_zero,
    })
}

pub fn sg_bound(r: &SgBoundReport) -> Value {
    json!({"dim": r.dim, "bound": format_rational(&r.bound), "holds": r.holds})
}

pub fn ek(r: &EkReport, bound: Option<&EkBoundReport>) -> Value {
    json!({
        "holds": r.holds,
        "violation": r.violation.map(|(a, b)| json!([[a.0, a.1], [b.0, b.1]])),
        "dim": bound.map(|b| b.dim),
        "bound": bound.map(|b| b.bound),
        "bound_holds": bound.map(|b| b.holds),
    })
}

pub fn partial_ek(r: &PartialEkReport) -> Value {
    json!({
        "holds": r.holds,
        "fractions": r.fractions.iter().map(|f| f.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "dim": r.dim,
        "constant": r.constant,
        "bound": format_rational(&r.bound),
        "within_bound": r.within_bound,
    })
}
