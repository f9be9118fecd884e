//! JSON encodings of the library types and the plain-text table view.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use sasaki_join::admissible::{
    AdmissibleData, EndpointCheck, ExtremalSolution, KeRoot, KeSolution, RootValue,
};
use sasaki_join::exact::{format_rational, ExactPolynomial, IsolatingInterval, Rational};
use sasaki_join::quotient::OrbitPeriods;
use sasaki_join::topology::{AbelianGroup, RingPresentation};
use sasaki_join::{FanoBase, JoinSpec, ReebQuotient, ReebRay, WeightVector};

/// Whether approximate (floating) fields are emitted.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub exact_only: bool,
}

impl Style {
    /// `{"approx": true, "value": x, "error_bound": e}`, or `None` under
    /// `--exact-only`.
    pub fn approx(&self, value: f64, error_bound: f64) -> Option<Value> {
        (!self.exact_only).then(|| json!({"approx": true, "value": value, "error_bound": error_bound}))
    }

    pub fn insert_approx(&self, obj: &mut Map<String, Value>, key: &str, value: f64, error_bound: f64) {
        if let Some(v) = self.approx(value, error_bound) {
            obj.insert(key.into(), v);
        }
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

pub fn pair_w(w: WeightVector) -> Value {
    json!([w.w1(), w.w2()])
}

pub fn pair_v(v: ReebRay) -> Value {
    json!([v.v1(), v.v2()])
}

pub fn polynomial(p: &ExactPolynomial, var: &str) -> Value {
    json!({
        "display": p.display_in(var),
        "coefficients": p.coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn base(b: &FanoBase) -> Value {
    json!({
        "spec": b.spec_string(),
        "name": b.name,
        "d_n": b.d_n,
        "fano_index": b.fano_index,
    })
}

pub fn join(j: &JoinSpec) -> Value {
    json!({
        "base": base(&j.base),
        "w": pair_w(j.w),
        "l1": j.l1,
        "l2": j.l2,
        "smoothness_gcd": j.smoothness_gcd,
        "w_norm": j.w.norm(),
    })
}

pub fn quotient(q: &ReebQuotient) -> Value {
    json!({
        "s": q.s,
        "m": q.m,
        "m1": q.m1,
        "m2": q.m2,
        "degree_n": q.degree_n,
        "orientation_reversed": q.orientation_reversed,
        "branch": q.branch.iter().map(|b| json!({
            "divisor": b.divisor.to_string(),
            "ramification": b.ramification,
            "coefficient": rational(&b.coefficient()),
        })).collect::<Vec<_>>(),
        "delta": q.delta_string(),
        "fiber": q.fiber.to_string(),
        "orb_pi1_order": q.orb_pi1_order,
        "lens_fiber": {
            "p": q.lens_fiber.p,
            "q1": q.lens_fiber.q1,
            "q2": q.lens_fiber.q2,
            "display": q.lens_fiber.to_string(),
        },
        "regularity": q.regularity.to_string(),
    })
}

pub fn periods(p: &OrbitPeriods) -> Value {
    json!({
        "generic": rational(&p.generic),
        "at_d1": rational(&p.at_d1),
        "at_d2": rational(&p.at_d2),
    })
}

pub fn group(g: &AbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": g.invariant_factors.iter().map(big).collect::<Vec<_>>(),
        "as_written": g.as_written(),
        "display": g.to_string(),
    })
}

pub fn ring(r: &RingPresentation) -> Value {
    let groups: Map<String, Value> = r
        .groups_by_degree
        .iter()
        .map(|(d, g)| (d.to_string(), group(g)))
        .collect();
    json!({
        "generators": r.generators.iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect::<Vec<_>>(),
        "relations": r.relation_strings(),
        "dim": r.dim,
        "groups_by_degree": groups,
        "poincare_duality": r.satisfies_poincare_duality(),
    })
}

pub fn interval(iv: &IsolatingInterval) -> Value {
    json!({
        "lo": rational(&iv.lo),
        "hi": rational(&iv.hi),
        "width": rational(&iv.width()),
    })
}

pub fn admissible_data(d: &AdmissibleData) -> Value {
    json!({
        "d_n": d.d_n,
        "scalar_s": rational(&d.scalar_s),
        "r": rational(&d.r),
        "m1": d.m1,
        "m2": d.m2,
    })
}

pub fn endpoints(e: &EndpointCheck) -> Value {
    json!({
        "f_at_minus_one": rational(&e.f_at_minus_one),
        "f_at_one": rational(&e.f_at_one),
        "slope_at_minus_one": e.slope_at_minus_one,
        "slope_at_one": e.slope_at_one,
        "all_hold": e.all_hold(),
    })
}

pub fn ke_root(root: &KeRoot, style: Style) -> Value {
    let mut obj = Map::new();
    match &root.value {
        RootValue::Rational(c) => {
            obj.insert("rationality".into(), json!("rational"));
            obj.insert("value".into(), rational(c));
        }
        RootValue::Interval(iv) => {
            obj.insert("rationality".into(), json!("irrational"));
            obj.insert("interval".into(), interval(iv));
            style.insert_approx(
                &mut obj,
                "approx",
                iv.approx(),
                sasaki_join::exact::to_f64(&iv.width()) / 2.0,
            );
        }
    }
    obj.insert("multiplicity".into(), json!(root.multiplicity));
    obj.insert("classification".into(), json!(root.classification.to_string()));
    if let Some(v) = root.v {
        obj.insert("v".into(), pair_v(v));
    }
    if let Some(q) = &root.quotient {
        obj.insert("quotient".into(), quotient(q));
    }
    if let Some(l) = &root.lambda {
        obj.insert("lambda".into(), rational(l));
    }
    Value::Object(obj)
}

pub fn ke_solution(sol: &KeSolution, style: Style) -> Value {
    json!({
        "t": rational(&sol.t),
        "defect_polynomial": polynomial(&sol.defect_polynomial, "c"),
        "root_count": sol.roots.len(),
        "roots": sol.roots.iter().map(|r| ke_root(r, style)).collect::<Vec<_>>(),
    })
}

pub fn extremal(sol: &ExtremalSolution) -> Value {
    json!({
        "data": admissible_data(&sol.data),
        "p": polynomial(&sol.p, "z"),
        "f": polynomial(&sol.f, "z"),
        "endpoints": endpoints(&sol.endpoints),
        "positive": sol.positive,
    })
}

/// Flattens a JSON document into aligned `path  value` lines.
pub fn table(doc: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, child) in map {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&path, child, out);
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), child, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", doc, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}
