//! Deterministic JSON encoding of exact values: scalars are cyclotomic
//! coefficient vectors, polynomials are exponent/coefficient pairs, and
//! every value carries a pretty-printed form. No floating point.

use serde_json::{json, Value};

use rtorsion::algebra::rational::format_rational;
use rtorsion::algebra::{Cyclotomic, LaurentPoly, TorsionScalar, TorsionValue};
use rtorsion::groups::Perm;
use rtorsion::surgery::ManifoldInvariantSet;

pub fn cyclotomic(z: &Cyclotomic) -> Value {
    json!({
        "order": z.order(),
        "coeffs": z.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn poly(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, cyclotomic(c)])).collect())
}

pub fn torsion_value(v: &TorsionValue) -> Value {
    let c = v.canonicalize();
    match c.value() {
        TorsionScalar::Scalar(z) => json!({
            "kind": "scalar",
            "pretty": c.to_string(),
            "value": cyclotomic(z),
        }),
        TorsionScalar::Fraction(f) => json!({
            "kind": "fraction",
            "pretty": c.to_string(),
            "numer": poly(f.numer()),
            "denom": poly(f.denom()),
        }),
    }
}

pub fn perm_tuple(t: &[Perm]) -> Value {
    Value::Array(t.iter().map(|p| Value::String(p.to_string())).collect())
}

pub fn invariant_set(set: &ManifoldInvariantSet) -> Value {
    json!({
        "values": set.values().iter().map(torsion_value).collect::<Vec<_>>(),
        "elements": set.elements.iter().map(|e| json!({
            "class": perm_tuple(&e.class),
            "value": torsion_value(&e.value),
        })).collect::<Vec<_>>(),
        "warnings": set.warnings,
    })
}
