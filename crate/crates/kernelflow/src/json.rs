//! JSON encodings of the core types.
//!
//! Rationals are strings (`"3"`, `"-1/2"`) so no precision is lost.

use kernelflow_core::classifier::NormalForm;
use kernelflow_core::forms::{OneForm, PlaneField};
use kernelflow_core::local_algebra::{Codim, CodimResult};
use kernelflow_core::unfolding::UnfoldingFamily;
use kernelflow_core::{Jet, Monomial, Rational};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
#[error("malformed {what} in JSON input")]
pub struct DecodeError {
    pub what: &'static str,
}

fn malformed(what: &'static str) -> DecodeError {
    DecodeError { what }
}

pub fn jet(j: &Jet) -> Value {
    let terms: Vec<Value> = j
        .terms()
        .map(|(m, c)| json!([m.x, m.y, c.to_string()]))
        .collect();
    json!({ "order": j.order(), "terms": terms })
}

pub fn monomial(m: Monomial) -> Value {
    json!([m.x, m.y])
}

pub fn form(a: &OneForm) -> Value {
    json!({ "P": jet(&a.p), "Q": jet(&a.q) })
}

pub fn field(x: &PlaneField) -> Value {
    json!({ "u": jet(&x.u), "v": jet(&x.v) })
}

pub fn codim(r: &CodimResult) -> Value {
    let (value, lower_bound) = match r.codim {
        Codim::Finite(c) => (json!(c), Value::Null),
        Codim::Unstable { lower_bound, .. } => (Value::Null, json!(lower_bound)),
    };
    json!({
        "codim": value,
        "lower_bound": lower_bound,
        "cobasis": r.cobasis.iter().map(|m| monomial(*m)).collect::<Vec<_>>(),
        "stable_at": r.stable_at,
    })
}

pub fn normal_form(nf: &NormalForm) -> Value {
    json!({
        "class": nf.class.name(),
        "k": nf.class.k(),
        "sign": nf.class.sign().map(|s| s.as_str()),
        "codim": nf.codim,
        "representative": jet(&nf.representative),
        "valid_at_order": nf.valid_at_order,
    })
}

pub fn family(f: &UnfoldingFamily) -> Value {
    json!({
        "base": jet(&f.base),
        "monomials": f.monomials.iter().map(|m| monomial(*m)).collect::<Vec<_>>(),
        "parameters": f.parameter_names,
        "form": form(&f.form),
        "rectified": f.rectified,
    })
}

fn u32_of(v: &Value, what: &'static str) -> Result<u32, DecodeError> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or(malformed(what))
}

pub fn decode_jet(v: &Value) -> Result<Jet, DecodeError> {
    let order = u32_of(&v["order"], "jet order")?;
    let terms = v["terms"].as_array().ok_or(malformed("jet terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let i = u32_of(&t[0], "monomial exponent")?;
        let j = u32_of(&t[1], "monomial exponent")?;
        let c: Rational = t[2]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or(malformed("coefficient"))?;
        out.push((Monomial::new(i, j), c));
    }
    Ok(Jet::from_terms(out, order))
}

pub fn decode_form(v: &Value) -> Result<OneForm, DecodeError> {
    Ok(OneForm::new(decode_jet(&v["P"])?, decode_jet(&v["Q"])?))
}

pub fn decode_family(v: &Value) -> Result<UnfoldingFamily, DecodeError> {
    let base = decode_jet(&v["base"])?;
    let monomials = v["monomials"]
        .as_array()
        .ok_or(malformed("family monomials"))?
        .iter()
        .map(|m| Ok(Monomial::new(u32_of(&m[0], "monomial")?, u32_of(&m[1], "monomial")?)))
        .collect::<Result<Vec<_>, DecodeError>>()?;
    let parameter_names = (0..monomials.len()).map(|i| format!("c{i}")).collect();
    Ok(UnfoldingFamily {
        base,
        monomials,
        parameter_names,
        form: decode_form(&v["form"])?,
        rectified: v["rectified"].as_bool().unwrap_or(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kernelflow_core::parse_expr;

    #[test]
    fn jet_round_trip() {
        let j = parse_expr("1/3 - 2*x*y + y^4", 6).unwrap();
        let v = jet(&j);
        assert_eq!(v["terms"][0], json!([0, 0, "1/3"]));
        assert_eq!(v["terms"][1], json!([1, 1, "-2"]));
        assert_eq!(decode_jet(&v).unwrap(), j);
    }

    #[test]
    fn bad_coefficient_is_rejected() {
        let v = json!({"order": 3, "terms": [[0, 0, "x"]]});
        assert!(decode_jet(&v).is_err());
        assert!(decode_jet(&json!({"order": -1, "terms": []})).is_err());
    }
}
