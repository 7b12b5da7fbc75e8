//! Machine-readable classification reports.

use kernelflow_core::classifier::{classify, NormalForm};
use kernelflow_core::forms::{field_of_form, OneForm};
use kernelflow_core::unfolding::{build_unfolding, check_transversality, UnfoldingFamily};
use kernelflow_core::Jet;
use serde::Serialize;
use serde_json::Value;

use crate::json;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Published JSON schema for [`Report`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// The inputs as the user typed them.
#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dg: Option<String>,
    pub f: String,
    pub order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub input: InputEcho,
    pub form: Value,
    pub field: Value,
    pub codim: Value,
    pub normal_form: Value,
    pub family: Option<Value>,
    pub transversal: Option<bool>,
    pub warnings: Vec<String>,
}

/// Everything computed for one `(a, f)` pair.
pub struct Analysis {
    pub normal_form: NormalForm,
    pub family: Option<UnfoldingFamily>,
    pub report: Report,
}

impl Analysis {
    pub fn is_unstable(&self) -> bool {
        self.normal_form.codim.is_none()
    }
}

pub fn analyse(command: &'static str, input: InputEcho, a: &OneForm, f: &Jet) -> Analysis {
    let order = input.order;
    let xa = field_of_form(a);
    let nf = classify(a, f);
    let mut warnings = vec![format!("answers valid at order {order} only")];
    if xa.is_singular_at_origin() {
        warnings.push("X_a vanishes at the origin (singular form)".to_string());
    }
    if let Some(d) = &nf.diagnostic {
        warnings.push(d.clone());
    }
    let family = build_unfolding(&nf, a).ok();
    match (&family, nf.codim) {
        (_, None) => warnings.push(format!("codimension unstable up to order {order}")),
        (Some(fam), _) if fam.is_empty() => {
            warnings.push("no bifurcations: codimension 0, the family has no parameters".to_string())
        }
        (Some(fam), _) if fam.rectified => warnings.push(
            "family is stated in flow-box coordinates, where X_a is horizontal (form dy)".to_string(),
        ),
        _ => {}
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        command,
        input,
        form: json::form(a),
        field: json::field(&xa),
        codim: json::codim(&nf.codim_result),
        normal_form: json::normal_form(&nf),
        family: family.as_ref().map(json::family),
        transversal: family.as_ref().map(check_transversality),
        warnings,
    };
    Analysis {
        normal_form: nf,
        family,
        report,
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialises");
    s.push('\n');
    s
}
