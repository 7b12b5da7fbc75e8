//! Built-in identity suite behind `kernelflow verify`.

use kernelflow_core::forms::{
    check_conformal_with, field_of_form, form_of_field, orbital_residual, pullback_form,
    JetDiffeo, OneForm, PlaneField,
};
use kernelflow_core::local_algebra::{codimension, tangent_ideal, Codim};
use kernelflow_core::{parse_expr, Jet};

/// How a 1-form is turned into its field.
pub type FieldConvention = fn(&OneForm) -> PlaneField;

pub struct Check {
    pub name: &'static str,
    run: fn(FieldConvention) -> Result<(), String>,
}

impl Check {
    pub fn run(&self, convention: FieldConvention) -> Result<(), String> {
        (self.run)(convention)
    }
}

const N: u32 = 10;

fn p(s: &str) -> Jet {
    parse_expr(s, N).expect("built-in expression")
}

fn example_map() -> JetDiffeo {
    JetDiffeo::new(p("x + x^2"), p("x + y")).expect("invertible")
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn example_form_pullback(_: FieldConvention) -> Result<(), String> {
    let a = OneForm::new(p("(2 + x*y)*(1 + 2*x)"), Jet::zero(N));
    let pulled = pullback_form(&example_map(), &OneForm::new(Jet::one(N), Jet::zero(N))).scale(&p("2 + x*y"));
    let residual = &a - &pulled;
    ensure(residual.is_zero(), || format!("a - k phi*b = ({}, {})", residual.p, residual.q))
}

fn example_field_pullback(field: FieldConvention) -> Result<(), String> {
    let a = OneForm::new(p("(2 + x*y)*(1 + 2*x)"), Jet::zero(N));
    let b = OneForm::new(Jet::one(N), Jet::zero(N));
    let check = check_conformal_with(&a, &b, &example_map(), &p("2 + x*y"), field).map_err(|e| e.to_string())?;
    ensure(check.field_residual.is_zero(), || {
        let r = &check.field_residual;
        format!("residual ({}, {})", r.u, r.v)
    })
}

fn example_multiplier(field: FieldConvention) -> Result<(), String> {
    let phi = example_map();
    let f1 = p("exp(x)*(2*x + y + x^2)");
    let f2 = p("x + y");
    ensure(f1 == &p("exp(x)") * &phi.pullback_function(&f2), || "f1 != e^x f2(phi)".into())?;
    let a = OneForm::new(p("(2 + x*y)*(1 + 2*x)"), Jet::zero(N));
    let b = OneForm::new(Jet::one(N), Jet::zero(N));
    let h = &(&p("exp(x)") * &p("2 + x*y")) * &phi.jacobian_det();
    let residual = orbital_residual(&field(&a).scale(&f1), &field(&b).scale(&f2), &phi, &h)
        .map_err(|e| e.to_string())?;
    ensure(residual.is_zero(), || format!("residual ({}, {})", residual.u, residual.v))
}

fn triples() -> Vec<(OneForm, JetDiffeo, Jet)> {
    let maps = [
        ("x + x^2", "x + y"),
        ("2*x - y + x*y", "y + x^3"),
        ("y + x^2*y", "-x + y^2"),
    ];
    let forms = [
        OneForm::darboux(N + 1),
        OneForm::new(p("1 + y"), p("x - y^2")).clamp(N + 1),
        OneForm::exact(&parse_expr("x^3/3 - x^2/2 + y^2/2", N + 2).expect("built-in")),
    ];
    let units = ["1", "2 + x*y", "-1 + x - 3*y^2"];
    let mut out = Vec::new();
    for (i, (u, v)) in maps.iter().enumerate() {
        let phi = JetDiffeo::new(p(u), p(v)).expect("invertible");
        out.push((forms[i].clone(), phi, p(units[i])));
    }
    out
}

fn conformal_round_trip(field: FieldConvention) -> Result<(), String> {
    for (b, phi, k) in triples() {
        let a = pullback_form(&phi, &b).scale(&k);
        let back = form_of_field(&field(&a));
        ensure(back == a, || format!("omega(X_a, .) = ({}, {}), a = ({}, {})", back.p, back.q, a.p, a.q))?;
        let check = check_conformal_with(&a, &b, &phi, &k, field).map_err(|e| e.to_string())?;
        ensure(check.holds, || {
            let r = &check.field_residual;
            format!("X_a - k det phi*X_b = ({}, {})", r.u, r.v)
        })?;
    }
    Ok(())
}

fn orbital_round_trip(field: FieldConvention) -> Result<(), String> {
    let f2 = p("x + y^2 - x*y");
    let h = p("3 - y + x^2");
    for (b, phi, k) in triples() {
        let a = pullback_form(&phi, &b).scale(&k);
        let f1 = &h * &phi.pullback_function(&f2);
        let lambda = &(&h * &k) * &phi.jacobian_det();
        let residual = orbital_residual(&field(&a).scale(&f1), &field(&b).scale(&f2), &phi, &lambda)
            .map_err(|e| e.to_string())?;
        ensure(residual.is_zero(), || format!("residual ({}, {})", residual.u, residual.v))?;
    }
    Ok(())
}

fn codim_of(a: &OneForm, f: &str, field: FieldConvention) -> Option<usize> {
    let n = 12;
    let f = parse_expr(f, n).expect("built-in");
    match codimension(&tangent_ideal(&f, &field(&a.clamp(n)))).codim {
        Codim::Finite(c) => Some(c),
        Codim::Unstable { .. } => None,
    }
}

fn table(a: &OneForm, rows: &[(String, usize)], field: FieldConvention) -> Result<(), String> {
    for (f, expected) in rows {
        let got = codim_of(a, f, field);
        ensure(got == Some(*expected), || format!("codim({f}) = {got:?}, expected {expected}"))?;
    }
    Ok(())
}

fn codim_regular_catalog(field: FieldConvention) -> Result<(), String> {
    let mut rows = Vec::new();
    for k in 1..=4 {
        rows.push((format!("y - x^{}", k + 1), k));
    }
    for k in 2..=4 {
        rows.push((format!("x*y - x^{k}"), k));
        rows.push((format!("x^2 + y^{}", k + 1), k + 1));
        rows.push((format!("x^2 - y^{}", k + 1), k + 1));
    }
    rows.push(("y^2 + x^3".into(), 4));
    table(&OneForm::dy(12), &rows, field)
}

fn codim_singular_forms(field: FieldConvention) -> Result<(), String> {
    let liouville = [("x + y".into(), 1), ("x - y^2".into(), 2), ("y - x^2".into(), 2)];
    table(&OneForm::liouville(12), &liouville, field)?;
    table(&OneForm::morse(true, 12), &[("x".into(), 1)], field)?;
    table(&OneForm::morse(false, 12), &[("x".into(), 1)], field)
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "pullback.form", run: example_form_pullback },
        Check { name: "pullback.field", run: example_field_pullback },
        Check { name: "pullback.multiplier", run: example_multiplier },
        Check { name: "conformal.round_trip", run: conformal_round_trip },
        Check { name: "orbital.round_trip", run: orbital_round_trip },
        Check { name: "codim.regular_catalog", run: codim_regular_catalog },
        Check { name: "codim.singular_forms", run: codim_singular_forms },
    ]
}

/// The standard convention `X_a = -Q ∂x + P ∂y`.
pub fn standard_convention() -> FieldConvention {
    field_of_form
}

/// The opposite sign, `X_a = Q ∂x - P ∂y`.
pub fn flipped_convention() -> FieldConvention {
    |a| {
        let x = field_of_form(a);
        PlaneField::new(-&x.u, -&x.v)
    }
}

pub fn run_all(convention: FieldConvention) -> Vec<(&'static str, Result<(), String>)> {
    checks().iter().map(|c| (c.name, c.run(convention))).collect()
}
