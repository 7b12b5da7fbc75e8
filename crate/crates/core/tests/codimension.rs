use kernelflow_core::forms::{field_of_form, OneForm, PlaneField};
use kernelflow_core::local_algebra::{
    codimension, finite_determinacy_order, ideal_image, quotient_dims, tangent_ideal, Codim, Determinacy,
};
use kernelflow_core::parse_expr;
use proptest::prelude::*;

fn p(s: &str, n: u32) -> kernelflow_core::Jet {
    parse_expr(s, n).unwrap()
}

#[test]
fn early_stop_agrees_with_full_elimination() {
    let dx = PlaneField::d_dx(12);
    for f in ["y - x^3", "x*y - x^4", "x^2 - y^5", "y^2 + x^3", "x^2 + y^2", "y + x^2*y - x^4"] {
        let ideal = tangent_ideal(&p(f, 12), &dx);
        let r = codimension(&ideal);
        let dims = quotient_dims(&ideal);
        let c = r.codim.finite().expect(f);
        assert!(dims[r.stable_at as usize..].iter().all(|&d| d == c), "{f}: {dims:?} vs {c}");
        assert_eq!(r.cobasis.len(), c);
    }
}

#[test]
fn cobasis_complements_the_image() {
    let a = OneForm::liouville(12);
    for f in ["x + y", "x - y^2", "y - x^2"] {
        let ideal = tangent_ideal(&p(f, 12), &field_of_form(&a));
        let r = codimension(&ideal);
        let image = ideal_image(&ideal, r.stable_at - 1).unwrap();
        assert!(image.is_complemented_by(&r.cobasis), "{f}");
    }
}

#[test]
fn non_isolated_curve_is_unstable() {
    // x^2 y vanishes on both axes; ⟨x^2 y, 2 x y⟩ has infinite codimension.
    let ideal = tangent_ideal(&p("x^2*y", 10), &PlaneField::d_dx(10));
    assert!(matches!(codimension(&ideal).codim, Codim::Unstable { order: 9, .. }));
}

#[test]
fn higher_order_terms_are_absorbed() {
    let dx = PlaneField::d_dx(12);
    assert_eq!(finite_determinacy_order(&p("y - x^3 + x^7 + y^5", 12), &dx), Determinacy::Order(3));
    assert_eq!(finite_determinacy_order(&p("x^2 + y^3 + x*y^2", 12), &dx), Determinacy::Order(3));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    // Terms above the determinacy degree never change the codimension.
    #[test]
    fn tail_independence(k in 1u32..=4, c in -3i64..=3, i in 0u32..=3, extra in 1u32..=3) {
        let n = 12;
        let base = p(&format!("y - x^{}", k + 1), n);
        let dx = PlaneField::d_dx(n);
        let r = codimension(&tangent_ideal(&base, &dx));
        let deg = k + 1 + extra;
        let tail = kernelflow_core::Jet::from_ints(&[(i.min(deg), deg - i.min(deg), c)], n);
        let r2 = codimension(&tangent_ideal(&(&base + &tail), &dx));
        prop_assert_eq!(r.codim, r2.codim);
    }
}
