//! Transversal unfoldings `f + Σ c_i m_i` over a computed cobasis.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::classifier::{NormalClass, NormalForm};
use crate::error::GeometryError;
use crate::forms::{field_of_form, OneForm, PlaneField};
use crate::jet::{Jet, Monomial, Rational};
use crate::local_algebra::{codimension, ideal_image, tangent_ideal};
use crate::portrait::{Poly, PolyField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingFamily {
    pub base: Jet,
    pub monomials: Vec<Monomial>,
    pub parameter_names: Vec<String>,
    pub form: OneForm,
    /// The family lives in flow-box coordinates of the input form, where its
    /// field is horizontal, rather than in the input coordinates.
    pub rectified: bool,
}

fn catalog_in_flow_box(class: NormalClass) -> bool {
    matches!(
        class,
        NormalClass::RegularCurve { .. }
            | NormalClass::TwoBranch { .. }
            | NormalClass::Beak { .. }
            | NormalClass::Cusp
    )
}

/// The family `base + Σ c_i m_i` with the graded-lex cobasis of the tangent
/// ideal of the representative.
///
/// Models for regular forms are stated for a horizontal field. When `X_a` is
/// not horizontal the family is built over `dy` and flagged as rectified.
pub fn build_unfolding(nf: &NormalForm, a: &OneForm) -> Result<UnfoldingFamily, GeometryError> {
    if nf.codim.is_none() {
        return Err(GeometryError::InfiniteCodimension);
    }
    let order = nf.representative.order().min(a.order());
    let base = nf.representative.clamp(order);
    let a = a.clamp(order);
    let horizontal = field_of_form(&a).v.is_zero();
    let rectified = catalog_in_flow_box(nf.class) && !horizontal;
    let form = if rectified { OneForm::dy(order) } else { a };
    let result = codimension(&tangent_ideal(&base, &field_of_form(&form)));
    if !result.is_finite() {
        return Err(GeometryError::InfiniteCodimension);
    }
    let monomials = result.cobasis;
    let parameter_names = (0..monomials.len()).map(|i| format!("c{i}")).collect();
    Ok(UnfoldingFamily {
        base,
        monomials,
        parameter_names,
        form,
        rectified,
    })
}

/// Whether the deformation directions span a complement of the tangent ideal
/// of the base.
pub fn check_transversality(family: &UnfoldingFamily) -> bool {
    let field = field_of_form(&family.form);
    let ideal = tangent_ideal(&family.base, &field);
    let result = codimension(&ideal);
    if !result.is_finite() {
        return false;
    }
    if result.stable_at == 0 {
        return family.monomials.is_empty();
    }
    match ideal_image(&ideal, result.stable_at - 1) {
        Ok(image) => image.is_complemented_by(&family.monomials),
        Err(_) => false,
    }
}

impl UnfoldingFamily {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn field_of_form(&self) -> PlaneField {
        field_of_form(&self.form)
    }

    fn check_arity(&self, got: usize) -> Result<(), GeometryError> {
        if got != self.len() {
            return Err(GeometryError::Arity {
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }

    /// `f_c` and the field `f_c · X_a`.
    pub fn member(&self, c: &[Rational]) -> Result<(Jet, PlaneField), GeometryError> {
        self.check_arity(c.len())?;
        let order = self.base.order();
        let mut f = self.base.clone();
        for (m, ci) in self.monomials.iter().zip(c) {
            f = &f + &Jet::monomial(*m, ci.clone(), order);
        }
        let x = self.field_of_form().scale(&f);
        Ok((f, x))
    }

    /// Floating-point member for plotting.
    pub fn member_f64(&self, c: &[f64]) -> Result<(Poly, PolyField), GeometryError> {
        self.check_arity(c.len())?;
        let mut f = Poly::from_jet(&self.base);
        for (m, ci) in self.monomials.iter().zip(c) {
            f.add_term(m.x, m.y, *ci);
        }
        let xa = PolyField::from_field(&self.field_of_form());
        let x = xa.scale(&f);
        Ok((f, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::jet::{rat, ratio};
    use crate::parse::parse_expr;

    fn p(s: &str, n: u32) -> Jet {
        parse_expr(s, n).unwrap()
    }

    fn family(a: &OneForm, f: &str, n: u32) -> UnfoldingFamily {
        build_unfolding(&classify(a, &p(f, n)), a).unwrap()
    }

    #[test]
    fn printed_families_are_recovered() {
        let n = 12;
        let darboux = family(&OneForm::darboux(n), "y - x^3", n);
        assert_eq!(darboux.monomials, [Monomial::ONE, Monomial::new(1, 0)]);
        assert_eq!(darboux.parameter_names, ["c0", "c1"]);
        assert!(!darboux.rectified);
        let (f, _) = darboux.member(&[rat(2), rat(-3)]).unwrap();
        assert_eq!(f, p("y + 2 - 3*x - x^3", n));

        let liouville = family(&OneForm::liouville(n), "x + y", n);
        assert_eq!(liouville.monomials, [Monomial::ONE]);
        let morse = family(&OneForm::morse(true, n), "x", n);
        assert_eq!(morse.monomials, [Monomial::ONE]);
        let (f, _) = morse.member(&[rat(1)]).unwrap();
        assert_eq!(f, p("1 + x", n));

        let regular = family(&OneForm::darboux(n), "3 + y", n);
        assert!(regular.is_empty());
        assert!(check_transversality(&regular));
    }

    #[test]
    fn member_examples() {
        let n = 10;
        let liouville = family(&OneForm::liouville(n), "x + y", n);
        let (f, x) = liouville.member(&[rat(0)]).unwrap();
        assert_eq!(f, p("x + y", n));
        assert_eq!(x, PlaneField::new(p("-(x + y)*x", n), Jet::zero(n)));
        let (f, _) = liouville.member(&[rat(1)]).unwrap();
        assert_eq!(f, p("1 + x + y", n));
        assert_eq!(
            liouville.member(&[]),
            Err(GeometryError::Arity { expected: 1, got: 0 })
        );

        let fold = family(&OneForm::darboux(n), "y - x^2", n);
        let (f, _) = fold.member(&[ratio(-1, 4)]).unwrap();
        assert_eq!(f, p("y - 1/4 - x^2", n));
    }

    #[test]
    fn transversality() {
        let n = 12;
        let fam = family(&OneForm::darboux(n), "y - x^3", n);
        assert!(check_transversality(&fam));
        let short = UnfoldingFamily {
            monomials: alloc::vec![Monomial::new(1, 0)],
            parameter_names: alloc::vec![String::from("c0")],
            ..fam.clone()
        };
        assert!(!check_transversality(&short));
        let redundant = UnfoldingFamily {
            monomials: alloc::vec![Monomial::ONE, Monomial::new(1, 0), Monomial::new(0, 1)],
            ..fam
        };
        assert!(!check_transversality(&redundant));
    }

    #[test]
    fn tilted_regular_form_is_rectified() {
        let n = 10;
        let a = OneForm::new(p("-x", n), Jet::one(n));
        let fam = family(&a, "y - x^2/2 - x^3", n);
        assert!(fam.rectified);
        assert_eq!(fam.form, OneForm::dy(n));
        assert!(check_transversality(&fam));
    }

    #[test]
    fn unstable_codimension_has_no_family() {
        let n = 10;
        let a = OneForm::morse(false, n);
        let nf = classify(&a, &p("x + y", n));
        assert_eq!(build_unfolding(&nf, &a), Err(GeometryError::InfiniteCodimension));
    }
}
