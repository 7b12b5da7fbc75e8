//! Recognition of the normal form realised by `f · X_a`.
//!
//! The catalog of models is taken as given; recognition only uses computable
//! invariants: the tangent-ideal codimension, the contact order of `{f = 0}`
//! with the leaf of `X_a` through the origin, and the right-equivalence type
//! of `f` (Hessian signature, `A_k` index).

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::GeometryError;
use crate::forms::{field_of_form, pullback_field, JetDiffeo, OneForm, PlaneField};
use crate::jet::{rat, Jet, Monomial, Rational, Valuation};
use crate::local_algebra::{
    codimension, finite_determinacy_order, tangent_ideal, Codim, CodimResult, Determinacy,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    fn of(r: &Rational) -> Sign {
        if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Catalog classes, with their discrete parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalClass {
    /// `f(0) ≠ 0`: equivalent to `X_a` itself.
    Regular,
    /// `(y - x^{k+1}) · X_a`; `k = 0` is the curve transverse to the leaves.
    RegularCurve { k: u32 },
    /// `(xy - x^k) · X_a`.
    TwoBranch { k: u32 },
    /// `(x^2 ± y^{k+1}) · X_a`; the sign is always `+` for even `k`.
    Beak { k: u32, sign: Sign },
    /// `(y^2 + x^3) · X_a`.
    Cusp,
    /// `(x + y) · X_{x dy}`.
    LiouvilleRegularCurve,
    /// `x · X_{x dx + y dy}`.
    ClosedMorsePlus,
    /// `x · X_{x dx - y dy}`.
    ClosedMorseMinus,
    /// `j^k f · X_a` for a singular form.
    JetReduced { k: u32 },
    NotInCatalog,
}

impl NormalClass {
    pub fn name(self) -> &'static str {
        match self {
            NormalClass::Regular => "Regular",
            NormalClass::RegularCurve { .. } => "RegularCurve",
            NormalClass::TwoBranch { .. } => "TwoBranch",
            NormalClass::Beak { .. } => "Beak",
            NormalClass::Cusp => "Cusp",
            NormalClass::LiouvilleRegularCurve => "LiouvilleRegularCurve",
            NormalClass::ClosedMorsePlus => "ClosedMorsePlus",
            NormalClass::ClosedMorseMinus => "ClosedMorseMinus",
            NormalClass::JetReduced { .. } => "JetReduced",
            NormalClass::NotInCatalog => "NotInCatalog",
        }
    }

    pub fn k(self) -> Option<u32> {
        match self {
            NormalClass::RegularCurve { k }
            | NormalClass::TwoBranch { k }
            | NormalClass::Beak { k, .. }
            | NormalClass::JetReduced { k } => Some(k),
            _ => None,
        }
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            NormalClass::Beak { sign, .. } => Some(sign),
            _ => None,
        }
    }

    /// Codimension predicted by the catalog, where it fixes one.
    pub fn expected_codim(self) -> Option<usize> {
        match self {
            NormalClass::Regular => Some(0),
            NormalClass::RegularCurve { k } | NormalClass::TwoBranch { k } => Some(k as usize),
            NormalClass::Beak { k, .. } => Some(k as usize + 1),
            NormalClass::Cusp => Some(4),
            NormalClass::LiouvilleRegularCurve
            | NormalClass::ClosedMorsePlus
            | NormalClass::ClosedMorseMinus => Some(1),
            NormalClass::JetReduced { .. } | NormalClass::NotInCatalog => None,
        }
    }
}

impl fmt::Display for NormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k(), self.sign()) {
            (Some(k), Some(s)) => write!(f, "{}({k}, {})", self.name(), s.as_str()),
            (Some(k), None) => write!(f, "{}({k})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub class: NormalClass,
    /// Computed codimension of `⟨f, L_{X_a} f⟩`; `None` if unstable.
    pub codim: Option<usize>,
    /// Model multiplier (or `j^k f` for jet-reduced classes), as an exact polynomial.
    pub representative: Jet,
    pub valid_at_order: u32,
    pub codim_result: CodimResult,
    pub diagnostic: Option<String>,
}

/// Structural type of the 1-form, as far as the catalog cares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Regular,
    /// A nonzero constant multiple of `x dy`.
    Liouville,
    /// A nonzero constant multiple of `x dx ± y dy`.
    ClosedMorse { definite: bool },
    Singular,
}

impl FormKind {
    pub fn detect(a: &OneForm) -> FormKind {
        if a.is_regular_at_origin() {
            return FormKind::Regular;
        }
        let (mx, my) = (Monomial::new(1, 0), Monomial::new(0, 1));
        let only = |j: &Jet, m: Monomial| j.len() == 1 && !j.coeff(m).is_zero();
        if a.p.is_zero() && only(&a.q, mx) {
            return FormKind::Liouville;
        }
        if only(&a.p, mx) && only(&a.q, my) {
            let (cp, cq) = (a.p.coeff(mx), a.q.coeff(my));
            if cp == cq {
                return FormKind::ClosedMorse { definite: true };
            }
            if cp == -cq {
                return FormKind::ClosedMorse { definite: false };
            }
        }
        FormKind::Singular
    }
}

/// A flow-box chart: `φ*X = unit · ∂x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectification {
    pub phi: JetDiffeo,
    pub unit: Jet,
}

/// Straightens the foliation of a field regular at the origin.
///
/// The chart is `φ = (x, τ)^{-1}` where `τ` is the first integral of `X`
/// with `τ(0, y) = y`, obtained by Picard iteration on `τ_x = -(v/u) τ_y`.
/// Time is not preserved, only leaves.
pub fn rectify(x: &PlaneField, order: u32) -> Result<Rectification, GeometryError> {
    let x = x.clamp(order);
    if x.is_singular_at_origin() {
        return Err(GeometryError::SingularField);
    }
    if !x.u.is_unit() {
        let swap = JetDiffeo::swap(order);
        let swapped = pullback_field(&swap, &x)?;
        let inner = rectify_horizontal(&swapped.lift(order))?;
        return Ok(Rectification {
            phi: swap.after(&inner.phi),
            unit: inner.unit,
        });
    }
    rectify_horizontal(&x)
}

trait Lift {
    fn lift(&self, order: u32) -> Self;
}

impl Lift for PlaneField {
    // the swap chart is linear, so no information is lost
    fn lift(&self, order: u32) -> PlaneField {
        PlaneField::new(self.u.lift(order), self.v.lift(order))
    }
}

fn rectify_horizontal(x: &PlaneField) -> Result<Rectification, GeometryError> {
    let order = x.order();
    let w = &x.v * &x.u.inverse()?;
    let y = Jet::y(order);
    let mut tau = y.clone();
    if !w.is_zero() {
        for _ in 0..=order {
            let next = &y - &(&w * &tau.d_dy()).integrate_x().clamp(order);
            if next == tau {
                break;
            }
            tau = next;
        }
    }
    let chart = JetDiffeo::new(Jet::x(order), tau)?;
    let phi = chart.inverse();
    let unit = phi.pullback_function(&x.u);
    Ok(Rectification { phi, unit })
}

/// Order of contact of a regular curve `{f = 0}` with the leaf through 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    /// `f ~ y - x^{k+1}`; `k = 0` means transverse to the leaf.
    Order(u32),
    /// The curve agrees with the leaf up to the working order.
    AtLeast(u32),
}

impl Contact {
    pub fn is_transverse(self) -> bool {
        self == Contact::Order(0)
    }
}

fn linear_part_vanishes(f: &Jet) -> bool {
    f.coeff(Monomial::new(1, 0)).is_zero() && f.coeff(Monomial::new(0, 1)).is_zero()
}

pub fn contact_order(f: &Jet, x: &PlaneField) -> Result<Contact, GeometryError> {
    if f.is_unit() {
        return Err(GeometryError::Precondition("f(0, 0) must vanish"));
    }
    if linear_part_vanishes(f) {
        return Err(GeometryError::Precondition("df(0) must be nonzero"));
    }
    let order = f.order().min(x.order());
    let chart = rectify(x, order)?;
    let (a, b) = chart.phi.components();
    let along_leaf = f
        .clamp(order)
        .compose(&a.restrict_to_x_axis(), &b.restrict_to_x_axis())?;
    Ok(match along_leaf.valuation() {
        Valuation::Finite(v) => Contact::Order(v - 1),
        Valuation::Beyond(n) => Contact::AtLeast(n),
    })
}

/// Right-equivalence type of a critical point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RightType {
    MorseIndefinite,
    MorseDefinite,
    /// Corank one, `x^2 ± y^{k+1}`; the sign is normalised to `+` for even `k`.
    A { k: u32, sign: Sign },
    Other,
}

/// Hessian signature, then the splitting lemma along the kernel line.
pub fn right_type(f: &Jet) -> RightType {
    if f.is_unit() || !linear_part_vanishes(f) || f.order() < 2 {
        return RightType::Other;
    }
    let n = f.order();
    let a = f.coeff(Monomial::new(2, 0));
    let b = f.coeff(Monomial::new(1, 1));
    let c = f.coeff(Monomial::new(0, 2));
    let disc = &b * &b - rat(4) * &a * &c;
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return RightType::Other;
    }
    if disc.is_positive() {
        return RightType::MorseIndefinite;
    }
    if disc.is_negative() {
        return RightType::MorseDefinite;
    }
    // Q = λ ℓ^2: move ℓ to the first coordinate.
    let (g, lambda) = if !a.is_zero() {
        let s = &b / (rat(2) * &a);
        let sub = &Jet::x(n) - &Jet::y(n).scale(&s);
        (f.compose(&sub, &Jet::y(n)).expect("linear substitution"), a)
    } else {
        (f.compose(&Jet::y(n), &Jet::x(n)).expect("swap"), c)
    };
    // ξ(y) with g_x(ξ(y), y) = 0
    let gx = g.d_dx();
    let two_lambda = rat(2) * &lambda;
    let mut xi = Jet::zero(n - 1);
    for _ in 0..n {
        let residual = gx.compose(&xi, &Jet::y(n - 1)).expect("origin preserved");
        let next = &xi - &residual.scale(&two_lambda.recip());
        if next == xi {
            break;
        }
        xi = next;
    }
    let restricted = g.compose(&xi, &Jet::y(n - 1)).expect("origin preserved");
    match restricted.valuation() {
        Valuation::Finite(v) if v >= 3 => {
            let k = v - 1;
            let lead = restricted.coeff(Monomial::new(0, v));
            let sign = if k % 2 == 0 {
                Sign::Plus
            } else {
                Sign::of(&lambda).times(Sign::of(&lead))
            };
            RightType::A { k, sign }
        }
        _ => RightType::Other,
    }
}

fn model(terms: &[(u32, u32, i64)], order: u32) -> Jet {
    Jet::from_ints(terms, order)
}

/// Decides the catalog class of `f · X_a`.
pub fn classify(a: &OneForm, f: &Jet) -> NormalForm {
    let order = f.order().min(a.order());
    let f = f.clamp(order);
    let xa = field_of_form(&a.clamp(order));
    let codim_result = codimension(&tangent_ideal(&f, &xa));
    let codim = codim_result.codim.finite();
    let mut diagnostic = None;
    let build = |class: NormalClass, representative: Jet, diagnostic: Option<String>| NormalForm {
        class,
        codim,
        representative,
        valid_at_order: order,
        codim_result: codim_result.clone(),
        diagnostic,
    };
    let unstable = |r: &CodimResult| match r.codim {
        Codim::Unstable { lower_bound, order } => Some(format!(
            "codimension not stable up to order {order} (at least {lower_bound})"
        )),
        Codim::Finite(_) => None,
    };

    if f.is_unit() {
        return build(NormalClass::Regular, Jet::one(order), None);
    }
    let Some(c) = codim else {
        return build(NormalClass::NotInCatalog, f.clone(), unstable(&codim_result));
    };
    let regular_curve = !linear_part_vanishes(&f);

    if !xa.is_singular_at_origin() {
        if regular_curve {
            return match contact_order(&f, &xa) {
                Ok(Contact::Order(k)) if k as usize == c => build(
                    NormalClass::RegularCurve { k },
                    model(&[(0, 1, 1), (k + 1, 0, -1)], order),
                    None,
                ),
                Ok(contact) => build(
                    NormalClass::NotInCatalog,
                    f.clone(),
                    Some(format!("contact {contact:?} disagrees with codimension {c}")),
                ),
                Err(e) => build(NormalClass::NotInCatalog, f.clone(), Some(format!("{e}"))),
            };
        }
        let probe = f.clamp(c as u32 + 1);
        let rt = right_type(&probe);
        let class = match rt {
            RightType::MorseIndefinite if c >= 2 => Some((
                NormalClass::TwoBranch { k: c as u32 },
                model(&[(1, 1, 1), (c as u32, 0, -1)], order),
            )),
            RightType::A { k: 2, .. } if c == 4 => {
                Some((NormalClass::Cusp, model(&[(0, 2, 1), (3, 0, 1)], order)))
            }
            RightType::A { k, sign } if c == k as usize + 1 => {
                let s = if sign == Sign::Plus { 1 } else { -1 };
                Some((NormalClass::Beak { k, sign }, model(&[(2, 0, 1), (0, k + 1, s)], order)))
            }
            _ => None,
        };
        return match class {
            Some((class, rep)) => build(class, rep, None),
            None => build(
                NormalClass::NotInCatalog,
                f.clone(),
                Some(format!("right type {rt:?} with codimension {c} matches no catalog row")),
            ),
        };
    }

    if regular_curve && c == 1 {
        match FormKind::detect(a) {
            FormKind::Liouville => {
                return build(
                    NormalClass::LiouvilleRegularCurve,
                    model(&[(1, 0, 1), (0, 1, 1)], order),
                    None,
                )
            }
            FormKind::ClosedMorse { definite: true } => {
                return build(NormalClass::ClosedMorsePlus, model(&[(1, 0, 1)], order), None)
            }
            FormKind::ClosedMorse { definite: false } => {
                diagnostic = Some(String::from(
                    "codimension 1 read as transversality to both separatrices {x=y}, {x=-y}",
                ));
                return build(NormalClass::ClosedMorseMinus, model(&[(1, 0, 1)], order), diagnostic);
            }
            _ => {}
        }
    }
    match finite_determinacy_order(&f, &xa) {
        Determinacy::Order(k) => build(NormalClass::JetReduced { k }, f.clamp(k).lift(order), diagnostic),
        Determinacy::NoneUpTo(n) => build(
            NormalClass::NotInCatalog,
            f.clone(),
            Some(format!("no jet of order at most {n} reproduces the codimension")),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pullback_field;
    use crate::parse::parse_expr;

    fn p(s: &str, n: u32) -> Jet {
        parse_expr(s, n).unwrap()
    }

    #[test]
    fn rectify_examples() {
        let n = 8;
        let xd = field_of_form(&OneForm::darboux(n));
        let r = rectify(&xd, n).unwrap();
        assert_eq!(r.phi, JetDiffeo::identity(n));
        assert_eq!(r.unit, p("-(1+x)", n));

        let tilted = PlaneField::new(Jet::one(n), Jet::x(n));
        let r = rectify(&tilted, n).unwrap();
        assert_eq!(r.phi, JetDiffeo::new(Jet::x(n), p("y + x^2/2", n)).unwrap());
        let straight = pullback_field(&r.phi, &tilted).unwrap();
        assert_eq!(straight, PlaneField::d_dx(n - 1));

        let vertical = PlaneField::d_dy(n);
        let r = rectify(&vertical, n).unwrap();
        assert_eq!(r.phi, JetDiffeo::swap(n));

        assert_eq!(
            rectify(&field_of_form(&OneForm::liouville(n)), n),
            Err(GeometryError::SingularField)
        );
    }

    #[test]
    fn rectified_field_is_horizontal() {
        let n = 7;
        let x = PlaneField::new(p("1 + y + x*y", n), p("x - y^2 + x^3", n));
        let r = rectify(&x, n).unwrap();
        let straight = pullback_field(&r.phi, &x).unwrap();
        assert!(straight.v.is_zero(), "{:?}", straight.v);
        assert_eq!(straight.u, r.unit.clamp(n - 1));
    }

    #[test]
    fn contact_examples() {
        let n = 10;
        let dx = PlaneField::d_dx(n);
        assert_eq!(contact_order(&p("y - x^3", n), &dx), Ok(Contact::Order(2)));
        assert_eq!(contact_order(&p("y - x^2*(2 + x)", n), &dx), Ok(Contact::Order(1)));
        let t = contact_order(&p("x - y", n), &dx).unwrap();
        assert!(t.is_transverse());
        assert_eq!(contact_order(&p("y", n), &dx), Ok(Contact::AtLeast(n)));
        assert!(contact_order(&p("1 + y", n), &dx).is_err());
        assert!(contact_order(&p("x^2 + y^2", n), &dx).is_err());
    }

    #[test]
    fn right_type_examples() {
        let n = 8;
        assert_eq!(right_type(&p("x*y - x^2", n)), RightType::MorseIndefinite);
        assert_eq!(right_type(&p("x^2 + y^2", n)), RightType::MorseDefinite);
        assert_eq!(right_type(&p("x^2 + y^3", n)), RightType::A { k: 2, sign: Sign::Plus });
        assert_eq!(
            right_type(&p("x^2 + y^4*(3 + x - y)", n)),
            RightType::A { k: 3, sign: Sign::Plus }
        );
        assert_eq!(right_type(&p("x^2 - y^4", n)), RightType::A { k: 3, sign: Sign::Minus });
        assert_eq!(right_type(&p("-x^2 + y^4", n)), RightType::A { k: 3, sign: Sign::Minus });
        // (x + y^2)^2 + y^5: naive restriction to x = 0 would read y^4
        assert_eq!(
            right_type(&p("(x + y^2)^2 + y^5", n)),
            RightType::A { k: 4, sign: Sign::Plus }
        );
        assert_eq!(right_type(&p("y^2 + x^3", n)), RightType::A { k: 2, sign: Sign::Plus });
        assert_eq!(right_type(&p("x^3 + y^3", n)), RightType::Other);
        assert_eq!(right_type(&p("x", n)), RightType::Other);
    }

    #[test]
    fn classify_examples() {
        let n = 12;
        let nf = classify(&OneForm::darboux(n), &p("2 + x", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::Regular, Some(0)));

        let a1 = OneForm::dy(n);
        let nf = classify(&a1, &p("y - x^3", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::RegularCurve { k: 2 }, Some(2)));
        let nf = classify(&a1, &p("y + x*y - x^3", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::RegularCurve { k: 2 }, Some(2)));
        assert_eq!(nf.representative, p("y - x^3", n));

        let nf = classify(&OneForm::liouville(n), &p("x + y", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::LiouvilleRegularCurve, Some(1)));

        let nf = classify(&OneForm::morse(true, n), &p("x", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::ClosedMorsePlus, Some(1)));
        let nf = classify(&OneForm::morse(false, n), &p("x", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::ClosedMorseMinus, Some(1)));

        let nf = classify(&OneForm::morse(false, n), &p("x + y", n));
        assert_eq!(nf.class, NormalClass::NotInCatalog);
        assert_eq!(nf.codim, None);
        assert!(nf.diagnostic.is_some());
    }

    #[test]
    fn singular_curve_catalog() {
        let n = 12;
        let a1 = OneForm::dy(n);
        for k in 2..=4u32 {
            let f = Jet::from_ints(&[(1, 1, 1), (k, 0, -1)], n);
            let nf = classify(&a1, &f);
            assert_eq!(nf.class, NormalClass::TwoBranch { k });
            assert_eq!(nf.codim, Some(k as usize));
            for s in [1i64, -1] {
                let f = Jet::from_ints(&[(2, 0, 1), (0, k + 1, s)], n);
                let nf = classify(&a1, &f);
                let sign = if k % 2 == 0 || s == 1 { Sign::Plus } else { Sign::Minus };
                assert_eq!(nf.class, NormalClass::Beak { k, sign });
                assert_eq!(nf.codim, Some(k as usize + 1));
            }
        }
        let nf = classify(&a1, &p("y^2 + x^3", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::Cusp, Some(4)));
        let nf = classify(&a1, &p("x^2 + y^2", n));
        assert_eq!(nf.class, NormalClass::NotInCatalog);
    }

    #[test]
    fn liouville_codim_two_fields_are_separated() {
        let n = 12;
        let al = OneForm::liouville(n);
        let a = classify(&al, &p("x - y^2", n));
        let b = classify(&al, &p("y - x^2", n));
        assert_eq!(a.codim, Some(2));
        assert_eq!(b.codim, Some(2));
        assert_eq!(a.class, NormalClass::JetReduced { k: 2 });
        assert_eq!(b.class, NormalClass::JetReduced { k: 2 });
        assert_ne!(a, b);
        assert_eq!(a.representative, p("x - y^2", n));
        assert_eq!(b.representative, p("y - x^2", n));
    }

    #[test]
    fn transverse_curve_over_regular_form() {
        let n = 10;
        let nf = classify(&OneForm::dy(n), &p("x - y", n));
        assert_eq!((nf.class, nf.codim), (NormalClass::RegularCurve { k: 0 }, Some(0)));
    }

    #[test]
    fn form_kinds() {
        let n = 6;
        assert_eq!(FormKind::detect(&OneForm::darboux(n)), FormKind::Regular);
        assert_eq!(FormKind::detect(&OneForm::liouville(n)), FormKind::Liouville);
        assert_eq!(
            FormKind::detect(&OneForm::morse(false, n).scale(&p("3", n))),
            FormKind::ClosedMorse { definite: false }
        );
        let g = p("x^3/3 - x^2/2 + y^2/2", n);
        assert_eq!(FormKind::detect(&OneForm::exact(&g)), FormKind::Singular);
    }
}
