//! 1-forms, vector fields and origin-preserving diffeomorphisms at jet level.
//!
//! The field attached to `a = P dx + Q dy` is `X_a = -Q ∂x + P ∂y`, so that
//! `a(X_a) = 0` and, for instance, `(1+x) dy` gives `-(1+x) ∂x`.

use num_traits::Zero;

use crate::error::GeometryError;
use crate::jet::{Jet, Monomial, Rational};

/// `a = p dx + q dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub p: Jet,
    pub q: Jet,
}

impl OneForm {
    /// Both coefficients are brought to their common order.
    pub fn new(p: Jet, q: Jet) -> OneForm {
        let order = p.order().min(q.order());
        OneForm {
            p: p.clamp(order),
            q: q.clamp(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.p.order()
    }

    /// `dg`.
    pub fn exact(g: &Jet) -> OneForm {
        OneForm::new(g.d_dx(), g.d_dy())
    }

    /// Darboux model `(1+x) dy`.
    pub fn darboux(order: u32) -> OneForm {
        OneForm::new(Jet::zero(order), Jet::from_ints(&[(0, 0, 1), (1, 0, 1)], order))
    }

    /// Martinet model `(1 ± x^2) dy`.
    pub fn martinet(positive: bool, order: u32) -> OneForm {
        let s = if positive { 1 } else { -1 };
        OneForm::new(Jet::zero(order), Jet::from_ints(&[(0, 0, 1), (2, 0, s)], order))
    }

    /// Liouville form `x dy`.
    pub fn liouville(order: u32) -> OneForm {
        OneForm::new(Jet::zero(order), Jet::x(order))
    }

    /// `dy`, the model of every regular closed form.
    pub fn dy(order: u32) -> OneForm {
        OneForm::new(Jet::zero(order), Jet::one(order))
    }

    /// `x dx + y dy` (`positive`) or `x dx - y dy`.
    pub fn morse(positive: bool, order: u32) -> OneForm {
        let q = if positive { Jet::y(order) } else { -Jet::y(order) };
        OneForm::new(Jet::x(order), q)
    }

    pub fn is_regular_at_origin(&self) -> bool {
        self.p.is_unit() || self.q.is_unit()
    }

    /// `P_y = Q_x` at the known order.
    pub fn is_closed(&self) -> bool {
        self.order() == 0 || self.p.d_dy() == self.q.d_dx()
    }

    pub fn scale(&self, k: &Jet) -> OneForm {
        OneForm::new(k * &self.p, k * &self.q)
    }

    /// `a(X) = P u + Q v`.
    pub fn apply(&self, x: &PlaneField) -> Jet {
        &(&self.p * &x.u) + &(&self.q * &x.v)
    }

    pub fn clamp(&self, order: u32) -> OneForm {
        OneForm::new(self.p.clamp(order), self.q.clamp(order))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl core::ops::Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

/// `X = u ∂x + v ∂y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneField {
    pub u: Jet,
    pub v: Jet,
}

impl PlaneField {
    pub fn new(u: Jet, v: Jet) -> PlaneField {
        let order = u.order().min(v.order());
        PlaneField {
            u: u.clamp(order),
            v: v.clamp(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.u.order()
    }

    pub fn d_dx(order: u32) -> PlaneField {
        PlaneField::new(Jet::one(order), Jet::zero(order))
    }

    pub fn d_dy(order: u32) -> PlaneField {
        PlaneField::new(Jet::zero(order), Jet::one(order))
    }

    pub fn is_singular_at_origin(&self) -> bool {
        !self.u.is_unit() && !self.v.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// `f · X`.
    pub fn scale(&self, f: &Jet) -> PlaneField {
        PlaneField::new(f * &self.u, f * &self.v)
    }

    pub fn clamp(&self, order: u32) -> PlaneField {
        PlaneField::new(self.u.clamp(order), self.v.clamp(order))
    }

    /// `L_X f = u f_x + v f_y`, known one degree less than its inputs.
    pub fn lie_derivative(&self, f: &Jet) -> Jet {
        &(&self.u * &f.d_dx()) + &(&self.v * &f.d_dy())
    }

    /// Components composed with `φ`: `X ∘ φ`.
    fn at(&self, phi: &JetDiffeo) -> PlaneField {
        PlaneField::new(phi.pullback_function(&self.u), phi.pullback_function(&self.v))
    }
}

impl core::ops::Sub for &PlaneField {
    type Output = PlaneField;
    fn sub(self, rhs: &PlaneField) -> PlaneField {
        PlaneField::new(&self.u - &rhs.u, &self.v - &rhs.v)
    }
}

/// `X_a = -Q ∂x + P ∂y`.
pub fn field_of_form(a: &OneForm) -> PlaneField {
    PlaneField::new(-&a.q, a.p.clone())
}

/// `ω(X, ·)` for the area form `ω = dy ∧ dx`, the inverse of [`field_of_form`].
pub fn form_of_field(x: &PlaneField) -> OneForm {
    OneForm::new(x.v.clone(), -&x.u)
}

pub fn lie_derivative(x: &PlaneField, f: &Jet) -> Jet {
    x.lie_derivative(f)
}

pub fn is_first_integral(x: &PlaneField, g: &Jet) -> bool {
    x.lie_derivative(g).is_zero()
}

/// An origin-preserving local diffeomorphism `φ(x, y) = (a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetDiffeo {
    a: Jet,
    b: Jet,
}

impl JetDiffeo {
    pub fn new(a: Jet, b: Jet) -> Result<JetDiffeo, GeometryError> {
        if !a.constant_term().is_zero() || !b.constant_term().is_zero() {
            return Err(GeometryError::Jet(crate::error::JetError::NonzeroConstantTerm));
        }
        let order = a.order().min(b.order());
        let phi = JetDiffeo {
            a: a.clamp(order),
            b: b.clamp(order),
        };
        if phi.linear_det().is_zero() {
            return Err(GeometryError::SingularJacobian);
        }
        Ok(phi)
    }

    pub fn identity(order: u32) -> JetDiffeo {
        JetDiffeo {
            a: Jet::x(order),
            b: Jet::y(order),
        }
    }

    /// `(x, y) ↦ (y, x)`.
    pub fn swap(order: u32) -> JetDiffeo {
        JetDiffeo {
            a: Jet::y(order),
            b: Jet::x(order),
        }
    }

    pub fn components(&self) -> (&Jet, &Jet) {
        (&self.a, &self.b)
    }

    pub fn order(&self) -> u32 {
        self.a.order()
    }

    fn linear(&self) -> [[Rational; 2]; 2] {
        let c = |j: &Jet, m: Monomial| j.coeff(m);
        let (mx, my) = (Monomial::new(1, 0), Monomial::new(0, 1));
        [
            [c(&self.a, mx), c(&self.a, my)],
            [c(&self.b, mx), c(&self.b, my)],
        ]
    }

    fn linear_det(&self) -> Rational {
        let l = self.linear();
        &l[0][0] * &l[1][1] - &l[0][1] * &l[1][0]
    }

    /// `det dφ` as a jet (one degree less than `φ`).
    pub fn jacobian_det(&self) -> Jet {
        &(&self.a.d_dx() * &self.b.d_dy()) - &(&self.a.d_dy() * &self.b.d_dx())
    }

    /// `f ∘ φ`.
    pub fn pullback_function(&self, f: &Jet) -> Jet {
        f.compose(&self.a, &self.b)
            .expect("diffeomorphism components preserve the origin")
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &JetDiffeo) -> JetDiffeo {
        JetDiffeo {
            a: inner.pullback_function(&self.a),
            b: inner.pullback_function(&self.b),
        }
    }

    /// The inverse germ, by fixed-point iteration on the nonlinear part.
    pub fn inverse(&self) -> JetDiffeo {
        let order = self.order();
        let l = self.linear();
        let det = self.linear_det();
        let inv = [
            [&l[1][1] / &det, -&l[0][1] / &det],
            [-&l[1][0] / &det, &l[0][0] / &det],
        ];
        let lin_part = |j: &Jet| {
            Jet::from_terms(
                j.terms()
                    .filter(|(m, _)| m.degree() == 1)
                    .map(|(m, c)| (m, c.clone())),
                order,
            )
        };
        let ra = &self.a - &lin_part(&self.a);
        let rb = &self.b - &lin_part(&self.b);
        let apply_inv = |p: &Jet, q: &Jet| {
            (
                &p.scale(&inv[0][0]) + &q.scale(&inv[0][1]),
                &p.scale(&inv[1][0]) + &q.scale(&inv[1][1]),
            )
        };
        let (x, y) = (Jet::x(order), Jet::y(order));
        let (mut pa, mut pb) = apply_inv(&x, &y);
        for _ in 0..order {
            let na = &x - &ra.compose(&pa, &pb).expect("origin preserved");
            let nb = &y - &rb.compose(&pa, &pb).expect("origin preserved");
            let (ua, ub) = apply_inv(&na, &nb);
            if ua == pa && ub == pb {
                break;
            }
            pa = ua;
            pb = ub;
        }
        JetDiffeo { a: pa, b: pb }
    }
}

/// `φ*b = (P∘φ A_x + Q∘φ B_x) dx + (P∘φ A_y + Q∘φ B_y) dy`.
pub fn pullback_form(phi: &JetDiffeo, b: &OneForm) -> OneForm {
    let p = phi.pullback_function(&b.p);
    let q = phi.pullback_function(&b.q);
    let (ax, ay) = (phi.a.d_dx(), phi.a.d_dy());
    let (bx, by) = (phi.b.d_dx(), phi.b.d_dy());
    OneForm::new(&(&p * &ax) + &(&q * &bx), &(&p * &ay) + &(&q * &by))
}

/// `φ*Y = (dφ)^{-1} (Y ∘ φ)`.
pub fn pullback_field(phi: &JetDiffeo, y: &PlaneField) -> Result<PlaneField, GeometryError> {
    let det = phi.jacobian_det();
    let inv_det = det.inverse().map_err(|_| GeometryError::SingularJacobian)?;
    let at = y.at(phi);
    let (ax, ay) = (phi.a.d_dx(), phi.a.d_dy());
    let (bx, by) = (phi.b.d_dx(), phi.b.d_dy());
    let u = &(&by * &at.u) - &(&ay * &at.v);
    let v = &(&ax * &at.v) - &(&bx * &at.u);
    Ok(PlaneField::new(&inv_det * &u, &inv_det * &v))
}

/// Outcome of [`check_conformal`]; both residuals vanish exactly when it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalCheck {
    pub holds: bool,
    /// `a - k φ*b`.
    pub form_residual: OneForm,
    /// `X_a - k det(dφ) φ*X_b`.
    pub field_residual: PlaneField,
}

/// Checks `a = k φ*b` together with the induced `X_a = k det(dφ) φ*X_b`.
pub fn check_conformal(
    a: &OneForm,
    b: &OneForm,
    phi: &JetDiffeo,
    k: &Jet,
) -> Result<ConformalCheck, GeometryError> {
    check_conformal_with(a, b, phi, k, field_of_form)
}

/// [`check_conformal`] with an explicit form-to-field convention.
pub fn check_conformal_with(
    a: &OneForm,
    b: &OneForm,
    phi: &JetDiffeo,
    k: &Jet,
    field: fn(&OneForm) -> PlaneField,
) -> Result<ConformalCheck, GeometryError> {
    if !k.is_unit() {
        return Err(GeometryError::Jet(crate::error::JetError::NotAUnit));
    }
    let form_residual = a - &pullback_form(phi, b).scale(k);
    let pulled = pullback_field(phi, &field(b))?;
    let factor = k * &phi.jacobian_det();
    let field_residual = &field(a) - &pulled.scale(&factor);
    Ok(ConformalCheck {
        holds: form_residual.is_zero() && field_residual.is_zero(),
        form_residual,
        field_residual,
    })
}

/// `X1 - h φ*X2`; zero exactly when `X1 = h φ*X2` at the known order.
pub fn orbital_residual(
    x1: &PlaneField,
    x2: &PlaneField,
    phi: &JetDiffeo,
    h: &Jet,
) -> Result<PlaneField, GeometryError> {
    Ok(x1 - &pullback_field(phi, x2)?.scale(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rat;
    use crate::parse::parse_expr;

    fn const_jet(num: i64, den: i64, order: u32) -> Jet {
        Jet::constant(rat(num) / rat(den), order)
    }

    fn p(s: &str, n: u32) -> Jet {
        parse_expr(s, n).unwrap()
    }

    #[test]
    fn fields_of_model_forms() {
        let n = 6;
        assert_eq!(
            field_of_form(&OneForm::darboux(n)),
            PlaneField::new(p("-(1+x)", n), Jet::zero(n))
        );
        assert_eq!(
            field_of_form(&OneForm::morse(true, n)),
            PlaneField::new(p("-y", n), p("x", n))
        );
        assert_eq!(
            field_of_form(&OneForm::liouville(n)),
            PlaneField::new(p("-x", n), Jet::zero(n))
        );
        let zero = OneForm::new(Jet::zero(n), Jet::zero(n));
        assert!(field_of_form(&zero).is_zero());
    }

    #[test]
    fn form_annihilates_its_field() {
        let a = OneForm::new(p("1 + x*y - y^3", 5), p("x^2 + exp(y) - 1", 5));
        assert!(a.apply(&field_of_form(&a)).is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let n = 6;
        let xd = field_of_form(&OneForm::darboux(n));
        assert_eq!(xd.lie_derivative(&p("y - x^3", n)), p("3*x^2 + 3*x^3", n - 1));
        let rot = field_of_form(&OneForm::morse(true, n));
        assert!(rot.lie_derivative(&p("x^2 + y^2", n)).is_zero());
        assert!(xd.lie_derivative(&Jet::one(n)).is_zero());
    }

    #[test]
    fn pullback_form_examples() {
        let n = 6;
        let phi = JetDiffeo::new(p("x + x^2", n), p("x + y", n)).unwrap();
        let dx = OneForm::new(Jet::one(n), Jet::zero(n));
        assert_eq!(pullback_form(&phi, &dx), OneForm::new(p("1 + 2*x", n - 1), Jet::zero(n - 1)));

        let id = JetDiffeo::identity(n);
        let b = OneForm::new(p("x*y + 1", n), p("y^2", n));
        assert_eq!(pullback_form(&id, &b), b.clamp(n - 1));

        let diag = JetDiffeo::new(p("x + y", n), p("x - y", n)).unwrap();
        assert_eq!(
            pullback_form(&diag, &OneForm::morse(false, n)),
            OneForm::new(p("2*y", n), p("2*x", n)).clamp(n - 1)
        );
    }

    #[test]
    fn pullback_field_examples() {
        let n = 6;
        let diag = JetDiffeo::new(p("x + y", n), p("x - y", n)).unwrap();
        let saddle = PlaneField::new(p("x", n), p("-y", n));
        assert_eq!(
            pullback_field(&diag, &saddle).unwrap(),
            field_of_form(&OneForm::morse(false, n)).clamp(n - 1)
        );

        let id = JetDiffeo::identity(n);
        let y = PlaneField::new(p("x*y", n), p("1 + x", n));
        assert_eq!(pullback_field(&id, &y).unwrap(), y.clamp(n - 1));

        let scale = JetDiffeo::new(p("2*x", n), p("y", n)).unwrap();
        assert_eq!(
            pullback_field(&scale, &PlaneField::d_dx(n)).unwrap(),
            PlaneField::new(const_jet(1, 2, n - 1), Jet::zero(n - 1))
        );
    }

    #[test]
    fn singular_jacobian_rejected() {
        assert_eq!(
            JetDiffeo::new(p("x + y", 4), p("2*x + 2*y + x^2", 4)),
            Err(GeometryError::SingularJacobian)
        );
    }

    #[test]
    fn conformal_examples() {
        let n = 8;
        let a = OneForm::new(p("(2+x*y)*(1+2*x)", n), Jet::zero(n));
        let b = OneForm::new(Jet::one(n), Jet::zero(n));
        let phi = JetDiffeo::new(p("x + x^2", n), p("x + y", n)).unwrap();
        let k = p("2 + x*y", n);
        let check = check_conformal(&a, &b, &phi, &k).unwrap();
        assert!(check.holds, "{check:?}");

        let id = JetDiffeo::identity(n);
        assert!(check_conformal(&b, &b, &id, &Jet::one(n)).unwrap().holds);

        let dy = OneForm::dy(n);
        let check = check_conformal(&dy, &b, &id, &Jet::one(n)).unwrap();
        assert!(!check.holds);
        assert_eq!(
            check.form_residual,
            OneForm::new(-Jet::one(n), Jet::one(n)).clamp(n - 1)
        );
    }

    #[test]
    fn interior_product_inverts_field_of_form() {
        let n = 6;
        for a in [OneForm::darboux(n), OneForm::liouville(n), OneForm::morse(false, n)] {
            assert_eq!(form_of_field(&field_of_form(&a)), a);
        }
    }

    #[test]
    fn first_integrals() {
        let n = 8;
        let g = p("x^3/3 - x^2/2 + y^2/2", n);
        let xg = field_of_form(&OneForm::exact(&g)).scale(&p("exp(x^2)", n));
        assert!(is_first_integral(&xg, &g));
        assert!(is_first_integral(&PlaneField::d_dx(n), &Jet::y(n)));
        assert!(!is_first_integral(&PlaneField::d_dx(n), &Jet::x(n)));
    }

    #[test]
    fn inverse_diffeo_round_trips() {
        let n = 7;
        let phi = JetDiffeo::new(p("2*x + y^2 - x*y", n), p("x + y + x^3", n)).unwrap();
        let inv = phi.inverse();
        assert_eq!(phi.after(&inv), JetDiffeo::identity(n));
        assert_eq!(inv.after(&phi), JetDiffeo::identity(n));
    }
}
