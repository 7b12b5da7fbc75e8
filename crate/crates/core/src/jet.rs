//! Truncated bivariate power series with exact rational coefficients.
//!
//! A [`Jet`] of order `N` stores the Taylor coefficients of a germ at the
//! origin for every monomial of total degree at most `N`. Terms above `N` are
//! unknown, so every operation propagates the smallest order of its operands
//! and never pretends to know more than it does.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::JetError;

/// Exact coefficient type used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The monomial `x^x * y^y`.
///
/// Ordered graded-lexicographically: total degree first, then by descending
/// power of `x`, so `1 < x < y < x^2 < x*y < y^2 < x^3 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub const fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y)
    }

    /// Position of this monomial in the graded-lex enumeration of all
    /// monomials, starting from `1` at index 0.
    pub fn index(self) -> usize {
        let d = self.degree() as usize;
        d * (d + 1) / 2 + self.y as usize
    }

    /// Inverse of [`Monomial::index`].
    pub fn from_index(index: usize) -> Monomial {
        let mut d = 0usize;
        while (d + 1) * (d + 2) / 2 <= index {
            d += 1;
        }
        let y = index - d * (d + 1) / 2;
        Monomial::new((d - y) as u32, y as u32)
    }

    /// Number of monomials of degree at most `order`, i.e. `dim J^order`.
    pub fn count_up_to(order: u32) -> usize {
        let n = order as usize + 1;
        n * (n + 1) / 2
    }

    /// All monomials of degree at most `order`, in graded-lex order.
    pub fn up_to(order: u32) -> impl Iterator<Item = Monomial> {
        (0..=order).flat_map(|d| (0..=d).map(move |y| Monomial::new(d - y, y)))
    }

    /// Monomials of exactly degree `d`, in graded-lex order.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).map(move |y| Monomial::new(d - y, y))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(f: &mut fmt::Formatter<'_>, var: char, e: u32) -> fmt::Result {
            match e {
                1 => write!(f, "{var}"),
                _ => write!(f, "{var}^{e}"),
            }
        }
        match (self.x, self.y) {
            (0, 0) => f.write_str("1"),
            (x, 0) => factor(f, 'x', x),
            (0, y) => factor(f, 'y', y),
            (x, y) => {
                factor(f, 'x', x)?;
                f.write_str("*")?;
                factor(f, 'y', y)
            }
        }
    }
}

/// Lowest total degree carried by a jet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// The least degree with a nonzero coefficient.
    Finite(u32),
    /// Every known coefficient vanishes; the valuation exceeds the order.
    Beyond(u32),
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(d) => Some(d),
            Valuation::Beyond(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(d) => write!(f, "{d}"),
            Valuation::Beyond(n) => write!(f, ">{n}"),
        }
    }
}

/// An `N`-jet at the origin: exact coefficients of every monomial of degree
/// at most `N`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    terms: BTreeMap<Monomial, Rational>,
    order: u32,
}

impl Jet {
    pub fn zero(order: u32) -> Jet {
        Jet {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn constant(c: Rational, order: u32) -> Jet {
        Jet::monomial(Monomial::ONE, c, order)
    }

    pub fn one(order: u32) -> Jet {
        Jet::constant(Rational::one(), order)
    }

    pub fn x(order: u32) -> Jet {
        Jet::monomial(Monomial::new(1, 0), Rational::one(), order)
    }

    pub fn y(order: u32) -> Jet {
        Jet::monomial(Monomial::new(0, 1), Rational::one(), order)
    }

    pub fn monomial(m: Monomial, c: Rational, order: u32) -> Jet {
        Jet::from_terms([(m, c)], order)
    }

    /// Builds a jet from `(monomial, coefficient)` pairs. Repeated monomials
    /// are summed; zero coefficients and terms above `order` are dropped.
    pub fn from_terms<I>(terms: I, order: u32) -> Jet
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut jet = Jet::zero(order);
        for (m, c) in terms {
            jet.add_term(m, c);
        }
        jet
    }

    /// Convenience constructor from integer triples `(i, j, c)` meaning `c x^i y^j`.
    pub fn from_ints(terms: &[(u32, u32, i64)], order: u32) -> Jet {
        Jet::from_terms(
            terms.iter().map(|&(i, j, c)| (Monomial::new(i, j), rat(c))),
            order,
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.degree() > self.order || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::ONE)
    }

    /// Whether the jet is invertible in the local ring.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Degree of the highest stored term, if any.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(m) => Valuation::Finite(m.degree()),
            None => Valuation::Beyond(self.order),
        }
    }

    /// The `k`-jet: drops every term above degree `k` and sets the order to `k`.
    pub fn truncate(&self, k: u32) -> Result<Jet, JetError> {
        if k > self.order {
            return Err(JetError::TruncationBeyondOrder { k, order: self.order });
        }
        Ok(self.clamp(k))
    }

    /// Lowers the order to `min(order, k)` without failing.
    pub fn clamp(&self, k: u32) -> Jet {
        let order = self.order.min(k);
        Jet {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            order,
        }
    }

    /// Reinterprets the stored terms as an exact polynomial known up to
    /// `order`. Raising the order is only meaningful when the jet really is a
    /// polynomial (for instance a normal-form representative).
    pub fn lift(&self, order: u32) -> Jet {
        let mut jet = self.clamp(order);
        jet.order = order;
        jet
    }

    /// Homogeneous part of degree `d`.
    pub fn homogeneous(&self, d: u32) -> Jet {
        Jet {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        if c.is_zero() {
            return Jet::zero(self.order);
        }
        Jet {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
            order: self.order,
        }
    }

    /// Multiplies by the monomial `m`, keeping the order.
    pub fn shift(&self, m: Monomial) -> Jet {
        Jet {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.times(m), c.clone()))
                .filter(|(k, _)| k.degree() <= self.order)
                .collect(),
            order: self.order,
        }
    }

    /// `d/dx`. The result is known one degree less.
    ///
    /// # Panics
    /// If the jet has order 0, since nothing would be known about the result.
    pub fn d_dx(&self) -> Jet {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        Jet::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (Monomial::new(m.x - 1, m.y), c * rat(m.x as i64))),
            self.order - 1,
        )
    }

    /// `d/dy`. The result is known one degree less.
    ///
    /// # Panics
    /// If the jet has order 0.
    pub fn d_dy(&self) -> Jet {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        Jet::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (Monomial::new(m.x, m.y - 1), c * rat(m.y as i64))),
            self.order - 1,
        )
    }

    /// Antiderivative in `x` vanishing on `x = 0`; known one degree more.
    pub fn integrate_x(&self) -> Jet {
        Jet::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x + 1, m.y), c / rat(m.x as i64 + 1))),
            self.order + 1,
        )
    }

    pub fn pow(&self, n: u32) -> Jet {
        let mut acc = Jet::one(self.order);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Jet, JetError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(JetError::NotAUnit);
        }
        let inv0 = c0.recip();
        // 1/g = (1/g0) * sum (-w)^n  with  g = g0 (1 + w)
        let w = &self.scale(&inv0) - &Jet::one(self.order);
        let minus_w = -&w;
        let series = geometric(&minus_w, |_| Rational::one());
        Ok(series.scale(&inv0))
    }

    /// `exp` of a jet with zero constant term.
    pub fn exp(&self) -> Result<Jet, JetError> {
        self.require_no_constant("exp")?;
        let mut fact = Rational::one();
        Ok(geometric(self, |n| {
            if n > 0 {
                fact = &fact / rat(n as i64);
            }
            fact.clone()
        }))
    }

    /// `sin` of a jet with zero constant term.
    pub fn sin(&self) -> Result<Jet, JetError> {
        self.require_no_constant("sin")?;
        Ok(trig_series(self, 1))
    }

    /// `cos` of a jet with zero constant term.
    pub fn cos(&self) -> Result<Jet, JetError> {
        self.require_no_constant("cos")?;
        Ok(trig_series(self, 0))
    }

    fn require_no_constant(&self, func: &'static str) -> Result<(), JetError> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(JetError::TranscendentalConstant { func })
        }
    }

    /// Substitution `f(u, v)` of origin-preserving jets.
    pub fn compose(&self, u: &Jet, v: &Jet) -> Result<Jet, JetError> {
        if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
            return Err(JetError::NonzeroConstantTerm);
        }
        let order = self.order.min(u.order).min(v.order);
        let u = u.clamp(order);
        let v = v.clamp(order);
        let max_deg = self.degree().unwrap_or(0).min(order);
        let mut u_pows = Vec::with_capacity(max_deg as usize + 1);
        let mut v_pows = Vec::with_capacity(max_deg as usize + 1);
        u_pows.push(Jet::one(order));
        v_pows.push(Jet::one(order));
        for k in 1..=max_deg as usize {
            u_pows.push(&u_pows[k - 1] * &u);
            v_pows.push(&v_pows[k - 1] * &v);
        }
        // f(u, v) = sum_j v^j * (sum_i c_ij u^i)
        let mut by_y: BTreeMap<u32, Jet> = BTreeMap::new();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() <= order) {
            let slot = by_y.entry(m.y).or_insert_with(|| Jet::zero(order));
            *slot = &*slot + &u_pows[m.x as usize].scale(c);
        }
        let mut out = Jet::zero(order);
        for (j, inner) in by_y {
            out = &out + &(&inner * &v_pows[j as usize]);
        }
        Ok(out)
    }

    /// Evaluates at an exact point.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            acc + c * num_traits::pow(x.clone(), m.x as usize) * num_traits::pow(y.clone(), m.y as usize)
        })
    }

    /// Coefficients converted to `f64`, as `(i, j, c)` triples.
    pub fn to_f64_terms(&self) -> Vec<(u32, u32, f64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.x, m.y, c.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }

    /// Coefficients of the univariate series `t -> f(t, 0)`.
    pub fn restrict_to_x_axis(&self) -> Jet {
        Jet::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y == 0)
                .map(|(m, c)| (*m, c.clone())),
            self.order,
        )
    }

    /// Largest absolute coefficient, as a crude size measure.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// `sum_n a_n * u^n` for `n = 0..=order`; `u` must have zero constant term.
fn geometric(u: &Jet, mut coeff: impl FnMut(u32) -> Rational) -> Jet {
    let order = u.order;
    let mut out = Jet::zero(order);
    let mut power = Jet::one(order);
    for n in 0..=order {
        let a = coeff(n);
        out = &out + &power.scale(&a);
        power = &power * u;
        if power.is_zero() {
            break;
        }
    }
    out
}

/// `sin` (parity 1) or `cos` (parity 0) by their Maclaurin series.
fn trig_series(u: &Jet, parity: u32) -> Jet {
    let mut fact = Rational::one();
    geometric(u, |n| {
        if n > 0 {
            fact = &fact / rat(n as i64);
        }
        if n % 2 != parity {
            return Rational::zero();
        }
        let k = n / 2;
        if k % 2 == 0 {
            fact.clone()
        } else {
            -fact.clone()
        }
    })
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = mag.is_one();
            let frac = !mag.is_integer();
            match (m.degree(), unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{m}")?,
                (_, false) if frac => write!(f, "({mag})*{m}")?,
                _ => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &'a Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = self.clamp(order);
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &'a Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = self.clamp(order);
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &'a Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(order);
        for (ma, ca) in self.terms.iter() {
            if ma.degree() > order {
                break;
            }
            for (mb, cb) in rhs.terms.iter() {
                let m = ma.times(*mb);
                if m.degree() > order {
                    break;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            order: self.order,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: &'a Jet) -> Jet {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Jet> for &'a Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}
