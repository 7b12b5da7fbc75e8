//! Codimension of ideals in the local ring of germs at the origin.
//!
//! An ideal is known through finitely many generator jets. Its image in the
//! jet space `J^m` is spanned by the products `x^i y^j g` truncated at degree
//! `m`. The quotient `E / I` is finite dimensional exactly when some power
//! `m^d` of the maximal ideal lies in `I`, and by Nakayama this is detected
//! by checking that every monomial of degree `d` is in the image at order `d`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{GeometryError, JetError};
use crate::forms::PlaneField;
use crate::jet::{Jet, Monomial};
use crate::linalg::{row_of, Echelon};

/// A finitely generated ideal `⟨g_1, …, g_r⟩`, known up to `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    generators: Vec<Jet>,
    order: u32,
}

impl LocalIdeal {
    pub fn new(generators: Vec<Jet>) -> Result<LocalIdeal, GeometryError> {
        let order = generators
            .iter()
            .map(Jet::order)
            .min()
            .ok_or(GeometryError::NoGenerators)?;
        let generators = generators.into_iter().map(|g| g.clamp(order)).collect();
        Ok(LocalIdeal { generators, order })
    }

    pub fn generators(&self) -> &[Jet] {
        &self.generators
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn add_rows_of_degree(&self, echelon: &mut Echelon, d: u32, max_degree: u32) {
        for mu in Monomial::of_degree(d) {
            for g in &self.generators {
                let shifted = g.shift(mu);
                if !shifted.is_zero() {
                    echelon.insert(row_of(&shifted, max_degree));
                }
            }
        }
    }
}

/// The tangent ideal `⟨f, L_X f⟩`.
pub fn tangent_ideal(f: &Jet, x: &PlaneField) -> LocalIdeal {
    let mut gens = alloc::vec![f.clone()];
    if f.order() > 0 && x.order() > 0 {
        gens.push(x.lie_derivative(f));
    }
    LocalIdeal::new(gens).expect("at least one generator")
}

/// The image of an ideal in `J^m`, as an exact row-reduced basis.
#[derive(Clone, Debug)]
pub struct ImageSpace {
    order: u32,
    echelon: Echelon,
}

impl ImageSpace {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        Monomial::count_up_to(self.order)
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn contains(&self, j: &Jet) -> bool {
        self.echelon.contains(row_of(j, self.order))
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.echelon.pivot_monomials().collect()
    }

    /// Greedy complement: walks the monomials of `J^m` in graded-lex order and
    /// keeps each one not already in the image plus the kept ones.
    pub fn complement(&self) -> Vec<Monomial> {
        let mut e = self.echelon.clone();
        Monomial::up_to(self.order)
            .filter(|m| e.insert(row_of(&Jet::monomial(*m, num_traits::One::one(), self.order), self.order)))
            .collect()
    }

    /// Whether `span(monomials)` is a direct complement of the image in `J^m`.
    pub fn is_complemented_by(&self, monomials: &[Monomial]) -> bool {
        let mut e = self.echelon.clone();
        for m in monomials {
            if m.degree() > self.order {
                return false;
            }
            let row = row_of(&Jet::monomial(*m, num_traits::One::one(), self.order), self.order);
            if !e.insert(row) {
                return false;
            }
        }
        e.rank() == self.ambient_dim()
    }
}

/// Span of `x^i y^j g mod (degree > m)` over all generators and `i + j ≤ m`.
pub fn ideal_image(ideal: &LocalIdeal, m: u32) -> Result<ImageSpace, JetError> {
    if m > ideal.order {
        return Err(JetError::TruncationBeyondOrder { k: m, order: ideal.order });
    }
    let mut echelon = Echelon::new();
    for d in 0..=m {
        ideal.add_rows_of_degree(&mut echelon, d, m);
    }
    Ok(ImageSpace { order: m, echelon })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codim {
    Finite(usize),
    /// No power of the maximal ideal was found inside the ideal up to
    /// `order`; the codimension is at least `lower_bound`, possibly infinite.
    Unstable { lower_bound: usize, order: u32 },
}

impl Codim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Codim::Finite(c) => Some(c),
            Codim::Unstable { .. } => None,
        }
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Unstable { lower_bound, order } => {
                write!(f, "≥ {lower_bound}, unstable at order {order}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodimResult {
    pub codim: Codim,
    /// Graded-lex smallest monomials spanning a complement of the ideal;
    /// empty when the codimension is not finite.
    pub cobasis: Vec<Monomial>,
    /// Smallest degree `d` with every monomial of degree `d` in the ideal,
    /// or the working order when none was found.
    pub stable_at: u32,
}

impl CodimResult {
    pub fn is_finite(&self) -> bool {
        matches!(self.codim, Codim::Finite(_))
    }
}

/// `dim E / I`, with a monomial cobasis.
///
/// Pivots of degree at most `d` only see the rows truncated at degree `d`, so
/// each degree is checked on the image in `J^d` alone; the high-degree tails
/// are never reduced unless the ideal fails to stabilise.
pub fn codimension(ideal: &LocalIdeal) -> CodimResult {
    let order = ideal.order;
    let mut previous: Option<ImageSpace> = None;
    for d in 0..=order {
        let image = ideal_image(ideal, d).expect("d within order");
        let at_d = image
            .echelon
            .pivot_monomials()
            .filter(|m| m.degree() == d)
            .count();
        if at_d == d as usize + 1 {
            let cobasis = previous.map_or_else(Vec::new, |p| p.complement());
            debug_assert_eq!(cobasis.len(), image.codim());
            return CodimResult {
                codim: Codim::Finite(image.codim()),
                cobasis,
                stable_at: d,
            };
        }
        previous = Some(image);
    }
    CodimResult {
        codim: Codim::Unstable {
            lower_bound: previous.map_or(0, |p| p.codim()),
            order,
        },
        cobasis: Vec::new(),
        stable_at: order,
    }
}

/// `dim J^m / image_m` for `m = 0..=order`.
pub fn quotient_dims(ideal: &LocalIdeal) -> Vec<usize> {
    let order = ideal.order;
    let mut echelon = Echelon::new();
    for d in 0..=order {
        ideal.add_rows_of_degree(&mut echelon, d, order);
    }
    let mut pivots_up_to = alloc::vec![0usize; order as usize + 1];
    for p in echelon.pivots() {
        pivots_up_to[Monomial::from_index(p).degree() as usize] += 1;
    }
    let mut acc = 0;
    (0..=order)
        .map(|m| {
            acc += pivots_up_to[m as usize];
            Monomial::count_up_to(m) - acc
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Determinacy {
    /// `f` may be replaced by its `k`-jet.
    Order(u32),
    /// No jet of order at most the bound reproduces a finite codimension.
    NoneUpTo(u32),
}

/// Smallest `k` such that the polynomial `j^k f` has a stable codimension
/// equal to that of `f` for the field `x`.
pub fn finite_determinacy_order(f: &Jet, x: &PlaneField) -> Determinacy {
    let n = f.order();
    let Codim::Finite(target) = codimension(&tangent_ideal(f, x)).codim else {
        return Determinacy::NoneUpTo(n);
    };
    for k in 0..=n {
        let jk = f.clamp(k).lift(n);
        if codimension(&tangent_ideal(&jk, x)).codim == Codim::Finite(target) {
            return Determinacy::Order(k);
        }
    }
    Determinacy::NoneUpTo(n)
}
