//! Exact sparse row echelon form over the rationals.
//!
//! Columns are monomial indices in graded-lex order and each stored row is
//! keyed by its lowest nonzero column, so pivots are leading (smallest) terms.

use alloc::collections::BTreeMap;
use num_traits::{One, Zero};

use crate::jet::{Jet, Monomial, Rational};

pub type SparseRow = BTreeMap<usize, Rational>;

/// Converts the terms of `j` of degree at most `max_degree` to a sparse row.
pub fn row_of(j: &Jet, max_degree: u32) -> SparseRow {
    j.terms()
        .filter(|(m, _)| m.degree() <= max_degree)
        .map(|(m, c)| (m.index(), c.clone()))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Pivot columns as monomials, graded-lex ascending.
    pub fn pivot_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.rows.keys().map(|&i| Monomial::from_index(i))
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseRow) -> SparseRow {
        let mut cursor = 0usize;
        loop {
            let hit = v
                .range(cursor..)
                .find(|(col, _)| self.rows.contains_key(col))
                .map(|(col, c)| (*col, c.clone()));
            let Some((col, factor)) = hit else { break };
            let row = &self.rows[&col];
            for (k, r) in row.iter() {
                let entry = v.entry(*k).or_insert_with(Rational::zero);
                *entry -= &factor * r;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            cursor = col + 1;
        }
        v
    }

    pub fn contains(&self, v: SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        let mut r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for c in r.values_mut() {
                *c *= &inv;
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}
