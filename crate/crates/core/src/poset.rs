//! Finite posets, the Möbius function, and Möbius inversion.
//!
//! `μ` is computed from its defining recursion
//! `μ(x,x) = 1`, `μ(x,y) = -Σ_{x≤z<y} μ(x,z)`, walking a linear extension so
//! every term on the right is already known.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::relation::Relation;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric: {0} and {1} are mutually related")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive: {0} ≤ {1} ≤ {2} but not {0} ≤ {2}")]
    NotTransitive(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Relation,
}

impl FinitePoset {
    pub fn new(leq: Relation) -> Result<Self, PosetError> {
        if let Some(x) = leq.reflexivity_failure() {
            return Err(PosetError::NotReflexive(x));
        }
        if let Some((x, y)) = leq.antisymmetry_failure() {
            return Err(PosetError::NotAntisymmetric(x, y));
        }
        if let Some((x, y, z)) = leq.transitivity_failure() {
            return Err(PosetError::NotTransitive(x, y, z));
        }
        Ok(FinitePoset { leq })
    }

    pub fn chain(m: usize) -> Self {
        FinitePoset { leq: Relation::from_fn(m, |a, b| a <= b) }
    }

    pub fn antichain(m: usize) -> Self {
        FinitePoset { leq: Relation::identity(m) }
    }

    /// Subsets of a `k`-element set under inclusion, indexed by bitmask.
    pub fn boolean_lattice(k: u32) -> Self {
        let m = 1usize << k;
        FinitePoset { leq: Relation::from_fn(m, |a, b| a & b == a) }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.holds(x, y)
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    /// `{y | y ≤ x}`, ascending by index.
    pub fn down_set(&self, x: usize) -> &[usize] {
        self.leq.predecessors(x)
    }

    /// `{y | x ≤ y}`, ascending by index.
    pub fn up_set(&self, x: usize) -> &[usize] {
        self.leq.successors(x)
    }

    /// Elements sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down_set(x).len(), x));
        order
    }

    pub fn moebius(&self) -> MoebiusCache {
        let ext = self.linear_extension();
        let mut rank = vec![0; self.len()];
        for (i, &x) in ext.iter().enumerate() {
            rank[x] = i;
        }
        let mut values: HashMap<(usize, usize), Rational> = HashMap::new();
        for x in 0..self.len() {
            let mut ups: Vec<usize> = self.up_set(x).to_vec();
            ups.sort_by_key(|&y| rank[y]);
            for &y in &ups {
                let v = if y == x {
                    Rational::one()
                } else {
                    let mut acc = Rational::zero();
                    for &z in self.down_set(y) {
                        if z != y && self.leq(x, z) {
                            acc += &values[&(x, z)];
                        }
                    }
                    -acc
                };
                values.insert((x, y), v);
            }
        }
        MoebiusCache { values }
    }

    /// `g(x) = Σ_{y≤x} f(y)`.
    pub fn sum_down(&self, f: &[Rational]) -> Vec<Rational> {
        assert_eq!(f.len(), self.len());
        (0..self.len()).map(|x| self.down_set(x).iter().map(|&y| &f[y]).sum()).collect()
    }

    /// `f(x) = Σ_{y≤x} μ(y,x) g(y)`, the inverse of [`sum_down`](Self::sum_down).
    pub fn invert(&self, mu: &MoebiusCache, g: &[Rational]) -> Vec<Rational> {
        assert_eq!(g.len(), self.len());
        (0..self.len())
            .map(|x| self.down_set(x).iter().map(|&y| mu.mu(y, x).expect("comparable pair") * &g[y]).sum())
            .collect()
    }
}

/// `μ(x, y)` for every comparable pair `x ≤ y`.
#[derive(Clone, Debug, Default)]
pub struct MoebiusCache {
    values: HashMap<(usize, usize), Rational>,
}

impl MoebiusCache {
    /// `None` when `x ≰ y`.
    pub fn mu(&self, x: usize, y: usize) -> Option<&Rational> {
        self.values.get(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn diagonal_and_two_chain() {
        let p = FinitePoset::chain(2);
        let mu = p.moebius();
        assert_eq!(mu.mu(0, 0), Some(&int(1)));
        assert_eq!(mu.mu(1, 1), Some(&int(1)));
        assert_eq!(mu.mu(0, 1), Some(&int(-1)));
        assert_eq!(mu.mu(1, 0), None);
    }

    #[test]
    fn longer_chain_vanishes_beyond_cover() {
        let mu = FinitePoset::chain(4).moebius();
        assert_eq!(mu.mu(0, 2), Some(&int(0)));
        assert_eq!(mu.mu(1, 2), Some(&int(-1)));
    }

    #[test]
    fn boolean_lattice_closed_form() {
        // μ(A,B) = (-1)^{|B∖A|}
        let p = FinitePoset::boolean_lattice(3);
        let mu = p.moebius();
        for a in 0..8usize {
            for b in 0..8usize {
                if a & b == a {
                    let sign = if (b & !a).count_ones() % 2 == 0 { 1 } else { -1 };
                    assert_eq!(mu.mu(a, b), Some(&int(sign)), "{a} {b}");
                } else {
                    assert!(mu.mu(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn antichain_inversion_is_identity() {
        let p = FinitePoset::antichain(4);
        let g: Vec<Rational> = (0..4).map(|i| int(i * 3 - 2)).collect();
        assert_eq!(p.invert(&p.moebius(), &g), g);
    }

    #[test]
    fn chain_bottom_indicator() {
        // f = indicator of the bottom: g(x) = 1 for every x on the chain
        let p = FinitePoset::chain(5);
        let mut f = vec![int(0); 5];
        f[0] = int(1);
        let g = p.sum_down(&f);
        assert!(g.iter().all(|v| *v == int(1)));
        assert_eq!(p.invert(&p.moebius(), &g), f);
    }

    #[test]
    fn rejects_non_orders() {
        let r = Relation::from_fn(3, |a, b| a <= b).with_pair_removed(0, 2);
        assert_eq!(FinitePoset::new(r), Err(PosetError::NotTransitive(0, 1, 2)));
        let r = Relation::from_fn(2, |_, _| true);
        assert_eq!(FinitePoset::new(r), Err(PosetError::NotAntisymmetric(0, 1)));
        assert_eq!(FinitePoset::new(Relation::empty(1)), Err(PosetError::NotReflexive(0)));
    }
}
