//! Jacobson radical of a finite-dimensional `ℚ`-algebra via the trace form.
//!
//! In characteristic zero, `Rad(A) = {a | tr(L_{ax}) = 0 for all x}`, where
//! `L_y` is left multiplication by `y`. With a basis `b_1..b_d` this is the
//! nullspace of the Gram matrix `T[i][j] = tr(L_{b_i b_j})`. The criterion
//! also holds for non-unital algebras. It is false in positive
//! characteristic, which is why only `ℚ` is supported.

use num_traits::Zero;

use crate::category::EhresmannCategory;
use crate::linalg::{Echelon, RationalMatrix};
use crate::semigroup::FiniteSemigroup;
use crate::Rational;

/// Multiplication table of an algebra on a basis: `b_i b_j = Σ_k c_ijk b_k`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    dim: usize,
    products: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn new(dim: usize, mut product: impl FnMut(usize, usize) -> Vec<(usize, Rational)>) -> Self {
        let products = (0..dim * dim)
            .map(|ij| {
                let mut terms: Vec<(usize, Rational)> =
                    product(ij / dim, ij % dim).into_iter().filter(|(_, c)| !c.is_zero()).collect();
                terms.sort_by_key(|t| t.0);
                terms
            })
            .collect();
        StructureConstants { dim, products }
    }

    /// Algebras whose basis is closed under multiplication up to zero, like
    /// semigroup and category algebras.
    pub fn from_basis_products(dim: usize, product: impl Fn(usize, usize) -> Option<usize>) -> Self {
        Self::new(dim, |i, j| {
            product(i, j).map(|k| vec![(k, Rational::from_integer(1.into()))]).unwrap_or_default()
        })
    }

    pub fn semigroup_algebra(s: &FiniteSemigroup) -> Self {
        Self::from_basis_products(s.size(), |i, j| Some(s.mul(i, j)))
    }

    pub fn category_algebra(c: &EhresmannCategory) -> Self {
        Self::from_basis_products(c.size(), |i, j| c.compose(i, j))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim + j]
    }

    /// `tr(L_{b_k})` for every basis element.
    pub fn left_traces(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|k| {
                (0..self.dim)
                    .flat_map(|l| self.product(k, l).iter().filter(move |t| t.0 == l))
                    .map(|t| t.1.clone())
                    .sum()
            })
            .collect()
    }

    pub fn gram_matrix(&self) -> RationalMatrix {
        let tr = self.left_traces();
        RationalMatrix::from_fn(self.dim, self.dim, |i, j| {
            self.product(i, j).iter().map(|(m, c)| c * &tr[*m]).sum()
        })
    }
}

/// Radical data from the trace form.
#[derive(Clone, Debug)]
pub struct RadicalOracle {
    gram: RationalMatrix,
    echelon: Echelon,
}

pub fn radical_oracle(a: &StructureConstants) -> RadicalOracle {
    let gram = a.gram_matrix();
    let echelon = gram.echelon();
    RadicalOracle { gram, echelon }
}

impl RadicalOracle {
    pub fn dim(&self) -> usize {
        self.echelon.nullity()
    }

    /// Dimension of `A/Rad(A)`.
    pub fn quotient_dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    /// A basis of the radical, as coordinate vectors.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.echelon.nullspace()
    }

    /// Whether the basis element `b_i` lies in the radical. `T` is symmetric,
    /// so this is column `i` vanishing.
    pub fn contains_basis_element(&self, i: usize) -> bool {
        self.gram.column_is_zero(i)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.gram.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Rank of the images of `b_i` (`i ∈ subset`) in `A/Rad(A)`.
    ///
    /// `A/Rad(A)` embeds into `ℚ^d` through `v ↦ Tv`, so this is the rank of
    /// the corresponding columns of `T`.
    pub fn projected_rank(&self, subset: &[usize]) -> usize {
        self.gram.select_columns(subset).rank()
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
    fn two_point_semilattice_is_semisimple() {
        // ℚ×ℚ as the algebra of a 2-element semilattice
        let s = FiniteSemigroup::chain_semilattice(2);
        let r = radical_oracle(&StructureConstants::semigroup_algebra(&s));
        assert_eq!(r.dim(), 0);
        // hand Gram matrix: traces are (2, 1), products 0·0=0, 0·1=1·0=1·1=1
        assert_eq!(r.gram(), &RationalMatrix::from_fn(2, 2, |i, j| int(if i + j == 0 { 2 } else { 1 })));
    }

    #[test]
    fn dual_numbers_have_one_dimensional_radical() {
        // basis {1, n} with n² = 0: Gram = [[2, 0], [0, 0]]
        let a = StructureConstants::new(2, |i, j| match (i, j) {
            (0, 0) => vec![(0, int(1))],
            (0, 1) | (1, 0) => vec![(1, int(1))],
            _ => vec![],
        });
        let r = radical_oracle(&a);
        assert_eq!(r.gram(), &RationalMatrix::from_fn(2, 2, |i, j| int(if i + j == 0 { 2 } else { 0 })));
        assert_eq!(r.dim(), 1);
        assert!(r.contains_basis_element(1));
        assert!(!r.contains_basis_element(0));
    }

    #[test]
    fn group_algebras_are_semisimple() {
        for k in 1..=6 {
            let r = radical_oracle(&StructureConstants::semigroup_algebra(&FiniteSemigroup::cyclic_group(k)));
            assert_eq!(r.dim(), 0, "Z_{k}");
        }
    }

    #[test]
    fn null_semigroup_is_nilpotent() {
        // {0, a} with every product 0: the span of a - 0 is the radical
        let s = FiniteSemigroup::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        let r = radical_oracle(&StructureConstants::semigroup_algebra(&s));
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&[int(-1), int(1)]));
    }
}
