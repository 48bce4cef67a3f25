//! Finite semigroups given by a dense multiplication table.
//!
//! Elements are the indices `0..n`; `table[i][j]` is the product `i·j`. All
//! higher layers speak these indices. Green's relations are computed from
//! principal one-sided ideals.

use bitvec::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("a semigroup table must have at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range for {n} elements")]
    OutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("not associative: ({i}·{j})·{k} != {i}·({j}·{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("expected {expected} element names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("subset is not closed: {a}·{b} = {product} lies outside it")]
    NotClosed { a: usize, b: usize, product: usize },
    #[error("index {index} is out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<u32>,
    names: Option<Vec<String>>,
}

/// Green's relations of a finite semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenData {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
}

impl FiniteSemigroup {
    /// Validates a square table: every entry in range, associativity on
    /// every triple. The reported triple is the first failure in
    /// lexicographic order.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SemigroupError::NotSquare { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(SemigroupError::OutOfRange { row, col, value, n });
                }
                table.push(value as u32);
            }
        }
        let s = FiniteSemigroup { n, table, names: None };
        if let Some((i, j, k)) = s.associativity_failure() {
            return Err(SemigroupError::NotAssociative { i, j, k });
        }
        Ok(s)
    }

    /// Builds a table from a product function without checking associativity.
    /// Callers construct tables from an associative operation (composition of
    /// maps, relations, ...).
    pub(crate) fn from_fn_unchecked(n: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = mul(i, j);
                debug_assert!(p < n);
                table.push(p as u32);
            }
        }
        FiniteSemigroup { n, table, names: None }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, SemigroupError> {
        if names.len() != self.n {
            return Err(SemigroupError::NameCount { expected: self.n, got: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.n..(a + 1) * self.n].iter().map(|&x| x as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| self.row(a).collect()).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element; falls back to the index.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks an element up by display name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|x| x == name)
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// The two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_band(&self) -> bool {
        (0..self.n).all(|a| self.is_idempotent(a))
    }

    /// `E` is a subsemilattice: nonempty, idempotents only, closed and commutative.
    pub fn is_subsemilattice(&self, e: &[usize]) -> bool {
        if e.is_empty() || e.iter().any(|&x| x >= self.n) {
            return false;
        }
        let mut member = vec![false; self.n];
        for &x in e {
            member[x] = true;
        }
        e.iter().all(|&x| self.is_idempotent(x))
            && e.iter()
                .all(|&x| e.iter().all(|&y| self.mul(x, y) == self.mul(y, x) && member[self.mul(x, y)]))
    }

    /// First pair `(a, b)` of the subset whose product escapes it.
    pub fn closure_failure(&self, subset: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.n];
        for &x in subset {
            member[x] = true;
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        for &a in &sorted {
            for &b in &sorted {
                if !member[self.mul(a, b)] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The subsemigroup on `subset`, with elements renumbered in the given
    /// order. Names are carried over.
    pub fn subsemigroup(&self, subset: &[usize]) -> Result<FiniteSemigroup, SemigroupError> {
        if subset.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some(&index) = subset.iter().find(|&&x| x >= self.n) {
            return Err(SemigroupError::IndexOutOfRange { index, n: self.n });
        }
        if let Some((a, b)) = self.closure_failure(subset) {
            return Err(SemigroupError::NotClosed { a, b, product: self.mul(a, b) });
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in subset.iter().enumerate() {
            pos[x] = i;
        }
        let sub =
            FiniteSemigroup::from_fn_unchecked(subset.len(), |i, j| pos[self.mul(subset[i], subset[j])]);
        Ok(FiniteSemigroup {
            names: self.names.as_ref().map(|names| subset.iter().map(|&x| names[x].clone()).collect()),
            ..sub
        })
    }

    /// `Sᵒᵖ`: the transposed table.
    pub fn opposite(&self) -> FiniteSemigroup {
        FiniteSemigroup {
            names: self.names.clone(),
            ..FiniteSemigroup::from_fn_unchecked(self.n, |a, b| self.mul(b, a))
        }
    }

    /// Direct product; the pair `(i, j)` has index `i * |T| + j`.
    pub fn product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.n;
        let p = FiniteSemigroup::from_fn_unchecked(self.n * m, |x, y| {
            let (a, b) = (x / m, x % m);
            let (c, d) = (y / m, y % m);
            self.mul(a, c) * m + other.mul(b, d)
        });
        let names =
            (0..self.n * m).map(|x| format!("({},{})", self.name(x / m), other.name(x % m))).collect();
        FiniteSemigroup { names: Some(names), ..p }
    }

    /// Relabels elements: `perm[i]` is the new index of old element `i`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let t = FiniteSemigroup::from_fn_unchecked(self.n, |i, j| perm[self.mul(inv[i], inv[j])]);
        FiniteSemigroup {
            names: self.names.as_ref().map(|names| inv.iter().map(|&old| names[old].clone()).collect()),
            ..t
        }
    }

    /// `aS¹` as a bit set.
    pub fn right_ideal(&self, a: usize) -> BitVec {
        let mut set = bitvec![0; self.n];
        set.set(a, true);
        for x in self.row(a) {
            set.set(x, true);
        }
        set
    }

    /// `S¹a` as a bit set.
    pub fn left_ideal(&self, a: usize) -> BitVec {
        let mut set = bitvec![0; self.n];
        set.set(a, true);
        for s in 0..self.n {
            set.set(self.mul(s, a), true);
        }
        set
    }

    /// Green's relations. `D` is the join of `R` and `L`, which on a finite
    /// semigroup coincides with `R∘L`.
    pub fn green(&self) -> GreenData {
        let r = Partition::from_keys((0..self.n).map(|a| self.right_ideal(a)));
        let l = Partition::from_keys((0..self.n).map(|a| self.left_ideal(a)));
        let h = r.meet(&l);
        let d = r.join(&l);
        GreenData { r, l, h, d }
    }

    pub fn is_regular_element(&self, a: usize) -> bool {
        (0..self.n).any(|x| self.mul(self.mul(a, x), a) == a)
    }

    /// Regular with commuting idempotents.
    pub fn is_inverse(&self) -> bool {
        let idem = self.idempotents();
        (0..self.n).all(|a| self.is_regular_element(a))
            && idem.iter().all(|&e| idem.iter().all(|&f| self.mul(e, f) == self.mul(f, e)))
    }

    /// Cyclic group `Z_k` with addition mod `k`.
    pub fn cyclic_group(k: usize) -> FiniteSemigroup {
        assert!(k >= 1);
        let names = (0..k).map(|i| i.to_string()).collect();
        FiniteSemigroup { names: Some(names), ..FiniteSemigroup::from_fn_unchecked(k, |a, b| (a + b) % k) }
    }

    /// Left-zero semigroup: `xy = x`.
    pub fn left_zero(k: usize) -> FiniteSemigroup {
        assert!(k >= 1);
        FiniteSemigroup::from_fn_unchecked(k, |a, _| a)
    }

    /// Chain semilattice on `k` elements; index 0 is the top, products take
    /// the lower (larger index) element.
    pub fn chain_semilattice(k: usize) -> FiniteSemigroup {
        assert!(k >= 1);
        FiniteSemigroup::from_fn_unchecked(k, |a, b| a.max(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_left_zero_and_z2_validate() {
        assert!(FiniteSemigroup::new(vec![vec![0]]).is_ok());
        assert!(FiniteSemigroup::new(vec![vec![0, 0], vec![1, 1]]).is_ok());
        let z2 = FiniteSemigroup::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.identity(), Some(0));
        assert_eq!(z2.idempotents(), vec![0]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(FiniteSemigroup::new(vec![]), Err(SemigroupError::Empty));
        assert_eq!(
            FiniteSemigroup::new(vec![vec![0, 2], vec![1, 0]]),
            Err(SemigroupError::OutOfRange { row: 0, col: 1, value: 2, n: 2 })
        );
        assert_eq!(
            FiniteSemigroup::new(vec![vec![0, 1], vec![1]]),
            Err(SemigroupError::NotSquare { row: 1, len: 1, expected: 2 })
        );
        // xy = y·(something non-associative): right-zero then perturbed
        let err = FiniteSemigroup::new(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        let SemigroupError::NotAssociative { i, j, k } = err else { panic!("{err:?}") };
        let t = [[1usize, 0], [0, 0]];
        assert_ne!(t[t[i][j]][k], t[i][t[j][k]]);
    }

    #[test]
    fn left_zero_idempotents_and_green() {
        let lz = FiniteSemigroup::left_zero(4);
        assert_eq!(lz.idempotents(), vec![0, 1, 2, 3]);
        let g = lz.green();
        assert_eq!(g.r, Partition::discrete(4));
        assert_eq!(g.l.num_classes(), 1);
        assert_eq!(g.h, Partition::discrete(4));
        assert_eq!(g.d.num_classes(), 1);
    }

    #[test]
    fn group_is_single_class() {
        let g = FiniteSemigroup::cyclic_group(5).green();
        for p in [&g.r, &g.l, &g.h, &g.d] {
            assert_eq!(p.num_classes(), 1);
        }
    }

    #[test]
    fn subsemilattice_checks() {
        let z2 = FiniteSemigroup::cyclic_group(2);
        assert!(z2.is_subsemilattice(&[0]));
        assert!(!z2.is_subsemilattice(&[1]));
        assert!(!z2.is_subsemilattice(&[]));
        let lz = FiniteSemigroup::left_zero(2);
        // idempotent but not commuting
        assert!(!lz.is_subsemilattice(&[0, 1]));
    }

    #[test]
    fn opposite_and_product() {
        let lz = FiniteSemigroup::left_zero(3);
        assert_eq!(lz.opposite().opposite(), lz);
        assert_eq!(lz.opposite().mul(0, 2), 2);
        let p = lz.product(&FiniteSemigroup::cyclic_group(2));
        assert_eq!(p.size(), 6);
        assert!(p.associativity_failure().is_none());
        assert_eq!(p.name(3), "(1,1)");
    }

    #[test]
    fn subsemigroup_rejects_non_closed() {
        let z3 = FiniteSemigroup::cyclic_group(3);
        assert_eq!(z3.subsemigroup(&[1]), Err(SemigroupError::NotClosed { a: 1, b: 1, product: 2 }));
        let triv = z3.subsemigroup(&[0]).unwrap();
        assert_eq!(triv.size(), 1);
    }

    #[test]
    fn inverse_detection() {
        assert!(FiniteSemigroup::cyclic_group(4).is_inverse());
        assert!(FiniteSemigroup::chain_semilattice(3).is_inverse());
        assert!(!FiniteSemigroup::left_zero(2).is_inverse());
    }
}
