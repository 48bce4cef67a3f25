/// A binary relation on `0..n` stored as a dense boolean matrix.
///
/// Successor and predecessor lists are kept alongside the matrix; the orders
/// in this crate are sparse, and every sweep walks the lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, bits: vec![false; n * n], succ: vec![Vec::new(); n], pred: vec![Vec::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |a, b| a == b)
    }

    pub fn from_fn(n: usize, mut holds: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if holds(a, b) {
                    r.bits[a * n + b] = true;
                }
            }
        }
        r.rebuild_lists();
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.bits[a * n + b] = true;
        }
        r.rebuild_lists();
        r
    }

    fn rebuild_lists(&mut self) {
        let n = self.n;
        for v in self.succ.iter_mut().chain(self.pred.iter_mut()) {
            v.clear();
        }
        for a in 0..n {
            for b in 0..n {
                if self.bits[a * n + b] {
                    self.succ[a].push(b);
                    self.pred[b].push(a);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    /// All `b` with `a ~ b`, ascending.
    pub fn successors(&self, a: usize) -> &[usize] {
        &self.succ[a]
    }

    /// All `a` with `a ~ b`, ascending.
    pub fn predecessors(&self, b: usize) -> &[usize] {
        &self.pred[b]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.succ[a].iter().map(move |&b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn with_pair_removed(&self, a: usize, b: usize) -> Relation {
        let mut r = self.clone();
        r.bits[a * self.n + b] = false;
        r.rebuild_lists();
        r
    }

    pub fn with_pair_added(&self, a: usize, b: usize) -> Relation {
        let mut r = self.clone();
        r.bits[a * self.n + b] = true;
        r.rebuild_lists();
        r
    }

    /// First `a` (by index) with `a !~ a`.
    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.n).find(|&a| !self.holds(a, a))
    }

    /// First `(a, b)` with `a ~ b ~ a` and `a != b`.
    pub fn antisymmetry_failure(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| a != b && self.holds(b, a))
    }

    /// First `(a, b, c)` with `a ~ b ~ c` but not `a ~ c`.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for &b in &self.succ[a] {
                for &c in &self.succ[b] {
                    if !self.holds(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_partial_order(&self) -> bool {
        self.reflexivity_failure().is_none()
            && self.antisymmetry_failure().is_none()
            && self.transitivity_failure().is_none()
    }

    /// `(a, c)` holds iff `a ~self b` and `b ~other c` for some `b`.
    pub fn then(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut r = Relation::empty(self.n);
        for a in 0..self.n {
            for &b in &self.succ[a] {
                for &c in &other.succ[b] {
                    r.bits[a * self.n + c] = true;
                }
            }
        }
        r.rebuild_lists();
        r
    }

    pub fn transpose(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(a, b)| (b, a)))
    }

    /// First pair of `self` missing from `other`.
    pub fn containment_failure(&self, other: &Relation) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !other.holds(a, b))
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.containment_failure(other).is_none()
    }
}
