//! The Ehresmann category `C(S)` of an `E`-Ehresmann semigroup and the
//! inverse construction `S(C)`.
//!
//! Morphisms share the semigroup's index space: `C(a)` is `a`. Objects are
//! the elements of `E`, `dom(a) = a⁺`, `cod(a) = a*`, and `a·b` is defined iff
//! `a* = b⁺`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ehresmann::{EhresmannStructure, Order};
use crate::relation::Relation;
use crate::report::VerificationReport;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("object {e} is not below dom({x})")]
    NotBelowDomain { e: usize, x: usize },
    #[error("object {e} is not below cod({x})")]
    NotBelowRange { e: usize, x: usize },
    #[error("{0} is not an object")]
    NotAnObject(usize),
    #[error("pseudo-product of {x} and {y} is undefined (restriction or meet missing)")]
    PseudoProductUndefined { x: usize, y: usize },
}

#[derive(Clone, Debug)]
pub struct EhresmannCategory {
    semigroup: FiniteSemigroup,
    objects: Vec<usize>,
    object_pos: Vec<Option<usize>>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    leq_r: Relation,
    leq_l: Relation,
    meets: Vec<Option<usize>>,
}

pub fn build_category(es: &EhresmannStructure) -> EhresmannCategory {
    EhresmannCategory::new(es)
}

impl EhresmannCategory {
    pub fn new(es: &EhresmannStructure) -> Self {
        let n = es.size();
        let objects = es.e().to_vec();
        let mut object_pos = vec![None; n];
        for (i, &e) in objects.iter().enumerate() {
            object_pos[e] = Some(i);
        }
        let mut c = EhresmannCategory {
            semigroup: es.semigroup().clone(),
            objects,
            object_pos,
            dom: es.plus_map().to_vec(),
            cod: es.star_map().to_vec(),
            leq_r: es.leq_r().clone(),
            leq_l: es.leq_l().clone(),
            meets: Vec::new(),
        };
        c.compute_meets();
        c
    }

    /// Replaces both orders. Meets are recomputed from the new `≤ᵣ`.
    pub fn with_orders(mut self, leq_r: Relation, leq_l: Relation) -> Self {
        assert_eq!(leq_r.len(), self.size());
        assert_eq!(leq_l.len(), self.size());
        self.leq_r = leq_r;
        self.leq_l = leq_l;
        self.compute_meets();
        self
    }

    // greatest lower bound among objects, read off ≤ᵣ
    fn compute_meets(&mut self) {
        let k = self.objects.len();
        let obj = &self.objects;
        let leq = &self.leq_r;
        self.meets = (0..k * k)
            .map(|ij| {
                let (e, f) = (obj[ij / k], obj[ij % k]);
                let lower: Vec<usize> =
                    obj.iter().copied().filter(|&g| leq.holds(g, e) && leq.holds(g, f)).collect();
                lower.iter().copied().find(|&g| lower.iter().all(|&h| leq.holds(h, g)))
            })
            .collect();
    }

    pub fn size(&self) -> usize {
        self.dom.len()
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn is_object(&self, x: usize) -> bool {
        self.object_pos[x].is_some()
    }

    pub fn dom(&self, x: usize) -> usize {
        self.dom[x]
    }

    pub fn cod(&self, x: usize) -> usize {
        self.cod[x]
    }

    pub fn leq_r(&self) -> &Relation {
        &self.leq_r
    }

    pub fn leq_l(&self) -> &Relation {
        &self.leq_l
    }

    pub fn order(&self, order: Order) -> &Relation {
        match order {
            Order::Right => &self.leq_r,
            Order::Left => &self.leq_l,
        }
    }

    pub fn name(&self, x: usize) -> String {
        self.semigroup.name(x)
    }

    pub fn composable(&self, x: usize, y: usize) -> bool {
        self.cod[x] == self.dom[y]
    }

    /// `x·y` when `cod(x) = dom(y)`.
    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.composable(x, y).then(|| self.semigroup.mul(x, y))
    }

    /// Meet of two objects in the object semilattice.
    pub fn meet(&self, e: usize, f: usize) -> Option<usize> {
        let k = self.objects.len();
        let (i, j) = (self.object_pos[e]?, self.object_pos[f]?);
        self.meets[i * k + j]
    }

    pub fn object_leq(&self, e: usize, f: usize) -> bool {
        self.leq_r.holds(e, f)
    }

    /// `(e|x)`, realized as the product `e·x`.
    pub fn restriction(&self, e: usize, x: usize) -> Result<usize, CategoryError> {
        if !self.is_object(e) {
            return Err(CategoryError::NotAnObject(e));
        }
        if !self.object_leq(e, self.dom[x]) {
            return Err(CategoryError::NotBelowDomain { e, x });
        }
        Ok(self.semigroup.mul(e, x))
    }

    /// `(x|e)`, realized as the product `x·e`.
    pub fn corestriction(&self, x: usize, e: usize) -> Result<usize, CategoryError> {
        if !self.is_object(e) {
            return Err(CategoryError::NotAnObject(e));
        }
        if !self.leq_l.holds(e, self.cod[x]) {
            return Err(CategoryError::NotBelowRange { e, x });
        }
        Ok(self.semigroup.mul(x, e))
    }

    /// Every `y ≤ᵣ x` with `dom(y) = e`. Exactly one exists in an Ehresmann
    /// category whenever `e ≤ dom(x)`.
    pub fn restrictions_by_order(&self, e: usize, x: usize) -> Vec<usize> {
        self.leq_r.predecessors(x).iter().copied().filter(|&y| self.dom[y] == e).collect()
    }

    /// Every `y ≤ₗ x` with `cod(y) = e`.
    pub fn corestrictions_by_order(&self, x: usize, e: usize) -> Vec<usize> {
        self.leq_l.predecessors(x).iter().copied().filter(|&y| self.cod[y] == e).collect()
    }

    fn unique_restriction(&self, e: usize, x: usize) -> Option<usize> {
        match self.restrictions_by_order(e, x).as_slice() {
            [y] => Some(*y),
            _ => None,
        }
    }

    fn unique_corestriction(&self, x: usize, e: usize) -> Option<usize> {
        match self.corestrictions_by_order(x, e).as_slice() {
            [y] => Some(*y),
            _ => None,
        }
    }

    pub fn hom_set(&self, e: usize, f: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.dom[x] == e && self.cod[x] == f).collect()
    }

    pub fn endomorphisms(&self, e: usize) -> Vec<usize> {
        self.hom_set(e, e)
    }

    /// Exhaustive check of the category, category-with-order and Ehresmann
    /// category axioms. Restrictions are located through the orders, so a
    /// corrupted order shows up here even though composition is untouched.
    pub fn verify_axioms(&self) -> VerificationReport {
        let n = self.size();
        let mut report = VerificationReport::new("Ehresmann category axioms");

        // category structure
        report.record(
            "objects are their own domain and codomain",
            self.objects.iter().find(|&&e| self.dom[e] != e || self.cod[e] != e).map(|&e| vec![e]),
        );
        report.record(
            "dom and cod are objects",
            (0..n).find(|&x| !self.is_object(self.dom[x]) || !self.is_object(self.cod[x])).map(|x| vec![x]),
        );
        report.record("composite has dom(x) and cod(y)", self.composition_failure());
        report.record(
            "identities are neutral",
            (0..n).find_map(|x| {
                let (d, c) = (self.dom[x], self.cod[x]);
                (self.compose(d, x) != Some(x) || self.compose(x, c) != Some(x)).then(|| vec![x])
            }),
        );

        for order in [Order::Right, Order::Left] {
            let leq = self.order(order);
            let tag = order.to_string();
            report.record(format!("≤{tag} reflexive"), leq.reflexivity_failure().map(|x| vec![x]));
            report
                .record(format!("≤{tag} antisymmetric"), leq.antisymmetry_failure().map(|(a, b)| vec![a, b]));
            report.record(
                format!("≤{tag} transitive"),
                leq.transitivity_failure().map(|(a, b, c)| vec![a, b, c]),
            );
            report.record(
                format!("CO1 ≤{tag}: dom and cod are monotone"),
                leq.pairs()
                    .find(|&(x, y)| {
                        !leq.holds(self.dom[x], self.dom[y]) || !leq.holds(self.cod[x], self.cod[y])
                    })
                    .map(|(x, y)| vec![x, y]),
            );
            report.record(format!("CO2 ≤{tag}: order respects composition"), self.co2_failure(leq));
            report.record(
                format!("CO3 ≤{tag}: parallel comparable morphisms are equal"),
                leq.pairs()
                    .find(|&(x, y)| x != y && self.dom[x] == self.dom[y] && self.cod[x] == self.cod[y])
                    .map(|(x, y)| vec![x, y]),
            );
        }

        report.record("EC2 unique restrictions", self.ec2_failure());
        report.record("EC3 unique corestrictions", self.ec3_failure());
        report.record(
            "EC4 ≤r and ≤l agree on objects",
            self.objects.iter().find_map(|&e| {
                self.objects
                    .iter()
                    .find(|&&f| self.leq_r.holds(e, f) != self.leq_l.holds(e, f))
                    .map(|&f| vec![e, f])
            }),
        );
        report.record(
            "EC5 objects form a meet semilattice",
            self.objects.iter().find_map(|&e| {
                self.objects.iter().find(|&&f| self.meet(e, f).is_none()).map(|&f| vec![e, f])
            }),
        );
        let rl = self.leq_r.then(&self.leq_l);
        let lr = self.leq_l.then(&self.leq_r);
        report.record(
            "EC6 ≤r∘≤l = ≤l∘≤r",
            rl.containment_failure(&lr).or_else(|| lr.containment_failure(&rl)).map(|(a, b)| vec![a, b]),
        );
        report.record("EC7 corestriction monotone under ≤r", self.ec7_failure());
        report.record("EC8 restriction monotone under ≤l", self.ec8_failure());
        report.record("restriction e·x matches the order-defined (e|x)", self.restriction_product_failure());
        report
    }

    fn composition_failure(&self) -> Option<Vec<usize>> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                if let Some(xy) = self.compose(x, y) {
                    if self.dom[xy] != self.dom[x] || self.cod[xy] != self.cod[y] {
                        return Some(vec![x, y]);
                    }
                }
            }
        }
        None
    }

    fn co2_failure(&self, leq: &Relation) -> Option<Vec<usize>> {
        for (x, y) in leq.pairs() {
            for (u, v) in leq.pairs() {
                if let (Some(xu), Some(yv)) = (self.compose(x, u), self.compose(y, v)) {
                    if !leq.holds(xu, yv) {
                        return Some(vec![x, y, u, v]);
                    }
                }
            }
        }
        None
    }

    fn ec2_failure(&self) -> Option<Vec<usize>> {
        (0..self.size()).find_map(|x| {
            self.objects
                .iter()
                .filter(|&&e| self.leq_r.holds(e, self.dom[x]))
                .find(|&&e| self.restrictions_by_order(e, x).len() != 1)
                .map(|&e| vec![e, x])
        })
    }

    fn ec3_failure(&self) -> Option<Vec<usize>> {
        (0..self.size()).find_map(|x| {
            self.objects
                .iter()
                .filter(|&&e| self.leq_l.holds(e, self.cod[x]))
                .find(|&&e| self.corestrictions_by_order(x, e).len() != 1)
                .map(|&e| vec![x, e])
        })
    }

    fn ec7_failure(&self) -> Option<Vec<usize>> {
        for (x, y) in self.leq_r.pairs() {
            for &f in &self.objects {
                let lhs = self.meet(self.cod[x], f).and_then(|m| self.unique_corestriction(x, m));
                let rhs = self.meet(self.cod[y], f).and_then(|m| self.unique_corestriction(y, m));
                match (lhs, rhs) {
                    (Some(a), Some(b)) if self.leq_r.holds(a, b) => {}
                    _ => return Some(vec![x, y, f]),
                }
            }
        }
        None
    }

    fn ec8_failure(&self) -> Option<Vec<usize>> {
        for (x, y) in self.leq_l.pairs() {
            for &f in &self.objects {
                let lhs = self.meet(self.dom[x], f).and_then(|m| self.unique_restriction(m, x));
                let rhs = self.meet(self.dom[y], f).and_then(|m| self.unique_restriction(m, y));
                match (lhs, rhs) {
                    (Some(a), Some(b)) if self.leq_l.holds(a, b) => {}
                    _ => return Some(vec![x, y, f]),
                }
            }
        }
        None
    }

    fn restriction_product_failure(&self) -> Option<Vec<usize>> {
        (0..self.size()).find_map(|x| {
            self.objects
                .iter()
                .filter(|&&e| self.object_leq(e, self.dom[x]))
                .find(|&&e| {
                    let by_product = self.semigroup.mul(e, x);
                    self.unique_restriction(e, x) != Some(by_product) || self.dom[by_product] != e
                })
                .map(|&e| vec![e, x])
        })
    }

    /// Rebuilds `S(C)` with the pseudo-product
    /// `x·y = (x | cod(x)∧dom(y)) · (cod(x)∧dom(y) | y)`, where restrictions
    /// and meets are read off the orders and only composable pairs are
    /// multiplied.
    pub fn rebuild_semigroup(&self) -> Result<EhresmannStructure, CategoryError> {
        let n = self.size();
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                let product = self.pseudo_product(x, y);
                table[x * n + y] = product.ok_or(CategoryError::PseudoProductUndefined { x, y })?;
            }
        }
        let mut s = FiniteSemigroup::from_fn_unchecked(n, |x, y| table[x * n + y]);
        if let Some(names) = self.semigroup.names() {
            s = s.with_names(names.to_vec()).expect("same size");
        }
        Ok(EhresmannStructure::from_parts(s, self.objects.clone(), self.dom.clone(), self.cod.clone()))
    }

    pub fn pseudo_product(&self, x: usize, y: usize) -> Option<usize> {
        let m = self.meet(self.cod[x], self.dom[y])?;
        let left = self.unique_corestriction(x, m)?;
        let right = self.unique_restriction(m, y)?;
        self.compose(left, right)
    }

    /// The JSON-ready category dump.
    pub fn dump(&self) -> CategoryDump {
        CategoryDump {
            objects: self.objects.clone(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            leq_r: self.leq_r.pairs().map(|(a, b)| [a, b]).collect(),
            leq_l: self.leq_l.pairs().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// Category dump: objects, dom/cod per morphism, and every pair of each
/// order (reflexive pairs included) in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDump {
    pub objects: Vec<usize>,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub leq_r: Vec<[usize; 2]>,
    pub leq_l: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehresmann::derive_structure;

    #[test]
    fn monoid_has_one_object() {
        let z4 = FiniteSemigroup::cyclic_group(4);
        let es = derive_structure(&z4, &[0]).unwrap();
        let c = build_category(&es);
        assert_eq!(c.objects(), &[0]);
        assert!((0..4).all(|x| c.dom(x) == 0 && c.cod(x) == 0));
        assert!((0..4).all(|x| (0..4).all(|y| c.compose(x, y) == Some(z4.mul(x, y)))));
        assert!(c.verify_axioms().passed);
        let rebuilt = c.rebuild_semigroup().unwrap();
        assert_eq!(rebuilt.semigroup(), es.semigroup());
    }

    #[test]
    fn chain_semilattice_restrictions() {
        let s = FiniteSemigroup::chain_semilattice(3);
        let es = derive_structure(&s, &[0, 1, 2]).unwrap();
        let c = build_category(&es);
        assert_eq!(c.restriction(2, 0), Ok(2));
        assert_eq!(c.restriction(0, 2), Err(CategoryError::NotBelowDomain { e: 0, x: 2 }));
        assert_eq!(c.corestriction(2, 0), Err(CategoryError::NotBelowRange { e: 0, x: 2 }));
        assert_eq!(c.meet(0, 1), Some(1));
        assert!(c.verify_axioms().passed);
    }
}
