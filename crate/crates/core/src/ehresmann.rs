//! Distinguished semilattices, the relations `R̃_E`/`L̃_E`, the maps `a ↦ a⁺`
//! and `a ↦ a*`, restriction conditions and the natural orders `≤ᵣ`, `≤ₗ`.
//!
//! `R̃_E` and `L̃_E` are computed from sets of one-sided identities drawn from
//! `E`, before any `⁺`/`*` exists. A structure is only built once every class
//! meets `E` exactly once and the one-sided congruence identities hold.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::relation::Relation;
use crate::report::VerificationReport;
use crate::semigroup::FiniteSemigroup;

/// Which of the two natural partial orders to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    /// `a ≤ᵣ b ⇔ a = a⁺b`
    #[default]
    #[serde(rename = "r")]
    Right,
    /// `a ≤ₗ b ⇔ a = ba*`
    #[serde(rename = "l")]
    Left,
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Order::Right => "r",
            Order::Left => "l",
        })
    }
}

impl std::str::FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" => Ok(Order::Right),
            "l" => Ok(Order::Left),
            other => Err(format!("unknown order `{other}`, expected `r` or `l`")),
        }
    }
}

/// `R̃_E` (left identities) or `L̃_E` (right identities).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "R~")]
    RTilde,
    #[serde(rename = "L~")]
    LTilde,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::RTilde => "R̃_E",
            Side::LTilde => "L̃_E",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EhresmannError {
    #[error("E is not a subsemilattice of S")]
    NotSubsemilattice,
    #[error("{side} class {class} (containing {element}) has no idempotent from E")]
    ClassWithoutIdempotent { side: Side, class: usize, element: usize },
    #[error("{side} class {class} contains two idempotents {e} and {f} from E")]
    ClassWithTwoIdempotents { side: Side, class: usize, e: usize, f: usize },
    #[error("{side} is not a one-sided congruence: identity fails at a={a}, b={b}")]
    CongruenceFails { side: Side, a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TildeRelations {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
}

/// `R̃_E`, `L̃_E` and `H̃_E` from the sets of left/right identities in `E`.
pub fn tilde_relations(s: &FiniteSemigroup, e: &[usize]) -> TildeRelations {
    let n = s.size();
    let left_ids = |a: usize| -> Vec<bool> { e.iter().map(|&f| s.mul(f, a) == a).collect() };
    let right_ids = |a: usize| -> Vec<bool> { e.iter().map(|&f| s.mul(a, f) == a).collect() };
    let r = Partition::from_keys((0..n).map(left_ids));
    let l = Partition::from_keys((0..n).map(right_ids));
    let h = r.meet(&l);
    TildeRelations { r, l, h }
}

/// A finite semigroup with distinguished semilattice `E` making it
/// `E`-Ehresmann, together with `⁺`, `*` and both natural orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhresmannStructure {
    semigroup: FiniteSemigroup,
    e: Vec<usize>,
    in_e: Vec<bool>,
    plus: Vec<usize>,
    star: Vec<usize>,
    leq_r: Relation,
    leq_l: Relation,
}

pub fn derive_structure(s: &FiniteSemigroup, e: &[usize]) -> Result<EhresmannStructure, EhresmannError> {
    EhresmannStructure::derive(s.clone(), e)
}

impl EhresmannStructure {
    pub fn derive(s: FiniteSemigroup, e: &[usize]) -> Result<Self, EhresmannError> {
        let mut e = e.to_vec();
        e.sort_unstable();
        e.dedup();
        if !s.is_subsemilattice(&e) {
            return Err(EhresmannError::NotSubsemilattice);
        }
        let tilde = tilde_relations(&s, &e);
        let plus = representatives(&tilde.r, &e, Side::RTilde)?;
        let star = representatives(&tilde.l, &e, Side::LTilde)?;
        let n = s.size();
        for a in 0..n {
            for b in 0..n {
                let ab = s.mul(a, b);
                if plus[ab] != plus[s.mul(a, plus[b])] {
                    return Err(EhresmannError::CongruenceFails { side: Side::RTilde, a, b });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = s.mul(a, b);
                if star[ab] != star[s.mul(star[a], b)] {
                    return Err(EhresmannError::CongruenceFails { side: Side::LTilde, a, b });
                }
            }
        }
        Ok(Self::from_parts(s, e, plus, star))
    }

    /// Assembles a structure from maps already known to be valid.
    pub(crate) fn from_parts(s: FiniteSemigroup, e: Vec<usize>, plus: Vec<usize>, star: Vec<usize>) -> Self {
        let n = s.size();
        let mut in_e = vec![false; n];
        for &x in &e {
            in_e[x] = true;
        }
        // a ≤ᵣ b ⇔ a = a⁺b, so b ranges over elements with a⁺b = a
        let leq_r = Relation::from_fn(n, |a, b| s.mul(plus[a], b) == a);
        let leq_l = Relation::from_fn(n, |a, b| s.mul(b, star[a]) == a);
        EhresmannStructure { semigroup: s, e, in_e, plus, star, leq_r, leq_l }
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn size(&self) -> usize {
        self.semigroup.size()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.semigroup.mul(a, b)
    }

    /// The distinguished semilattice, sorted.
    pub fn e(&self) -> &[usize] {
        &self.e
    }

    pub fn is_in_e(&self, a: usize) -> bool {
        self.in_e[a]
    }

    pub fn plus(&self, a: usize) -> usize {
        self.plus[a]
    }

    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn plus_map(&self) -> &[usize] {
        &self.plus
    }

    pub fn star_map(&self) -> &[usize] {
        &self.star
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

    /// Semilattice order on `E`: `e ≤ f ⇔ ef = e`.
    pub fn e_leq(&self, e: usize, f: usize) -> bool {
        self.mul(e, f) == e
    }

    pub fn name(&self, a: usize) -> String {
        self.semigroup.name(a)
    }

    pub fn tilde_relations(&self) -> TildeRelations {
        tilde_relations(&self.semigroup, &self.e)
    }

    pub fn check_variety(&self) -> VerificationReport {
        check_variety(&self.semigroup, &self.plus, &self.star)
    }

    /// First `(a, e)` with `ae ≠ (ae)⁺a`.
    pub fn left_restriction_failure(&self) -> Option<(usize, usize)> {
        (0..self.size()).find_map(|a| {
            self.e.iter().find_map(|&e| {
                let ae = self.mul(a, e);
                (ae != self.mul(self.plus[ae], a)).then_some((a, e))
            })
        })
    }

    /// First `(a, e)` with `ea ≠ a(ea)*`.
    pub fn right_restriction_failure(&self) -> Option<(usize, usize)> {
        (0..self.size()).find_map(|a| {
            self.e.iter().find_map(|&e| {
                let ea = self.mul(e, a);
                (ea != self.mul(a, self.star[ea])).then_some((a, e))
            })
        })
    }

    pub fn is_left_restriction(&self) -> bool {
        self.left_restriction_failure().is_none()
    }

    pub fn is_right_restriction(&self) -> bool {
        self.right_restriction_failure().is_none()
    }

    pub fn order_containment(&self) -> OrderContainment {
        let left_restriction = self.is_left_restriction();
        let right_restriction = self.is_right_restriction();
        let l_not_in_r = self.leq_l.containment_failure(&self.leq_r);
        let r_not_in_l = self.leq_r.containment_failure(&self.leq_l);
        OrderContainment {
            left_restriction,
            right_restriction,
            leq_l_in_leq_r: l_not_in_r.is_none(),
            leq_r_in_leq_l: r_not_in_l.is_none(),
            leq_l_not_in_leq_r_witness: l_not_in_r,
            leq_r_not_in_leq_l_witness: r_not_in_l,
            consistent: (!left_restriction || l_not_in_r.is_none())
                && (!right_restriction || r_not_in_l.is_none()),
        }
    }

    /// Whether `E` is a maximal semilattice of `S`: no idempotent outside
    /// `E` commutes with all of `E`.
    pub fn e_is_maximal_semilattice(&self) -> bool {
        let s = &self.semigroup;
        s.idempotents()
            .into_iter()
            .filter(|&f| !self.in_e[f])
            .all(|f| self.e.iter().any(|&e| s.mul(e, f) != s.mul(f, e)))
    }
}

fn representatives(p: &Partition, e: &[usize], side: Side) -> Result<Vec<usize>, EhresmannError> {
    let mut rep: Vec<Option<usize>> = vec![None; p.num_classes()];
    for &x in e {
        let c = p.class_of(x);
        if let Some(f) = rep[c] {
            return Err(EhresmannError::ClassWithTwoIdempotents { side, class: c, e: f, f: x });
        }
        rep[c] = Some(x);
    }
    (0..p.len())
        .map(|a| {
            let c = p.class_of(a);
            rep[c].ok_or(EhresmannError::ClassWithoutIdempotent { side, class: c, element: a })
        })
        .collect()
}

/// Containment status between `≤ₗ` and `≤ᵣ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderContainment {
    pub left_restriction: bool,
    pub right_restriction: bool,
    pub leq_l_in_leq_r: bool,
    pub leq_r_in_leq_l: bool,
    /// `(a, b)` with `a ≤ₗ b` but not `a ≤ᵣ b`.
    pub leq_l_not_in_leq_r_witness: Option<(usize, usize)>,
    pub leq_r_not_in_leq_l_witness: Option<(usize, usize)>,
    /// Left restriction implies `≤ₗ ⊆ ≤ᵣ`; right restriction implies `≤ᵣ ⊆ ≤ₗ`.
    pub consistent: bool,
}

/// Exhaustively checks the thirteen identities axiomatizing `E`-Ehresmann
/// semigroups as `(2,1,1)`-algebras. Each identity reports its first failing
/// instance in lexicographic order.
pub fn check_variety(s: &FiniteSemigroup, plus: &[usize], star: &[usize]) -> VerificationReport {
    let n = s.size();
    assert_eq!(plus.len(), n, "plus map has wrong length");
    assert_eq!(star.len(), n, "star map has wrong length");
    let mut report = VerificationReport::new("variety identities");
    if let Some(x) = (0..n).find(|&x| plus[x] >= n || star[x] >= n) {
        report.record("maps in range", Some(vec![x]));
        return report;
    }
    let m = |a: usize, b: usize| s.mul(a, b);
    let p = |a: usize| plus[a];
    let st = |a: usize| star[a];
    let unary = |f: &dyn Fn(usize) -> bool| (0..n).find(|&x| !f(x)).map(|x| vec![x]);
    let binary = |f: &dyn Fn(usize, usize) -> bool| {
        (0..n).find_map(|x| (0..n).find(|&y| !f(x, y)).map(|y| vec![x, y]))
    };

    report.record("x⁺x = x", unary(&|x| m(p(x), x) == x));
    report.record("(x⁺y⁺)⁺ = x⁺y⁺", binary(&|x, y| p(m(p(x), p(y))) == m(p(x), p(y))));
    report.record("x⁺y⁺ = y⁺x⁺", binary(&|x, y| m(p(x), p(y)) == m(p(y), p(x))));
    report.record("x⁺(xy)⁺ = (xy)⁺", binary(&|x, y| m(p(x), p(m(x, y))) == p(m(x, y))));
    report.record("(xy)⁺ = (xy⁺)⁺", binary(&|x, y| p(m(x, y)) == p(m(x, p(y)))));
    report.record("xx* = x", unary(&|x| m(x, st(x)) == x));
    report.record("(x*y*)* = x*y*", binary(&|x, y| st(m(st(x), st(y))) == m(st(x), st(y))));
    report.record("x*y* = y*x*", binary(&|x, y| m(st(x), st(y)) == m(st(y), st(x))));
    report.record("(xy)*y* = (xy)*", binary(&|x, y| m(st(m(x, y)), st(y)) == st(m(x, y))));
    report.record("(xy)* = (x*y)*", binary(&|x, y| st(m(x, y)) == st(m(st(x), y))));
    report.record("x(yz) = (xy)z", s.associativity_failure().map(|(x, y, z)| vec![x, y, z]));
    report.record("(x⁺)* = x⁺", unary(&|x| st(p(x)) == p(x)));
    report.record("(x*)⁺ = x*", unary(&|x| p(st(x)) == st(x)));
    report
}

/// All maximal subsemilattices of `S`. These are exactly the maximal sets
/// of pairwise commuting idempotents (such a set is closed under products).
/// Exponential in the worst case; intended for small inputs.
pub fn maximal_subsemilattices(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let idem = s.idempotents();
    let k = idem.len();
    let commute: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| s.mul(idem[i], idem[j]) == s.mul(idem[j], idem[i])).collect())
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&commute, Vec::new(), (0..k).collect(), Vec::new(), &mut out);
    let mut result: Vec<Vec<usize>> = out
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|i| idem[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    result.sort();
    result
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = *p.iter().chain(x.iter()).next().unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v] || v == pivot).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_semigroup_passes_vacuously() {
        let s = FiniteSemigroup::new(vec![vec![0]]).unwrap();
        let es = derive_structure(&s, &[0]).unwrap();
        assert!(es.check_variety().passed);
        assert!(es.is_left_restriction() && es.is_right_restriction());
    }

    #[test]
    fn monoid_with_identity_as_e() {
        let z3 = FiniteSemigroup::cyclic_group(3);
        let es = derive_structure(&z3, &[0]).unwrap();
        assert!((0..3).all(|a| es.plus(a) == 0 && es.star(a) == 0));
        // a ≤ᵣ b iff a = b in a group with E = {1}
        assert_eq!(es.leq_r(), &Relation::identity(3));
    }

    #[test]
    fn distinct_e_elements_are_never_r_tilde_related() {
        let s = FiniteSemigroup::chain_semilattice(4);
        let t = tilde_relations(&s, &[0, 1, 2, 3]);
        assert_eq!(t.r, Partition::discrete(4));
        assert_eq!(t.l, Partition::discrete(4));
    }

    #[test]
    fn rejects_non_semilattice_and_missing_idempotent() {
        let lz = FiniteSemigroup::left_zero(2);
        assert_eq!(derive_structure(&lz, &[0, 1]), Err(EhresmannError::NotSubsemilattice));
        // Z2 ∪ {0}: zero element 2; E = {2} leaves the group elements with
        // no left identity from E
        let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]];
        let s = FiniteSemigroup::new(t).unwrap();
        assert!(matches!(
            derive_structure(&s, &[2]),
            Err(EhresmannError::ClassWithoutIdempotent { side: Side::RTilde, element: 0, .. })
        ));
    }

    #[test]
    fn finite_monoid_condition_needs_identity_in_e() {
        // in a finite monoid every R̃ class meets E once iff 1 ∈ E
        let s = FiniteSemigroup::chain_semilattice(3);
        assert!(derive_structure(&s, &[0, 2]).is_ok());
        assert!(matches!(derive_structure(&s, &[1, 2]), Err(EhresmannError::ClassWithoutIdempotent { .. })));
    }

    #[test]
    fn maximal_subsemilattices_of_left_zero() {
        let lz = FiniteSemigroup::left_zero(3);
        assert_eq!(maximal_subsemilattices(&lz), vec![vec![0], vec![1], vec![2]]);
        let c = FiniteSemigroup::chain_semilattice(3);
        assert_eq!(maximal_subsemilattices(&c), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn order_parse() {
        assert_eq!("l".parse::<Order>(), Ok(Order::Left));
        assert!("x".parse::<Order>().is_err());
    }
}
