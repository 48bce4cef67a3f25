//! Semigroup and category algebras over `ℚ`, and the Möbius isomorphism
//! between them.
//!
//! `φ(a) = Σ_{b≤a} C(b)` and `ψ(x) = Σ_{y≤x} μ(y,x) S(y)` for the chosen
//! natural order. They are always mutually inverse linear bijections; `φ` is
//! multiplicative when the semigroup is left restriction (with `≤ᵣ`) or right
//! restriction (with `≤ₗ`). Homomorphism checks run on basis pairs, which
//! suffices by bilinearity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::category::EhresmannCategory;
use crate::ehresmann::{EhresmannStructure, Order};
use crate::poset::{FinitePoset, MoebiusCache, PosetError};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasisKind {
    #[serde(rename = "semigroup")]
    Semigroup,
    #[serde(rename = "category")]
    Category,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis mismatch: expected {expected:?}, found {found:?}")]
    BasisMismatch { expected: BasisKind, found: BasisKind },
    #[error("the chosen order is not a partial order: {0}")]
    NotPartialOrder(PosetError),
}

/// A finite `ℚ`-linear combination of basis elements, kept without zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    kind: BasisKind,
    coeffs: BTreeMap<usize, Rational>,
}

impl AlgebraElement {
    pub fn zero(kind: BasisKind) -> Self {
        AlgebraElement { kind, coeffs: BTreeMap::new() }
    }

    pub fn basis(kind: BasisKind, index: usize) -> Self {
        Self::from_terms(kind, [(index, Rational::one())])
    }

    pub fn from_terms(kind: BasisKind, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = Self::zero(kind);
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.coeffs.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add_term(&mut self, index: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    fn expect_kind(&self, kind: BasisKind) -> Result<(), AlgebraError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(AlgebraError::BasisMismatch { expected: kind, found: self.kind })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        other.expect_kind(self.kind)?;
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.kind, self.terms().map(|(i, c)| (i, c * k)))
    }

    /// Renders as `C(a) + 2·C(b) - C(c)` using `name` for basis elements.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let wrap = |i: usize| match self.kind {
            BasisKind::Category => format!("C({})", name(i)),
            BasisKind::Semigroup => name(i),
        };
        let mut out = String::new();
        for (k, (i, c)) in self.terms().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}·"));
            }
            out.push_str(&wrap(i));
        }
        out
    }
}

fn bilinear(
    kind: BasisKind,
    u: &AlgebraElement,
    v: &AlgebraElement,
    mul: impl Fn(usize, usize) -> Option<usize>,
) -> Result<AlgebraElement, AlgebraError> {
    u.expect_kind(kind)?;
    v.expect_kind(kind)?;
    let mut out = AlgebraElement::zero(kind);
    for (i, a) in u.terms() {
        for (j, b) in v.terms() {
            if let Some(k) = mul(i, j) {
                out.add_term(k, a * b);
            }
        }
    }
    Ok(out)
}

/// Product in `ℚS`.
pub fn mul_semigroup(
    es: &EhresmannStructure,
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    bilinear(BasisKind::Semigroup, u, v, |i, j| Some(es.mul(i, j)))
}

/// Product in `ℚC`; non-composable basis pairs multiply to zero.
pub fn mul_category(
    c: &EhresmannCategory,
    u: &AlgebraElement,
    v: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    bilinear(BasisKind::Category, u, v, |i, j| c.compose(i, j))
}

/// `Σ_{e∈E} C(e)`.
pub fn unit(c: &EhresmannCategory) -> AlgebraElement {
    AlgebraElement::from_terms(BasisKind::Category, c.objects().iter().map(|&e| (e, Rational::one())))
}

/// Whether `u` is a two-sided identity of `ℚC`, checked on every basis element.
pub fn is_category_unit(c: &EhresmannCategory, u: &AlgebraElement) -> bool {
    (0..c.size()).all(|x| {
        let b = AlgebraElement::basis(BasisKind::Category, x);
        mul_category(c, u, &b).as_ref() == Ok(&b) && mul_category(c, &b, u).as_ref() == Ok(&b)
    })
}

/// Whether `u` is a two-sided identity of `ℚS`, checked on every basis element.
pub fn is_semigroup_unit(es: &EhresmannStructure, u: &AlgebraElement) -> bool {
    (0..es.size()).all(|x| {
        let b = AlgebraElement::basis(BasisKind::Semigroup, x);
        mul_semigroup(es, u, &b).as_ref() == Ok(&b) && mul_semigroup(es, &b, u).as_ref() == Ok(&b)
    })
}

/// The maps `φ: ℚS → ℚC` and `ψ: ℚC → ℚS` for one choice of order.
pub struct MoebiusIsomorphism<'a> {
    structure: &'a EhresmannStructure,
    category: &'a EhresmannCategory,
    order: Order,
    poset: FinitePoset,
    mu: MoebiusCache,
}

impl<'a> MoebiusIsomorphism<'a> {
    pub fn new(
        structure: &'a EhresmannStructure,
        category: &'a EhresmannCategory,
        order: Order,
    ) -> Result<Self, AlgebraError> {
        let poset =
            FinitePoset::new(structure.order(order).clone()).map_err(AlgebraError::NotPartialOrder)?;
        let mu = poset.moebius();
        Ok(MoebiusIsomorphism { structure, category, order, poset, mu })
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn moebius(&self) -> &MoebiusCache {
        &self.mu
    }

    fn phi_basis(&self, a: usize) -> AlgebraElement {
        AlgebraElement::from_terms(
            BasisKind::Category,
            self.poset.down_set(a).iter().map(|&b| (b, Rational::one())),
        )
    }

    fn psi_basis(&self, x: usize) -> AlgebraElement {
        AlgebraElement::from_terms(
            BasisKind::Semigroup,
            self.poset.down_set(x).iter().map(|&y| (y, self.mu.mu(y, x).expect("comparable").clone())),
        )
    }

    /// `φ`, extended linearly.
    pub fn phi(&self, u: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        u.expect_kind(BasisKind::Semigroup)?;
        let mut out = AlgebraElement::zero(BasisKind::Category);
        for (a, k) in u.terms() {
            for &b in self.poset.down_set(a) {
                out.add_term(b, k.clone());
            }
        }
        Ok(out)
    }

    /// `ψ`, extended linearly.
    pub fn psi(&self, u: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        u.expect_kind(BasisKind::Category)?;
        let mut out = AlgebraElement::zero(BasisKind::Semigroup);
        for (x, k) in u.terms() {
            for &y in self.poset.down_set(x) {
                out.add_term(y, self.mu.mu(y, x).expect("comparable") * k);
            }
        }
        Ok(out)
    }

    /// Checks `ψ∘φ = id`, `φ∘ψ = id` on every basis element and
    /// `φ(ab) = φ(a)φ(b)` on every basis pair, splitting pairs by whether
    /// `C(a)·C(b)` is defined. `workers > 1` partitions the pair sweep by `a`.
    pub fn verify(&self, workers: usize) -> IsomorphismReport {
        let n = self.structure.size();
        let phis: Vec<AlgebraElement> = (0..n).map(|a| self.phi_basis(a)).collect();

        let mut bijection_failures = Vec::new();
        for (a, phi) in phis.iter().enumerate() {
            let back = self.psi(phi).expect("category basis");
            if back != AlgebraElement::basis(BasisKind::Semigroup, a) {
                bijection_failures.push(("psi(phi(a))".to_string(), a));
            }
        }
        for x in 0..n {
            let back = self.phi(&self.psi_basis(x)).expect("semigroup basis");
            if back != AlgebraElement::basis(BasisKind::Category, x) {
                bijection_failures.push(("phi(psi(x))".to_string(), x));
            }
        }

        let sweep = |range: std::ops::Range<usize>| -> Vec<(usize, usize, bool)> {
            let mut out = Vec::new();
            for a in range {
                for b in 0..n {
                    let lhs = &phis[self.structure.mul(a, b)];
                    let rhs = mul_category(self.category, &phis[a], &phis[b]).expect("category basis");
                    if *lhs != rhs {
                        out.push((a, b, self.category.composable(a, b)));
                    }
                }
            }
            out
        };
        let workers = workers.clamp(1, n.max(1));
        let failures: Vec<(usize, usize, bool)> = if workers == 1 {
            sweep(0..n)
        } else {
            let chunk = n.div_ceil(workers);
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let range = (w * chunk).min(n)..((w + 1) * chunk).min(n);
                        scope.spawn(move || sweep(range))
                    })
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
            })
        };

        let case1_pairs = (0..n).map(|a| (0..n).filter(|&b| self.category.composable(a, b)).count()).sum();
        let hom_case1_failures: Vec<[usize; 2]> =
            failures.iter().filter(|f| f.2).map(|f| [f.0, f.1]).collect();
        let hom_case2_failures: Vec<[usize; 2]> =
            failures.iter().filter(|f| !f.2).map(|f| [f.0, f.1]).collect();
        let witness_expansion = failures.first().map(|&(a, b, _)| self.expand(a, b));

        IsomorphismReport {
            order: self.order,
            basis_size: n,
            bijection: bijection_failures.is_empty(),
            bijection_failures,
            pairs_checked: n * n,
            case1_pairs,
            case2_pairs: n * n - case1_pairs,
            homomorphism: failures.is_empty(),
            hom_case1_failures,
            hom_case2_failures,
            witness_expansion,
        }
    }

    /// Full expansion of `φ(a)`, `φ(b)`, `φ(ab)` and `φ(a)φ(b)`.
    pub fn expand(&self, a: usize, b: usize) -> WitnessExpansion {
        let name = |i: usize| self.structure.name(i);
        let ab = self.structure.mul(a, b);
        let (pa, pb, pab) = (self.phi_basis(a), self.phi_basis(b), self.phi_basis(ab));
        let prod = mul_category(self.category, &pa, &pb).expect("category basis");
        WitnessExpansion {
            a,
            b,
            ab,
            a_name: name(a),
            b_name: name(b),
            ab_name: name(ab),
            composable: self.category.composable(a, b),
            phi_a: pa.display_with(name),
            phi_b: pb.display_with(name),
            phi_ab: pab.display_with(name),
            phi_a_phi_b: prod.display_with(name),
            equal: pab == prod,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessExpansion {
    pub a: usize,
    pub b: usize,
    pub ab: usize,
    pub a_name: String,
    pub b_name: String,
    pub ab_name: String,
    pub composable: bool,
    pub phi_a: String,
    pub phi_b: String,
    pub phi_ab: String,
    pub phi_a_phi_b: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub order: Order,
    pub basis_size: usize,
    pub bijection: bool,
    /// `(which composite, basis index)` for every basis element not fixed.
    pub bijection_failures: Vec<(String, usize)>,
    pub pairs_checked: usize,
    /// Pairs with `a* = b⁺`.
    pub case1_pairs: usize,
    pub case2_pairs: usize,
    pub homomorphism: bool,
    pub hom_case1_failures: Vec<[usize; 2]>,
    pub hom_case2_failures: Vec<[usize; 2]>,
    /// Expansion for the lexicographically first failing pair.
    pub witness_expansion: Option<WitnessExpansion>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.bijection && self.homomorphism
    }
}

/// Verifies the isomorphism for `es` with the given order.
pub fn verify_isomorphism(
    es: &EhresmannStructure,
    order: Order,
    workers: usize,
) -> Result<IsomorphismReport, AlgebraError> {
    let c = EhresmannCategory::new(es);
    Ok(MoebiusIsomorphism::new(es, &c, order)?.verify(workers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehresmann::derive_structure;
    use crate::semigroup::FiniteSemigroup;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn chain3() -> EhresmannStructure {
        derive_structure(&FiniteSemigroup::chain_semilattice(3), &[0, 1, 2]).unwrap()
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let mut e = AlgebraElement::basis(BasisKind::Semigroup, 2);
        e.add_term(2, q(-1, 1));
        assert!(e.is_zero());
        let e = AlgebraElement::from_terms(BasisKind::Semigroup, [(1, q(1, 2)), (1, q(1, 2)), (3, q(0, 1))]);
        assert_eq!(e.terms().count(), 1);
        assert_eq!(e.coeff(1), q(1, 1));
    }

    #[test]
    fn basis_mismatch_is_reported() {
        let es = chain3();
        let s = AlgebraElement::basis(BasisKind::Semigroup, 0);
        let c = AlgebraElement::basis(BasisKind::Category, 0);
        assert_eq!(
            mul_semigroup(&es, &s, &c),
            Err(AlgebraError::BasisMismatch { expected: BasisKind::Semigroup, found: BasisKind::Category })
        );
        assert!(s.add(&c).is_err());
    }

    #[test]
    fn basis_times_basis_and_noncomposable_zero() {
        let es = chain3();
        let c = EhresmannCategory::new(&es);
        let b = |i| AlgebraElement::basis(BasisKind::Semigroup, i);
        assert_eq!(mul_semigroup(&es, &b(0), &b(2)).unwrap(), b(2));
        let x = |i| AlgebraElement::basis(BasisKind::Category, i);
        // only identities, so distinct objects never compose
        assert!(mul_category(&c, &x(0), &x(2)).unwrap().is_zero());
        assert!(is_category_unit(&c, &unit(&c)));
    }

    #[test]
    fn display_format() {
        let e = AlgebraElement::from_terms(BasisKind::Category, [(0, q(1, 1)), (1, q(-1, 1)), (2, q(3, 2))]);
        assert_eq!(e.display_with(|i| format!("x{i}")), "C(x0) - C(x1) + 3/2·C(x2)");
        assert_eq!(AlgebraElement::zero(BasisKind::Semigroup).display_with(|i| i.to_string()), "0");
    }

    #[test]
    fn semilattice_isomorphism_holds() {
        let es = chain3();
        let r = verify_isomorphism(&es, Order::Right, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.pairs_checked, 9);
        let r2 = verify_isomorphism(&es, Order::Right, 3).unwrap();
        assert_eq!(r, r2);
    }
}
