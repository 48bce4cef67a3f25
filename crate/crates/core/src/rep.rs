//! `Reg_E(S)`, invertible morphisms, the EI condition, and the radical and
//! maximal semisimple image of the algebras.
//!
//! Invertibility of `C(a)` is decided by Green's relations
//! (`a⁺ ℛ a ℒ a*`) and cross-checked by a direct search for two-sided
//! inverses in the category. Radical claims are checked against the
//! trace-form oracle in [`crate::radical`].

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, BasisKind, MoebiusIsomorphism};
use crate::category::EhresmannCategory;
use crate::ehresmann::{EhresmannStructure, Order};
use crate::radical::{radical_oracle, StructureConstants};
use crate::semigroup::GreenData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("Reg_E(S) is not closed: {a}·{b} = {product} is outside it")]
    NotClosed { a: usize, b: usize, product: usize },
    #[error("{0} has no unique inverse inside Reg_E(S)")]
    NoUniqueInverse(usize),
    #[error("idempotents of Reg_E(S) differ from E (first difference at {0})")]
    IdempotentsDifferFromE(usize),
    #[error("the category is not EI: endomorphism {0} is not invertible")]
    NotEI(usize),
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
}

/// `C(a)` invertible iff `a ℛ a⁺` and `a ℒ a*`.
pub fn invertible_morphisms(es: &EhresmannStructure, green: &GreenData) -> Vec<usize> {
    (0..es.size()).filter(|&a| green.r.related(a, es.plus(a)) && green.l.related(a, es.star(a))).collect()
}

/// Morphisms with a two-sided inverse, by exhaustive search in `C`.
pub fn invertible_by_search(c: &EhresmannCategory) -> Vec<usize> {
    let n = c.size();
    (0..n)
        .filter(|&x| (0..n).any(|y| c.compose(x, y) == Some(c.dom(x)) && c.compose(y, x) == Some(c.cod(x))))
        .collect()
}

/// `Reg_E(S) = {a | a⁺ ℛ a ℒ a*}` with inverses inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegESet {
    pub elements: Vec<usize>,
    /// `(a, a⁻¹)` with `aa⁻¹ = a⁺` and `a⁻¹a = a*`.
    pub inverses: Vec<(usize, usize)>,
    pub down_ideal_r: bool,
    pub down_ideal_l: bool,
    /// `(ab)⁺ = ab·b⁻¹a⁻¹·(ab)⁺` for every `a, b` in the set.
    pub closure_chain_holds: bool,
}

impl RegESet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverses.iter().find(|p| p.0 == a).map(|p| p.1)
    }
}

/// Computes and verifies `Reg_E(S)`: closure, inverse semigroup with
/// idempotents exactly `E`, and down-ideal for both orders. A violation
/// means the input or this crate is broken, and is returned as an error.
pub fn reg_e(es: &EhresmannStructure, green: &GreenData) -> Result<RegESet, RepError> {
    let elements = invertible_morphisms(es, green);
    let n = es.size();
    let mut member = vec![false; n];
    for &a in &elements {
        member[a] = true;
    }
    for &a in &elements {
        for &b in &elements {
            let product = es.mul(a, b);
            if !member[product] {
                return Err(RepError::NotClosed { a, b, product });
            }
        }
    }
    let mut inverses = Vec::with_capacity(elements.len());
    for &a in &elements {
        let candidates: Vec<usize> = elements
            .iter()
            .copied()
            .filter(|&b| es.mul(es.mul(a, b), a) == a && es.mul(es.mul(b, a), b) == b)
            .collect();
        match candidates.as_slice() {
            [b] if es.mul(a, *b) == es.plus(a) && es.mul(*b, a) == es.star(a) => inverses.push((a, *b)),
            _ => return Err(RepError::NoUniqueInverse(a)),
        }
    }
    let idem: BTreeSet<usize> = elements.iter().copied().filter(|&a| es.mul(a, a) == a).collect();
    let e: BTreeSet<usize> = es.e().iter().copied().collect();
    if let Some(&x) = idem.symmetric_difference(&e).next() {
        return Err(RepError::IdempotentsDifferFromE(x));
    }
    let down_ideal = |order: Order| {
        let leq = es.order(order);
        elements.iter().all(|&a| leq.predecessors(a).iter().all(|&b| member[b]))
    };
    let inv = |a: usize| inverses.iter().find(|p| p.0 == a).unwrap().1;
    let closure_chain_holds = elements.iter().all(|&a| {
        elements.iter().all(|&b| {
            let ab = es.mul(a, b);
            let rhs = es.mul(es.mul(ab, es.mul(inv(b), inv(a))), es.plus(ab));
            rhs == es.plus(ab)
        })
    });
    Ok(RegESet {
        down_ideal_r: down_ideal(Order::Right),
        down_ideal_l: down_ideal(Order::Left),
        elements,
        inverses,
        closure_chain_holds,
    })
}

/// EI status and related classifications of `C(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EiReport {
    /// Via the criterion: `a⁺ = a*` implies `a ℋ a⁺`.
    pub is_ei: bool,
    /// An endomorphism that is not a group element, when not EI.
    pub witness: Option<usize>,
    /// Via direct inverse search in every endomorphism monoid.
    pub is_ei_by_search: bool,
    pub objects: usize,
    pub endomorphism_monoid_sizes: Vec<usize>,
    pub e_maximal_semilattice: bool,
    /// Objects grouped by isomorphism in `C`.
    pub object_iso_classes: Vec<Vec<usize>>,
    /// `E` grouped by Green's `𝒟`.
    pub d_classes_on_e: Vec<Vec<usize>>,
    pub is_groupoid: bool,
    /// `S` inverse and `E = E(S)`.
    pub inverse_with_full_e: bool,
    pub only_endomorphisms: bool,
}

pub fn ei_report(es: &EhresmannStructure, c: &EhresmannCategory, green: &GreenData) -> EiReport {
    let n = es.size();
    let witness = (0..n).find(|&a| es.plus(a) == es.star(a) && !green.h.related(a, es.plus(a)));
    let invertible = invertible_by_search(c);
    let mut inv_flag = vec![false; n];
    for &x in &invertible {
        inv_flag[x] = true;
    }
    let is_ei_by_search = c.objects().iter().all(|&e| c.endomorphisms(e).iter().all(|&x| inv_flag[x]));

    let mut parent: Vec<usize> = (0..n).collect();
    for &x in &invertible {
        let (d, k) = (c.dom(x), c.cod(x));
        let (rd, rk) = (root(&mut parent, d), root(&mut parent, k));
        if rd != rk {
            parent[rd.max(rk)] = rd.min(rk);
        }
    }
    let iso_labels: Vec<usize> = (0..n).map(|x| root(&mut parent, x)).collect();
    let iso = crate::partition::Partition::from_class_ids(&iso_labels);

    let mut all_e = es.semigroup().idempotents();
    all_e.sort_unstable();
    EiReport {
        is_ei: witness.is_none(),
        witness,
        is_ei_by_search,
        objects: c.objects().len(),
        endomorphism_monoid_sizes: c.objects().iter().map(|&e| c.endomorphisms(e).len()).collect(),
        e_maximal_semilattice: es.e_is_maximal_semilattice(),
        object_iso_classes: iso.restrict(c.objects()),
        d_classes_on_e: green.d.restrict(es.e()),
        is_groupoid: invertible.len() == n,
        inverse_with_full_e: es.semigroup().is_inverse() && all_e == es.e(),
        only_endomorphisms: (0..n).all(|x| c.dom(x) == c.cod(x)),
    }
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The non-invertible morphisms as a claimed basis of `Rad(ℚC)`, with the
/// independent checks that back the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalSpan {
    pub basis: Vec<usize>,
    pub dim: usize,
    /// Dimension from the trace-form oracle on `ℚC`.
    pub oracle_dim: usize,
    /// Every basis element lies in the oracle's radical.
    pub basis_in_oracle_radical: bool,
    /// Left and right multiples of the span by basis morphisms stay in it.
    pub two_sided_ideal: bool,
    /// Smallest `k ≥ 1` with `(span)^k = 0`.
    pub nilpotency_index: Option<usize>,
}

impl RadicalSpan {
    pub fn agrees(&self) -> bool {
        self.dim == self.oracle_dim
            && self.basis_in_oracle_radical
            && self.two_sided_ideal
            && self.nilpotency_index.is_some()
    }
}

/// Requires `C` to be EI.
pub fn radical_span(
    es: &EhresmannStructure,
    c: &EhresmannCategory,
    green: &GreenData,
) -> Result<RadicalSpan, RepError> {
    if let Some(w) = (0..es.size()).find(|&a| es.plus(a) == es.star(a) && !green.h.related(a, es.plus(a))) {
        return Err(RepError::NotEI(w));
    }
    let n = c.size();
    let invertible = invertible_morphisms(es, green);
    let mut inv = vec![false; n];
    for &x in &invertible {
        inv[x] = true;
    }
    let basis: Vec<usize> = (0..n).filter(|&x| !inv[x]).collect();
    let oracle = radical_oracle(&StructureConstants::category_algebra(c));
    let basis_in_oracle_radical = basis.iter().all(|&x| oracle.contains_basis_element(x));
    let two_sided_ideal = basis.iter().all(|&r| {
        (0..n).all(|x| c.compose(x, r).is_none_or(|p| !inv[p]) && c.compose(r, x).is_none_or(|p| !inv[p]))
    });
    // products of basis morphisms are basis morphisms or zero, so the k-th
    // power of the span is spanned by the k-fold products
    let mut power: BTreeSet<usize> = basis.iter().copied().collect();
    let mut nilpotency_index = None;
    for k in 1..=n + 1 {
        if power.is_empty() {
            nilpotency_index = Some(k);
            break;
        }
        power = power.iter().flat_map(|&p| basis.iter().filter_map(move |&r| c.compose(p, r))).collect();
    }
    Ok(RadicalSpan {
        dim: basis.len(),
        basis,
        oracle_dim: oracle.dim(),
        basis_in_oracle_radical,
        two_sided_ideal,
        nilpotency_index,
    })
}

/// Data for the comparison `ℚReg_E(S) ≅ ℚS/Rad(ℚS)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleImage {
    /// Both hypotheses hold (left or right restriction, and EI); otherwise
    /// the remaining fields are raw data only.
    pub within_theorem: bool,
    pub unmet_preconditions: Vec<String>,
    /// Order used for `ψ`: `≤ᵣ` if left restriction, else `≤ₗ` if right.
    pub order: Option<Order>,
    pub semigroup_size: usize,
    pub reg_e_size: usize,
    pub radical_dim: usize,
    /// Rank of `ℚReg_E(S) → ℚS/Rad(ℚS)`.
    pub projection_rank: usize,
    /// `ψ` sends every invertible morphism into `ℚReg_E(S)`.
    pub psi_into_reg_e: Option<bool>,
    /// Rank of `ψ(B)`, `B` the span of invertible morphisms.
    pub psi_image_rank: Option<usize>,
    pub dim_matches: bool,
    pub full_rank: bool,
    /// Verdict, only when `within_theorem`.
    pub passed: Option<bool>,
}

/// Gathers the data regardless of hypotheses.
pub fn semisimple_image_data(
    es: &EhresmannStructure,
    c: &EhresmannCategory,
    green: &GreenData,
) -> SemisimpleImage {
    let left = es.is_left_restriction();
    let right = es.is_right_restriction();
    let ei = (0..es.size()).all(|a| es.plus(a) != es.star(a) || green.h.related(a, es.plus(a)));
    let mut unmet = Vec::new();
    if !left && !right {
        unmet.push("not restriction".to_string());
    }
    if !ei {
        unmet.push("not EI".to_string());
    }
    let order = if left {
        Some(Order::Right)
    } else if right {
        Some(Order::Left)
    } else {
        None
    };

    let reg = invertible_morphisms(es, green);
    let oracle = radical_oracle(&StructureConstants::semigroup_algebra(es.semigroup()));
    let projection_rank = oracle.projected_rank(&reg);

    let (psi_into_reg_e, psi_image_rank) = match order {
        Some(order) => {
            let iso = MoebiusIsomorphism::new(es, c, order).expect("natural orders are partial orders");
            let images: Vec<AlgebraElement> = reg
                .iter()
                .map(|&x| iso.psi(&AlgebraElement::basis(BasisKind::Category, x)).expect("category basis"))
                .collect();
            let mut member = vec![false; es.size()];
            for &a in &reg {
                member[a] = true;
            }
            let into = images.iter().all(|v| v.support().all(|a| member[a]));
            let m =
                crate::linalg::RationalMatrix::from_fn(es.size(), images.len(), |i, j| images[j].coeff(i));
            (Some(into), Some(m.rank()))
        }
        None => (None, None),
    };

    let semigroup_size = es.size();
    let radical_dim = oracle.dim();
    let dim_matches = radical_dim + reg.len() == semigroup_size;
    let full_rank = projection_rank == reg.len();
    let within_theorem = unmet.is_empty();
    let passed = within_theorem.then(|| {
        dim_matches && full_rank && psi_into_reg_e == Some(true) && psi_image_rank == Some(reg.len())
    });
    SemisimpleImage {
        within_theorem,
        unmet_preconditions: unmet,
        order,
        semigroup_size,
        reg_e_size: reg.len(),
        radical_dim,
        projection_rank,
        psi_into_reg_e,
        psi_image_rank,
        dim_matches,
        full_rank,
        passed,
    }
}

/// Checks `ℚReg_E(S) ≅ ℚS/Rad(ℚS)`, enforcing both hypotheses.
pub fn semisimple_image_check(
    es: &EhresmannStructure,
    c: &EhresmannCategory,
    green: &GreenData,
) -> Result<SemisimpleImage, RepError> {
    let data = semisimple_image_data(es, c, green);
    if data.within_theorem {
        Ok(data)
    } else {
        Err(RepError::PreconditionNotMet(data.unmet_preconditions.join(", ")))
    }
}
