//! Generators for the example semigroups, each with its distinguished
//! semilattice `E`.
//!
//! Composition of maps and relations is left to right: `(st)(i) = t(s(i))`.
//!
//! Enumeration orders are fixed so indices are stable:
//! - partial maps on `n` points are ordered lexicographically by image
//!   vector, first point most significant, with "undefined" as the last
//!   digit (so the empty map is the last element);
//! - total maps likewise, without the undefined digit;
//! - binary relations on `n` points are indexed by bit mask, the pair
//!   `(i, j)` being bit `(i-1)·n + (j-1)`, so the empty relation is 0;
//! - a strong semilattice lists `M_α` blocks in the order of `Y`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ehresmann::{EhresmannError, EhresmannStructure};
use crate::poset::FinitePoset;
use crate::semigroup::{FiniteSemigroup, SemigroupError};

pub const PT_MAX: usize = 5;
pub const T_MAX: usize = 5;
/// `B_4` has 65536 elements; its table does not fit in memory.
pub const B_MAX: usize = 3;
pub const OP_MAX: usize = 4;
pub const CYCLIC_MAX: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("{family} parameter {value} outside {min}..={max}")]
    OutOfBounds { family: &'static str, value: usize, min: usize, max: usize },
    #[error("connecting maps incompatible at {alpha} ≥ {beta} ≥ {gamma} on element {element}")]
    IncompatibleMaps { alpha: usize, beta: usize, gamma: usize, element: usize },
    #[error("connecting map {alpha} → {beta} is not a monoid homomorphism at ({a}, {b})")]
    NotHomomorphism { alpha: usize, beta: usize, a: usize, b: usize },
    #[error("component {0} is not a monoid")]
    NotAMonoid(usize),
    #[error("the index semigroup is not a semilattice")]
    NotSemilattice,
    #[error("subset not closed under {op}: witness {witness:?}")]
    NotClosed { op: &'static str, witness: Vec<usize> },
    #[error("bad zoo spec {0:?}")]
    Parse(String),
    #[error(transparent)]
    Ehresmann(#[from] EhresmannError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

fn bounded(family: &'static str, value: usize, min: usize, max: usize) -> Result<(), ZooError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(ZooError::OutOfBounds { family, value, min, max })
    }
}

/// Digits of `index` in base `base`, most significant first.
fn digits(mut index: usize, n: usize, base: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for slot in d.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    d
}

fn undigits(d: &[usize], base: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * base + x)
}

fn map_name(image: &[usize], n: usize) -> String {
    let parts: Vec<String> =
        image.iter().map(|&x| if x == n { "-".to_string() } else { (x + 1).to_string() }).collect();
    format!("[{}]", parts.join(","))
}

/// `PT_n` as a bare semigroup, elements named by image vector (`-` undefined).
pub fn partial_transformations(n: usize) -> Result<FiniteSemigroup, ZooError> {
    bounded("PT_n", n, 1, PT_MAX)?;
    let base = n + 1;
    let size = base.pow(n as u32);
    let maps: Vec<Vec<usize>> = (0..size).map(|i| digits(i, n, base)).collect();
    let s = FiniteSemigroup::from_fn_unchecked(size, |a, b| {
        let (s, t) = (&maps[a], &maps[b]);
        let composed: Vec<usize> = s.iter().map(|&x| if x == n { n } else { t[x] }).collect();
        undigits(&composed, base)
    });
    Ok(s.with_names(maps.iter().map(|m| map_name(m, n)).collect())?)
}

/// Index of a partial map given by its image vector (`None` undefined).
pub fn partial_map_index(image: &[Option<usize>]) -> usize {
    let n = image.len();
    let d: Vec<usize> = image.iter().map(|x| x.unwrap_or(n)).collect();
    undigits(&d, n + 1)
}

/// Partial identities of `PT_n`.
pub fn partial_identities(n: usize) -> Vec<usize> {
    (0u32..1 << n)
        .map(|mask| {
            let image: Vec<Option<usize>> = (0..n).map(|i| (mask >> i & 1 == 1).then_some(i)).collect();
            partial_map_index(&image)
        })
        .collect()
}

/// `PT_n` with `E` the partial identities: `t⁺ = 1_dom(t)`, `t* = 1_im(t)`.
pub fn pt_n(n: usize) -> Result<EhresmannStructure, ZooError> {
    let s = partial_transformations(n)?;
    Ok(EhresmannStructure::derive(s, &partial_identities(n))?)
}

/// `T_n`: all total maps on `n` points.
pub fn t_n(n: usize) -> Result<FiniteSemigroup, ZooError> {
    bounded("T_n", n, 1, T_MAX)?;
    let size = n.pow(n as u32);
    let maps: Vec<Vec<usize>> = (0..size).map(|i| digits(i, n, n)).collect();
    let s = FiniteSemigroup::from_fn_unchecked(size, |a, b| {
        let composed: Vec<usize> = maps[a].iter().map(|&x| maps[b][x]).collect();
        undigits(&composed, n)
    });
    Ok(s.with_names(maps.iter().map(|m| map_name(m, n)).collect())?)
}

fn relation_name(mask: usize, n: usize) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    let pairs: Vec<String> = (0..n * n)
        .filter(|&bit| mask >> bit & 1 == 1)
        .map(|bit| format!("({},{})", bit / n + 1, bit % n + 1))
        .collect();
    format!("{{{}}}", pairs.join(","))
}

/// Index of the relation with the given pairs (1-based points).
pub fn relation_index(n: usize, pairs: &[(usize, usize)]) -> usize {
    pairs.iter().fold(0, |m, &(i, j)| m | 1 << ((i - 1) * n + (j - 1)))
}

/// `B_n` with `E` the partial identities.
pub fn b_n(n: usize) -> Result<EhresmannStructure, ZooError> {
    bounded("B_n", n, 1, B_MAX)?;
    let size = 1usize << (n * n);
    let row_mask = (1usize << n) - 1;
    let s = FiniteSemigroup::from_fn_unchecked(size, |a, b| {
        let mut out = 0;
        for i in 0..n {
            let row = a >> (i * n) & row_mask;
            let mut image = 0;
            for j in 0..n {
                if row >> j & 1 == 1 {
                    image |= b >> (j * n) & row_mask;
                }
            }
            out |= image << (i * n);
        }
        out
    });
    let s = s.with_names((0..size).map(|m| relation_name(m, n)).collect())?;
    let e: Vec<usize> = (0usize..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << (i * n + i)))
        .collect();
    Ok(EhresmannStructure::derive(s, &e)?)
}

/// The six-element subsemigroup of `T₂ × T₂ᵒᵖ`.
///
/// In `T₂` the constant maps are named `1` and `2`, the identity `id`.
/// Elements in order: `(1,1), (2,1), (1,2), (2,2), (1,id), (id,1)`, with
/// `E = {(1,1), (1,id), (id,1)}`.
pub fn six_element_example() -> Result<EhresmannStructure, ZooError> {
    let t2 = t_n(2)?.with_names(["1", "id", "s", "2"].map(String::from).to_vec())?;
    let prod = t2.product(&t2.opposite());
    let idx = |x: &str, y: &str| prod.index_of(&format!("({x},{y})")).expect("listed pair");
    let listed = [idx("1", "1"), idx("2", "1"), idx("1", "2"), idx("2", "2"), idx("1", "id"), idx("id", "1")];
    let s = prod.subsemigroup(&listed)?;
    Ok(EhresmannStructure::derive(s, &[0, 4, 5])?)
}

/// Strong semilattice of monoids `M_α` over the semilattice `y`.
///
/// `maps(α, β, m)` is the connecting map `M_α → M_β` applied to `m`, called
/// only for `α ≥ β`. `E` is the set of identities `1_α`.
pub fn strong_semilattice(
    y: &FiniteSemigroup,
    monoids: &[FiniteSemigroup],
    maps: impl Fn(usize, usize, usize) -> usize,
) -> Result<EhresmannStructure, ZooError> {
    let k = y.size();
    let all: Vec<usize> = (0..k).collect();
    if monoids.len() != k || !y.is_subsemilattice(&all) {
        return Err(ZooError::NotSemilattice);
    }
    let mut ids = Vec::with_capacity(k);
    for (alpha, m) in monoids.iter().enumerate() {
        ids.push(m.identity().ok_or(ZooError::NotAMonoid(alpha))?);
    }
    let geq = |a: usize, b: usize| y.mul(a, b) == b;

    for alpha in 0..k {
        for beta in (0..k).filter(|&b| geq(alpha, b)) {
            let (ma, mb) = (&monoids[alpha], &monoids[beta]);
            if alpha == beta {
                if let Some(element) = (0..ma.size()).find(|&m| maps(alpha, alpha, m) != m) {
                    return Err(ZooError::IncompatibleMaps { alpha, beta, gamma: beta, element });
                }
                continue;
            }
            if maps(alpha, beta, ids[alpha]) != ids[beta] {
                return Err(ZooError::NotHomomorphism { alpha, beta, a: ids[alpha], b: ids[alpha] });
            }
            for a in 0..ma.size() {
                for b in 0..ma.size() {
                    if maps(alpha, beta, ma.mul(a, b)) != mb.mul(maps(alpha, beta, a), maps(alpha, beta, b)) {
                        return Err(ZooError::NotHomomorphism { alpha, beta, a, b });
                    }
                }
            }
            for gamma in (0..k).filter(|&g| geq(beta, g)) {
                if let Some(element) =
                    (0..ma.size()).find(|&m| maps(beta, gamma, maps(alpha, beta, m)) != maps(alpha, gamma, m))
                {
                    return Err(ZooError::IncompatibleMaps { alpha, beta, gamma, element });
                }
            }
        }
    }

    let mut offset = Vec::with_capacity(k + 1);
    offset.push(0);
    for m in monoids {
        offset.push(offset.last().unwrap() + m.size());
    }
    let n = offset[k];
    let block: Vec<(usize, usize)> =
        (0..k).flat_map(|alpha| (0..monoids[alpha].size()).map(move |m| (alpha, m))).collect();
    let s = FiniteSemigroup::from_fn_unchecked(n, |x, z| {
        let ((alpha, a), (beta, b)) = (block[x], block[z]);
        let gamma = y.mul(alpha, beta);
        offset[gamma] + monoids[gamma].mul(maps(alpha, gamma, a), maps(beta, gamma, b))
    });
    let names = block.iter().map(|&(alpha, m)| format!("{alpha}:{}", monoids[alpha].name(m))).collect();
    let s = s.with_names(names)?;
    let e: Vec<usize> = (0..k).map(|alpha| offset[alpha] + ids[alpha]).collect();
    Ok(EhresmannStructure::derive(s, &e)?)
}

/// Connecting maps sending everything to the identity of the lower monoid.
pub fn trivial_maps(monoids: &[FiniteSemigroup]) -> impl Fn(usize, usize, usize) -> usize + '_ {
    move |alpha, beta, m| {
        if alpha == beta {
            m
        } else {
            monoids[beta].identity().expect("monoid")
        }
    }
}

/// Strong semilattice of cyclic groups over a chain, top first, with
/// trivial connecting maps.
pub fn chain_of_groups(orders: &[usize]) -> Result<EhresmannStructure, ZooError> {
    if orders.is_empty() {
        return Err(ZooError::NotSemilattice);
    }
    for &k in orders {
        bounded("Z_k", k, 1, CYCLIC_MAX)?;
    }
    let groups: Vec<FiniteSemigroup> = orders.iter().map(|&k| FiniteSemigroup::cyclic_group(k)).collect();
    strong_semilattice(&FiniteSemigroup::chain_semilattice(orders.len()), &groups, trivial_maps(&groups))
}

/// The sub-(2,1,1)-algebra of `PT_n` on `subset`, validated for closure under
/// product, `⁺` and `*`.
pub fn pt_subalgebra(pt: &EhresmannStructure, subset: &[usize]) -> Result<EhresmannStructure, ZooError> {
    let mut member = vec![false; pt.size()];
    for &x in subset {
        member[x] = true;
    }
    if let Some(&a) = subset.iter().find(|&&a| !member[pt.plus(a)]) {
        return Err(ZooError::NotClosed { op: "⁺", witness: vec![a] });
    }
    if let Some(&a) = subset.iter().find(|&&a| !member[pt.star(a)]) {
        return Err(ZooError::NotClosed { op: "*", witness: vec![a] });
    }
    if let Some((a, b)) = pt.semigroup().closure_failure(subset) {
        return Err(ZooError::NotClosed { op: "·", witness: vec![a, b] });
    }
    let s = pt.semigroup().subsemigroup(subset)?;
    let e: Vec<usize> = subset.iter().enumerate().filter(|&(_, &x)| pt.is_in_e(x)).map(|(i, _)| i).collect();
    Ok(EhresmannStructure::derive(s, &e)?)
}

/// Partial maps on the points of `poset` that preserve its order on their
/// domain, as a subalgebra of `PT_n`.
pub fn order_preserving_pt(poset: &FinitePoset) -> Result<EhresmannStructure, ZooError> {
    let n = poset.len();
    bounded("order-preserving PT_n", n, 1, OP_MAX)?;
    let pt = pt_n(n)?;
    let subset: Vec<usize> = (0..pt.size())
        .filter(|&a| {
            let image = digits(a, n, n + 1);
            (0..n).all(|i| {
                (0..n).all(|j| {
                    image[i] == n || image[j] == n || !poset.leq(i, j) || poset.leq(image[i], image[j])
                })
            })
        })
        .collect();
    pt_subalgebra(&pt, &subset)
}

/// A monoid with `E = {1}`.
pub fn monoid_as_trivial_e(m: &FiniteSemigroup) -> Result<EhresmannStructure, ZooError> {
    let one = m.identity().ok_or(ZooError::NotAMonoid(0))?;
    Ok(EhresmannStructure::derive(m.clone(), &[one])?)
}

/// Compact names for zoo members, as used on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ZooSpec {
    /// `pt:N`
    PartialTransformations(usize),
    /// `b:N`
    BinaryRelations(usize),
    /// `t:N`, the full transformation monoid with `E = {1}`
    FullTransformations(usize),
    /// `six`
    SixElement,
    /// `ssl:chainK:zA,zB,...`, top first
    ChainOfGroups(Vec<usize>),
    /// `op:N`, order-preserving partial maps on an `N`-chain
    OrderPreserving(usize),
    /// `z:K`, the cyclic group with `E = {0}`
    Cyclic(usize),
    /// `chain:K`, a chain semilattice with `E = S`
    Chain(usize),
}

impl ZooSpec {
    pub fn build(&self) -> Result<EhresmannStructure, ZooError> {
        match self {
            ZooSpec::PartialTransformations(n) => pt_n(*n),
            ZooSpec::BinaryRelations(n) => b_n(*n),
            ZooSpec::FullTransformations(n) => monoid_as_trivial_e(&t_n(*n)?),
            ZooSpec::SixElement => six_element_example(),
            ZooSpec::ChainOfGroups(orders) => chain_of_groups(orders),
            ZooSpec::OrderPreserving(n) => order_preserving_pt(&FinitePoset::chain(*n)),
            ZooSpec::Cyclic(k) => {
                bounded("Z_k", *k, 1, CYCLIC_MAX)?;
                monoid_as_trivial_e(&FiniteSemigroup::cyclic_group(*k))
            }
            ZooSpec::Chain(k) => {
                bounded("chain", *k, 1, CYCLIC_MAX)?;
                let s = FiniteSemigroup::chain_semilattice(*k);
                let all: Vec<usize> = (0..*k).collect();
                Ok(EhresmannStructure::derive(s, &all)?)
            }
        }
    }

    /// Members small enough for exhaustive checks in tests.
    pub fn small_members() -> Vec<ZooSpec> {
        [
            "pt:1",
            "pt:2",
            "pt:3",
            "b:1",
            "b:2",
            "t:2",
            "t:3",
            "six",
            "ssl:chain2:z2,z3",
            "ssl:chain3:z1,z2,z2",
            "op:2",
            "op:3",
            "z:1",
            "z:2",
            "z:5",
            "chain:1",
            "chain:4",
        ]
        .iter()
        .map(|s| s.parse().expect("valid spec"))
        .collect()
    }
}

impl FromStr for ZooSpec {
    type Err = ZooError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ZooError::Parse(s.to_string());
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["six"] => Ok(ZooSpec::SixElement),
            ["pt", n] => Ok(ZooSpec::PartialTransformations(num(n)?)),
            ["b", n] => Ok(ZooSpec::BinaryRelations(num(n)?)),
            ["t", n] => Ok(ZooSpec::FullTransformations(num(n)?)),
            ["op", n] => Ok(ZooSpec::OrderPreserving(num(n)?)),
            ["z", k] => Ok(ZooSpec::Cyclic(num(k)?)),
            ["chain", k] => Ok(ZooSpec::Chain(num(k)?)),
            ["ssl", chain, groups] => {
                let len = num(chain.strip_prefix("chain").ok_or_else(bad)?)?;
                let orders = groups
                    .split(',')
                    .map(|g| num(g.trim().strip_prefix('z').ok_or_else(bad)?))
                    .collect::<Result<Vec<_>, _>>()?;
                if orders.len() != len {
                    return Err(bad());
                }
                Ok(ZooSpec::ChainOfGroups(orders))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::PartialTransformations(n) => write!(f, "pt:{n}"),
            ZooSpec::BinaryRelations(n) => write!(f, "b:{n}"),
            ZooSpec::FullTransformations(n) => write!(f, "t:{n}"),
            ZooSpec::SixElement => write!(f, "six"),
            ZooSpec::ChainOfGroups(orders) => {
                let groups: Vec<String> = orders.iter().map(|k| format!("z{k}")).collect();
                write!(f, "ssl:chain{}:{}", orders.len(), groups.join(","))
            }
            ZooSpec::OrderPreserving(n) => write!(f, "op:{n}"),
            ZooSpec::Cyclic(k) => write!(f, "z:{k}"),
            ZooSpec::Chain(k) => write!(f, "chain:{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for n in 1..=3 {
            assert_eq!(partial_transformations(n).unwrap().size(), (n + 1).pow(n as u32));
            assert_eq!(t_n(n).unwrap().size(), n.pow(n as u32));
        }
        assert_eq!(b_n(2).unwrap().size(), 16);
        assert_eq!(six_element_example().unwrap().size(), 6);
        assert_eq!(chain_of_groups(&[2, 3]).unwrap().size(), 5);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(pt_n(0), Err(ZooError::OutOfBounds { .. })));
        assert!(matches!(pt_n(6), Err(ZooError::OutOfBounds { .. })));
        assert!(matches!(b_n(4), Err(ZooError::OutOfBounds { .. })));
    }

    #[test]
    fn generated_tables_are_associative() {
        assert!(partial_transformations(2).unwrap().associativity_failure().is_none());
        assert!(b_n(2).unwrap().semigroup().associativity_failure().is_none());
        assert!(t_n(3).unwrap().associativity_failure().is_none());
    }

    #[test]
    fn pt_plus_and_star_are_domain_and_image_identities() {
        let pt = pt_n(2).unwrap();
        // [2,-]: 1 ↦ 2, 2 undefined
        let t = partial_map_index(&[Some(1), None]);
        assert_eq!(pt.name(t), "[2,-]");
        assert_eq!(pt.plus(t), partial_map_index(&[Some(0), None]));
        assert_eq!(pt.star(t), partial_map_index(&[None, Some(1)]));
        assert_eq!(pt.name(pt.size() - 1), "[-,-]");
    }

    #[test]
    fn composition_is_left_to_right() {
        let pt = partial_transformations(2).unwrap();
        let s = partial_map_index(&[Some(1), Some(1)]);
        let t = partial_map_index(&[Some(0), None]);
        // s then t: everything goes to 2, where t is undefined
        assert_eq!(pt.mul(s, t), partial_map_index(&[None, None]));
        assert_eq!(pt.mul(t, s), partial_map_index(&[Some(1), None]));
    }

    #[test]
    fn relation_indices_and_names() {
        let b2 = b_n(2).unwrap();
        let a = relation_index(2, &[(1, 1), (1, 2)]);
        let b = relation_index(2, &[(1, 1)]);
        assert_eq!((a, b), (3, 1));
        assert_eq!(b2.name(a), "{(1,1),(1,2)}");
        assert_eq!(b2.name(0), "∅");
        assert_eq!(b2.mul(a, b), b);
    }

    #[test]
    fn six_element_products() {
        let s = six_element_example().unwrap();
        let i = |x: &str| s.semigroup().index_of(x).unwrap();
        assert_eq!(s.mul(i("(2,2)"), i("(1,id)")), i("(1,2)"));
        assert_eq!(s.e(), &[i("(1,1)"), i("(1,id)"), i("(id,1)")]);
    }

    #[test]
    fn bad_connecting_maps_are_rejected() {
        let groups = [FiniteSemigroup::cyclic_group(2), FiniteSemigroup::cyclic_group(2)];
        let y = FiniteSemigroup::chain_semilattice(2);
        // identity map between Z_2 blocks is a valid homomorphism
        assert!(strong_semilattice(&y, &groups, |_, _, m| m).is_ok());
        // sending the identity to the generator is not
        let err = strong_semilattice(&y, &groups, |a, b, m| if a == b { m } else { 1 - m }).unwrap_err();
        assert!(matches!(err, ZooError::NotHomomorphism { alpha: 0, beta: 1, .. }));
        let err = strong_semilattice(&y, &groups, |_, _, _| 0).unwrap_err();
        assert!(matches!(err, ZooError::IncompatibleMaps { alpha: 0, beta: 0, .. }));
    }

    #[test]
    fn order_preserving_subalgebra() {
        let op = order_preserving_pt(&FinitePoset::chain(3)).unwrap();
        assert!(op.size() < 64);
        assert_eq!(op.e().len(), 8);
        assert!(op.is_left_restriction());
        // closed under ⁺ and * but t·t = ∅ is missing
        let pt = pt_n(2).unwrap();
        let t = partial_map_index(&[Some(1), None]);
        let err = pt_subalgebra(&pt, &[t, pt.plus(t), pt.star(t)]).unwrap_err();
        assert!(matches!(err, ZooError::NotClosed { op: "·", .. }));
    }

    #[test]
    fn spec_round_trip() {
        for spec in ZooSpec::small_members() {
            assert_eq!(spec.to_string().parse::<ZooSpec>().unwrap(), spec);
        }
        assert!("ssl:chain3:z2,z3".parse::<ZooSpec>().is_err());
        assert!("pt".parse::<ZooSpec>().is_err());
        assert!("q:3".parse::<ZooSpec>().is_err());
    }
}
