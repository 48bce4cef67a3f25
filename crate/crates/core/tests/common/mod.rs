//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own decoders.

#![allow(dead_code)]

use ehresmann::{FinitePoset, Relation};
use rand::Rng;

/// Parses a partial map name like `[2,-]` into 0-based images.
pub fn parse_map(name: &str) -> Vec<Option<usize>> {
    name.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|x| if x == "-" { None } else { Some(x.parse::<usize>().unwrap() - 1) })
        .collect()
}

/// Parses a relation name like `{(1,1),(1,2)}` or `∅` into 1-based pairs.
pub fn parse_relation(name: &str) -> Vec<(usize, usize)> {
    if name == "∅" {
        return Vec::new();
    }
    name.trim_matches(|c| c == '{' || c == '}')
        .split("),(")
        .map(|p| {
            let p = p.trim_matches(|c| c == '(' || c == ')');
            let (i, j) = p.split_once(',').unwrap();
            (i.parse().unwrap(), j.parse().unwrap())
        })
        .collect()
}

pub fn is_injective(m: &[Option<usize>]) -> bool {
    let imgs: Vec<usize> = m.iter().flatten().copied().collect();
    let mut dedup = imgs.clone();
    dedup.sort_unstable();
    dedup.dedup();
    dedup.len() == imgs.len()
}

/// All partial maps on `n` points by direct enumeration.
pub fn enumerate_partial_maps(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Option<usize>>| {
                (0..=n).map(move |x| {
                    let mut p = prefix.clone();
                    p.push((x < n).then_some(x));
                    p
                })
            })
            .collect();
    }
    out
}

/// A random partial order on `m` points: random edges forward along a
/// shuffled linear order, transitively closed.
pub fn random_poset(rng: &mut impl Rng, m: usize) -> FinitePoset {
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let density: f64 = rng.gen_range(0.1..0.7);
    let mut leq = vec![vec![false; m]; m];
    for i in 0..m {
        leq[perm[i]][perm[i]] = true;
        for j in i + 1..m {
            if rng.gen_bool(density) {
                leq[perm[i]][perm[j]] = true;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    FinitePoset::new(Relation::from_fn(m, |a, b| leq[a][b])).expect("closure of a DAG is a partial order")
}

/// Closure of `gens` under the product, sorted.
pub fn generated(s: &ehresmann::FiniteSemigroup, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; s.size()];
    let mut out: Vec<usize> = Vec::new();
    for &g in gens {
        if !member[g] {
            member[g] = true;
            out.push(g);
        }
    }
    let mut i = 0;
    while i < out.len() {
        let a = out[i];
        for j in 0..out.len() {
            let b = out[j];
            for p in [s.mul(a, b), s.mul(b, a)] {
                if !member[p] {
                    member[p] = true;
                    out.push(p);
                }
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}
