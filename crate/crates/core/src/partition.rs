use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

/// An equivalence relation on `0..n`, stored as class ids.
///
/// Class ids are canonical: classes are numbered in order of their smallest
/// member, so two partitions are equal iff they relate the same pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    class_of: Vec<usize>,
    #[serde(skip)]
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups elements by an arbitrary key.
    pub fn from_keys<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let class_of: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Self::from_class_ids(&class_of)
    }

    /// Renumbers an arbitrary labelling into canonical form.
    pub fn from_class_ids(labels: &[usize]) -> Self {
        let mut remap: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of = labels
            .iter()
            .enumerate()
            .map(|(x, l)| {
                let id = *remap.entry(*l).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[id].push(x);
                id
            })
            .collect();
        Partition { class_of, classes }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_class_ids(&(0..n).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Intersection of two equivalences on the same set.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        Partition::from_keys((0..self.len()).map(|x| (self.class_of[x], other.class_of[x])))
    }

    /// Smallest equivalence containing both.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in [self, other] {
            for class in p.classes() {
                for w in class.windows(2) {
                    let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Partition::from_class_ids(&roots)
    }

    /// True if every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&x| other.related(c[0], x)))
    }

    /// Restriction to a subset, as a list of classes over the original indices.
    pub fn restrict(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for &x in subset {
            let s = *slot.entry(self.class_of[x]).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[s].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_numbering() {
        let p = Partition::from_class_ids(&[7, 3, 7, 9]);
        assert_eq!(p.class_of(0), 0);
        assert_eq!(p.class_of(1), 1);
        assert_eq!(p.class_of(3), 2);
        assert_eq!(p, Partition::from_keys(["a", "b", "a", "c"]));
    }

    #[test]
    fn meet_and_join() {
        let a = Partition::from_class_ids(&[0, 0, 1, 1]);
        let b = Partition::from_class_ids(&[0, 1, 1, 2]);
        assert_eq!(a.meet(&b), Partition::discrete(4));
        assert_eq!(a.join(&b).num_classes(), 1);
        assert!(a.meet(&b).refines(&a));
        assert!(!a.refines(&b));
    }
}
