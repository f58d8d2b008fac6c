use std::collections::{HashMap, HashSet};

use super::{FiniteGroup, Subgroup, HARD_ORDER_LIMIT};
use crate::error::{Error, Result};

/// Default refusal threshold for subgroup enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 32;

/// A conjugacy class of subgroups; members are indices into the lattice's
/// subgroup list, and the representative is the first (least) of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn rep(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All subgroups of a group in canonical order, with conjugacy classes,
/// normalizers and inclusion data.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<u64, usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    normalizers: Vec<Subgroup>,
    cyclic: Vec<bool>,
    maximal: Vec<Vec<usize>>,
}

/// Enumerates every subgroup: cyclic subgroups first, then pairwise joins until
/// nothing new appears.
pub fn all_subgroups(group: &FiniteGroup, bound: usize) -> Result<SubgroupLattice> {
    SubgroupLattice::with_bound(group, bound)
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        Self::with_bound(group, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(group: &FiniteGroup, bound: usize) -> Result<Self> {
        let bound = bound.min(HARD_ORDER_LIMIT);
        if group.order() > bound {
            return Err(Error::TooLarge { order: group.order(), bound });
        }
        Ok(Self::build(group))
    }

    fn build(group: &FiniteGroup) -> Self {
        let mut found: HashSet<u64> = HashSet::new();
        let mut list: Vec<Subgroup> = Vec::new();
        for x in group.elements() {
            let c = group.cyclic_subgroup(x);
            if found.insert(c.mask()) {
                list.push(c);
            }
        }
        let mut frontier = list.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let known = list.clone();
            for a in &frontier {
                for b in &known {
                    let j = group.join(*a, *b);
                    if found.insert(j.mask()) {
                        list.push(j);
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        list.sort();
        let index: HashMap<u64, usize> = list.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();

        let mut class_of = vec![usize::MAX; list.len()];
        let mut classes = Vec::new();
        for i in 0..list.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> =
                group.elements().map(|g| index[&group.conjugate(list[i], g).mask()]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(ConjugacyClass { members });
        }

        let normalizers = list.iter().map(|&h| group.normalizer(h)).collect();
        let cyclic = list.iter().map(|&h| group.is_cyclic(h)).collect();
        let maximal = list
            .iter()
            .map(|&h| {
                let below: Vec<usize> =
                    (0..list.len()).filter(|&k| list[k] != h && h.contains_subgroup(list[k])).collect();
                below
                    .iter()
                    .copied()
                    .filter(|&k| !below.iter().any(|&m| m != k && list[m].contains_subgroup(list[k])))
                    .collect()
            })
            .collect();

        SubgroupLattice { subgroups: list, index, classes, class_of, normalizers, cyclic, maximal }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> Subgroup {
        self.subgroups[i]
    }

    pub fn index_of(&self, h: Subgroup) -> Option<usize> {
        self.index.get(&h.mask()).copied()
    }

    /// Index of a subgroup known to belong to this lattice.
    pub fn idx(&self, h: Subgroup) -> usize {
        self.index[&h.mask()]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of_subgroup(&self, h: Subgroup) -> Option<usize> {
        self.index_of(h).map(|i| self.class_of[i])
    }

    /// The class representative `s(G)` member for class `c`.
    pub fn class_rep(&self, c: usize) -> Subgroup {
        self.subgroups[self.classes[c].rep()]
    }

    pub fn normalizer(&self, i: usize) -> Subgroup {
        self.normalizers[i]
    }

    pub fn is_cyclic(&self, i: usize) -> bool {
        self.cyclic[i]
    }

    pub fn is_class_cyclic(&self, c: usize) -> bool {
        self.cyclic[self.classes[c].rep()]
    }

    /// Class indices of cyclic subgroups, in canonical order.
    pub fn cyclic_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.is_class_cyclic(c)).collect()
    }

    /// Class indices of non-cyclic subgroups, in canonical order.
    pub fn noncyclic_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| !self.is_class_cyclic(c)).collect()
    }

    /// Maximal proper subgroups of subgroup `i`, as lattice indices.
    pub fn maximal_subgroups(&self, i: usize) -> &[usize] {
        &self.maximal[i]
    }

    /// Whether `K ≤ H` for lattice indices.
    pub fn includes(&self, h: usize, k: usize) -> bool {
        self.subgroups[h].contains_subgroup(self.subgroups[k])
    }

    /// Lattice indices of the subgroups of `h`.
    pub fn subgroups_of(&self, h: usize) -> Vec<usize> {
        (0..self.subgroups.len()).filter(|&k| self.includes(h, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn cyclic_group_has_one_subgroup_per_divisor() {
        let g = make_group("C4").unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.class_count(), 3);
    }

    #[test]
    fn small_lattice_counts() {
        for (spec, subs, classes) in [("Q8", 6, 6), ("D8", 10, 8), ("C2xC2", 5, 5)] {
            let g = make_group(spec).unwrap();
            let l = SubgroupLattice::new(&g).unwrap();
            assert_eq!((l.len(), l.class_count()), (subs, classes), "{spec}");
        }
    }

    #[test]
    fn size_guard() {
        let g = make_group("C64").unwrap();
        assert!(matches!(SubgroupLattice::new(&g), Err(Error::TooLarge { .. })));
        assert!(SubgroupLattice::with_bound(&g, 64).is_ok());
    }

    #[test]
    fn representatives_are_least_members() {
        let g = make_group("D8").unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        for c in l.classes() {
            let rep = l.subgroup(c.rep());
            assert!(c.members.iter().all(|&m| rep <= l.subgroup(m)));
        }
        let orders: Vec<usize> = (0..l.class_count()).map(|c| l.class_rep(c).order()).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn maximal_subgroups_have_index_p() {
        let g = make_group("He27").unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        for i in 0..l.len() {
            for &k in l.maximal_subgroups(i) {
                assert_eq!(l.subgroup(i).order(), 3 * l.subgroup(k).order());
            }
        }
    }
}
