use std::collections::HashMap;
use std::fmt;

use super::{FiniteGroup, Subgroup, SubgroupLattice};

/// A pair `(Q, N)` with `N ⊴ Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subquotient {
    pub big: Subgroup,
    pub small: Subgroup,
}

impl Subquotient {
    pub fn new(big: Subgroup, small: Subgroup) -> Self {
        Subquotient { big, small }
    }

    pub fn conjugate(self, group: &FiniteGroup, g: usize) -> Self {
        Subquotient { big: group.conjugate(self.big, g), small: group.conjugate(self.small, g) }
    }

    fn key(self) -> (u64, u64) {
        (self.big.mask(), self.small.mask())
    }
}

impl fmt::Debug for Subquotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.big, self.small)
    }
}

#[derive(Clone, Debug)]
pub struct SubquotientClass {
    pub rep: Subquotient,
    pub size: usize,
}

/// `G`-conjugacy classes of subquotients, ordered by representative.
#[derive(Clone, Debug)]
pub struct SubquotientClasses {
    classes: Vec<SubquotientClass>,
    index: HashMap<(u64, u64), usize>,
}

pub fn subquotient_classes(group: &FiniteGroup, lattice: &SubgroupLattice) -> SubquotientClasses {
    SubquotientClasses::new(group, lattice)
}

impl SubquotientClasses {
    pub fn new(group: &FiniteGroup, lattice: &SubgroupLattice) -> Self {
        let subs = lattice.subgroups();
        let mut orbit_of: HashMap<(u64, u64), usize> = HashMap::new();
        let mut orbits: Vec<Vec<Subquotient>> = Vec::new();
        for &q in subs {
            for &n in subs {
                if !group.is_normal_in(n, q) {
                    continue;
                }
                let sq = Subquotient::new(q, n);
                if orbit_of.contains_key(&sq.key()) {
                    continue;
                }
                let mut orbit: Vec<Subquotient> = group.elements().map(|g| sq.conjugate(group, g)).collect();
                orbit.sort();
                orbit.dedup();
                for o in &orbit {
                    orbit_of.insert(o.key(), orbits.len());
                }
                orbits.push(orbit);
            }
        }
        // Orbit members share sizes, so the least pair is the lexicographically least one.
        let mut order: Vec<usize> = (0..orbits.len()).collect();
        order.sort_by_key(|&o| orbits[o][0]);
        let mut renumber = vec![0; orbits.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let classes = order.iter().map(|&o| SubquotientClass { rep: orbits[o][0], size: orbits[o].len() }).collect();
        let index = orbit_of.into_iter().map(|(k, o)| (k, renumber[o])).collect();
        SubquotientClasses { classes, index }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubquotientClass] {
        &self.classes
    }

    pub fn rep(&self, c: usize) -> Subquotient {
        self.classes[c].rep
    }

    /// Class of an arbitrary pair `(Q, N)` with `N ⊴ Q`.
    pub fn class_of(&self, big: Subgroup, small: Subgroup) -> Option<usize> {
        self.index.get(&(big.mask(), small.mask())).copied()
    }

    /// Total number of pairs, `|SQ(G)|`.
    pub fn pair_count(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }
}
