use std::cmp::Ordering;
use std::fmt;

use super::bits;

/// A subgroup, stored as the bit set of its member indices.
///
/// The total order is the canonical one used everywhere: by size, then
/// lexicographically on the sorted member lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup(u64);

impl Subgroup {
    pub fn from_mask(mask: u64) -> Self {
        debug_assert!(mask & 1 == 1, "a subgroup contains the identity");
        Subgroup(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn order(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    /// `other ≤ self`.
    pub fn contains_subgroup(self, other: Subgroup) -> bool {
        other.0 & !self.0 == 0
    }

    pub fn intersect(self, other: Subgroup) -> Subgroup {
        Subgroup(self.0 & other.0)
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }

    pub fn member_vec(self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 1
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = Subgroup::from_mask(0b0011); // {0,1}
        let b = Subgroup::from_mask(0b0101); // {0,2}
        let c = Subgroup::from_mask(0b1111);
        assert!(a < b);
        assert!(b < c);
        let d = Subgroup::from_mask(0b1_0000_0001); // {0,8}
        assert!(b < d);
    }
}
