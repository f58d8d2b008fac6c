//! Finite p-groups backed by multiplication tables, and the subgroup combinatorics
//! (conjugation, normalizers, double cosets) everything else is built on.
//!
//! Elements are the indices `0..order` with `0` the identity. Subgroups are bit sets
//! over those indices, which caps the order at 64.

mod builtin;
mod lattice;
mod quotient;
mod subgroup;
mod subquotient;

use std::fmt;

pub use builtin::{builtin_specs, make_group};
pub use lattice::{all_subgroups, ConjugacyClass, SubgroupLattice, DEFAULT_ORDER_BOUND};
pub use quotient::{weyl, QuotientGroup};
pub use subgroup::Subgroup;
pub use subquotient::{subquotient_classes, Subquotient, SubquotientClass, SubquotientClasses};

use crate::error::{Error, Result};

/// Largest order representable with bit-set subgroups.
pub const HARD_ORDER_LIMIT: usize = 64;

/// A finite group of prime-power order given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    prime: u64,
    order: usize,
    table: Vec<u8>,
    inverse: Vec<u8>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a Cayley table (row-major, `table[a * order + b] = a·b`) and wraps it.
    ///
    /// `prime` is only consulted for the trivial group; otherwise it must divide the
    /// order, which must be a power of it.
    pub fn from_table(name: impl Into<String>, prime: u64, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let order = (table.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != table.len() {
            return Err(Error::InconsistentTable(format!("{name}: table is not square")));
        }
        if order > HARD_ORDER_LIMIT {
            return Err(Error::TooLarge { order, bound: HARD_ORDER_LIMIT });
        }
        let prime = if order == 1 { prime } else { prime_power_base(order).ok_or(Error::NotPrimePower(order))? };
        if table.iter().any(|&x| x >= order) {
            return Err(Error::InconsistentTable(format!("{name}: entry out of range")));
        }
        let mut group = FiniteGroup {
            name,
            prime,
            order,
            table: table.iter().map(|&x| x as u8).collect(),
            inverse: vec![0; order],
        };
        group.validate()?;
        Ok(group)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.order;
        let bad = |what: &str| Error::InconsistentTable(format!("{}: {what}", self.name));
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(bad("0 is not the identity"));
            }
        }
        for a in 0..n {
            let mut seen = 0u64;
            for b in 0..n {
                seen |= 1 << self.mul(a, b);
            }
            if seen.count_ones() as usize != n {
                return Err(bad("a row is not a permutation"));
            }
            let inv = (0..n).find(|&b| self.mul(a, b) == 0).ok_or_else(|| bad("missing inverse"))?;
            if self.mul(inv, a) != 0 {
                return Err(bad("one-sided inverse"));
            }
            self.inverse[a] = inv as u8;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_mask(full_mask(self.order))
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_mask(1)
    }

    /// The subgroup generated by a set of elements.
    pub fn generate(&self, elements: u64) -> Subgroup {
        let mut mask = elements | 1;
        loop {
            let mut next = mask;
            for a in bits(mask) {
                for b in bits(elements | 1) {
                    next |= 1 << self.mul(a, b);
                }
            }
            if next == mask {
                return Subgroup::from_mask(mask);
            }
            mask = next;
        }
    }

    pub fn cyclic_subgroup(&self, x: usize) -> Subgroup {
        self.generate(1 << x)
    }

    pub fn join(&self, a: Subgroup, b: Subgroup) -> Subgroup {
        if a.contains_subgroup(b) {
            return a;
        }
        if b.contains_subgroup(a) {
            return b;
        }
        self.generate(a.mask() | b.mask())
    }

    pub fn is_subgroup(&self, mask: u64) -> bool {
        if mask & 1 == 0 || mask & !full_mask(self.order) != 0 {
            return false;
        }
        bits(mask).all(|a| bits(mask).all(|b| mask >> self.mul(a, self.inv(b)) & 1 == 1))
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, h: Subgroup, g: usize) -> Subgroup {
        Subgroup::from_mask(map_mask(h.mask(), |x| self.conj(g, x)))
    }

    pub fn normalizer(&self, h: Subgroup) -> Subgroup {
        self.normalizer_in(h, self.whole())
    }

    /// `N_A(H)` for a subgroup `A`.
    pub fn normalizer_in(&self, h: Subgroup, ambient: Subgroup) -> Subgroup {
        let mask = bits(ambient.mask()).filter(|&g| self.conjugate(h, g) == h).fold(0u64, |m, g| m | 1 << g);
        Subgroup::from_mask(mask)
    }

    /// Whether `n` is a normal subgroup of `h`.
    pub fn is_normal_in(&self, n: Subgroup, h: Subgroup) -> bool {
        h.contains_subgroup(n) && h.members().all(|g| self.conjugate(n, g) == n)
    }

    pub fn is_cyclic(&self, h: Subgroup) -> bool {
        h.members().any(|x| self.element_order(x) == h.order())
    }

    /// Some `g` with `g H g⁻¹ = K`, the least such element index.
    pub fn is_conjugate(&self, h: Subgroup, k: Subgroup) -> Option<usize> {
        self.conjugator_in(h, k, self.whole())
    }

    /// Least `g ∈ A` with `g H g⁻¹ = K`.
    pub fn conjugator_in(&self, h: Subgroup, k: Subgroup, ambient: Subgroup) -> Option<usize> {
        if h.order() != k.order() {
            return None;
        }
        ambient.members().find(|&g| self.conjugate(h, g) == k)
    }

    /// The double coset `H x K` as a bit set.
    pub fn double_coset(&self, h: Subgroup, x: usize, k: Subgroup) -> u64 {
        let mut mask = 0u64;
        for a in h.members() {
            let ax = self.mul(a, x);
            for b in k.members() {
                mask |= 1 << self.mul(ax, b);
            }
        }
        mask
    }

    /// Least element of each double coset `H x K`, in increasing order.
    pub fn double_cosets(&self, h: Subgroup, k: Subgroup) -> Vec<usize> {
        self.double_cosets_in(h, k, self.whole())
    }

    /// Double coset representatives of `H \ A / K` for subgroups `H, K ≤ A`.
    pub fn double_cosets_in(&self, h: Subgroup, k: Subgroup, ambient: Subgroup) -> Vec<usize> {
        let mut seen = 0u64;
        let mut reps = Vec::new();
        for x in ambient.members() {
            if seen >> x & 1 == 1 {
                continue;
            }
            seen |= self.double_coset(h, x, k);
            reps.push(x);
        }
        reps
    }

    /// Least element of each left coset `gH` inside `A`.
    pub fn left_coset_reps_in(&self, h: Subgroup, ambient: Subgroup) -> Vec<usize> {
        self.double_cosets_in(self.trivial(), h, ambient)
    }

    /// Least element of each right coset `Hg` inside `A`.
    pub fn right_coset_reps_in(&self, h: Subgroup, ambient: Subgroup) -> Vec<usize> {
        self.double_cosets_in(h, self.trivial(), ambient)
    }

    /// A generating set chosen greedily in element order.
    pub fn generators_of(&self, h: Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for x in h.members() {
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(span.mask() | 1 << x);
            }
        }
        gens
    }

    pub fn generators(&self) -> Vec<usize> {
        self.generators_of(self.whole())
    }

    /// Exhaustive check of the group axioms (identity, inverses, associativity).
    pub fn check_axioms(&self) -> bool {
        let mut copy = self.clone();
        copy.validate().is_ok()
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub(crate) fn map_mask(mask: u64, f: impl Fn(usize) -> usize) -> u64 {
    bits(mask).fold(0u64, |m, x| m | 1 << f(x))
}

/// The prime `p` if `n = p^k` with `k ≥ 1`.
pub fn prime_power_base(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(27), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn rejects_non_associative_table() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(FiniteGroup::from_table("loop", 5, t), Err(Error::InconsistentTable(_))));
    }

    #[test]
    fn rejects_non_prime_power_order() {
        let n = 6;
        let t = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        assert!(matches!(FiniteGroup::from_table("C6", 2, t), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn normalizer_of_reflection_in_d8() {
        let g = make_group("D8").unwrap();
        // a^i b^j has index i + 4j; the reflection b is element 4, a^2 is element 2.
        let s = g.cyclic_subgroup(4);
        let n = g.normalizer(s);
        assert_eq!(n.order(), 4);
        assert!(n.contains(2) && n.contains(4));
        assert_eq!(g.normalizer(g.whole()), g.whole());
        let center = g.cyclic_subgroup(2);
        assert_eq!(g.normalizer(center), g.whole());
    }

    #[test]
    fn reflection_subgroups_conjugate_in_d8() {
        let g = make_group("D8").unwrap();
        let s = g.cyclic_subgroup(4); // <b>
        let t = g.cyclic_subgroup(6); // <a^2 b>
        let x = g.is_conjugate(s, t).expect("conjugate");
        assert_eq!(g.conjugate(s, x), t);
        // the conjugator is a rotation by a (or a^3)
        assert!(x == 1 || x == 3);
        let u = g.cyclic_subgroup(5); // <ab>, the other class
        assert!(g.is_conjugate(s, u).is_none());
    }

    #[test]
    fn double_cosets_of_reflection_in_d8() {
        let g = make_group("D8").unwrap();
        let s = g.cyclic_subgroup(4);
        let reps = g.double_cosets(s, s);
        let mut sizes: Vec<u32> = reps.iter().map(|&x| g.double_coset(s, x, s).count_ones()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 4]);
        assert_eq!(g.double_cosets(g.whole(), g.whole()), vec![0]);
        assert_eq!(g.double_cosets(g.trivial(), g.trivial()).len(), 8);
    }

    #[test]
    fn cyclicity() {
        let c4 = make_group("C4").unwrap();
        assert!(c4.is_cyclic(c4.whole()));
        let v4 = make_group("C2xC2").unwrap();
        assert!(!v4.is_cyclic(v4.whole()));
    }
}
