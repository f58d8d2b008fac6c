use crate::burnside::BurnsideRing;
use crate::error::Result;
use crate::group::{
    make_group, weyl, FiniteGroup, QuotientGroup, Subgroup, SubgroupLattice, SubquotientClasses, DEFAULT_ORDER_BOUND,
};

/// Data attached to one class representative `R ∈ s(P)`: its Weyl group
/// `W_P(R) = N_P(R)/R` with lattice and Burnside ring.
#[derive(Clone, Debug)]
pub struct WeylBlock {
    pub class: usize,
    pub rep: Subgroup,
    pub normalizer: Subgroup,
    pub quotient: QuotientGroup,
    pub lattice: SubgroupLattice,
    pub burnside: BurnsideRing,
}

impl WeylBlock {
    pub fn group(&self) -> &FiniteGroup {
        &self.quotient.group
    }

    /// Class in `W_P(R)` of `T/R` for `R ≤ T ≤ N_P(R)`.
    pub fn class_of_overgroup(&self, t: Subgroup) -> usize {
        let image = self.quotient.image(t);
        self.lattice.class_of(self.lattice.idx(image))
    }

    /// Preimage in `P` of the representative of a class of `W_P(R)`.
    pub fn class_preimage(&self, c: usize) -> Subgroup {
        self.quotient.preimage(self.lattice.class_rep(c))
    }
}

/// Offsets of consecutive blocks inside a flat coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockLayout {
    pub fn new(sizes: Vec<usize>) -> Self {
        let offsets = sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        BlockLayout { sizes, offsets }
    }

    pub fn blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, b: usize) -> usize {
        self.sizes[b]
    }

    pub fn offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `(block, position)` of a flat index.
    pub fn locate(&self, flat: usize) -> (usize, usize) {
        let b = (0..self.blocks()).find(|&b| flat < self.offsets[b] + self.sizes[b]).expect("flat index in range");
        (b, flat - self.offsets[b])
    }

    pub fn split<T: Clone>(&self, flat: &[T]) -> Vec<Vec<T>> {
        (0..self.blocks()).map(|b| flat[self.offsets[b]..self.offsets[b] + self.sizes[b]].to_vec()).collect()
    }
}

/// A p-group with everything the subquotient and Dade computations need.
#[derive(Clone, Debug)]
pub struct PGroup {
    group: FiniteGroup,
    lattice: SubgroupLattice,
    subquotients: SubquotientClasses,
    weyl: Vec<WeylBlock>,
}

impl PGroup {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        Self::with_bound(group, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(group: FiniteGroup, bound: usize) -> Result<Self> {
        let lattice = SubgroupLattice::with_bound(&group, bound)?;
        let subquotients = SubquotientClasses::new(&group, &lattice);
        let weyl = (0..lattice.class_count())
            .map(|c| {
                let rep = lattice.class_rep(c);
                let quotient = weyl(&group, rep);
                let w_lattice = SubgroupLattice::with_bound(&quotient.group, bound)?;
                let burnside = BurnsideRing::new(&quotient.group, &w_lattice);
                Ok(WeylBlock { class: c, rep, normalizer: quotient.top, quotient, lattice: w_lattice, burnside })
            })
            .collect::<Result<_>>()?;
        Ok(PGroup { group, lattice, subquotients, weyl })
    }

    pub fn from_spec(spec: &str) -> Result<Self> {
        Self::new(make_group(spec)?)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn subquotients(&self) -> &SubquotientClasses {
        &self.subquotients
    }

    /// One block per subgroup class, in canonical class order.
    pub fn weyl_blocks(&self) -> &[WeylBlock] {
        &self.weyl
    }

    pub fn is_cyclic(&self) -> bool {
        self.group.is_cyclic(self.group.whole())
    }

    /// Layout of `⊕_R QB(W_P(R))`.
    pub fn burnside_layout(&self) -> BlockLayout {
        BlockLayout::new(self.weyl.iter().map(|w| w.lattice.class_count()).collect())
    }

    /// Layout of `⊕_R QR(W_P(R))` in the cyclic-mark model.
    pub fn character_layout(&self) -> BlockLayout {
        BlockLayout::new(self.weyl.iter().map(|w| w.lattice.cyclic_classes().len()).collect())
    }

    /// Layout of `⊕_R QD(W_P(R))`.
    pub fn dade_layout(&self) -> BlockLayout {
        BlockLayout::new(self.weyl.iter().map(|w| w.lattice.noncyclic_classes().len()).collect())
    }

    /// `|SS_P(P)| = Σ_R #classes of W_P(R)`.
    pub fn ss_count(&self) -> usize {
        self.burnside_layout().total()
    }

    pub fn cyclic_subquotient_classes(&self) -> usize {
        (0..self.subquotients.len()).filter(|&c| self.is_subquotient_cyclic(c)).count()
    }

    pub fn noncyclic_subquotient_classes(&self) -> usize {
        self.subquotients.len() - self.cyclic_subquotient_classes()
    }

    /// Whether `Q/N` is cyclic for the representative of class `c`: some element
    /// of `Q` generates `Q` together with `N`.
    pub fn is_subquotient_cyclic(&self, c: usize) -> bool {
        let sq = self.subquotients.rep(c);
        sq.big.members().any(|x| self.group.generate(sq.small.mask() | 1 << x) == sq.big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_locate() {
        let l = BlockLayout::new(vec![2, 0, 3]);
        assert_eq!(l.total(), 5);
        assert_eq!(l.locate(0), (0, 0));
        assert_eq!(l.locate(1), (0, 1));
        assert_eq!(l.locate(2), (2, 0));
        assert_eq!(l.locate(4), (2, 2));
        assert_eq!(l.split(&[1, 2, 3, 4, 5]), vec![vec![1, 2], vec![], vec![3, 4, 5]]);
    }

    #[test]
    fn sq_count_matches_ss_count() {
        for spec in ["C4", "C2xC2", "D8", "Q8", "C3xC3"] {
            let p = PGroup::from_spec(spec).unwrap();
            assert_eq!(p.subquotients().len(), p.ss_count(), "{spec}");
        }
    }

    #[test]
    fn noncyclic_subquotients() {
        for (spec, nc) in [("C4", 0), ("C2xC2", 1), ("D8", 4), ("Q8", 2)] {
            let p = PGroup::from_spec(spec).unwrap();
            assert_eq!(p.noncyclic_subquotient_classes(), nc, "{spec}");
        }
    }
}
