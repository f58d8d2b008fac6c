use super::{bits, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A section `top / kernel` of a parent group, realised as a group of its own.
///
/// Cosets are numbered in order of their least parent element, so the coset of
/// the identity is `0`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub top: Subgroup,
    pub kernel: Subgroup,
    project: Vec<Option<usize>>,
    section: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(parent: &FiniteGroup, top: Subgroup, kernel: Subgroup) -> Result<Self> {
        if !parent.is_normal_in(kernel, top) {
            return Err(Error::InvalidArgument(format!(
                "{kernel} is not a normal subgroup of {top} in {}",
                parent.name()
            )));
        }
        let mut project = vec![None; parent.order()];
        let mut section = Vec::new();
        for x in top.members() {
            if project[x].is_some() {
                continue;
            }
            let idx = section.len();
            for k in kernel.members() {
                project[parent.mul(x, k)] = Some(idx);
            }
            section.push(x);
        }
        let n = section.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = parent.mul(section[i], section[j]);
                table[i * n + j] = project[prod].expect("closed under multiplication");
            }
        }
        let name = format!("{}[{}/{}]", parent.name(), top.order(), kernel.order());
        let group = FiniteGroup::from_table(name, parent.prime(), table)?;
        Ok(QuotientGroup { group, top, kernel, project, section })
    }

    /// A subgroup regarded as a group in its own right.
    pub fn subgroup_as_group(parent: &FiniteGroup, h: Subgroup) -> Result<Self> {
        Self::new(parent, h, parent.trivial())
    }

    /// Coset index of a parent element of `top`.
    pub fn project(&self, x: usize) -> Option<usize> {
        self.project[x]
    }

    /// Least parent element of coset `i`.
    pub fn section(&self, i: usize) -> usize {
        self.section[i]
    }

    /// Image of a subgroup of `top`.
    pub fn image(&self, h: Subgroup) -> Subgroup {
        let mask = bits(h.mask()).filter_map(|x| self.project[x]).fold(0u64, |m, i| m | 1 << i);
        Subgroup::from_mask(mask)
    }

    /// Full preimage in the parent (contains the kernel).
    pub fn preimage(&self, h: Subgroup) -> Subgroup {
        let mask = self
            .project
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some_and(|i| h.contains(i)))
            .fold(0u64, |m, (x, _)| m | 1 << x);
        Subgroup::from_mask(mask)
    }
}

/// The Weyl group `N_G(Q)/Q`.
pub fn weyl(group: &FiniteGroup, q: Subgroup) -> QuotientGroup {
    QuotientGroup::new(group, group.normalizer(q), q).expect("Q is normal in its normalizer")
}
