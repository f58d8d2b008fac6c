//! Burnside rings, tables of marks and the linearization map to rational
//! permutation characters.
//!
//! A permutation character is stored by its fixed-point counts on the cyclic
//! subgroup classes; two permutation characters agree exactly when those counts
//! agree, so kernels and ranks of the linearization map are computed faithfully.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Field, QMatrix, Rationals};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};

/// Number of cosets `aH` in `A` fixed by left multiplication by `K`, for `H, K ≤ A`.
pub fn fixed_points(group: &FiniteGroup, ambient: Subgroup, k: Subgroup, h: Subgroup) -> usize {
    let hits = ambient
        .members()
        .filter(|&a| {
            let ai = group.inv(a);
            k.members().all(|x| h.contains(group.conj(ai, x)))
        })
        .count();
    hits / h.order()
}

/// An element of `QB(G)` in the basis `[G/H]` of subgroup classes.
#[derive(Clone, Debug, PartialEq)]
pub struct BurnsideElement {
    pub group: String,
    pub coords: Vec<BigRational>,
}

/// `QB(G)` restricted to the cyclic classes: a rational permutation character.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCharacterVector {
    pub group: String,
    pub values: Vec<BigRational>,
}

/// Table of marks: the row of `[G/H]` lists `|(G/H)^K|` over the classes `[K]`,
/// both in canonical class order, which makes the table lower-triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkTable {
    pub matrix: QMatrix,
}

/// The Burnside ring of one group, with its structure constants.
#[derive(Clone, Debug)]
pub struct BurnsideRing {
    group: FiniteGroup,
    lattice: SubgroupLattice,
    marks: Vec<Vec<usize>>,
    products: Vec<Vec<Vec<(usize, i64)>>>,
}

impl BurnsideRing {
    pub fn new(group: &FiniteGroup, lattice: &SubgroupLattice) -> Self {
        let n = lattice.class_count();
        let whole = group.whole();
        let marks = (0..n)
            .map(|k| (0..n).map(|h| fixed_points(group, whole, lattice.class_rep(k), lattice.class_rep(h))).collect())
            .collect();
        let products = (0..n).map(|a| (0..n).map(|b| basis_product(group, lattice, a, b)).collect()).collect();
        BurnsideRing { group: group.clone(), lattice: lattice.clone(), marks, products }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.class_count()
    }

    pub fn basis(&self, c: usize) -> BurnsideElement {
        let mut coords = vec![BigRational::zero(); self.dim()];
        coords[c] = Rationals.one();
        BurnsideElement { group: self.group.name().to_string(), coords }
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<BurnsideElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a Burnside ring of rank {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(BurnsideElement { group: self.group.name().to_string(), coords })
    }

    pub fn one(&self) -> BurnsideElement {
        self.basis(self.dim() - 1)
    }

    fn check(&self, a: &BurnsideElement) -> Result<()> {
        if a.group != self.group.name() || a.coords.len() != self.dim() {
            return Err(Error::GroupMismatch(a.group.clone(), self.group.name().to_string()));
        }
        Ok(())
    }

    /// `[G/H]·[G/K] = Σ_{x ∈ H\G/K} [G/(H ∩ ˣK)]` extended bilinearly.
    pub fn mult(&self, a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
        self.check(a)?;
        self.check(b)?;
        let q = Rationals;
        let mut out = vec![BigRational::zero(); self.dim()];
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for &(k, m) in &self.products[i][j] {
                    out[k] += &xy * q.from_i64(m);
                }
            }
        }
        self.element(out)
    }

    /// Structure constants of `[G/H_i]·[G/H_j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.products[i][j]
    }

    /// The mark homomorphism: fixed-point counts of every subgroup class.
    pub fn marks(&self, a: &BurnsideElement) -> Result<Vec<BigRational>> {
        self.check(a)?;
        let q = Rationals;
        Ok((0..self.dim())
            .map(|k| {
                a.coords
                    .iter()
                    .enumerate()
                    .fold(BigRational::zero(), |acc, (h, x)| acc + x * q.from_i64(self.marks[k][h] as i64))
            })
            .collect())
    }

    pub fn mark_table(&self) -> MarkTable {
        let rows: Vec<Vec<i64>> =
            (0..self.dim()).map(|h| (0..self.dim()).map(|k| self.marks[k][h] as i64).collect()).collect();
        MarkTable { matrix: QMatrix::from_i64_rows(Rationals, self.dim(), &rows).expect("square") }
    }

    /// Matrix of `QLin_G`: column `[G/H]` is its permutation character, as marks on
    /// the cyclic classes.
    pub fn lin_matrix(&self) -> QMatrix {
        let rows: Vec<Vec<i64>> = self
            .lattice
            .cyclic_classes()
            .into_iter()
            .map(|k| self.marks[k].iter().map(|&m| m as i64).collect())
            .collect();
        QMatrix::from_i64_rows(Rationals, self.dim(), &rows).expect("rectangular")
    }

    /// Canonical basis of `ker QLin_G`, as columns.
    pub fn lin_kernel(&self) -> QMatrix {
        self.lin_matrix().nullspace()
    }

    pub fn permutation_character(&self, a: &BurnsideElement) -> Result<RationalCharacterVector> {
        self.check(a)?;
        let values = self.lin_matrix().apply(&a.coords)?;
        Ok(RationalCharacterVector { group: a.group.clone(), values })
    }
}

fn basis_product(group: &FiniteGroup, lattice: &SubgroupLattice, a: usize, b: usize) -> Vec<(usize, i64)> {
    let h = lattice.class_rep(a);
    let k = lattice.class_rep(b);
    let mut counts = vec![0i64; lattice.class_count()];
    for x in group.double_cosets(h, k) {
        let meet = h.intersect(group.conjugate(k, x));
        counts[lattice.class_of(lattice.idx(meet))] += 1;
    }
    counts.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
}

pub fn mark_table(group: &FiniteGroup, lattice: &SubgroupLattice) -> MarkTable {
    BurnsideRing::new(group, lattice).mark_table()
}

pub fn lin_matrix(group: &FiniteGroup, lattice: &SubgroupLattice) -> QMatrix {
    BurnsideRing::new(group, lattice).lin_matrix()
}

pub fn lin_kernel(group: &FiniteGroup, lattice: &SubgroupLattice) -> QMatrix {
    BurnsideRing::new(group, lattice).lin_kernel()
}
