//! Rational Dade groups in the basis `Ten_R^W Δ(R)` of non-cyclic subgroup
//! classes, and the direct-sum model `⊕_Q QD(W_P(Q))` of `QD_μ(P)`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactla::{Field, QMatrix, Rationals};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup, SubgroupLattice};
use crate::pgroup::PGroup;

/// Coordinates in the `Ten Δ` basis of `QD(W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DadeVector {
    pub weyl: String,
    pub coords: Vec<BigRational>,
}

/// A vector of `⊕_{Q ∈ s(P)} QD(W_P(Q))`.
#[derive(Clone, Debug, PartialEq)]
pub struct MackeyDadeVector {
    pub group: String,
    pub blocks: Vec<DadeVector>,
}

impl MackeyDadeVector {
    pub fn from_flat(p: &PGroup, flat: &[BigRational]) -> Result<Self> {
        let layout = p.dade_layout();
        if flat.len() != layout.total() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                layout.total(),
                flat.len()
            )));
        }
        let blocks = layout
            .split(flat)
            .into_iter()
            .zip(p.weyl_blocks())
            .map(|(coords, w)| DadeVector { weyl: w.group().name().to_string(), coords })
            .collect();
        Ok(MackeyDadeVector { group: p.name().to_string(), blocks })
    }

    pub fn flatten(&self) -> Vec<BigRational> {
        self.blocks.iter().flat_map(|b| b.coords.iter().cloned()).collect()
    }

    /// `(block, basis position)` of every nonzero coordinate.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, v)| {
                v.coords
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != BigRational::from_integer(0.into()))
                    .map(move |(i, _)| (b, i))
            })
            .collect()
    }
}

/// A group together with the indexing set of its rational Dade group.
#[derive(Clone, Debug)]
pub struct DadeGroup {
    group: FiniteGroup,
    lattice: SubgroupLattice,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl DadeGroup {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        let lattice = SubgroupLattice::with_bound(group, crate::group::HARD_ORDER_LIMIT)?;
        Ok(Self::from_parts(group, &lattice))
    }

    pub fn from_parts(group: &FiniteGroup, lattice: &SubgroupLattice) -> Self {
        let basis = lattice.noncyclic_classes();
        let mut position = vec![None; lattice.class_count()];
        for (i, &c) in basis.iter().enumerate() {
            position[c] = Some(i);
        }
        DadeGroup { group: group.clone(), lattice: lattice.clone(), basis, position }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Representative `R` of the `i`-th basis symbol `Ten_R^W Δ(R)`.
    pub fn basis_subgroup(&self, i: usize) -> Subgroup {
        self.lattice.class_rep(self.basis[i])
    }

    /// Basis position of the class of a non-cyclic subgroup.
    pub fn position_of(&self, h: Subgroup) -> Option<usize> {
        self.lattice.class_of_subgroup(h).and_then(|c| self.position[c])
    }

    /// Basis position of `Δ(W)` itself, when `W` is non-cyclic.
    pub fn top(&self) -> Option<usize> {
        self.position_of(self.group.whole())
    }

    /// `Res_V^W` in the `Ten Δ` bases, with `V` realised as a group of its own.
    pub fn restrict_to(&self, v: Subgroup) -> Result<(QuotientGroup, DadeGroup, QMatrix)> {
        let g = &self.group;
        if !g.is_subgroup(v.mask()) {
            return Err(Error::InvalidArgument(format!("{v} is not a subgroup of {}", g.name())));
        }
        let vq = QuotientGroup::subgroup_as_group(g, v)?;
        let target = DadeGroup::new(&vq.group)?;
        let mut m = QMatrix::zeros(Rationals, target.dim(), self.dim());
        let one = Rationals.one();
        for col in 0..self.dim() {
            let r = self.basis_subgroup(col);
            for x in g.double_cosets(v, r) {
                let xr = g.conjugate(r, x);
                if v.contains_subgroup(xr) {
                    let row = target.position_of(vq.image(xr)).expect("non-cyclic image");
                    m.add_at(row, col, &one);
                }
            }
        }
        Ok((vq, target, m))
    }

    /// Matrix of the basis permutation induced by an isomorphism given on
    /// elements, `map[x]` being the image in `dst` of `x`.
    pub fn transport(&self, dst: &DadeGroup, map: &[usize]) -> Result<QMatrix> {
        let (a, b) = (&self.group, &dst.group);
        let injective = {
            let mut seen = vec![false; b.order()];
            map.iter().all(|&y| y < b.order() && !std::mem::replace(&mut seen[y], true))
        };
        let hom = a.elements().all(|x| a.elements().all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
        if map.len() != a.order() || a.order() != b.order() || !injective || !hom {
            return Err(Error::ClassMismatch(format!("map from {} to {} is not an isomorphism", a.name(), b.name())));
        }
        let mut m = QMatrix::zeros(Rationals, dst.dim(), self.dim());
        for col in 0..self.dim() {
            let image = self.basis_subgroup(col).members().fold(0u64, |s, x| s | 1 << map[x]);
            let row = dst
                .position_of(Subgroup::from_mask(image))
                .ok_or_else(|| Error::ClassMismatch(format!("no non-cyclic class of {} matches", b.name())))?;
            m.set(row, col, Rationals.one());
        }
        Ok(m)
    }
}

/// `nc(W)`, the number of classes of non-cyclic subgroups.
pub fn dade_dim(w: &FiniteGroup) -> Result<usize> {
    Ok(DadeGroup::new(w)?.dim())
}

pub fn dade_restrict(w: &DadeGroup, v: Subgroup) -> Result<QMatrix> {
    Ok(w.restrict_to(v)?.2)
}

pub fn dade_transport(src: &DadeGroup, dst: &DadeGroup, map: &[usize]) -> Result<QMatrix> {
    src.transport(dst, map)
}

/// One Dade group per Weyl block of `P`.
pub fn weyl_dade_groups(p: &PGroup) -> Vec<DadeGroup> {
    p.weyl_blocks().iter().map(|w| DadeGroup::from_parts(w.group(), &w.lattice)).collect()
}

/// `Σ_Q nc(W_P(Q))`, checked against the count of non-cyclic subquotient classes.
pub fn dmu_dim(p: &PGroup) -> Result<usize> {
    let total = p.dade_layout().total();
    let nc = p.noncyclic_subquotient_classes();
    if total != nc {
        return Err(Error::Inconsistent(format!(
            "{}: Weyl blocks give {total} non-cyclic classes, subquotients give {nc}",
            p.name()
        )));
    }
    Ok(total)
}

/// Matrix of `Jef_{R/N} ∘ Res_R` from the model of `QD_μ(P)` to that of
/// `QD_μ(R/N)`, together with the target group.
pub fn jef_res_map(p: &PGroup, r: Subgroup, n: Subgroup) -> Result<(PGroup, QMatrix)> {
    let g = p.group();
    let q1 = QuotientGroup::new(g, r, n)?;
    let target = PGroup::new(q1.group.clone())?;
    let src_layout = p.dade_layout();
    let dst_layout = target.dade_layout();
    let mut m = QMatrix::zeros(Rationals, dst_layout.total(), src_layout.total());
    let src_dade = weyl_dade_groups(p);
    for (tb, tw) in target.weyl_blocks().iter().enumerate() {
        if dst_layout.size(tb) == 0 {
            continue;
        }
        let s = q1.preimage(tw.rep);
        let b = p.lattice().class_of_subgroup(s).expect("subgroup of P");
        let src = &p.weyl_blocks()[b];
        let x = g.is_conjugate(src.rep, s).expect("same class");

        // W_P(Q) → W_P(S) along conjugation by x.
        let ws = crate::group::weyl(g, s);
        let ws_dade = DadeGroup::new(&ws.group)?;
        let along: Vec<usize> = src
            .group()
            .elements()
            .map(|i| ws.project(g.conj(x, src.quotient.section(i))).expect("normalizes S"))
            .collect();
        let t1 = src_dade[b].transport(&ws_dade, &along)?;

        // W_P(S) → N_R(S)/S.
        let nrs = ws.image(g.normalizer_in(s, r));
        let (vq, v_dade, res) = ws_dade.restrict_to(nrs)?;

        // N_R(S)/S ≅ W_{R/N}(S/N) through the canonical quotient map.
        let tw_dade = DadeGroup::from_parts(tw.group(), &tw.lattice);
        let mut back = vec![0; vq.group.order()];
        for j in tw.group().elements() {
            let in_p = q1.section(tw.quotient.section(j));
            let in_v = vq.project(ws.project(in_p).expect("in N_R(S)")).expect("in N_R(S)/S");
            back[in_v] = j;
        }
        let t3 = v_dade.transport(&tw_dade, &back)?;

        let block = t3.mul(&res)?.mul(&t1)?;
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                m.set(dst_layout.offset(tb) + i, src_layout.offset(b) + j, block.get(i, j).clone());
            }
        }
    }
    Ok((target, m))
}

/// Basis of the intersection of the kernels of `Jef_{R/N} ∘ Res_R` over the
/// subquotient classes other than `(P,1)`.
pub fn underline_dmu(p: &PGroup) -> Result<QMatrix> {
    let g = p.group();
    let dim = p.dade_layout().total();
    let mut stacked = QMatrix::zeros(Rationals, 0, dim);
    for c in p.subquotients().classes() {
        let (r, n) = (c.rep.big, c.rep.small);
        if r == g.whole() && n == g.trivial() {
            continue;
        }
        let (_, m) = jef_res_map(p, r, n)?;
        stacked = stacked.vstack(&m)?;
    }
    Ok(stacked.nullspace())
}
