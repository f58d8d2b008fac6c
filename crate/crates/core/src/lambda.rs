//! The ring of subquotients `Λ(P)`, the isomorphism `α_P` onto the sum of the
//! Burnside rings of the Weyl groups, and the Mackey linearization map.

use num_rational::BigRational;
use num_traits::Zero;

use crate::burnside::{fixed_points, BurnsideElement, RationalCharacterVector};
use crate::error::{Error, Result};
use crate::exactla::{Field, QMatrix, Rationals};
use crate::pgroup::PGroup;

/// An element of `QΛ(P)` in the basis `[Q,N]_P` of subquotient classes.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaElement {
    pub group: String,
    pub coords: Vec<BigRational>,
}

/// A vector of `⊕_R QR(W_P(R))`, one character block per class `R ∈ s(P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrothendieckVector {
    pub group: String,
    pub blocks: Vec<RationalCharacterVector>,
}

/// A vector of `⊕_R QB(W_P(R))`.
#[derive(Clone, Debug, PartialEq)]
pub struct BurnsideSumVector {
    pub group: String,
    pub blocks: Vec<BurnsideElement>,
}

impl GrothendieckVector {
    pub fn from_flat(p: &PGroup, flat: &[BigRational]) -> Result<Self> {
        let layout = p.character_layout();
        check_len(flat.len(), layout.total())?;
        let blocks = layout
            .split(flat)
            .into_iter()
            .zip(p.weyl_blocks())
            .map(|(values, w)| RationalCharacterVector { group: w.group().name().to_string(), values })
            .collect();
        Ok(GrothendieckVector { group: p.name().to_string(), blocks })
    }

    pub fn flatten(&self) -> Vec<BigRational> {
        self.blocks.iter().flat_map(|b| b.values.iter().cloned()).collect()
    }
}

impl BurnsideSumVector {
    pub fn from_flat(p: &PGroup, flat: &[BigRational]) -> Result<Self> {
        let layout = p.burnside_layout();
        check_len(flat.len(), layout.total())?;
        let blocks = layout
            .split(flat)
            .into_iter()
            .zip(p.weyl_blocks())
            .map(|(coords, w)| BurnsideElement { group: w.group().name().to_string(), coords })
            .collect();
        Ok(BurnsideSumVector { group: p.name().to_string(), blocks })
    }

    pub fn flatten(&self) -> Vec<BigRational> {
        self.blocks.iter().flat_map(|b| b.coords.iter().cloned()).collect()
    }
}

fn check_len(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!("expected {want} coordinates, got {got}")));
    }
    Ok(())
}

pub fn lambda_dim(p: &PGroup) -> usize {
    p.subquotients().len()
}

pub fn lambda_element(p: &PGroup, coords: Vec<BigRational>) -> Result<LambdaElement> {
    check_len(coords.len(), lambda_dim(p))?;
    Ok(LambdaElement { group: p.name().to_string(), coords })
}

pub fn lambda_basis(p: &PGroup, c: usize) -> LambdaElement {
    let mut coords = vec![BigRational::zero(); lambda_dim(p)];
    coords[c] = Rationals.one();
    LambdaElement { group: p.name().to_string(), coords }
}

/// Class of `[P,1]_P`.
pub fn unit_class(p: &PGroup) -> usize {
    let g = p.group();
    p.subquotients().class_of(g.whole(), g.trivial()).expect("(P,1) is a subquotient")
}

pub fn lambda_one(p: &PGroup) -> LambdaElement {
    lambda_basis(p, unit_class(p))
}

/// `[R,N]_P·[S,M]_P = Σ_{x ∈ R\P/S, ˣM ≤ R, N ≤ ˣS} [R ∩ ˣS, ˣM·N]_P`.
pub fn lambda_basis_product(p: &PGroup, i: usize, j: usize) -> Vec<(usize, i64)> {
    let g = p.group();
    let sq = p.subquotients();
    let (a, b) = (sq.rep(i), sq.rep(j));
    let mut counts = vec![0i64; sq.len()];
    for x in g.double_cosets(a.big, b.big) {
        let xs = g.conjugate(b.big, x);
        let xm = g.conjugate(b.small, x);
        if a.big.contains_subgroup(xm) && xs.contains_subgroup(a.small) {
            let big = a.big.intersect(xs);
            let small = g.join(xm, a.small);
            counts[sq.class_of(big, small).expect("normal pair")] += 1;
        }
    }
    counts.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
}

fn check_element(p: &PGroup, a: &LambdaElement) -> Result<()> {
    if a.group != p.name() {
        return Err(Error::GroupMismatch(a.group.clone(), p.name().to_string()));
    }
    check_len(a.coords.len(), lambda_dim(p))
}

pub fn lambda_mult(p: &PGroup, a: &LambdaElement, b: &LambdaElement) -> Result<LambdaElement> {
    check_element(p, a)?;
    check_element(p, b)?;
    let q = Rationals;
    let mut out = vec![BigRational::zero(); lambda_dim(p)];
    for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let xy = x * y;
            for (k, m) in lambda_basis_product(p, i, j) {
                out[k] += &xy * q.from_i64(m);
            }
        }
    }
    lambda_element(p, out)
}

/// `QB(P) → QΛ(P)`, `[P/R] ↦ [R,1]_P`.
pub fn burnside_embed(p: &PGroup, x: &BurnsideElement) -> Result<LambdaElement> {
    let l = p.lattice();
    if x.group != p.name() || x.coords.len() != l.class_count() {
        return Err(Error::GroupMismatch(x.group.clone(), p.name().to_string()));
    }
    let mut coords = vec![BigRational::zero(); lambda_dim(p)];
    let trivial = p.group().trivial();
    for (c, v) in x.coords.iter().enumerate() {
        let k = p.subquotients().class_of(l.class_rep(c), trivial).expect("(R,1) is a subquotient");
        coords[k] += v;
    }
    lambda_element(p, coords)
}

/// Matrix of `α_P : QΛ(P) → ⊕_R QB(W_P(R))`; column `[Q,N]` has, in block `R`,
/// `Σ_{g ∈ Q\P/N_P(R), N ≤ ᵍR ≤ Q} [N_P(R)/N_{g⁻¹Q}(R)]`.
pub fn alpha(p: &PGroup) -> QMatrix {
    let g = p.group();
    let layout = p.burnside_layout();
    let sq = p.subquotients();
    let mut m = QMatrix::zeros(Rationals, layout.total(), sq.len());
    let one = Rationals.one();
    for col in 0..sq.len() {
        let (q, n) = (sq.rep(col).big, sq.rep(col).small);
        for (b, w) in p.weyl_blocks().iter().enumerate() {
            if w.rep.order() > q.order() {
                continue;
            }
            for x in g.double_cosets(q, w.normalizer) {
                let xr = g.conjugate(w.rep, x);
                if !(q.contains_subgroup(xr) && xr.contains_subgroup(n)) {
                    continue;
                }
                let stab = g.normalizer_in(w.rep, g.conjugate(q, g.inv(x)));
                m.add_at(layout.offset(b) + w.class_of_overgroup(stab), col, &one);
            }
        }
    }
    m
}

/// The mutually inverse maps `f : SQ_P(P) → SS_P(P)` and `f̃` back, with
/// `SS_P(P)` indexed by (block, Weyl-group class).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqSsBijection {
    pub forward: Vec<(usize, usize)>,
    pub backward: Vec<Vec<usize>>,
}

impl SqSsBijection {
    pub fn f(&self, c: usize) -> (usize, usize) {
        self.forward[c]
    }

    pub fn f_tilde(&self, block: usize, class: usize) -> usize {
        self.backward[block][class]
    }

    /// Whether `f̃∘f` and `f∘f̃` are both identities.
    pub fn is_bijection(&self) -> bool {
        let left = self.forward.iter().enumerate().all(|(c, &(b, t))| self.backward[b][t] == c);
        let right = self
            .backward
            .iter()
            .enumerate()
            .all(|(b, row)| row.iter().enumerate().all(|(t, &c)| self.forward[c] == (b, t)));
        left && right
    }
}

/// `f([Q,N]) = [Q/N]` in the block of the class of `N` (after conjugating `N`
/// onto its representative) and `f̃([T/R]) = [T,R]_P`.
pub fn sq_ss_bijection(p: &PGroup) -> SqSsBijection {
    let g = p.group();
    let l = p.lattice();
    let sq = p.subquotients();
    let forward = (0..sq.len())
        .map(|c| {
            let rep = sq.rep(c);
            let b = l.class_of(l.idx(rep.small));
            let w = &p.weyl_blocks()[b];
            let x = g.is_conjugate(rep.small, w.rep).expect("same class");
            (b, w.class_of_overgroup(g.conjugate(rep.big, x)))
        })
        .collect();
    let backward = p
        .weyl_blocks()
        .iter()
        .map(|w| {
            (0..w.lattice.class_count())
                .map(|t| sq.class_of(w.class_preimage(t), w.rep).expect("R normal in T"))
                .collect()
        })
        .collect();
    SqSsBijection { forward, backward }
}

/// `⊕_R QLin_{W_P(R)} ∘ α_P`.
pub fn lin_mu_via_alpha(p: &PGroup) -> QMatrix {
    let blocks: Vec<QMatrix> = p.weyl_blocks().iter().map(|w| w.burnside.lin_matrix()).collect();
    let mut lin = QMatrix::zeros(Rationals, 0, 0);
    for b in &blocks {
        lin = lin.direct_sum(b);
    }
    lin.mul(&alpha(p)).expect("block sizes agree")
}

/// `Lin_P^μ([R,N]_P)` evaluated directly: in block `Q`, one induced trivial
/// character per `R`-conjugacy class of subgroups `K = ᵍQ` with `N ≤ K ≤ R`.
pub fn lin_mu_direct(p: &PGroup) -> QMatrix {
    let g = p.group();
    let l = p.lattice();
    let layout = p.character_layout();
    let sq = p.subquotients();
    let mut m = QMatrix::zeros(Rationals, layout.total(), sq.len());
    let q = Rationals;
    for col in 0..sq.len() {
        let (r, n) = (sq.rep(col).big, sq.rep(col).small);
        for (b, w) in p.weyl_blocks().iter().enumerate() {
            let mut seen = vec![false; l.len()];
            let candidates = l.classes()[b].members.iter().map(|&i| l.subgroup(i));
            for k in candidates.filter(|&k| r.contains_subgroup(k) && k.contains_subgroup(n)) {
                if seen[l.idx(k)] {
                    continue;
                }
                for y in r.members() {
                    seen[l.idx(g.conjugate(k, y))] = true;
                }
                let x = g.is_conjugate(w.rep, k).expect("same class");
                let stab = g.normalizer_in(w.rep, g.conjugate(r, g.inv(x)));
                for (row, c) in w.lattice.cyclic_classes().into_iter().enumerate() {
                    let fixed = fixed_points(g, w.normalizer, w.class_preimage(c), stab);
                    m.add_at(layout.offset(b) + row, col, &q.from_i64(fixed as i64));
                }
            }
        }
    }
    m
}

/// Canonical basis of `ker QLin_P^μ`, as columns.
pub fn lin_mu_kernel(p: &PGroup) -> QMatrix {
    lin_mu_direct(p).nullspace()
}
