use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, QuotientSpace};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup, SubgroupLattice};

use super::functor::MackeyFunctorData;

/// A family `V(H)` over all subgroups with conjugation maps `V(H) → V(ˣH)` for
/// every element `x`; the bar construction produces one.
#[derive(Clone, Debug)]
pub struct ConjugationModuleData<F: Field> {
    group: FiniteGroup,
    lattice: SubgroupLattice,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Vec<Matrix<F>>>,
}

/// One evaluation `V(H)` as a module for `N_G(H)`, acting through `N_G(H)/H`.
#[derive(Clone, Debug)]
pub struct BarModule<F: Field> {
    pub subgroup: Subgroup,
    pub normalizer: Subgroup,
    pub dim: usize,
    actions: Vec<(usize, Matrix<F>)>,
}

impl<F: Field> BarModule<F> {
    /// Action of an element of the normalizer.
    pub fn action(&self, x: usize) -> Option<&Matrix<F>> {
        self.actions.iter().find(|(y, _)| *y == x).map(|(_, m)| m)
    }

    pub fn trace(&self, x: usize) -> Option<F::Elem> {
        self.action(x).map(|m| m.trace())
    }

    pub fn actions(&self) -> &[(usize, Matrix<F>)] {
        &self.actions
    }
}

impl<F: Field> ConjugationModuleData<F> {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn dim(&self, h: usize) -> usize {
        self.dims[h]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `V(H) → V(ˣH)`.
    pub fn map(&self, x: usize, h: usize) -> &Matrix<F> {
        &self.maps[x][h]
    }

    /// The module `V(H)` for `N_G(H)`.
    pub fn module(&self, h: Subgroup) -> BarModule<F> {
        let i = self.lattice.idx(h);
        let normalizer = self.lattice.normalizer(i);
        let actions = normalizer.members().map(|x| (x, self.maps[x][i].clone())).collect();
        BarModule { subgroup: h, normalizer, dim: self.dims[i], actions }
    }

    /// `V*` with `x` acting as the transpose of the action of `x⁻¹`.
    pub fn dual(&self) -> Self {
        let g = &self.group;
        let l = &self.lattice;
        let maps = g
            .elements()
            .map(|x| {
                (0..l.len())
                    .map(|h| {
                        let xh = l.idx(g.conjugate(l.subgroup(h), x));
                        self.maps[g.inv(x)][xh].transpose()
                    })
                    .collect()
            })
            .collect();
        ConjugationModuleData { maps, ..self.clone() }
    }

    /// Block map `c^x` on `⊕_{K ≤ Q} V(K)`, the components being `comps`.
    fn block_conj(&self, x: usize, src: &[usize], dst: &[usize]) -> Matrix<F> {
        let g = &self.group;
        let l = &self.lattice;
        let offsets = |comps: &[usize]| {
            comps
                .iter()
                .scan(0, |acc, &k| {
                    let o = *acc;
                    *acc += self.dims[k];
                    Some(o)
                })
                .collect::<Vec<_>>()
        };
        let (so, dof) = (offsets(src), offsets(dst));
        let rows: usize = dst.iter().map(|&k| self.dims[k]).sum();
        let cols: usize = src.iter().map(|&k| self.dims[k]).sum();
        let mut m = Matrix::zeros(self.field.clone(), rows, cols);
        for (si, &k) in src.iter().enumerate() {
            let xk = l.idx(g.conjugate(l.subgroup(k), x));
            if let Some(di) = dst.iter().position(|&d| d == xk) {
                let block = &self.maps[x][k];
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(dof[di] + i, so[si] + j, block.get(i, j).clone());
                    }
                }
            }
        }
        m
    }

    /// Columns spanning `{(c^x − 1)v}` for `x` generating `Q`, on `⊕_{K ≤ Q} V(K)`.
    fn augmentation(&self, q: usize) -> Matrix<F> {
        let comps = self.lattice.subgroups_of(q);
        let n: usize = comps.iter().map(|&k| self.dims[k]).sum();
        let id = Matrix::identity(self.field.clone(), n);
        let mut span = Matrix::zeros(self.field.clone(), n, 0);
        for x in self.group.generators_of(self.lattice.subgroup(q)) {
            let d = self.block_conj(x, &comps, &comps).sub(&id).expect("square");
            span = span.hstack(&d).expect("same rows");
        }
        span
    }

    /// `dim (⊕_{K ≤ Q} V(K))^Q` for every `Q`.
    pub fn fixed_point_dims(&self) -> Vec<usize> {
        (0..self.lattice.len())
            .map(|q| {
                let aug = self.augmentation(q);
                aug.rows() - aug.rank()
            })
            .collect()
    }

    /// The fixed-quotient functor `Q ↦ (⊕_{K ≤ Q} V(K))_Q`: transfers are induced by
    /// inclusion of components, restrictions by relative traces followed by
    /// projection, conjugations componentwise.
    pub fn fixed_quotient_functor(&self) -> Result<MackeyFunctorData<F>> {
        let g = &self.group;
        let l = &self.lattice;
        let comps: Vec<Vec<usize>> = (0..l.len()).map(|q| l.subgroups_of(q)).collect();
        let spaces: Vec<QuotientSpace<F>> = (0..l.len()).map(|q| QuotientSpace::new(&self.augmentation(q))).collect();
        let dims = spaces.iter().map(|s| s.dim()).collect();
        MackeyFunctorData::from_generators(
            g,
            l,
            self.field.clone(),
            dims,
            |q, p| {
                let big = l.subgroup(q);
                let small = l.subgroup(p);
                let mut m = self.block_conj(0, &comps[q], &comps[p]);
                for x in g.right_coset_reps_in(small, big).into_iter().skip(1) {
                    m = m.add(&self.block_conj(x, &comps[q], &comps[p]))?;
                }
                spaces[q].induced(&m, &spaces[p])
            },
            |q, p| spaces[p].induced(&self.block_conj(0, &comps[p], &comps[q]), &spaces[q]),
            |x, q| {
                let xq = l.idx(g.conjugate(l.subgroup(q), x));
                spaces[q].induced(&self.block_conj(x, &comps[q], &comps[xq]), &spaces[xq])
            },
        )
    }
}

/// `M̄(H) = M(H) / Σ_{L < H} Im t^H_L`, using maximal `L` only.
fn bar_space<F: Field>(m: &MackeyFunctorData<F>, h: usize) -> Result<QuotientSpace<F>> {
    let mut span = Matrix::zeros(m.field().clone(), m.dim(h), 0);
    for &l in m.lattice().maximal_subgroups(h) {
        span = span.hstack(m.t(h, l))?;
    }
    Ok(QuotientSpace::new(&span))
}

/// The bar construction at every subgroup, with conjugations induced by `c`.
pub fn bar_all<F: Field>(m: &MackeyFunctorData<F>) -> Result<ConjugationModuleData<F>> {
    let g = m.group();
    let l = m.lattice();
    let spaces: Vec<QuotientSpace<F>> = (0..l.len()).map(|h| bar_space(m, h)).collect::<Result<_>>()?;
    let maps = g
        .elements()
        .map(|x| {
            (0..l.len())
                .map(|h| {
                    let xh = l.idx(g.conjugate(l.subgroup(h), x));
                    spaces[h].induced(m.c(x, h), &spaces[xh])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(ConjugationModuleData {
        group: g.clone(),
        lattice: l.clone(),
        field: m.field().clone(),
        dims: spaces.iter().map(|s| s.dim()).collect(),
        maps,
    })
}

/// `M̄(H)` as a module for `N_G(H)/H`.
pub fn bar<F: Field>(m: &MackeyFunctorData<F>, h: Subgroup) -> Result<BarModule<F>> {
    let l = m.lattice();
    let i = l.index_of(h).ok_or_else(|| Error::InvalidArgument(format!("{h} is not a subgroup")))?;
    let space = bar_space(m, i)?;
    let normalizer = l.normalizer(i);
    let actions = normalizer.members().map(|x| Ok((x, space.induced(m.c(x, i), &space)?))).collect::<Result<_>>()?;
    Ok(BarModule { subgroup: h, normalizer, dim: space.dim(), actions })
}

/// The twin-dual `M°`, `Q ↦ (⊕_{K ≤ Q} M̄(K)*)_Q`.
pub fn twin_dual<F: Field>(m: &MackeyFunctorData<F>) -> Result<MackeyFunctorData<F>> {
    bar_all(m)?.dual().fixed_quotient_functor()
}

/// Evaluation dimensions of the twin functor `TM`, `Q ↦ (⊕_{K ≤ Q} M̄(K))^Q`.
pub fn twin_functor_dims<F: Field>(m: &MackeyFunctorData<F>) -> Result<Vec<usize>> {
    Ok(bar_all(m)?.fixed_point_dims())
}

/// Outcome of comparing two sides of a module isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarComparison {
    pub part: u8,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// `(element, lhs trace, rhs trace)` over the acting group, rendered exactly.
    pub traces: Vec<(usize, String, String)>,
}

impl BarComparison {
    pub fn agrees(&self) -> bool {
        self.lhs_dim == self.rhs_dim && self.traces.iter().all(|(_, a, b)| a == b)
    }
}

/// `bar(Res_K M)(H)` against `M̄(H)` restricted to `N_K(H)`, for `H ≤ K`.
pub fn compare_bar_restriction<F: Field>(m: &MackeyFunctorData<F>, k: Subgroup, h: Subgroup) -> Result<BarComparison> {
    let g = m.group();
    if !k.contains_subgroup(h) {
        return Err(Error::InvalidArgument(format!("{h} is not contained in {k}")));
    }
    let vq = QuotientGroup::subgroup_as_group(g, k)?;
    let res = m.restrict(k)?;
    let lhs = bar(&res, vq.image(h))?;
    let rhs = bar(m, h)?;
    let f = m.field();
    let traces = g
        .normalizer_in(h, k)
        .members()
        .map(|x| {
            let a = lhs.trace(vq.project(x).expect("in K")).expect("normalizes");
            let b = rhs.trace(x).expect("normalizes");
            (x, f.render(&a), f.render(&b))
        })
        .collect();
    Ok(BarComparison { part: 1, lhs_dim: lhs.dim, rhs_dim: rhs.dim, traces })
}

/// `bar(Jef_{G/N} M)(H/N)` against `M̄(H)`, for `N ⊴ G` and `N ≤ H`.
pub fn compare_bar_jef<F: Field>(m: &MackeyFunctorData<F>, n: Subgroup, h: Subgroup) -> Result<BarComparison> {
    let g = m.group();
    if !h.contains_subgroup(n) {
        return Err(Error::InvalidArgument(format!("{n} is not contained in {h}")));
    }
    let q = QuotientGroup::new(g, g.whole(), n)?;
    let jef = m.jef(n)?;
    let lhs = bar(&jef, q.image(h))?;
    let rhs = bar(m, h)?;
    let f = m.field();
    let traces = g
        .normalizer(h)
        .members()
        .map(|x| {
            let a = lhs.trace(q.project(x).expect("in G")).expect("normalizes");
            let b = rhs.trace(x).expect("normalizes");
            (x, f.render(&a), f.render(&b))
        })
        .collect();
    Ok(BarComparison { part: 2, lhs_dim: lhs.dim, rhs_dim: rhs.dim, traces })
}

/// `(dim M̄(H), dim Jef_{N(H)/H} Res_{N(H)} M at H/H)`.
pub fn bar_via_jef_res<F: Field>(m: &MackeyFunctorData<F>, h: Subgroup) -> Result<(usize, usize)> {
    let g = m.group();
    let nh = g.normalizer(h);
    let vq = QuotientGroup::subgroup_as_group(g, nh)?;
    let jef = m.restrict(nh)?.jef(vq.image(h))?;
    Ok((bar(m, h)?.dim, jef.dim_of(jef.group().trivial())))
}
