use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, QuotientSpace};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup, SubgroupLattice, HARD_ORDER_LIMIT};

/// A Mackey functor given by its evaluations, the restrictions and transfers
/// along maximal pairs `K ⋖ H`, and the conjugations by a generating set of the
/// group. Every other structure map is derived by composition at construction.
#[derive(Clone, Debug)]
pub struct MackeyFunctorData<F: Field> {
    group: FiniteGroup,
    lattice: SubgroupLattice,
    field: F,
    dims: Vec<usize>,
    generators: Vec<usize>,
    restriction: HashMap<(usize, usize), Matrix<F>>,
    transfer: HashMap<(usize, usize), Matrix<F>>,
    conjugation: Vec<Vec<Matrix<F>>>,
}

/// Number of identities checked per relation family; relations (5) and (6)
/// hold by construction for a functor and are not counted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorValidation {
    pub checked: [usize; 4],
}

fn check_shape<F: Field>(m: &Matrix<F>, rows: usize, cols: usize, what: &str) -> Result<()> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(Error::DimensionMismatch(format!("{what}: expected {rows}x{cols}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

impl<F: Field> MackeyFunctorData<F> {
    /// `r_max(h, k)` is `r^H_K : M(H) → M(K)` and `t_max(h, k)` is `t^H_K`, both
    /// for lattice indices with `K` maximal in `H`; `c_gen(g, h)` is
    /// `c^g_H : M(H) → M(ᵍH)` for each `g` in the group's generating set.
    pub fn from_generators(
        group: &FiniteGroup,
        lattice: &SubgroupLattice,
        field: F,
        dims: Vec<usize>,
        mut r_max: impl FnMut(usize, usize) -> Result<Matrix<F>>,
        mut t_max: impl FnMut(usize, usize) -> Result<Matrix<F>>,
        mut c_gen: impl FnMut(usize, usize) -> Result<Matrix<F>>,
    ) -> Result<Self> {
        let n = lattice.len();
        if dims.len() != n {
            return Err(Error::DimensionMismatch(format!("{} evaluations for {n} subgroups", dims.len())));
        }
        let mut restriction = HashMap::new();
        let mut transfer = HashMap::new();
        for h in 0..n {
            restriction.insert((h, h), Matrix::identity(field.clone(), dims[h]));
            transfer.insert((h, h), Matrix::identity(field.clone(), dims[h]));
            for &m in lattice.maximal_subgroups(h) {
                let r = r_max(h, m)?;
                check_shape(&r, dims[m], dims[h], "restriction")?;
                let t = t_max(h, m)?;
                check_shape(&t, dims[h], dims[m], "transfer")?;
                restriction.insert((h, m), r);
                transfer.insert((h, m), t);
            }
            // Lattice order is by size, so every K < M < H is already done.
            for k in lattice.subgroups_of(h) {
                if restriction.contains_key(&(h, k)) {
                    continue;
                }
                let m = *lattice
                    .maximal_subgroups(h)
                    .iter()
                    .find(|&&m| lattice.includes(m, k))
                    .expect("a proper subgroup lies in a maximal one");
                let r = restriction[&(m, k)].mul(&restriction[&(h, m)])?;
                let t = transfer[&(h, m)].mul(&transfer[&(m, k)])?;
                restriction.insert((h, k), r);
                transfer.insert((h, k), t);
            }
        }

        let generators = group.generators();
        let mut gen_maps: Vec<Vec<Matrix<F>>> = Vec::new();
        for &g in &generators {
            let mut per = Vec::with_capacity(n);
            for h in 0..n {
                let c = c_gen(g, h)?;
                let gh = lattice.idx(group.conjugate(lattice.subgroup(h), g));
                check_shape(&c, dims[gh], dims[h], "conjugation")?;
                per.push(c);
            }
            gen_maps.push(per);
        }
        let mut conjugation: Vec<Option<Vec<Matrix<F>>>> = vec![None; group.order()];
        conjugation[0] = Some((0..n).map(|h| Matrix::identity(field.clone(), dims[h])).collect());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in generators.iter().enumerate() {
                let y = group.mul(g, x);
                if conjugation[y].is_some() {
                    continue;
                }
                let from = conjugation[x].as_ref().expect("visited");
                let maps = (0..n)
                    .map(|h| {
                        let xh = lattice.idx(group.conjugate(lattice.subgroup(h), x));
                        gen_maps[gi][xh].mul(&from[h])
                    })
                    .collect::<Result<Vec<_>>>()?;
                conjugation[y] = Some(maps);
                queue.push_back(y);
            }
        }
        let conjugation = conjugation.into_iter().map(|c| c.expect("generators generate")).collect();
        Ok(MackeyFunctorData {
            group: group.clone(),
            lattice: lattice.clone(),
            field,
            dims,
            generators,
            restriction,
            transfer,
            conjugation,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, h: usize) -> usize {
        self.dims[h]
    }

    pub fn dim_of(&self, h: Subgroup) -> usize {
        self.dims[self.lattice.idx(h)]
    }

    /// `r^H_K` for lattice indices `K ≤ H`.
    pub fn r(&self, h: usize, k: usize) -> &Matrix<F> {
        &self.restriction[&(h, k)]
    }

    /// `t^H_K` for lattice indices `K ≤ H`.
    pub fn t(&self, h: usize, k: usize) -> &Matrix<F> {
        &self.transfer[&(h, k)]
    }

    /// `c^x_H : M(H) → M(ˣH)`.
    pub fn c(&self, x: usize, h: usize) -> &Matrix<F> {
        &self.conjugation[x][h]
    }

    fn conj_idx(&self, x: usize, h: usize) -> usize {
        self.lattice.idx(self.group.conjugate(self.lattice.subgroup(h), x))
    }

    /// Checks relations (1)–(4) on all derived maps, exhaustively over subgroup
    /// chains and group elements.
    pub fn validate(&self) -> Result<FunctorValidation> {
        let g = &self.group;
        let l = &self.lattice;
        let n = l.len();
        let mut s = FunctorValidation::default();
        let fail = |rel: usize, what: String| {
            Err(Error::Inconsistent(format!("{}: relation ({rel}) fails: {what}", g.name())))
        };
        for h in 0..n {
            let id = Matrix::identity(self.field.clone(), self.dims[h]);
            for x in l.subgroup(h).members() {
                if *self.c(x, h) != id {
                    return fail(1, format!("c^{x} on {}", l.subgroup(h)));
                }
                s.checked[0] += 1;
            }
        }
        for h in 0..n {
            for x in g.elements() {
                let xh = self.conj_idx(x, h);
                for y in g.elements() {
                    if self.c(y, xh).mul(self.c(x, h))? != *self.c(g.mul(y, x), h) {
                        return fail(2, format!("c^{y} c^{x} on {}", l.subgroup(h)));
                    }
                    s.checked[1] += 1;
                }
            }
            for k in l.subgroups_of(h) {
                for m in l.subgroups_of(k) {
                    if self.r(k, m).mul(self.r(h, k))? != *self.r(h, m)
                        || self.t(h, k).mul(self.t(k, m))? != *self.t(h, m)
                    {
                        return fail(2, format!("{} ≤ {} ≤ {}", l.subgroup(m), l.subgroup(k), l.subgroup(h)));
                    }
                    s.checked[1] += 1;
                }
                for x in g.elements() {
                    let (xh, xk) = (self.conj_idx(x, h), self.conj_idx(x, k));
                    let cr = self.c(x, k).mul(self.r(h, k))?;
                    let rc = self.r(xh, xk).mul(self.c(x, h))?;
                    let ct = self.c(x, h).mul(self.t(h, k))?;
                    let tc = self.t(xh, xk).mul(self.c(x, k))?;
                    if cr != rc || ct != tc {
                        return fail(3, format!("{x} on {} ≤ {}", l.subgroup(k), l.subgroup(h)));
                    }
                    s.checked[2] += 1;
                }
            }
        }
        for h in 0..n {
            let hs = l.subgroup(h);
            let below = l.subgroups_of(h);
            for &j in &below {
                for &k in &below {
                    let lhs = self.r(h, j).mul(self.t(h, k))?;
                    let mut rhs = Matrix::zeros(self.field.clone(), self.dims[j], self.dims[k]);
                    let (js, ks) = (l.subgroup(j), l.subgroup(k));
                    for x in g.double_cosets_in(js, ks, hs) {
                        let b = l.idx(g.conjugate(js, g.inv(x)).intersect(ks));
                        let xb = self.conj_idx(x, b);
                        let term = self.t(j, xb).mul(self.c(x, b))?.mul(self.r(k, b))?;
                        rhs = rhs.add(&term)?;
                    }
                    if lhs != rhs {
                        return fail(4, format!("J = {js}, H = {hs}, K = {ks}"));
                    }
                    s.checked[3] += 1;
                }
            }
        }
        Ok(s)
    }

    /// `Res^G_K M`, realised over `K` as a group of its own.
    pub fn restrict(&self, k: Subgroup) -> Result<Self> {
        let vq = QuotientGroup::subgroup_as_group(&self.group, k)?;
        let lattice = SubgroupLattice::with_bound(&vq.group, HARD_ORDER_LIMIT)?;
        let old: Vec<usize> = lattice.subgroups().iter().map(|&s| self.lattice.idx(vq.preimage(s))).collect();
        let dims = old.iter().map(|&o| self.dims[o]).collect();
        MackeyFunctorData::from_generators(
            &vq.group,
            &lattice,
            self.field.clone(),
            dims,
            |h, m| Ok(self.r(old[h], old[m]).clone()),
            |h, m| Ok(self.t(old[h], old[m]).clone()),
            |g, h| Ok(self.c(vq.section(g), old[h]).clone()),
        )
    }

    /// `Jef^G_{G/N} M`: at `K/N`, the quotient of `M(K)` by the transfers from
    /// subgroups of `K` not containing `N`.
    pub fn jef(&self, n: Subgroup) -> Result<Self> {
        let g = &self.group;
        let q = QuotientGroup::new(g, g.whole(), n)?;
        let lattice = SubgroupLattice::with_bound(&q.group, HARD_ORDER_LIMIT)?;
        let old: Vec<usize> = lattice.subgroups().iter().map(|&s| self.lattice.idx(q.preimage(s))).collect();
        let spaces: Vec<QuotientSpace<F>> = old
            .iter()
            .map(|&k| {
                let mut span = Matrix::zeros(self.field.clone(), self.dims[k], 0);
                for l in self.lattice.subgroups_of(k) {
                    if !self.lattice.subgroup(l).contains_subgroup(n) {
                        span = span.hstack(self.t(k, l))?;
                    }
                }
                Ok(QuotientSpace::new(&span))
            })
            .collect::<Result<_>>()?;
        let dims = spaces.iter().map(|s| s.dim()).collect();
        let idx = |s: Subgroup| lattice.idx(s);
        MackeyFunctorData::from_generators(
            &q.group,
            &lattice,
            self.field.clone(),
            dims,
            |h, m| spaces[h].induced(self.r(old[h], old[m]), &spaces[m]),
            |h, m| spaces[m].induced(self.t(old[h], old[m]), &spaces[h]),
            |x, h| {
                let xh = idx(q.group.conjugate(lattice.subgroup(h), x));
                spaces[h].induced(self.c(q.section(x), old[h]), &spaces[xh])
            },
        )
    }
}

/// Subgroups of `H` up to `H`-conjugacy, with least representatives in order.
#[derive(Clone, Debug)]
struct LocalClasses {
    reps: Vec<Subgroup>,
    class_of: HashMap<u64, usize>,
}

impl LocalClasses {
    fn new(group: &FiniteGroup, lattice: &SubgroupLattice, h: usize) -> Self {
        let hs = lattice.subgroup(h);
        let mut reps = Vec::new();
        let mut class_of = HashMap::new();
        for k in lattice.subgroups_of(h) {
            let ks = lattice.subgroup(k);
            if class_of.contains_key(&ks.mask()) {
                continue;
            }
            for x in hs.members() {
                class_of.insert(group.conjugate(ks, x).mask(), reps.len());
            }
            reps.push(ks);
        }
        LocalClasses { reps, class_of }
    }

    fn of(&self, s: Subgroup) -> usize {
        self.class_of[&s.mask()]
    }
}

/// The Burnside functor: at `H` the span of `[H/X]` over classes of subgroups.
pub fn burnside_functor<F: Field>(group: &FiniteGroup, field: F) -> Result<MackeyFunctorData<F>> {
    let lattice = SubgroupLattice::with_bound(group, HARD_ORDER_LIMIT)?;
    let local: Vec<LocalClasses> = (0..lattice.len()).map(|h| LocalClasses::new(group, &lattice, h)).collect();
    let dims = local.iter().map(|c| c.reps.len()).collect();
    let int_matrix = |rows: usize, cols: usize, entries: Vec<(usize, usize)>| {
        let mut m = Matrix::zeros(field.clone(), rows, cols);
        let one = field.one();
        for (i, j) in entries {
            m.add_at(i, j, &one);
        }
        m
    };
    MackeyFunctorData::from_generators(
        group,
        &lattice,
        field.clone(),
        dims,
        |h, k| {
            let (hs, ks) = (lattice.subgroup(h), lattice.subgroup(k));
            let (src, dst) = (&local[h], &local[k]);
            let mut entries = Vec::new();
            for (col, &x) in src.reps.iter().enumerate() {
                for y in group.double_cosets_in(ks, x, hs) {
                    entries.push((dst.of(ks.intersect(group.conjugate(x, y))), col));
                }
            }
            Ok(int_matrix(dst.reps.len(), src.reps.len(), entries))
        },
        |h, k| {
            let (src, dst) = (&local[k], &local[h]);
            let entries = src.reps.iter().enumerate().map(|(col, &x)| (dst.of(x), col)).collect();
            Ok(int_matrix(dst.reps.len(), src.reps.len(), entries))
        },
        |g, h| {
            let gh = lattice.idx(group.conjugate(lattice.subgroup(h), g));
            let (src, dst) = (&local[h], &local[gh]);
            let entries = src.reps.iter().enumerate().map(|(col, &x)| (dst.of(group.conjugate(x, g)), col)).collect();
            Ok(int_matrix(dst.reps.len(), src.reps.len(), entries))
        },
    )
}

/// One-dimensional evaluations, `r = 1`, `t^H_K = [H:K]`, `c = 1`.
pub fn fixed_point_functor<F: Field>(group: &FiniteGroup, field: F) -> Result<MackeyFunctorData<F>> {
    let lattice = SubgroupLattice::with_bound(group, HARD_ORDER_LIMIT)?;
    let scalar = |v: i64| Matrix::from_rows(field.clone(), vec![vec![field.from_i64(v)]]);
    MackeyFunctorData::from_generators(
        group,
        &lattice,
        field.clone(),
        vec![1; lattice.len()],
        |_, _| scalar(1),
        |h, k| scalar((lattice.subgroup(h).order() / lattice.subgroup(k).order()) as i64),
        |_, _| scalar(1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::group::make_group;

    #[test]
    fn burnside_dimensions_and_induction() {
        let g = make_group("C2").unwrap();
        let b = burnside_functor(&g, Rationals).unwrap();
        assert_eq!((b.dim_of(g.whole()), b.dim_of(g.trivial())), (2, 1));
        let (one, top) = (b.lattice().idx(g.trivial()), b.lattice().idx(g.whole()));
        // [1/1] ↦ [C2/1]
        assert_eq!(b.t(top, one).column(0), vec![Rationals.one(), Rationals.zero()]);
    }

    #[test]
    fn burnside_functor_relations() {
        for spec in ["C2", "C4", "C2xC2", "D8", "Q8", "C3xC3"] {
            let g = make_group(spec).unwrap();
            let v = burnside_functor(&g, Rationals).unwrap().validate().unwrap();
            assert!(v.checked.iter().all(|&c| c > 0), "{spec}");
            burnside_functor(&g, PrimeField::new(g.prime()).unwrap()).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn fixed_point_transfers() {
        let g = make_group("C4").unwrap();
        let c2 = g.cyclic_subgroup(2);
        let q = fixed_point_functor(&g, Rationals).unwrap();
        let l = q.lattice();
        assert_eq!(*q.t(l.idx(g.whole()), l.idx(c2)).get(0, 0), Rationals.from_i64(2));
        let f2 = PrimeField::new(2).unwrap();
        let m = fixed_point_functor(&g, f2).unwrap();
        assert!(f2.is_zero(m.t(l.idx(g.whole()), l.idx(c2)).get(0, 0)));
        for spec in ["D8", "C2xC2xC2"] {
            let g = make_group(spec).unwrap();
            fixed_point_functor(&g, Rationals).unwrap().validate().unwrap();
            fixed_point_functor(&g, PrimeField::new(2).unwrap()).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn broken_data_is_rejected() {
        let g = make_group("C2").unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        let s = |v: i64| Matrix::from_rows(Rationals, vec![vec![Rationals.from_i64(v)]]);
        // r t = 3 instead of the required 2 on the trivial subgroup
        let bad =
            MackeyFunctorData::from_generators(&g, &l, Rationals, vec![1, 1], |_, _| s(1), |_, _| s(3), |_, _| s(1))
                .unwrap();
        assert!(matches!(bad.validate(), Err(Error::Inconsistent(_))));
        let wrong_shape =
            MackeyFunctorData::from_generators(&g, &l, Rationals, vec![1, 2], |_, _| s(1), |_, _| s(1), |_, _| s(1));
        assert!(matches!(wrong_shape, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn restriction_and_jef_are_mackey_functors() {
        let g = make_group("D8").unwrap();
        let b = burnside_functor(&g, Rationals).unwrap();
        let v4 = g.generate(1 << 2 | 1 << 4);
        let r = b.restrict(v4).unwrap();
        assert_eq!(r.group().order(), 4);
        r.validate().unwrap();
        let z = g.cyclic_subgroup(2);
        let j = b.jef(z).unwrap();
        assert_eq!(j.group().order(), 4);
        j.validate().unwrap();
        // at the trivial subgroup of G/Z, Jef is B(Z) modulo the transfer from 1
        assert_eq!(j.dim_of(j.group().trivial()), 1);
    }
}
