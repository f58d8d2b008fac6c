use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};

/// Largest group order for which the full structure-constant table is built.
pub const ALGEBRA_ORDER_BOUND: usize = 8;

/// The basis element `t^H_{ᵍL} c^g_L r^K_L`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MackeyBasisElement {
    pub top: Subgroup,
    pub bottom: Subgroup,
    pub g: usize,
    pub l: Subgroup,
}

impl fmt::Debug for MackeyBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{:?} c^{} r^{:?}_{:?}", self.top, self.g, self.bottom, self.l)
    }
}

/// A generator of the free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `c^g_H : H → ᵍH`.
    C { g: usize, h: Subgroup },
    /// `r^H_K` for `K ≤ H`.
    R { h: Subgroup, k: Subgroup },
    /// `t^H_K` for `K ≤ H`.
    T { h: Subgroup, k: Subgroup },
}

/// A word in the generators, read as a product from left to right.
pub type Word = Vec<Generator>;

/// An integer combination of basis elements, dense in the basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyElement {
    pub coeffs: Vec<i64>,
}

impl MackeyElement {
    pub fn zero(dim: usize) -> Self {
        MackeyElement { coeffs: vec![0; dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MackeyElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: i64) -> Self {
        MackeyElement { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0)
    }
}

/// `μ_Z(G)` with its basis and structure constants.
#[derive(Clone, Debug)]
pub struct MackeyAlgebra {
    group: FiniteGroup,
    lattice: SubgroupLattice,
    basis: Vec<MackeyBasisElement>,
    index: HashMap<MackeyBasisElement, usize>,
    table: Vec<Vec<(usize, i64)>>,
}

/// Enumerates `(H, K, g, L)`: `g` over least double coset representatives of
/// `H\G/K`, `L` over least representatives of subgroups of `H^g ∩ K` up to
/// `H^g ∩ K`-conjugacy.
pub fn enumerate_basis(group: &FiniteGroup, lattice: &SubgroupLattice) -> Vec<MackeyBasisElement> {
    let mut basis = Vec::new();
    for &h in lattice.subgroups() {
        for &k in lattice.subgroups() {
            for g in group.double_cosets(h, k) {
                let meet = group.conjugate(h, group.inv(g)).intersect(k);
                for &l in lattice.subgroups().iter().filter(|&&l| meet.contains_subgroup(l)) {
                    if least_conjugate(group, l, meet) == l {
                        basis.push(MackeyBasisElement { top: h, bottom: k, g, l });
                    }
                }
            }
        }
    }
    basis
}

fn least_conjugate(group: &FiniteGroup, l: Subgroup, by: Subgroup) -> Subgroup {
    by.members().map(|z| group.conjugate(l, z)).min().expect("nonempty")
}

impl MackeyAlgebra {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        if group.order() > ALGEBRA_ORDER_BOUND {
            return Err(Error::TooLarge { order: group.order(), bound: ALGEBRA_ORDER_BOUND });
        }
        let lattice = SubgroupLattice::new(group)?;
        let basis = enumerate_basis(group, &lattice);
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut alg = MackeyAlgebra { group: group.clone(), lattice, basis, index, table: Vec::new() };
        let n = alg.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(alg.multiply_basis(i, j));
            }
        }
        alg.table = table;
        Ok(alg)
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

    pub fn basis(&self) -> &[MackeyBasisElement] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> MackeyElement {
        let mut e = MackeyElement::zero(self.dim());
        e.coeffs[i] = 1;
        e
    }

    pub fn index_of(&self, b: &MackeyBasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Normal form of `t^H_{yB} c^y_B r^K_B` for any `y ∈ G` and `B ≤ H^y ∩ K`.
    pub fn canonical(&self, h: Subgroup, y: usize, b: Subgroup, k: Subgroup) -> usize {
        let g = &self.group;
        let d = g.double_coset(h, y, k).trailing_zeros() as usize;
        // y = h' d k' with h' ∈ H, k' ∈ K; then (y, B) ~ (d, k' B k'⁻¹).
        let kk = k.members().find(|&kk| h.contains(g.mul(g.mul(y, g.inv(kk)), g.inv(d)))).expect("y lies in H d K");
        let moved = g.conjugate(b, kk);
        let meet = g.conjugate(h, g.inv(d)).intersect(k);
        let l = least_conjugate(g, moved, meet);
        self.index[&MackeyBasisElement { top: h, bottom: k, g: d, l }]
    }

    /// Product of two basis elements, by the Mackey relation in the middle and
    /// the commutation and composition relations around it.
    fn multiply_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let g = &self.group;
        let a = self.basis[i];
        let b = self.basis[j];
        if a.bottom != b.top {
            return Vec::new();
        }
        let c = g.conjugate(b.l, b.g);
        let mut counts: HashMap<usize, i64> = HashMap::new();
        for x in g.double_cosets_in(a.l, c, a.bottom) {
            let meet = g.conjugate(a.l, g.inv(x)).intersect(c);
            let moved = g.conjugate(meet, g.inv(b.g));
            let y = g.mul(g.mul(a.g, x), b.g);
            *counts.entry(self.canonical(a.top, y, moved, b.bottom)).or_default() += 1;
        }
        let mut out: Vec<(usize, i64)> = counts.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mult(&self, a: &MackeyElement, b: &MackeyElement) -> MackeyElement {
        let mut out = MackeyElement::zero(self.dim());
        for (i, x) in a.support() {
            for (j, y) in b.support() {
                for &(k, m) in self.basis_product(i, j) {
                    out.coeffs[k] += x * y * m;
                }
            }
        }
        out
    }

    /// `1 = Σ_H r^H_H`.
    pub fn one(&self) -> MackeyElement {
        self.lattice
            .subgroups()
            .iter()
            .map(|&h| self.generator(&Generator::R { h, k: h }).expect("well-formed"))
            .fold(MackeyElement::zero(self.dim()), |acc, e| acc.add(&e))
    }

    /// A single generator as an element.
    pub fn generator(&self, gen: &Generator) -> Result<MackeyElement> {
        let g = &self.group;
        let valid = |s: Subgroup| g.is_subgroup(s.mask());
        let (top, y, b, bottom) = match *gen {
            Generator::C { g: x, h } if x < g.order() && valid(h) => (g.conjugate(h, x), x, h, h),
            Generator::R { h, k } if valid(h) && valid(k) && h.contains_subgroup(k) => (k, 0, k, h),
            Generator::T { h, k } if valid(h) && valid(k) && h.contains_subgroup(k) => (h, 0, k, k),
            _ => return Err(Error::IllFormedWord(format!("{gen:?} in {}", g.name()))),
        };
        Ok(self.basis_element(self.canonical(top, y, b, bottom)))
    }

    /// The product of a word; the empty word is `1`.
    pub fn word(&self, w: &[Generator]) -> Result<MackeyElement> {
        w.iter().try_fold(self.one(), |acc, gen| Ok(self.mult(&acc, &self.generator(gen)?)))
    }

    /// Normal form of the product of two words.
    pub fn normalize_product(&self, a: &[Generator], b: &[Generator]) -> Result<MackeyElement> {
        Ok(self.mult(&self.word(a)?, &self.word(b)?))
    }

    /// Basis elements reached by closing the generators under multiplication.
    pub fn generated_closure(&self) -> usize {
        let g = &self.group;
        let subs = self.lattice.subgroups();
        let mut reached = vec![false; self.dim()];
        let mut frontier = Vec::new();
        let mut gens = Vec::new();
        for &h in subs {
            for &k in subs.iter().filter(|&&k| h.contains_subgroup(k)) {
                gens.push(Generator::R { h, k });
                gens.push(Generator::T { h, k });
            }
            for x in g.elements() {
                gens.push(Generator::C { g: x, h });
            }
        }
        let gen_idx: Vec<usize> =
            gens.iter().map(|gen| self.generator(gen).expect("valid").support().next().expect("basis").0).collect();
        for &i in &gen_idx {
            if !std::mem::replace(&mut reached[i], true) {
                frontier.push(i);
            }
        }
        while let Some(i) = frontier.pop() {
            for &j in &gen_idx {
                for (a, b) in [(i, j), (j, i)] {
                    for &(k, _) in self.basis_product(a, b) {
                        if !std::mem::replace(&mut reached[k], true) {
                            frontier.push(k);
                        }
                    }
                }
            }
        }
        reached.iter().filter(|&&r| r).count()
    }
}

/// `μ_Z(G)` with its full structure-constant table, for `|G| ≤ 8`.
pub fn build_algebra(group: &FiniteGroup) -> Result<MackeyAlgebra> {
    MackeyAlgebra::new(group)
}

/// Normal form of `a·b` for two words.
pub fn normalize_product(alg: &MackeyAlgebra, a: &[Generator], b: &[Generator]) -> Result<MackeyElement> {
    alg.normalize_product(a, b)
}

/// Counts of the relation identities checked by [`check_relations`], in order:
///
/// 1. `t^H_H = r^H_H = c^h_H` for `h ∈ H`
/// 2. transitivity of `c`, `r` and `t`
/// 3. conjugation commutes past `r` and `t`
/// 4. the Mackey formula for `r^H_J t^H_K`
/// 5. `Σ_H t^H_H` is the unit
/// 6. the idempotents `r^H_H` are pairwise orthogonal
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSummary {
    pub checked: [usize; 6],
}

impl RelationSummary {
    pub fn total(&self) -> usize {
        self.checked.iter().sum()
    }
}

/// Verifies the six defining relations as identities between normal forms,
/// exhaustively over subgroup data and group elements.
pub fn check_relations(alg: &MackeyAlgebra) -> Result<RelationSummary> {
    let g = alg.group();
    let subs = alg.lattice().subgroups().to_vec();
    let mut s = RelationSummary::default();
    let fail = |rel: usize, what: String| Err(Error::Inconsistent(format!("relation ({rel}): {what}")));
    let el = |gen: Generator| alg.generator(&gen);
    let prod = |a: Generator, b: Generator| alg.normalize_product(&[a], &[b]);

    for &h in &subs {
        let e = el(Generator::R { h, k: h })?;
        if el(Generator::T { h, k: h })? != e {
            return fail(1, format!("t^H_H != r^H_H for H = {h}"));
        }
        for x in h.members() {
            if el(Generator::C { g: x, h })? != e {
                return fail(1, format!("c^{x} != r^H_H for H = {h}"));
            }
        }
        s.checked[0] += 1;
    }

    for &h in &subs {
        for x in g.elements() {
            for y in g.elements() {
                let lhs = prod(Generator::C { g: y, h: g.conjugate(h, x) }, Generator::C { g: x, h })?;
                if lhs != el(Generator::C { g: g.mul(y, x), h })? {
                    return fail(2, format!("c^{y} c^{x} on {h}"));
                }
                s.checked[1] += 1;
            }
        }
        for &k in subs.iter().filter(|&&k| h.contains_subgroup(k)) {
            for &l in subs.iter().filter(|&&l| k.contains_subgroup(l)) {
                let rr = prod(Generator::R { h: k, k: l }, Generator::R { h, k })?;
                let tt = prod(Generator::T { h, k }, Generator::T { h: k, k: l })?;
                if rr != el(Generator::R { h, k: l })? || tt != el(Generator::T { h, k: l })? {
                    return fail(2, format!("chain {l} ≤ {k} ≤ {h}"));
                }
                s.checked[1] += 1;
            }
            for x in g.elements() {
                let (xh, xk) = (g.conjugate(h, x), g.conjugate(k, x));
                let a = prod(Generator::C { g: x, h: k }, Generator::R { h, k })?;
                let b = prod(Generator::R { h: xh, k: xk }, Generator::C { g: x, h })?;
                let c = prod(Generator::C { g: x, h }, Generator::T { h, k })?;
                let d = prod(Generator::T { h: xh, k: xk }, Generator::C { g: x, h: k })?;
                if a != b || c != d {
                    return fail(3, format!("conjugation by {x} on {k} ≤ {h}"));
                }
                s.checked[2] += 1;
            }
        }
    }

    for &h in &subs {
        for &j in subs.iter().filter(|&&j| h.contains_subgroup(j)) {
            for &k in subs.iter().filter(|&&k| h.contains_subgroup(k)) {
                let lhs = prod(Generator::R { h, k: j }, Generator::T { h, k })?;
                let mut rhs = MackeyElement::zero(alg.dim());
                for x in g.double_cosets_in(j, k, h) {
                    let b = g.conjugate(j, g.inv(x)).intersect(k);
                    let xb = g.conjugate(b, x);
                    let term = alg.word(&[
                        Generator::T { h: j, k: xb },
                        Generator::C { g: x, h: b },
                        Generator::R { h: k, k: b },
                    ])?;
                    rhs = rhs.add(&term);
                }
                if lhs != rhs {
                    return fail(4, format!("J = {j}, H = {h}, K = {k}"));
                }
                s.checked[3] += 1;
            }
        }
    }

    let one = alg.one();
    for i in 0..alg.dim() {
        let b = alg.basis_element(i);
        if alg.mult(&one, &b) != b || alg.mult(&b, &one) != b {
            return fail(5, format!("unit on basis element {i}"));
        }
        s.checked[4] += 1;
    }

    for &h in &subs {
        for &k in &subs {
            if h != k {
                let z = prod(Generator::R { h, k: h }, Generator::R { h: k, k })?;
                if !z.is_zero() {
                    return fail(6, format!("r^H_H r^K_K for {h} != {k}"));
                }
                s.checked[5] += 1;
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alg(spec: &str) -> MackeyAlgebra {
        build_algebra(&make_group(spec).unwrap()).unwrap()
    }

    /// Dimension by counting `(H, K, HgK, L)` with every subgroup `L` of
    /// `H^g ∩ K` grouped into orbits by explicit orbit enumeration.
    fn dim_oracle(spec: &str) -> usize {
        let g = make_group(spec).unwrap();
        let l = SubgroupLattice::new(&g).unwrap();
        let mut total = 0;
        for &h in l.subgroups() {
            for &k in l.subgroups() {
                let mut seen = 0u64;
                for x in g.elements() {
                    if seen >> x & 1 == 1 {
                        continue;
                    }
                    seen |= g.double_coset(h, x, k);
                    let meet = g.conjugate(h, g.inv(x)).intersect(k);
                    let inside: Vec<Subgroup> =
                        l.subgroups().iter().copied().filter(|s| meet.contains_subgroup(*s)).collect();
                    let mut orbits: Vec<Vec<Subgroup>> = Vec::new();
                    for s in inside {
                        if !orbits.iter().any(|o| o.contains(&s)) {
                            orbits.push(meet.members().map(|z| g.conjugate(s, z)).collect());
                        }
                    }
                    total += orbits.len();
                }
            }
        }
        total
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg("C2").dim(), 6);
        for spec in ["C2", "C4", "C2xC2", "C3", "D8"] {
            assert_eq!(alg(spec).dim(), dim_oracle(spec), "{spec}");
        }
        let trivial = FiniteGroup::from_table("1", 2, vec![0]).unwrap();
        assert_eq!(build_algebra(&trivial).unwrap().dim(), 1);
    }

    #[test]
    fn size_guard() {
        let g = make_group("C16").unwrap();
        assert!(matches!(build_algebra(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn c2_examples() {
        let a = alg("C2");
        let g = a.group();
        let (one, c2) = (g.trivial(), g.whole());
        let rt = a.normalize_product(&[Generator::R { h: c2, k: one }], &[Generator::T { h: c2, k: one }]).unwrap();
        let expect = a
            .generator(&Generator::C { g: 0, h: one })
            .unwrap()
            .add(&a.generator(&Generator::C { g: 1, h: one }).unwrap());
        assert_eq!(rt, expect);

        let tr = [Generator::T { h: c2, k: one }, Generator::R { h: c2, k: one }];
        let sq = a.normalize_product(&tr, &tr).unwrap();
        assert_eq!(sq, a.word(&tr).unwrap().scale(2));

        let z = a.normalize_product(&[Generator::R { h: c2, k: c2 }], &[Generator::R { h: one, k: one }]);
        assert!(z.unwrap().is_zero());
    }

    #[test]
    fn ill_formed_generators() {
        let a = alg("C4");
        let g = a.group();
        let c2 = g.cyclic_subgroup(2);
        assert!(matches!(a.generator(&Generator::R { h: c2, k: g.whole() }), Err(Error::IllFormedWord(_))));
        assert!(a.generator(&Generator::C { g: 9, h: c2 }).is_err());
    }

    #[test]
    fn relations_hold() {
        for spec in ["C2", "C4", "C2xC2", "C3"] {
            let s = check_relations(&alg(spec)).unwrap();
            assert!(s.checked.iter().all(|&c| c > 0), "{spec}: {s:?}");
        }
    }

    #[test]
    fn associative_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["C2", "C4", "C2xC2"] {
            let a = alg(spec);
            let n = a.dim();
            for _ in 0..500 {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                let (x, y, z) = (a.basis_element(x), a.basis_element(y), a.basis_element(z));
                assert_eq!(a.mult(&a.mult(&x, &y), &z), a.mult(&x, &a.mult(&y, &z)), "{spec}");
            }
        }
    }

    #[test]
    fn generators_reach_every_basis_element() {
        for spec in ["C2", "C4", "C2xC2", "C3"] {
            let a = alg(spec);
            assert_eq!(a.generated_closure(), a.dim(), "{spec}");
        }
    }

    #[test]
    fn basis_elements_are_their_own_normal_forms() {
        let a = alg("D8");
        let g = a.group();
        for (i, b) in a.basis().iter().enumerate() {
            let w = [
                Generator::T { h: b.top, k: g.conjugate(b.l, b.g) },
                Generator::C { g: b.g, h: b.l },
                Generator::R { h: b.bottom, k: b.l },
            ];
            assert_eq!(a.word(&w).unwrap(), a.basis_element(i));
        }
    }
}
