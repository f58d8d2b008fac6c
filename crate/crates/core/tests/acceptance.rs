//! Acceptance criteria over the built-in groups, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use mackey_dade::burnside::BurnsideRing;
use mackey_dade::dade::{dmu_dim, underline_dmu, DadeGroup, MackeyDadeVector};
use mackey_dade::exactla::{Field, PrimeField, Rationals};
use mackey_dade::group::{builtin_specs, make_group, FiniteGroup, Subgroup};
use mackey_dade::lambda::{
    alpha, burnside_embed, lambda_basis, lambda_dim, lambda_mult, lambda_one, lin_mu_direct, lin_mu_via_alpha,
    sq_ss_bijection,
};
use mackey_dade::mackey::{
    bar_all, build_algebra, burnside_functor, check_relations, compare_bar_jef, compare_bar_restriction,
    fixed_point_functor, twin_dual, twin_functor_dims, MackeyFunctorData,
};
use mackey_dade::pgroup::PGroup;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Subgroups found by closing every triple of elements.
fn brute_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut seen = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                seen.insert(g.generate(1 << a | 1 << b | 1 << c).mask());
            }
        }
    }
    seen.into_iter().map(Subgroup::from_mask).collect()
}

fn conj_classes(g: &FiniteGroup, subs: &[Subgroup], acting: Subgroup) -> usize {
    let canon = |h: Subgroup| acting.members().map(|x| g.conjugate(h, x).mask()).min().unwrap();
    subs.iter().map(|&h| canon(h)).collect::<BTreeSet<_>>().len()
}

struct Oracle {
    sq: usize,
    noncyclic_sq: usize,
    ss: usize,
    noncyclic_subgroup_classes: usize,
}

fn oracle(g: &FiniteGroup) -> Oracle {
    let subs = brute_subgroups(g);
    let mut pairs = BTreeSet::new();
    let mut noncyclic = BTreeSet::new();
    for &q in &subs {
        for &n in subs.iter().filter(|&&n| q.contains_subgroup(n) && g.is_normal_in(n, q)) {
            let canon = g.elements().map(|x| (g.conjugate(q, x).mask(), g.conjugate(n, x).mask())).min().unwrap();
            pairs.insert(canon);
            if !q.members().any(|x| g.join(g.cyclic_subgroup(x), n) == q) {
                noncyclic.insert(canon);
            }
        }
    }
    let q_reps: BTreeSet<u64> =
        subs.iter().map(|&q| g.elements().map(|x| g.conjugate(q, x).mask()).min().unwrap()).collect();
    let ss = q_reps
        .iter()
        .map(|&q| {
            let q = Subgroup::from_mask(q);
            let nq = g.normalizer(q);
            let between: Vec<Subgroup> =
                subs.iter().copied().filter(|&t| t.contains_subgroup(q) && nq.contains_subgroup(t)).collect();
            conj_classes(g, &between, nq)
        })
        .sum();
    let nc: Vec<Subgroup> = subs.iter().copied().filter(|&h| !g.is_cyclic(h)).collect();
    Oracle {
        sq: pairs.len(),
        noncyclic_sq: noncyclic.len(),
        ss,
        noncyclic_subgroup_classes: conj_classes(g, &nc, g.whole()),
    }
}

struct Case {
    spec: &'static str,
    p: PGroup,
    oracle: Oracle,
}

struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn q(n: i64) -> BigRational {
    Rationals.from_i64(n)
}

fn criterion1(cases: &[Case], c: &mut Criterion) {
    for case in cases {
        let k = lin_mu_direct(&case.p).nullspace().cols();
        let d = dmu_dim(&case.p).unwrap();
        c.check(k == d && d == case.oracle.noncyclic_sq, || {
            format!("{}: kernel {k}, dmu {d}, oracle {}", case.spec, case.oracle.noncyclic_sq)
        });
        let spot = match case.spec {
            "C2xC2" => Some(1),
            "D8" => Some(4),
            "Q8" => Some(2),
            "C4" | "C8" | "C16" | "C9" => Some(0),
            _ => None,
        };
        if let Some(s) = spot {
            c.check(k == s, || format!("{}: spot value {s}, got {k}", case.spec));
        }
    }
}

fn criterion2(cases: &[Case], c: &mut Criterion) {
    for case in cases {
        let a = alpha(&case.p);
        c.check(a.rows() == a.cols() && a.rank() == a.cols(), || format!("{}: alpha not invertible", case.spec));
        let (sq, ss) = (case.p.subquotients().len(), case.p.ss_count());
        c.check(sq == ss && sq == case.oracle.sq && ss == case.oracle.ss, || {
            format!("{}: |SQ| {sq}, |SS| {ss}, oracle {} / {}", case.spec, case.oracle.sq, case.oracle.ss)
        });
        c.check(sq_ss_bijection(&case.p).is_bijection(), || format!("{}: f and f~ are not inverse", case.spec));
        match case.spec {
            "C2xC2" => c.check(sq == 12, || format!("C2xC2: {sq} != 12")),
            "D8" => c.check(sq == 24, || format!("D8: {sq} != 24")),
            _ => {}
        }
    }
}

fn criterion3(cases: &[Case], c: &mut Criterion) {
    for case in cases {
        c.check(lin_mu_direct(&case.p) == lin_mu_via_alpha(&case.p), || format!("{}: routes differ", case.spec));
    }
}

fn criterion4(cases: &[Case], c: &mut Criterion) {
    for case in cases {
        let m = lin_mu_direct(&case.p);
        let (rank, kernel) = (m.rank(), m.nullspace().cols());
        let cyclic = case.oracle.sq - case.oracle.noncyclic_sq;
        c.check(rank == cyclic && rank + kernel == case.oracle.sq, || {
            format!("{}: rank {rank}, kernel {kernel}, cyclic {cyclic}", case.spec)
        });
        if case.spec == "D8" {
            c.check(rank == 20 && kernel == 4, || format!("D8: {rank} + {kernel}"));
        }
    }
}

fn criterion5(cases: &[Case], c: &mut Criterion) {
    for case in cases {
        let u = underline_dmu(&case.p).unwrap();
        if case.p.is_cyclic() {
            c.check(case.p.dade_layout().total() == 0 && u.cols() == 0, || format!("{}: nonzero", case.spec));
            continue;
        }
        let top = DadeGroup::new(case.p.group()).unwrap().top().unwrap();
        let support =
            if u.cols() == 1 { MackeyDadeVector::from_flat(&case.p, &u.column(0)).unwrap().support() } else { vec![] };
        c.check(u.cols() == 1 && support == [(0, top)], || {
            format!("{}: dim {}, support {support:?}", case.spec, u.cols())
        });
    }
}

fn criterion6(cases: &[Case], rng: &mut ChaCha8Rng, c: &mut Criterion) {
    for case in cases {
        let (g, l) = (case.p.group(), case.p.lattice());
        let w = DadeGroup::from_parts(g, l);
        for i in 0..w.dim() {
            let h = w.basis_subgroup(i);
            let (vq, _, m) = w.restrict_to(h).unwrap();
            let t = DadeGroup::new(&vq.group).unwrap().top().unwrap();
            let index = (g.normalizer(h).order() / h.order()) as i64;
            c.check(*m.get(t, i) == q(index), || format!("{}: self coefficient at {h}", case.spec));
        }
        if let Some(t) = w.top() {
            for &v in l.subgroups().iter().filter(|&&v| v != g.whole()) {
                let (_, _, m) = w.restrict_to(v).unwrap();
                c.check(m.column(t).iter().all(|x| Rationals.is_zero(x)), || {
                    format!("{}: top class survives restriction to {v}", case.spec)
                });
            }
        }
        for _ in 0..50 {
            let v = l.subgroup(rng.gen_range(0..l.len()));
            let below = l.subgroups_of(l.idx(v));
            let u = l.subgroup(below[rng.gen_range(0..below.len())]);
            let (vq, vd, rv) = w.restrict_to(v).unwrap();
            let (_, _, rvu) = vd.restrict_to(vq.image(u)).unwrap();
            let (_, _, ru) = w.restrict_to(u).unwrap();
            c.check(rvu.mul(&rv).unwrap() == ru, || format!("{}: chain {u} < {v}", case.spec));
        }
    }
}

fn criterion7(cases: &[Case], rng: &mut ChaCha8Rng, c: &mut Criterion) {
    for case in cases {
        let p = &case.p;
        let n = lambda_dim(p);
        let one = lambda_one(p);
        for i in 0..n {
            let b = lambda_basis(p, i);
            c.check(lambda_mult(p, &one, &b).unwrap() == b, || format!("{}: unit on {i}", case.spec));
        }
        for _ in 0..200 {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let (a, b, d) = (lambda_basis(p, i), lambda_basis(p, j), lambda_basis(p, k));
            let ab = lambda_mult(p, &a, &b).unwrap();
            c.check(ab == lambda_mult(p, &b, &a).unwrap(), || format!("{}: {i}*{j} not commutative", case.spec));
            let left = lambda_mult(p, &ab, &d).unwrap();
            let right = lambda_mult(p, &a, &lambda_mult(p, &b, &d).unwrap()).unwrap();
            c.check(left == right, || format!("{}: ({i},{j},{k}) not associative", case.spec));
        }
        let ring = BurnsideRing::new(p.group(), p.lattice());
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                let (x, y) = (ring.basis(i), ring.basis(j));
                let lhs = burnside_embed(p, &ring.mult(&x, &y).unwrap()).unwrap();
                let rhs = lambda_mult(p, &burnside_embed(p, &x).unwrap(), &burnside_embed(p, &y).unwrap()).unwrap();
                c.check(lhs == rhs, || format!("{}: embedding fails on ({i},{j})", case.spec));
            }
        }
        c.check(burnside_embed(p, &ring.one()).unwrap() == one, || format!("{}: unit not preserved", case.spec));
    }
}

fn criterion8(cases: &[Case], rng: &mut ChaCha8Rng, c: &mut Criterion) {
    for case in cases {
        let ring = BurnsideRing::new(case.p.group(), case.p.lattice());
        for _ in 0..100 {
            let mut draw = || ring.element((0..ring.dim()).map(|_| q(rng.gen_range(-3..4))).collect()).unwrap();
            let (x, y) = (draw(), draw());
            let lhs = ring.marks(&ring.mult(&x, &y).unwrap()).unwrap();
            let rhs: Vec<BigRational> =
                ring.marks(&x).unwrap().iter().zip(ring.marks(&y).unwrap()).map(|(a, b)| a * b).collect();
            c.check(lhs == rhs, || format!("{}: marks not multiplicative", case.spec));
        }
        let k = ring.lin_kernel();
        c.check(k.cols() == case.oracle.noncyclic_subgroup_classes, || {
            format!("{}: kernel {} vs {}", case.spec, k.cols(), case.oracle.noncyclic_subgroup_classes)
        });
        if case.spec == "C2xC2" {
            let v = k.column(0);
            let expect = [1, -1, -1, -1, 2].map(q);
            let s = &v[0] / &expect[0];
            c.check(v.iter().zip(&expect).all(|(a, b)| *a == &s * b), || format!("V4 kernel {v:?}"));
        }
    }
}

fn criterion9(cases: &[Case], rng: &mut ChaCha8Rng, c: &mut Criterion) {
    for case in cases.iter().filter(|case| case.p.group().order() <= 8) {
        let alg = build_algebra(case.p.group()).unwrap();
        if case.spec == "C2" {
            c.check(alg.dim() == 6, || format!("dim mu(C2) = {}", alg.dim()));
        }
        if let Err(e) = check_relations(&alg) {
            c.check(false, || format!("{}: {e}", case.spec));
        }
        let n = alg.dim();
        let one = alg.one();
        for i in 0..n {
            let b = alg.basis_element(i);
            c.check(alg.mult(&one, &b) == b && alg.mult(&b, &one) == b, || format!("{}: unit on {i}", case.spec));
        }
        for _ in 0..500 {
            let (x, y, z) = (
                alg.basis_element(rng.gen_range(0..n)),
                alg.basis_element(rng.gen_range(0..n)),
                alg.basis_element(rng.gen_range(0..n)),
            );
            c.check(alg.mult(&alg.mult(&x, &y), &z) == alg.mult(&x, &alg.mult(&y, &z)), || {
                format!("{}: associativity", case.spec)
            });
        }
    }
}

fn dual_bar_matches<F: Field>(m: &MackeyFunctorData<F>) -> bool {
    bar_all(&twin_dual(m).unwrap()).unwrap().dims() == bar_all(m).unwrap().dims()
}

fn criterion10(cases: &[Case], c: &mut Criterion) {
    for case in cases {
        let g = case.p.group();
        let fp = PrimeField::new(g.prime()).unwrap();
        let bq = burnside_functor(g, Rationals).unwrap();
        let bp = burnside_functor(g, fp).unwrap();
        c.check(bar_all(&bq).unwrap().dims().iter().all(|&d| d == 1), || format!("{}: bar over Q", case.spec));
        c.check(bar_all(&bp).unwrap().dims().iter().all(|&d| d == 1), || format!("{}: bar over F_p", case.spec));
        let fq = fixed_point_functor(g, Rationals).unwrap();
        let fpp = fixed_point_functor(g, fp).unwrap();
        c.check(
            dual_bar_matches(&bq) && dual_bar_matches(&fq) && dual_bar_matches(&bp) && dual_bar_matches(&fpp),
            || format!("{}: bar of twin-dual", case.spec),
        );
        for m in [&bq, &fq] {
            let d = twin_dual(m).unwrap();
            c.check(d.dims() == m.dims() && twin_functor_dims(m).unwrap() == m.dims(), || {
                format!("{}: twin-dual dimensions in characteristic 0", case.spec)
            });
        }
    }
    let d8 = make_group("D8").unwrap();
    let b = burnside_functor(&d8, Rationals).unwrap();
    let va = d8.generate(1 << 2 | 1 << 4);
    let z = d8.cyclic_subgroup(2);
    for h in [z, d8.trivial()] {
        let r = compare_bar_restriction(&b, va, h).unwrap();
        c.check(r.agrees(), || format!("D8 restriction instance at {h}: {r:?}"));
    }
    let b2 = burnside_functor(&d8, PrimeField::new(2).unwrap()).unwrap();
    c.check(compare_bar_jef(&b2, z, d8.whole()).unwrap().agrees(), || "D8 inflation instance".into());
    let c4 = make_group("C4").unwrap();
    let bc = burnside_functor(&c4, Rationals).unwrap();
    c.check(compare_bar_jef(&bc, c4.cyclic_subgroup(2), c4.whole()).unwrap().agrees(), || "C4 instance".into());
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cases: Vec<Case> = builtin_specs()
        .iter()
        .map(|&spec| {
            let g = make_group(spec).unwrap();
            Case { spec, oracle: oracle(&g), p: PGroup::new(g).unwrap() }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let titles = [
        "kernel of Lin^mu = Mackey-Dade rank = non-cyclic subquotient classes",
        "alpha is square of full rank, |SQ| = |SS|, f and f~ inverse",
        "direct and alpha-based Lin^mu agree exactly",
        "rank Lin^mu = cyclic subquotient classes, rank + kernel = |SQ|",
        "relative syzygy spans a line supported on Delta(P)",
        "Dade restriction: self coefficient, top class, transitivity",
        "ring of subquotients: unit, commutativity, associativity, Burnside embedding",
        "marks multiplicative, kernel of Lin = non-cyclic subgroup classes",
        "Mackey algebra dimension, relations, unit, associativity",
        "bar construction and twin-dual identities",
    ];
    let mut all = true;
    for (i, title) in titles.iter().enumerate() {
        let mut c = Criterion::new();
        match i + 1 {
            1 => criterion1(&cases, &mut c),
            2 => criterion2(&cases, &mut c),
            3 => criterion3(&cases, &mut c),
            4 => criterion4(&cases, &mut c),
            5 => criterion5(&cases, &mut c),
            6 => criterion6(&cases, &mut rng, &mut c),
            7 => criterion7(&cases, &mut rng, &mut c),
            8 => criterion8(&cases, &mut rng, &mut c),
            9 => criterion9(&cases, &mut rng, &mut c),
            _ => criterion10(&cases, &mut c),
        }
        let ok = c.failures.is_empty();
        all &= ok;
        println!("{} criterion {:>2}: {title}", if ok { "PASS" } else { "FAIL" }, i + 1);
        for f in c.failures.iter().take(5) {
            println!("      {f}");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let timed = secs < 300.0;
    all &= timed;
    println!("{} runtime {secs:.1}s over {} groups (limit 300s)", if timed { "PASS" } else { "FAIL" }, cases.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
