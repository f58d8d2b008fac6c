//! The fixed catalog of structural checks run by `mackey-dade verify`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::burnside::BurnsideRing;
use crate::dade::{dmu_dim, underline_dmu, weyl_dade_groups, DadeGroup, MackeyDadeVector};
use crate::error::Result;
use crate::exactla::{render_rational, Field, PrimeField, QMatrix, Rationals};
use crate::group::FiniteGroup;
use crate::lambda::{
    alpha, burnside_embed, lambda_basis, lambda_dim, lambda_mult, lambda_one, lin_mu_direct, lin_mu_via_alpha,
    sq_ss_bijection,
};
use crate::mackey::{
    bar_all, bar_via_jef_res, build_algebra, burnside_functor, check_relations, compare_bar_jef,
    compare_bar_restriction, fixed_point_functor, twin_dual, twin_functor_dims, MackeyFunctorData, ALGEBRA_ORDER_BOUND,
};
use crate::pgroup::PGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check does not apply to this group (reason in the witness).
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub theorem: String,
    pub status: Status,
    pub witness: BTreeMap<String, Value>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: usize,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Record wall-clock time per check; off keeps reports reproducible.
    pub timing: bool,
}

/// Check ids with their descriptive tags, in report order.
pub const CATALOG: [(&str, &str); 10] = [
    ("bar-twin-dual", "bar construction, twin-dual and Bouc's bar isomorphisms"),
    ("burnside-marks", "mark homomorphism and kernel of the linearization"),
    ("dade-restriction", "Mackey formula for restriction of relative syzygies"),
    ("lambda-ring", "ring of subquotients is unital, commutative and associative"),
    ("linearization-exact", "exact sequence through the Mackey linearization"),
    ("linearization-routes", "direct and alpha-based Mackey linearizations agree"),
    ("mackey-algebra", "Mackey algebra presentation and normal forms"),
    ("noncyclic-subquotients", "rank of the Mackey-Dade group"),
    ("relative-syzygy", "submodule generated by the relative syzygy"),
    ("subquotient-isomorphism", "alpha is an isomorphism onto the Weyl-group Burnside sum"),
];

type Witness = BTreeMap<String, Value>;
type Outcome = Result<(Status, Witness)>;

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn witness<const N: usize>(pairs: [(&str, Value); N]) -> Witness {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Exact rendering of a rational matrix, row by row.
pub fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(render_rational(x))).collect()))
            .collect(),
    )
}

pub fn vector_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(render_rational(x))).collect())
}

/// Runs the full catalog on one group.
pub fn verify_group(group: &FiniteGroup, opts: VerifyOptions) -> Result<VerificationReport> {
    let p = PGroup::new(group.clone())?;
    let checks = CATALOG
        .iter()
        .map(|&(id, theorem)| {
            let start = Instant::now();
            let (status, witness) = match run_check(id, &p, opts) {
                Ok(r) => r,
                Err(e) => (Status::Fail, witness([("error", json!(e.to_string()))])),
            };
            let millis = if opts.timing { start.elapsed().as_millis() as u64 } else { 0 };
            CheckRecord { id: id.into(), theorem: theorem.into(), status, witness, millis }
        })
        .collect();
    Ok(VerificationReport { group: group.name().to_string(), order: group.order(), checks })
}

/// Runs one catalog entry.
pub fn run_check(id: &str, p: &PGroup, opts: VerifyOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match id {
        "bar-twin-dual" => bar_twin_dual(p),
        "burnside-marks" => burnside_marks(p, &mut rng),
        "dade-restriction" => dade_restriction(p, &mut rng),
        "lambda-ring" => lambda_ring(p, &mut rng),
        "linearization-exact" => linearization_exact(p),
        "linearization-routes" => linearization_routes(p),
        "mackey-algebra" => mackey_algebra(p, &mut rng),
        "noncyclic-subquotients" => noncyclic_subquotients(p),
        "relative-syzygy" => relative_syzygy(p),
        "subquotient-isomorphism" => subquotient_isomorphism(p),
        other => Err(crate::Error::InvalidArgument(format!("unknown check {other}"))),
    }
}

fn noncyclic_subquotients(p: &PGroup) -> Outcome {
    let kernel = lin_mu_direct(p).nullspace().cols();
    let dmu = dmu_dim(p)?;
    let nc = p.noncyclic_subquotient_classes();
    Ok((
        status(kernel == dmu && dmu == nc),
        witness([("kernel_dim", json!(kernel)), ("dmu_dim", json!(dmu)), ("noncyclic_subquotients", json!(nc))]),
    ))
}

fn subquotient_isomorphism(p: &PGroup) -> Outcome {
    let a = alpha(p);
    let rank = a.rank();
    let f = sq_ss_bijection(p);
    let (sq, ss) = (p.subquotients().len(), p.ss_count());
    let ok = a.rows() == a.cols() && rank == a.cols() && sq == ss && f.is_bijection();
    Ok((
        status(ok),
        witness([
            ("alpha_rows", json!(a.rows())),
            ("alpha_cols", json!(a.cols())),
            ("alpha_rank", json!(rank)),
            ("sq_classes", json!(sq)),
            ("ss_classes", json!(ss)),
            ("round_trip", json!(f.is_bijection())),
        ]),
    ))
}

fn linearization_routes(p: &PGroup) -> Outcome {
    let direct = lin_mu_direct(p);
    let via = lin_mu_via_alpha(p);
    let diff = direct.sub(&via)?;
    let differing = (0..diff.rows())
        .flat_map(|i| (0..diff.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !Rationals.is_zero(diff.get(i, j)))
        .count();
    Ok((
        status(differing == 0),
        witness([
            ("rows", json!(direct.rows())),
            ("cols", json!(direct.cols())),
            ("differing_entries", json!(differing)),
        ]),
    ))
}

fn linearization_exact(p: &PGroup) -> Outcome {
    let m = lin_mu_direct(p);
    let rank = m.rank();
    let kernel = m.nullspace().cols();
    let cyclic = p.cyclic_subquotient_classes();
    let weyl_cyclic = p.character_layout().total();
    let sq = p.subquotients().len();
    Ok((
        status(rank == cyclic && cyclic == weyl_cyclic && rank + kernel == sq),
        witness([
            ("rank", json!(rank)),
            ("kernel_dim", json!(kernel)),
            ("sq_classes", json!(sq)),
            ("cyclic_subquotients", json!(cyclic)),
            ("weyl_cyclic_classes", json!(weyl_cyclic)),
        ]),
    ))
}

fn relative_syzygy(p: &PGroup) -> Outcome {
    let u = underline_dmu(p)?;
    let dim = p.dade_layout().total();
    if p.is_cyclic() {
        return Ok((status(dim == 0 && u.cols() == 0), witness([("dmu_dim", json!(dim)), ("dim", json!(u.cols()))])));
    }
    let top = weyl_dade_groups(p)[0].top();
    let support = if u.cols() == 1 { MackeyDadeVector::from_flat(p, &u.column(0))?.support() } else { Vec::new() };
    let ok = u.cols() == 1 && top.is_some() && support == vec![(0, top.expect("non-cyclic"))];
    Ok((
        status(ok),
        witness([
            ("dmu_dim", json!(dim)),
            ("dim", json!(u.cols())),
            ("support", json!(support)),
            ("basis", matrix_json(&u.transpose())),
        ]),
    ))
}

fn dade_restriction(p: &PGroup, rng: &mut ChaCha8Rng) -> Outcome {
    let w = DadeGroup::from_parts(p.group(), p.lattice());
    let g = p.group();
    let l = p.lattice();
    let mut self_coeff = true;
    for i in 0..w.dim() {
        let q = w.basis_subgroup(i);
        let (vq, _, m) = w.restrict_to(q)?;
        let top = DadeGroup::new(&vq.group)?.top().expect("non-cyclic");
        let index = (g.normalizer(q).order() / q.order()) as i64;
        self_coeff &= *m.get(top, i) == Rationals.from_i64(index);
    }
    let mut top_zero = true;
    if let Some(top) = w.top() {
        for &v in l.subgroups().iter().filter(|&&v| v != g.whole()) {
            let (_, _, m) = w.restrict_to(v)?;
            top_zero &= m.column(top).iter().all(|x| Rationals.is_zero(x));
        }
    }
    let chains = 50;
    let mut transitive = true;
    for _ in 0..chains {
        let v = l.subgroup(rng.gen_range(0..l.len()));
        let below = l.subgroups_of(l.idx(v));
        let u = l.subgroup(below[rng.gen_range(0..below.len())]);
        let (vq, vd, rv) = w.restrict_to(v)?;
        let (_, _, rvu) = vd.restrict_to(vq.image(u))?;
        let (_, _, ru) = w.restrict_to(u)?;
        transitive &= rvu.mul(&rv)? == ru;
    }
    Ok((
        status(self_coeff && top_zero && transitive),
        witness([
            ("dade_dim", json!(w.dim())),
            ("self_restriction_index", json!(self_coeff)),
            ("top_class_vanishes", json!(top_zero)),
            ("random_chains", json!(chains)),
            ("transitive", json!(transitive)),
        ]),
    ))
}

fn lambda_ring(p: &PGroup, rng: &mut ChaCha8Rng) -> Outcome {
    let n = lambda_dim(p);
    let one = lambda_one(p);
    let mut unit = true;
    for c in 0..n {
        let b = lambda_basis(p, c);
        unit &= lambda_mult(p, &one, &b)? == b && lambda_mult(p, &b, &one)? == b;
    }
    let triples = 200;
    let (mut commutative, mut associative) = (true, true);
    for _ in 0..triples {
        let a = lambda_basis(p, rng.gen_range(0..n));
        let b = lambda_basis(p, rng.gen_range(0..n));
        let c = lambda_basis(p, rng.gen_range(0..n));
        let ab = lambda_mult(p, &a, &b)?;
        commutative &= ab == lambda_mult(p, &b, &a)?;
        associative &= lambda_mult(p, &ab, &c)? == lambda_mult(p, &a, &lambda_mult(p, &b, &c)?)?;
    }
    let ring = BurnsideRing::new(p.group(), p.lattice());
    let mut embedding = true;
    for i in 0..ring.dim() {
        for j in 0..ring.dim() {
            let (x, y) = (ring.basis(i), ring.basis(j));
            let lhs = burnside_embed(p, &ring.mult(&x, &y)?)?;
            let rhs = lambda_mult(p, &burnside_embed(p, &x)?, &burnside_embed(p, &y)?)?;
            embedding &= lhs == rhs;
        }
    }
    embedding &= burnside_embed(p, &ring.one())? == one;
    Ok((
        status(unit && commutative && associative && embedding),
        witness([
            ("dim", json!(n)),
            ("unit", json!(unit)),
            ("random_triples", json!(triples)),
            ("commutative", json!(commutative)),
            ("associative", json!(associative)),
            ("burnside_embedding", json!(embedding)),
        ]),
    ))
}

/// Spans the same line as `(1, −1, −1, −1, 2)`.
fn is_klein_kernel(k: &QMatrix) -> bool {
    let expect = [1, -1, -1, -1, 2].map(|v| Rationals.from_i64(v));
    k.cols() == 1 && k.rows() == 5 && {
        let v = k.column(0);
        let s = &v[0] / &expect[0];
        v.iter().zip(&expect).all(|(a, b)| *a == &s * b)
    }
}

fn burnside_marks(p: &PGroup, rng: &mut ChaCha8Rng) -> Outcome {
    let ring = BurnsideRing::new(p.group(), p.lattice());
    let pairs = 100;
    let mut multiplicative = true;
    for _ in 0..pairs {
        let mut draw = || {
            let coords = (0..ring.dim()).map(|_| Rationals.from_i64(rng.gen_range(-3..4))).collect();
            ring.element(coords)
        };
        let (x, y) = (draw()?, draw()?);
        let lhs = ring.marks(&ring.mult(&x, &y)?)?;
        let rhs: Vec<BigRational> = ring.marks(&x)?.iter().zip(ring.marks(&y)?).map(|(a, b)| a * b).collect();
        multiplicative &= lhs == rhs;
    }
    let kernel = ring.lin_kernel();
    let nc = p.lattice().noncyclic_classes().len();
    let klein = p.group().order() == 4 && !p.is_cyclic();
    let klein_ok = !klein || is_klein_kernel(&kernel);
    let mut w = witness([
        ("random_pairs", json!(pairs)),
        ("multiplicative", json!(multiplicative)),
        ("kernel_dim", json!(kernel.cols())),
        ("noncyclic_classes", json!(nc)),
    ]);
    if klein {
        w.insert("kernel_basis".into(), matrix_json(&kernel.transpose()));
    }
    Ok((status(multiplicative && kernel.cols() == nc && klein_ok), w))
}

fn mackey_algebra(p: &PGroup, rng: &mut ChaCha8Rng) -> Outcome {
    let g = p.group();
    if g.order() > ALGEBRA_ORDER_BOUND {
        return Ok((
            Status::Skip,
            witness([("reason", json!(format!("order {} exceeds {ALGEBRA_ORDER_BOUND}", g.order())))]),
        ));
    }
    let alg = build_algebra(g)?;
    let relations = check_relations(&alg)?;
    let n = alg.dim();
    let triples = 500;
    let mut associative = true;
    for _ in 0..triples {
        let (x, y, z) = (
            alg.basis_element(rng.gen_range(0..n)),
            alg.basis_element(rng.gen_range(0..n)),
            alg.basis_element(rng.gen_range(0..n)),
        );
        associative &= alg.mult(&alg.mult(&x, &y), &z) == alg.mult(&x, &alg.mult(&y, &z));
    }
    let closure = alg.generated_closure();
    Ok((
        status(associative && closure == n),
        witness([
            ("dim", json!(n)),
            ("relations_checked", json!(relations.checked)),
            ("random_triples", json!(triples)),
            ("associative", json!(associative)),
            ("generated_closure", json!(closure)),
        ]),
    ))
}

/// Bar dimensions of the twin-dual and its comparison with the twin functor.
fn twin_checks<F: Field>(m: &MackeyFunctorData<F>) -> Result<(bool, bool, bool)> {
    let dual = twin_dual(m)?;
    let bar_match = bar_all(&dual)?.dims() == bar_all(m)?.dims();
    let twin = twin_functor_dims(m)?;
    let dual_is_twin = dual.dims() == twin.as_slice();
    let dual_is_m = dual.dims() == m.dims();
    Ok((bar_match, dual_is_twin, dual_is_m))
}

fn bar_twin_dual(p: &PGroup) -> Outcome {
    let g = p.group();
    let fp = PrimeField::new(g.prime())?;
    let bq = burnside_functor(g, Rationals)?;
    let bp = burnside_functor(g, fp)?;
    let burnside_bar = bar_all(&bq)?.dims().iter().all(|&d| d == 1) && bar_all(&bp)?.dims().iter().all(|&d| d == 1);

    let (mut dual_bar, mut dual_char0, mut twin_mod_p) = (true, true, true);
    let fq = fixed_point_functor(g, Rationals)?;
    let fpp = fixed_point_functor(g, fp)?;
    for (bar_match, dual_is_twin, dual_is_m) in [twin_checks(&bq)?, twin_checks(&fq)?] {
        dual_bar &= bar_match;
        dual_char0 &= dual_is_twin && dual_is_m;
    }
    for (bar_match, dual_is_twin, _) in [twin_checks(&bp)?, twin_checks(&fpp)?] {
        dual_bar &= bar_match;
        twin_mod_p &= dual_is_twin;
    }

    let l = p.lattice();
    let (mut res_ok, mut res_cases) = (true, 0);
    for &k in l.maximal_subgroups(l.idx(g.whole())) {
        let ks = l.subgroup(k);
        for h in l.subgroups_of(k) {
            res_ok &= compare_bar_restriction(&bq, ks, l.subgroup(h))?.agrees();
            res_cases += 1;
        }
    }
    let (mut jef_ok, mut jef_cases) = (true, 0);
    for n in (0..l.len()).filter(|&n| !l.subgroup(n).is_trivial() && l.normalizer(n) == g.whole()) {
        for h in (0..l.len()).filter(|&h| l.includes(h, n)) {
            jef_ok &= compare_bar_jef(&bq, l.subgroup(n), l.subgroup(h))?.agrees();
            jef_cases += 1;
        }
    }
    let mut through_jef = true;
    if g.order() <= 8 {
        for &h in l.subgroups() {
            let (direct, composite) = bar_via_jef_res(&bq, h)?;
            through_jef &= direct == composite;
        }
    }
    Ok((
        status(burnside_bar && dual_bar && dual_char0 && twin_mod_p && res_ok && jef_ok && through_jef),
        witness([
            ("burnside_bar_one_dimensional", json!(burnside_bar)),
            ("bar_of_twin_dual", json!(dual_bar)),
            ("twin_dual_dims_char0", json!(dual_char0)),
            ("twin_dual_vs_twin_mod_p", json!(twin_mod_p)),
            ("restriction_cases", json!(res_cases)),
            ("restriction_agrees", json!(res_ok)),
            ("jef_cases", json!(jef_cases)),
            ("jef_agrees", json!(jef_ok)),
            ("bar_via_jef_res", json!(through_jef)),
        ]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn klein_four_report() {
        let g = make_group("C2xC2").unwrap();
        let r = verify_group(&g, VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.checks.len(), CATALOG.len());
        let nc = r.checks.iter().find(|c| c.id == "noncyclic-subquotients").unwrap();
        assert_eq!(nc.witness["kernel_dim"], json!(1));
    }

    #[test]
    fn catalog_is_sorted_and_unique() {
        let ids: Vec<&str> = CATALOG.iter().map(|c| c.0).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn klein_kernel_shape() {
        let k = QMatrix::from_i64_rows(Rationals, 1, &[vec![-2], vec![2], vec![2], vec![2], vec![-4]]).unwrap();
        assert!(is_klein_kernel(&k));
        let bad = QMatrix::from_i64_rows(Rationals, 1, &[vec![1], vec![1], vec![-1], vec![-1], vec![2]]).unwrap();
        assert!(!is_klein_kernel(&bad));
    }
}
