//! Named properties, each checked on the worked instance, an enumerated sweep
//! and seeded random instances.

mod bimod;
mod lift;
mod ops;
mod post;
mod ybe;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nova_core::algebra::novikov_residual;
use nova_core::linalg::linear_solution_space;
use nova_core::solver::{novikov_dim2, random_scalar, trunc_poly};
use nova_core::{Algebra, Field, Matrix, Scalar, Tensor2, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::doc::Document;

#[derive(Clone, Debug)]
pub struct PropConfig {
    /// Field override; each property has its own default.
    pub field: Option<Field>,
    /// Number of seeded random instances on top of the fixed sweep.
    pub trials: usize,
    pub seed: u64,
    /// Largest algebra dimension used by the random instances.
    pub dims: Option<usize>,
    /// Worker threads: 1 runs inline, 0 uses every core.
    pub jobs: usize,
}

impl Default for PropConfig {
    fn default() -> PropConfig {
        PropConfig { field: None, trials: 50, seed: 0, dims: None, jobs: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub instance: Document,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct PropOutcome {
    pub id: &'static str,
    pub field: Field,
    /// Instances evaluated.
    pub instances: u64,
    /// Instances on which the hypotheses held, or for an equivalence, the
    /// left side did.
    pub hypothesis_hits: u64,
    pub failures: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl PropOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropError {
    UnknownId(String),
    BadField(String),
}

impl std::fmt::Display for PropError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PropError::UnknownId(id) => {
                let ids: Vec<&str> = PROPERTIES.iter().map(|p| p.id).collect();
                write!(f, "unknown property `{id}`; known: {}", ids.join(", "))
            }
            PropError::BadField(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for PropError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Needs {
    AnyField,
    /// Uses 1/2.
    OddChar,
}

pub struct Property {
    pub id: &'static str,
    pub summary: &'static str,
    pub default_field: Field,
    needs: Needs,
    run: fn(&Run) -> Tally,
}

const F2: Field = Field::Prime(2);
const F3: Field = Field::Prime(3);
const F5: Field = Field::Prime(5);

macro_rules! prop {
    ($id:literal, $field:expr, $needs:ident, $run:path, $summary:literal) => {
        Property { id: $id, summary: $summary, default_field: $field, needs: Needs::$needs, run: $run }
    };
}

pub static PROPERTIES: &[Property] = &[
    prop!("P-SEMI", F2, AnyField, bimod::semi, "semidirect product Novikov iff bimodule Novikov identities hold"),
    prop!("P-DUAL", F2, AnyField, bimod::dual, "the dual of a bimodule is a bimodule"),
    prop!("P-EXT-STAR", F5, AnyField, ops::ext_star, "extended O-operators induce a Novikov product on the module"),
    prop!("P-DELTA-PM", F5, AnyField, ops::delta_pm, "α±β are homomorphisms exactly when α is extended of mass (-1, ±λ)"),
    prop!("P-R-PM", F5, OddChar, ops::r_pm, "the ± products are bimodule Novikov and α±β are weight-1 O-operators"),
    prop!("P-COR-BAX", F5, AnyField, ops::cor_bax, "T±id Rota-Baxter of weight λ∓2 iff T solves the shifted identity"),
    prop!("P-BAXTER", F3, OddChar, ops::baxter, "Baxter operators and their post-Novikov structures"),
    prop!("P-CONS", F5, AnyField, ops::cons, "extended O-operators on the regular bimodule give Novikov products"),
    prop!("P-ASSOC", F3, AnyField, post::assoc, "post-Novikov structures have Novikov associated products"),
    prop!("P-LRBIMOD", F3, AnyField, post::lrbimod, "post-Novikov structures give bimodule Novikov algebras"),
    prop!("P-COMPAT", F3, AnyField, post::compat, "the identity is a weight-1 O-operator recovering the structure"),
    prop!("P-HOM", F3, AnyField, post::hom, "O-operators are homomorphisms from the induced product"),
    prop!("P-TRI", F3, AnyField, post::tri, "commutative trialgebras with derivations give post-Novikov structures"),
    prop!("P-TENSOR-OP", F3, AnyField, ybe::tensor_op, "NYBE solutions are the O-operator form solutions"),
    prop!("P-ENYBE-EXT", F5, OddChar, ybe::enybe_ext, "ENYBE solutions are extended O-operators on the dual"),
    prop!("P-COR-ENYBE", F5, OddChar, ybe::cor_enybe, "the equivalent forms of the NYBE agree"),
    prop!("P-SKEW", F3, AnyField, ybe::skew, "skew NYBE solutions are weight-0 O-operators on the dual"),
    prop!("P-LEM-R", F3, AnyField, ybe::lem_r, "three characterizations of invariance agree"),
    prop!("P-QN", F5, OddChar, ybe::qn, "ENYBE on a quadratic algebra is an extended O-operator condition"),
    prop!("P-DUAL-EXO", F5, OddChar, ybe::dual_exo, "transport of extended O-operators along a quadratic form"),
    prop!("P-LIFT-BAL", F3, AnyField, lift::lift_bal, "lifting preserves balanced homomorphisms"),
    prop!("P-LIFT-EXT", F3, AnyField, lift::lift_ext, "lifting preserves extended O-operators"),
    prop!("P-COR-GN", F5, OddChar, lift::cor_gn, "lifted operators solve the NYBE and ENYBE in the double"),
    prop!("P-CIRC-DELTA", F3, AnyField, lift::circ_delta_prop, "closed form and pairing form of the dual product agree"),
    prop!("P-GNYBE-PROD", F3, AnyField, lift::gnybe_prod, "skew GNYBES solutions are those with a Novikov dual product"),
    prop!("P-GNYBE-EXT", F5, OddChar, lift::gnybe_ext, "extended O-operators on the dual solve the GNYBES"),
    prop!("P-GOPER", F2, AnyField, lift::goper, "skew GNYBES in the double iff the generalized O-operator identities"),
    prop!("P-GOPER-COR", F3, AnyField, lift::goper_cor, "weighted generalized O-operator identities"),
];

pub fn property(id: &str) -> Option<&'static Property> {
    PROPERTIES.iter().find(|p| p.id.eq_ignore_ascii_case(id))
}

pub fn run_property(id: &str, cfg: &PropConfig) -> Result<PropOutcome, PropError> {
    let prop = property(id).ok_or_else(|| PropError::UnknownId(id.to_string()))?;
    let field = cfg.field.unwrap_or(prop.default_field);
    if let (Needs::OddChar, Field::Prime(2)) = (prop.needs, field) {
        return Err(PropError::BadField(format!("{} divides by 2 and cannot run over F2", prop.id)))
    }
    let run = Run { cfg: cfg.clone(), field, salt: salt(prop.id) };
    let start = Instant::now();
    let tally = match cfg.jobs {
        0 | 1 => (prop.run)(&run),
        k => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| PropError::BadField(format!("thread pool: {e}")))?
            .install(|| (prop.run)(&run)),
    };
    Ok(PropOutcome {
        id: prop.id,
        field,
        instances: tally.instances,
        hypothesis_hits: tally.hits,
        failures: tally.failures,
        elapsed: start.elapsed(),
    })
}

fn salt(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// A running property: the configuration with its field resolved.
pub(crate) struct Run {
    pub cfg: PropConfig,
    pub field: Field,
    salt: u64,
}

impl Run {
    /// The generator for random instance `k` of a sweep named `stream`.
    pub fn rng(&self, stream: u64, k: u64) -> ChaCha8Rng {
        let s = self.cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ self.salt ^ stream.rotate_left(32) ^ k;
        ChaCha8Rng::seed_from_u64(s)
    }

    pub fn trials(&self) -> u64 {
        self.cfg.trials as u64
    }

    pub fn max_dim(&self, default: usize) -> usize {
        self.cfg.dims.unwrap_or(default).max(1)
    }

    /// Evaluates `eval` on every item, in parallel unless `jobs == 1`, and
    /// joins the results in item order.
    pub fn sweep<T, F>(&self, items: Vec<T>, eval: F) -> Tally
    where
        T: Send + Sync,
        F: Fn(&T) -> Check + Send + Sync,
    {
        let checks: Vec<Check> =
            if self.cfg.jobs == 1 { items.iter().map(&eval).collect() } else { items.par_iter().map(&eval).collect() };
        let mut t = Tally::default();
        for c in checks {
            t.add(c);
        }
        t
    }

    /// `trials` random instances, each built from its own generator.
    pub fn random<F>(&self, stream: u64, eval: F) -> Tally
    where
        F: Fn(&mut ChaCha8Rng) -> Check + Send + Sync,
    {
        let ks: Vec<u64> = (0..self.trials()).collect();
        self.sweep(ks, |&k| eval(&mut self.rng(stream, k)))
    }
}

#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub instances: u64,
    pub hits: u64,
    pub failures: Vec<Counterexample>,
}

impl Tally {
    pub fn add(&mut self, c: Check) {
        self.instances += 1;
        self.hits += u64::from(c.hit);
        if let Some(f) = c.failure {
            self.failures.push(f);
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.hits += other.hits;
        self.failures.extend(other.failures);
        self
    }
}

/// The verdict on one instance.
#[derive(Debug, Default)]
pub(crate) struct Check {
    hit: bool,
    problems: Vec<String>,
    failure: Option<Counterexample>,
}

impl Check {
    pub fn new() -> Check {
        Check::default()
    }

    /// Marks the hypotheses (or the left side of an equivalence) as met.
    pub fn hit(&mut self, h: bool) {
        self.hit |= h;
    }

    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    /// Both sides of an equivalence; the left side counts as a hit.
    pub fn equiv(&mut self, name: &str, lhs: bool, rhs: bool) {
        self.hit(lhs);
        self.expect(lhs == rhs, || format!("{name}: left side {lhs}, right side {rhs}"));
    }

    /// `hyp ⇒ concl`.
    pub fn implies(&mut self, name: &str, hyp: bool, concl: impl FnOnce() -> bool) {
        self.hit(hyp);
        if hyp {
            let ok = concl();
            self.expect(ok, || format!("{name}: hypotheses hold but the conclusion fails"));
        }
    }

    /// Folds an unexpected error into the verdict.
    pub fn ok<T>(&mut self, r: nova_core::Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.problems.push(format!("{what}: {e}"));
                None
            }
        }
    }

    #[cfg(test)]
    pub fn failed(&self) -> bool {
        !self.problems.is_empty()
    }

    /// Attaches the instance when something failed.
    pub fn done(mut self, instance: impl FnOnce() -> Document) -> Check {
        if !self.problems.is_empty() {
            self.failure = Some(Counterexample { instance: instance(), detail: self.problems.join("; ") });
        }
        self
    }
}

// ---------------------------------------------------------------- instances

/// Scalars used by exhaustive sweeps: the whole field, or `{-1, 0, 1}` over Q.
pub(crate) fn small_values(field: Field) -> Vec<Scalar> {
    match field.order() {
        Some(p) => (0..p).map(|k| field.element(k)).collect(),
        None => (-1..=1).map(|k| field.int(k)).collect(),
    }
}

/// Every `rows×cols` matrix with entries in [`small_values`], or `None` past
/// `limit` candidates.
pub(crate) fn all_matrices(field: Field, rows: usize, cols: usize, limit: u64) -> Option<Vec<Matrix>> {
    let vals = small_values(field);
    let k = rows * cols;
    let count = (vals.len() as u64).checked_pow(k as u32)?;
    if count > limit {
        return None;
    }
    Some(
        (0..count)
            .map(|mut idx| {
                let mut entries = vec![field.zero(); k];
                for e in entries.iter_mut().rev() {
                    *e = vals[(idx % vals.len() as u64) as usize].clone();
                    idx /= vals.len() as u64;
                }
                matrix_from_entries(field, rows, cols, entries)
            })
            .collect(),
    )
}

pub(crate) fn matrix_from_entries(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Matrix {
    let data = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
    Matrix::from_rows_sized(field, rows, cols, data).expect("entry count matches")
}

pub(crate) fn all_tensors(field: Field, n: usize, limit: u64) -> Option<Vec<Tensor2>> {
    Some(all_matrices(field, n, n, limit)?.iter().map(Tensor2::from_matrix).collect())
}

/// Skew tensors from every choice of the strictly upper coefficients.
pub(crate) fn all_skew(field: Field, n: usize, limit: u64) -> Option<Vec<Tensor2>> {
    let k = n * (n.saturating_sub(1)) / 2;
    let upper = all_matrices(field, 1, k, limit)?;
    Some(
        upper
            .iter()
            .map(|row| {
                let mut t = Tensor2::zeros(field, n);
                let mut c = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        let s = row.get(0, c).clone();
                        t.set(j, i, -&s);
                        t.set(i, j, s);
                        c += 1;
                    }
                }
                t
            })
            .collect(),
    )
}

/// Dimension-1 algebras `e∘e = c e` for every small `c`.
fn dim1(field: Field) -> Vec<Algebra> {
    small_values(field)
        .into_iter()
        .map(|c| Algebra::from_fn(field, 1, |_, _| Vector::new(field, vec![c.clone()]).expect("field matches")))
        .collect()
}

/// Dimension-2 Novikov algebras with coefficients in `{-1, 0, 1}` over Q,
/// read off the F3 enumeration.
fn rational_dim2() -> &'static Vec<Algebra> {
    static CELL: OnceLock<Vec<Algebra>> = OnceLock::new();
    CELL.get_or_init(|| {
        let lift = |s: &Scalar| match s {
            Scalar::Prime { value, .. } => [0, 1, -1][*value as usize],
            Scalar::Rational(_) => unreachable!(),
        };
        let q = Field::Rational;
        novikov_dim2(F3)
            .expect("F3 enumeration")
            .iter()
            .map(|a| {
                Algebra::from_fn(q, 2, |i, j| {
                    let c: Vec<i64> = a.basis_product(i, j).coords().iter().map(lift).collect();
                    Vector::from_ints(q, &c)
                })
            })
            .filter(|a| novikov_residual(a).is_zero())
            .collect()
    })
}

/// Every dimension-`n` Novikov algebra of the sweep: all of them over a
/// finite field for `n ≤ 2`, the coefficient-bounded list over Q, and a fixed
/// family in dimension 3.
pub(crate) fn enumerated(field: Field, n: usize) -> Vec<Algebra> {
    match n {
        0 => vec![Algebra::zero(field, 0)],
        1 => dim1(field),
        2 => match field {
            Field::Rational => rational_dim2().clone(),
            _ => novikov_dim2(field).expect("dimension-2 enumeration").to_vec(),
        },
        3 => dim3(field),
        _ => vec![trunc_poly(field, n), Algebra::zero(field, n)],
    }
}

/// `a ⊕ b` with the factors multiplying independently.
fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let (n, m) = (a.dim(), b.dim());
    let f = a.field();
    Algebra::from_fn(f, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a.basis_product(i, j).concat(&Vector::zeros(f, m)),
        (false, false) => Vector::zeros(f, n).concat(b.basis_product(i - n, j - n)),
        _ => Vector::zeros(f, n + m),
    })
}

fn dim3(field: Field) -> Vec<Algebra> {
    let a2 = nova_core::sample::a2(field);
    let unit = Algebra::from_fn(field, 1, |_, _| Vector::from_ints(field, &[1]));
    let z1 = Algebra::zero(field, 1);
    let t2 = trunc_poly(field, 2);
    let mut out = vec![trunc_poly(field, 3), direct_sum(&a2, &z1), direct_sum(&a2, &unit), direct_sum(&t2, &unit), Algebra::zero(field, 3)];
    // e1∘e1 = e2, e1∘e2 = e3, the rest zero.
    out.push(Algebra::from_fn(field, 3, |i, j| match (i, j) {
        (0, 0) => Vector::from_ints(field, &[0, 1, 0]),
        (0, 1) => Vector::from_ints(field, &[0, 0, 1]),
        _ => Vector::zeros(field, 3),
    }));
    out.retain(|a| novikov_residual(a).is_zero());
    out
}

/// A random algebra of dimension between 1 and `max_dim`, weighted toward
/// dimension 2.
pub(crate) fn random_algebra(rng: &mut impl Rng, field: Field, max_dim: usize) -> Algebra {
    let n = match rng.gen_range(0..10) {
        0 => 1,
        1..=6 => 2,
        _ => 3,
    }
    .min(max_dim);
    let pool = enumerated(field, n);
    pool[rng.gen_range(0..pool.len())].clone()
}

// ------------------------------------------------------------ linear spaces

/// A basis of the `rows×cols` matrices `X` with `f(X) = 0`, for linear `f`
/// returning any list of vectors.
pub(crate) fn map_space(field: Field, rows: usize, cols: usize, f: impl Fn(&Matrix) -> Vec<Vector>) -> Vec<Matrix> {
    let flat = |v: &Vector| matrix_from_entries(field, rows, cols, v.coords().to_vec());
    let concat = |vs: Vec<Vector>| {
        let coords: Vec<Scalar> = vs.into_iter().flat_map(Vector::into_coords).collect();
        Vector::new(field, coords).expect("field matches")
    };
    linear_solution_space(field, rows * cols, |v| concat(f(&flat(v)))).iter().map(flat).collect()
}

/// A uniformly random element of the span of `basis` (zero if empty).
pub(crate) fn random_combination(rng: &mut impl Rng, field: Field, rows: usize, cols: usize, basis: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for b in basis {
        out = out.add(&b.scale(&random_scalar(rng, field)));
    }
    out
}

/// Every element of the span of `basis` with coefficients in [`small_values`],
/// or `None` past `limit`.
pub(crate) fn all_combinations(field: Field, rows: usize, cols: usize, basis: &[Matrix], limit: u64) -> Option<Vec<Matrix>> {
    let coeffs = all_matrices(field, 1, basis.len(), limit)?;
    Some(
        coeffs
            .iter()
            .map(|c| {
                let mut out = Matrix::zeros(field, rows, cols);
                for (k, b) in basis.iter().enumerate() {
                    out = out.add(&b.scale(c.get(0, k)));
                }
                out
            })
            .collect(),
    )
}

pub(crate) fn random_nonzero(rng: &mut impl Rng, field: Field) -> Scalar {
    loop {
        let s = random_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// The closed and pairing forms of `∘_Δ` agree on `(alg, r)`.
pub(crate) fn delta_agrees(alg: &Algebra, r: &Tensor2, c: &mut Check) {
    let closed = nova_core::lift::circ_delta_closed(alg, r);
    let pairing = nova_core::lift::circ_delta_pairing(alg, r);
    if let (Some(a), Some(b)) = (c.ok(closed, "∘_Δ closed form"), c.ok(pairing, "∘_Δ pairing")) {
        c.expect(a == b, || "∘_Δ closed form disagrees with the pairing definition".into());
    }
}

/// A product table with random structure constants.
pub(crate) fn random_table(rng: &mut impl Rng, field: Field, n: usize) -> Algebra {
    let m = nova_core::solver::random_matrix(rng, field, n, n * n);
    Algebra::from_fn(field, n, |i, j| m.column(i * n + j))
}

/// Picks one element of a nonempty slice.
pub(crate) fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_unique() {
        assert_eq!(PROPERTIES.len(), 28);
        let mut ids: Vec<_> = PROPERTIES.iter().map(|p| p.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 28);
        assert!(matches!(run_property("P-NOPE", &PropConfig::default()), Err(PropError::UnknownId(_))));
        let cfg = PropConfig { field: Some(F2), ..PropConfig::default() };
        assert!(matches!(run_property("P-R-PM", &cfg), Err(PropError::BadField(_))));
    }

    #[test]
    fn enumerations_have_expected_sizes() {
        assert_eq!(all_matrices(F3, 2, 2, 1000).unwrap().len(), 81);
        assert!(all_matrices(F5, 3, 3, 1000).is_none());
        assert_eq!(all_skew(F3, 3, 1000).unwrap().len(), 27);
        assert!(all_skew(F3, 3, 1000).unwrap().iter().all(Tensor2::is_skew));
        assert_eq!(enumerated(F2, 2).len(), 52);
        assert!(rational_dim2().len() > 10);
        assert!(dim3(F5).len() >= 5);
    }

    #[test]
    fn map_space_finds_balanced_maps_on_the_worked_algebra() {
        let f = Field::Rational;
        let a2 = nova_core::sample::a2(f);
        let ctx = nova_core::Bimodule::regular(&a2);
        let space = map_space(f, 2, 2, |b| ops::bal_hom_values(&ctx, b));
        assert!(!space.is_empty());
        for b in &space {
            assert!(nova_core::operators::balanced_residual(&ctx, b).unwrap().is_zero());
            assert!(nova_core::operators::homomorphism_residual(&ctx, b).unwrap().is_zero());
        }
        assert!(space.len() < 4);
    }
}
