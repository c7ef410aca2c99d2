//! Exhaustive search over small prime fields and seeded random instances.
//!
//! A candidate is a coefficient vector with one digit in `0..p` per unknown;
//! candidates are scanned in lexicographic order (first coordinate most
//! significant) and shards take every `count`-th index.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, BimodNov};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::operators::{ext_o_residual, is_rota_baxter, MassParams};
use crate::scalar::{Field, Scalar};
use crate::tensor::Tensor2;
use crate::ybe::{enybe_residual, is_invariant, is_quadratic, nybe_residual, BilForm};

/// Largest candidate space a single run may scan.
pub const MAX_CANDIDATES: u128 = 1 << 32;

/// What to search for. Contexts are fixed; the unknowns are the coefficients
/// of the object named by the variant.
#[derive(Clone, Debug)]
pub enum Target {
    /// Product tables `mul[i][j][k]` of the given dimension.
    NovikovAlgebra { dim: usize },
    /// Tensors `r` in `A⊗A`.
    NybeSolution { alg: Algebra },
    EnybeSolution { alg: Algebra, epsilon: Scalar },
    /// Maps `α: M → A` extended with the fixed `β` at the given masses.
    ExtOOperator { ctx: BimodNov, beta: Matrix, params: MassParams },
    RotaBaxter { alg: Algebra, lambda: Scalar },
    /// Symmetric tensors, one unknown per entry `i ≤ j`.
    InvariantSymmetricTensor { alg: Algebra },
    /// Symmetric grids, one unknown per entry `i ≤ j`.
    QuadraticForm { alg: Algebra },
}

impl Target {
    pub fn kind(&self) -> &'static str {
        match self {
            Target::NovikovAlgebra { .. } => "novikov-algebra",
            Target::NybeSolution { .. } => "nybe-solution",
            Target::EnybeSolution { .. } => "enybe-solution",
            Target::ExtOOperator { .. } => "ext-o-operator",
            Target::RotaBaxter { .. } => "rota-baxter",
            Target::InvariantSymmetricTensor { .. } => "invariant-symmetric-tensor",
            Target::QuadraticForm { .. } => "quadratic-form",
        }
    }

    fn context_field(&self) -> Option<Field> {
        match self {
            Target::NovikovAlgebra { .. } => None,
            Target::NybeSolution { alg }
            | Target::EnybeSolution { alg, .. }
            | Target::RotaBaxter { alg, .. }
            | Target::InvariantSymmetricTensor { alg }
            | Target::QuadraticForm { alg } => Some(alg.field()),
            Target::ExtOOperator { ctx, .. } => Some(ctx.field()),
        }
    }

    /// Number of unknowns.
    pub fn unknowns(&self) -> usize {
        match self {
            Target::NovikovAlgebra { dim } => dim * dim * dim,
            Target::NybeSolution { alg } | Target::EnybeSolution { alg, .. } | Target::RotaBaxter { alg, .. } => {
                alg.dim() * alg.dim()
            }
            Target::ExtOOperator { ctx, .. } => ctx.base().dim() * ctx.mdim(),
            Target::InvariantSymmetricTensor { alg } | Target::QuadraticForm { alg } => {
                alg.dim() * (alg.dim() + 1) / 2
            }
        }
    }

    /// A canonical text form of the fixed context, hashed into results.
    pub fn context_text(&self) -> String {
        let mut s = String::from(self.kind());
        match self {
            Target::NovikovAlgebra { dim } => write!(s, ";dim={dim}").unwrap(),
            Target::NybeSolution { alg } | Target::InvariantSymmetricTensor { alg } | Target::QuadraticForm { alg } => {
                write!(s, ";alg={}", algebra_text(alg)).unwrap()
            }
            Target::EnybeSolution { alg, epsilon } => write!(s, ";alg={};eps={epsilon}", algebra_text(alg)).unwrap(),
            Target::RotaBaxter { alg, lambda } => write!(s, ";alg={};lambda={lambda}", algebra_text(alg)).unwrap(),
            Target::ExtOOperator { ctx, beta, params } => {
                write!(s, ";base={};module={}", algebra_text(ctx.base()), algebra_text(ctx.product())).unwrap();
                for (l, r) in ctx.bimodule().l_basis().iter().zip(ctx.bimodule().r_basis()) {
                    write!(s, ";l={};r={}", matrix_text(l), matrix_text(r)).unwrap();
                }
                write!(s, ";beta={};params={},{},{}", matrix_text(beta), params.lambda, params.kappa, params.mu)
                    .unwrap();
            }
        }
        s
    }
}

fn algebra_text(alg: &Algebra) -> String {
    let mut s = format!("{}:{}:", alg.field(), alg.dim());
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for c in alg.basis_product(i, j).coords() {
                write!(s, "{c},").unwrap();
            }
        }
    }
    s
}

fn matrix_text(m: &Matrix) -> String {
    let mut s = format!("{}x{}:", m.rows(), m.cols());
    for c in m.entries() {
        write!(s, "{c},").unwrap();
    }
    s
}

/// `index` of `count` shards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };

    /// Parses `i/k`.
    pub fn parse(s: &str) -> Result<Shard> {
        let bad = || Error::Parse(format!("bad shard `{s}`, expected i/k"));
        let (i, k) = s.split_once('/').ok_or_else(bad)?;
        let index: u64 = i.trim().parse().map_err(|_| bad())?;
        let count: u64 = k.trim().parse().map_err(|_| bad())?;
        if count == 0 || index >= count {
            return Err(bad());
        }
        Ok(Shard { index, count })
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub target: Target,
    pub field: Field,
    pub shard: Shard,
    /// Worker threads; 1 scans on the calling thread, 0 uses the rayon pool.
    pub jobs: usize,
}

impl SearchSpec {
    pub fn new(target: Target, field: Field) -> SearchSpec {
        SearchSpec { target, field, shard: Shard::WHOLE, jobs: 0 }
    }

    pub fn candidate_count(&self) -> u128 {
        let p = self.field.order().unwrap_or(0) as u128;
        let mut total: u128 = 1;
        for _ in 0..self.target.unknowns() {
            total = total.saturating_mul(p);
        }
        total
    }

    fn validate(&self) -> Result<u64> {
        match self.field {
            Field::Prime(2 | 3 | 5 | 7) => {}
            _ => return Err(Error::Parse(format!("search needs F2, F3, F5 or F7, got {}", self.field))),
        }
        if let Some(f) = self.target.context_field() {
            if f != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        if let Target::EnybeSolution { epsilon, .. } = &self.target {
            if epsilon.field() != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        let total = self.candidate_count();
        if total > MAX_CANDIDATES {
            return Err(Error::SpaceTooLarge(total));
        }
        Ok(total as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    /// Lexicographic candidate index.
    pub index: u64,
    /// Coefficients of the found object: the product table, tensor grid or
    /// matrix, row-major, as canonical residues.
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub kind: &'static str,
    pub field: Field,
    pub shard: Shard,
    pub solutions: Vec<Solution>,
    /// Candidates scanned by this shard.
    pub candidates: u64,
    pub elapsed: Duration,
    /// SHA-256 of the context and every solution, hex encoded.
    pub hash: String,
    pub context_hash: String,
}

#[derive(Serialize)]
struct Line<'a> {
    kind: &'a str,
    field: String,
    index: u64,
    coeffs: &'a [u32],
    context: &'a str,
}

impl SearchResult {
    /// One JSON object per solution.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.solutions {
            let line = Line {
                kind: self.kind,
                field: self.field.to_string(),
                index: s.index,
                coeffs: &s.coeffs,
                context: &self.context_hash,
            };
            out.push_str(&serde_json::to_string(&line).expect("plain data serializes"));
            out.push('\n');
        }
        out
    }
}

fn sha_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

fn result_hash(context: &str, solutions: &[Solution]) -> String {
    let mut text = String::from(context);
    for s in solutions {
        write!(text, "\n{}:", s.index).unwrap();
        for c in &s.coeffs {
            write!(text, "{c},").unwrap();
        }
    }
    sha_hex(text.as_bytes())
}

/// The candidate with the given lexicographic index.
pub fn decode(index: u64, p: u32, unknowns: usize) -> Vec<u32> {
    let mut digits = vec![0u32; unknowns];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % p as u64) as u32;
        rest /= p as u64;
    }
    digits
}

/// Scans the shard's candidates and returns every one that passes.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchResult> {
    let total = spec.validate()?;
    let start = Instant::now();
    let p = spec.field.characteristic();
    let k = spec.target.unknowns();
    let first = spec.shard.index;
    let step = spec.shard.count;
    let mine = if total > first { (total - first).div_ceil(step) } else { 0 };
    let test = |t: u64| -> Option<Solution> {
        let index = first + t * step;
        let digits = decode(index, p, k);
        accepts(&spec.target, spec.field, &digits).then(|| Solution { index, coeffs: expand(&spec.target, &digits) })
    };
    let solutions: Vec<Solution> = if spec.jobs == 1 {
        (0..mine).filter_map(test).collect()
    } else if spec.jobs == 0 {
        (0..mine).into_par_iter().filter_map(test).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
            .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
        pool.install(|| (0..mine).into_par_iter().filter_map(test).collect())
    };
    let context = spec.target.context_text();
    let context_hash = sha_hex(context.as_bytes());
    Ok(SearchResult {
        kind: spec.target.kind(),
        field: spec.field,
        shard: spec.shard,
        hash: result_hash(&context, &solutions),
        context_hash,
        solutions,
        candidates: mine,
        elapsed: start.elapsed(),
    })
}

/// Merges shard results into the unsharded result.
pub fn merge_shards(spec: &SearchSpec, parts: Vec<SearchResult>) -> SearchResult {
    let mut solutions: Vec<Solution> = parts.iter().flat_map(|r| r.solutions.clone()).collect();
    solutions.sort_by_key(|s| s.index);
    let context = spec.target.context_text();
    SearchResult {
        kind: spec.target.kind(),
        field: spec.field,
        shard: Shard::WHOLE,
        hash: result_hash(&context, &solutions),
        context_hash: sha_hex(context.as_bytes()),
        candidates: parts.iter().map(|r| r.candidates).sum(),
        elapsed: parts.iter().map(|r| r.elapsed).sum(),
        solutions,
    }
}

/// Full coefficient list for the candidate; symmetric unknowns are expanded
/// to the whole grid.
fn expand(target: &Target, digits: &[u32]) -> Vec<u32> {
    match target {
        Target::InvariantSymmetricTensor { alg } | Target::QuadraticForm { alg } => {
            let n = alg.dim();
            let mut grid = vec![0u32; n * n];
            let mut it = digits.iter();
            for i in 0..n {
                for j in i..n {
                    let d = *it.next().expect("one digit per upper entry");
                    grid[i * n + j] = d;
                    grid[j * n + i] = d;
                }
            }
            grid
        }
        _ => digits.to_vec(),
    }
}

/// The object a coefficient list describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Found {
    Algebra(Algebra),
    Tensor(Tensor2),
    Map(Matrix),
    Form(BilForm),
}

pub fn build(target: &Target, field: Field, coeffs: &[u32]) -> Result<Found> {
    let s = |d: u32| field.element(d as u64);
    let square = |n: usize| -> Result<Matrix> {
        Matrix::from_rows(field, (0..n).map(|i| (0..n).map(|j| s(coeffs[i * n + j])).collect()).collect())
    };
    Ok(match target {
        Target::NovikovAlgebra { dim } => {
            let n = *dim;
            Found::Algebra(Algebra::from_fn(field, n, |i, j| {
                Vector::new(field, (0..n).map(|k| s(coeffs[(i * n + j) * n + k])).collect()).expect("field matches")
            }))
        }
        Target::NybeSolution { alg } | Target::EnybeSolution { alg, .. } | Target::InvariantSymmetricTensor { alg } => {
            Found::Tensor(Tensor2::from_matrix(&square(alg.dim())?))
        }
        Target::RotaBaxter { alg, .. } => Found::Map(square(alg.dim())?),
        Target::QuadraticForm { alg } => Found::Form(BilForm::new(square(alg.dim())?)?),
        Target::ExtOOperator { ctx, .. } => {
            let (n, m) = (ctx.base().dim(), ctx.mdim());
            Found::Map(Matrix::from_rows(
                field,
                (0..n).map(|i| (0..m).map(|j| s(coeffs[i * m + j])).collect()).collect(),
            )?)
        }
    })
}

fn accepts(target: &Target, field: Field, digits: &[u32]) -> bool {
    if let Target::NovikovAlgebra { dim } = target {
        return fast_novikov(digits, *dim, field.characteristic() as u64);
    }
    let found = build(target, field, &expand(target, digits)).expect("candidate shape matches target");
    check_found(target, &found).unwrap_or(false)
}

/// Evaluates the target's defining residual on a built candidate.
pub fn check_found(target: &Target, found: &Found) -> Result<bool> {
    Ok(match (target, found) {
        (Target::NovikovAlgebra { .. }, Found::Algebra(a)) => a.is_novikov(),
        (Target::NybeSolution { alg }, Found::Tensor(r)) => nybe_residual(alg, r)?.is_zero(),
        (Target::EnybeSolution { alg, epsilon }, Found::Tensor(r)) => enybe_residual(alg, r, epsilon)?.is_zero(),
        (Target::InvariantSymmetricTensor { alg }, Found::Tensor(r)) => is_invariant(alg, r)?,
        (Target::RotaBaxter { alg, lambda }, Found::Map(t)) => is_rota_baxter(alg, t, lambda)?,
        (Target::QuadraticForm { alg }, Found::Form(b)) => is_quadratic(alg, b)?,
        (Target::ExtOOperator { ctx, beta, params }, Found::Map(a)) => ext_o_residual(ctx, a, beta, params)?.holds(),
        _ => return Err(Error::Inconsistent("candidate does not match the target".into())),
    })
}

/// Re-checks every listed solution with the exact residual operations.
pub fn reverify(spec: &SearchSpec, result: &SearchResult) -> Result<bool> {
    for s in &result.solutions {
        let found = build(&spec.target, spec.field, &s.coeffs)?;
        if !check_found(&spec.target, &found)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Novikov identities over `F_p` on raw residues, independent of the exact
/// residual code.
pub fn fast_novikov(c: &[u32], n: usize, p: u64) -> bool {
    let at = |i: usize, j: usize, k: usize| c[(i * n + j) * n + k] as u64;
    // (e_a∘e_b)∘e_c, as a vector
    let left_assoc = |a: usize, b: usize, cc: usize, out: &mut [u64]| {
        for (t, o) in out.iter_mut().enumerate() {
            let mut s = 0;
            for k in 0..n {
                s += at(a, b, k) * at(k, cc, t);
            }
            *o = s % p;
        }
    };
    // e_a∘(e_b∘e_c)
    let right_assoc = |a: usize, b: usize, cc: usize, out: &mut [u64]| {
        for (t, o) in out.iter_mut().enumerate() {
            let mut s = 0;
            for k in 0..n {
                s += at(b, cc, k) * at(a, k, t);
            }
            *o = s % p;
        }
    };
    let mut x = vec![0u64; n];
    let mut y = vec![0u64; n];
    let mut z = vec![0u64; n];
    let mut w = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                left_assoc(a, b, cc, &mut x);
                left_assoc(a, cc, b, &mut y);
                if x != y {
                    return false;
                }
                right_assoc(a, b, cc, &mut y);
                left_assoc(b, a, cc, &mut z);
                right_assoc(b, a, cc, &mut w);
                for t in 0..n {
                    if !(x[t] + p - y[t] + w[t] + p - z[t]).is_multiple_of(p) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All dimension-2 Novikov algebras over `field`, cached per field.
pub fn novikov_dim2(field: Field) -> Result<Arc<Vec<Algebra>>> {
    static CACHE: OnceLock<Mutex<HashMap<Field, Arc<Vec<Algebra>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&field) {
        return Ok(v.clone());
    }
    let target = Target::NovikovAlgebra { dim: 2 };
    let result = enumerate(&SearchSpec::new(target.clone(), field))?;
    let algs = result
        .solutions
        .iter()
        .map(|s| match build(&target, field, &s.coeffs)? {
            Found::Algebra(a) => Ok(a),
            _ => unreachable!(),
        })
        .collect::<Result<Vec<_>>>()?;
    let algs = Arc::new(algs);
    cache.lock().expect("cache lock").insert(field, algs.clone());
    Ok(algs)
}

/// Instance families for seeded sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `k[x]/(x^n)` with `a∘b = a·D(b)`, `D = x d/dx`.
    TruncPoly { n: usize },
    /// The `seed`-th (mod count) dimension-2 Novikov algebra of the enumeration.
    EnumeratedDim2,
    /// `count` random `rows×cols` matrices.
    RandomMaps { rows: usize, cols: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Algebra(Algebra),
    Maps(Vec<Matrix>),
}

/// `e_i∘e_j = j·e_{i+j}` (zero past `x^{n-1}`).
pub fn trunc_poly(field: Field, n: usize) -> Algebra {
    Algebra::from_fn(field, n, |i, j| {
        let mut v = Vector::zeros(field, n);
        if i + j < n {
            v.set(i + j, field.int(j as i64));
        }
        v
    })
}

pub fn random_instance(seed: u64, family: &Family, field: Field) -> Result<Instance> {
    match family {
        Family::TruncPoly { n } => Ok(Instance::Algebra(trunc_poly(field, *n))),
        Family::EnumeratedDim2 => {
            let all = novikov_dim2(field)?;
            if all.is_empty() {
                return Err(Error::Inconsistent("no enumerated algebras".into()));
            }
            Ok(Instance::Algebra(all[(seed % all.len() as u64) as usize].clone()))
        }
        Family::RandomMaps { rows, cols, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Instance::Maps((0..*count).map(|_| random_matrix(&mut rng, field, *rows, *cols)).collect()))
        }
    }
}

/// A uniform scalar over `F_p`, or an integer in `[-3, 3]` over Q.
pub fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => field.element(rng.gen_range(0..p as u64)),
        Field::Rational => field.int(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows).map(|_| (0..cols).map(|_| random_scalar(rng, field)).collect()).collect();
    Matrix::from_rows_sized(field, rows, cols, data).expect("sizes match")
}

pub fn random_tensor<R: Rng>(rng: &mut R, field: Field, dim: usize) -> Tensor2 {
    Tensor2::from_matrix(&random_matrix(rng, field, dim, dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::novikov_residual;
    use crate::sample;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn decode_is_lexicographic() {
        assert_eq!(decode(0, 3, 3), vec![0, 0, 0]);
        assert_eq!(decode(1, 3, 3), vec![0, 0, 1]);
        assert_eq!(decode(3, 3, 3), vec![0, 1, 0]);
        assert_eq!(decode(26, 3, 3), vec![2, 2, 2]);
    }

    #[test]
    fn novikov_dim2_over_f2_reverifies() {
        let spec = SearchSpec::new(Target::NovikovAlgebra { dim: 2 }, f(2));
        let res = enumerate(&spec).unwrap();
        assert_eq!(res.candidates, 256);
        assert!(!res.solutions.is_empty());
        assert!(reverify(&spec, &res).unwrap());
        // the zero product and A₂ mod 2 are both present
        assert_eq!(res.solutions[0].index, 0);
        let a2: Vec<u32> = vec![1, 0, 0, 1, 0, 1, 0, 0];
        assert!(res.solutions.iter().any(|s| s.coeffs == a2));
    }

    #[test]
    fn shards_union_to_the_whole() {
        let mut spec = SearchSpec::new(Target::NybeSolution { alg: sample::a2(f(3)) }, f(3));
        let whole = enumerate(&spec).unwrap();
        let parts = (0..4)
            .map(|i| {
                spec.shard = Shard { index: i, count: 4 };
                enumerate(&spec).unwrap()
            })
            .collect();
        spec.shard = Shard::WHOLE;
        let merged = merge_shards(&spec, parts);
        assert_eq!(merged.solutions, whole.solutions);
        assert_eq!(merged.hash, whole.hash);
        assert_eq!(merged.candidates, 81);
        // r = e2⊗e2 has grid [0,0,0,1]
        assert!(whole.solutions.iter().any(|s| s.coeffs == vec![0, 0, 0, 1]));
    }

    #[test]
    fn identity_is_found_among_weight_minus_one_operators() {
        let f3 = f(3);
        let spec = SearchSpec::new(Target::RotaBaxter { alg: sample::a2(f3), lambda: f3.int(-1) }, f3);
        let res = enumerate(&spec).unwrap();
        assert!(res.solutions.iter().any(|s| s.coeffs == vec![1, 0, 0, 1]));
        assert!(reverify(&spec, &res).unwrap());
    }

    #[test]
    fn bounds_and_fields() {
        let spec = SearchSpec::new(Target::NovikovAlgebra { dim: 4 }, f(2));
        assert!(matches!(enumerate(&spec), Err(Error::SpaceTooLarge(_))));
        let spec = SearchSpec::new(Target::NovikovAlgebra { dim: 2 }, Field::Rational);
        assert!(enumerate(&spec).is_err());
        let spec = SearchSpec::new(Target::NybeSolution { alg: sample::a2(f(5)) }, f(3));
        assert!(matches!(enumerate(&spec), Err(Error::FieldMismatch)));
    }

    #[test]
    fn families_are_reproducible() {
        let q = Field::Rational;
        match random_instance(0, &Family::TruncPoly { n: 3 }, q).unwrap() {
            Instance::Algebra(a) => assert!(novikov_residual(&a).is_zero()),
            _ => panic!("expected an algebra"),
        }
        let fam = Family::RandomMaps { rows: 2, cols: 3, count: 2 };
        assert_eq!(random_instance(9, &fam, f(5)).unwrap(), random_instance(9, &fam, f(5)).unwrap());
        let all = novikov_dim2(f(2)).unwrap();
        match random_instance(3, &Family::EnumeratedDim2, f(2)).unwrap() {
            Instance::Algebra(a) => assert_eq!(a, all[3]),
            _ => panic!("expected an algebra"),
        }
    }
}
