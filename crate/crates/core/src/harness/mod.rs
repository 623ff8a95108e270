//! Seeded instance generation and the property suites.

pub mod random;
mod suites;

use std::fmt;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Matrix};
use crate::semispace::PositiveOperator;
use random::{mix_seed, random_matrix, random_rect, SeedStream};

pub use suites::{orthogonal_partner, SUITES};

/// Parameters of one random instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceSpec {
    pub n: usize,
    pub rank_a: usize,
    pub seed: u64,
    pub magnitude: f64,
}

impl InstanceSpec {
    pub fn new(n: usize, rank_a: usize, seed: u64) -> Result<Self> {
        let spec = Self {
            n,
            rank_a,
            seed,
            magnitude: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Full-rank `A`.
    pub fn full(n: usize, seed: u64) -> Self {
        Self {
            n,
            rank_a: n,
            seed,
            magnitude: 1.0,
        }
    }

    /// Dimension in `lo..=hi` and rank in `1..=n`, both drawn from `seed`.
    pub fn sample(seed: u64, lo: usize, hi: usize) -> Self {
        let mut rng = SeedStream::stream(seed, u64::MAX);
        let n = rng.random_range(lo..=hi);
        // Half the instances get a singular A.
        let rank_a = if rng.random_bool(0.5) { n } else { rng.random_range(1..=n) };
        Self {
            n,
            rank_a,
            seed,
            magnitude: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        if self.rank_a == 0 || self.rank_a > self.n {
            return Err(Error::InvalidConfig(format!(
                "rank_a must lie in 1..={}, got {}",
                self.n, self.rank_a
            )));
        }
        if !(self.magnitude > 0.0) || !self.magnitude.is_finite() {
            return Err(Error::InvalidConfig("magnitude must be positive".into()));
        }
        Ok(())
    }
}

/// `A = G*G + shift·I`, with all but the top `rank_a` eigenvalues set to zero.
///
/// # Panics
/// If `spec` is invalid.
pub fn gen_psd(spec: &InstanceSpec) -> PositiveOperator<f64> {
    spec.validate().expect("valid instance spec");
    let n = spec.n;
    let mut rng = SeedStream::stream(spec.seed, 0);
    let g: Matrix<f64> = random_rect(&mut rng, n, n, 1.0);
    let shift = 0.1;
    let gram = g.adjoint().mm(&g);
    let m = Matrix::from_fn(n, n, |i, j| {
        let h = (gram[(i, j)] + gram[(j, i)].conj()) * 0.5;
        if i == j {
            h + shift
        } else {
            h
        }
    });
    let eig = hermitian_eigen(&m).expect("Hermitian by construction");
    let cut = n - spec.rank_a;
    let kept: Vec<f64> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &mu)| if k < cut { 0.0 } else { mu })
        .collect();
    let mut a = Matrix::<f64>::zeros(n, n);
    for (k, &mu) in kept.iter().enumerate() {
        if mu == 0.0 {
            continue;
        }
        let v = eig.vector(k);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] += v[i] * v[j].conj() * mu;
            }
        }
    }
    let a = Matrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    PositiveOperator::new(a, None).expect("positive by construction")
}

/// `T = P G P + K` with `P` the projection onto `ran A` and `K` mapping into
/// `ker A`, so that `A^{1/2}T` vanishes on `ker A`.
///
/// # Panics
/// If `spec.n` differs from the dimension of `a`.
pub fn gen_member(spec: &InstanceSpec, a: &PositiveOperator<f64>) -> Matrix<f64> {
    gen_member_stream(spec, a, 1)
}

/// As [`gen_member`], drawing from stream `index` of the spec's seed.
pub fn gen_member_stream(spec: &InstanceSpec, a: &PositiveOperator<f64>, index: u64) -> Matrix<f64> {
    assert_eq!(spec.n, a.dim(), "instance dimension must match A");
    let n = spec.n;
    let mut rng = SeedStream::stream(spec.seed, index);
    let g: Matrix<f64> = random_matrix(&mut rng, n, spec.magnitude);
    let v = a.range_basis();
    let p = v.mm(&v.adjoint());
    let mut t = p.mm(&g).mm(&p);
    let kb = a.kernel_basis();
    if kb.cols() > 0 {
        let h: Matrix<f64> = random_rect(&mut rng, kb.cols(), n, spec.magnitude);
        t = t.add(&kb.mm(&h)).expect("same shape");
    }
    t
}

/// FNV-1a over the bit patterns of `A` and the operators of an instance.
pub fn digest(mats: &[&Matrix<f64>]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for m in mats {
        eat(&(m.rows() as u64).to_le_bytes());
        for z in m.as_slice() {
            eat(&z.re.to_bits().to_le_bytes());
            eat(&z.im.to_bits().to_le_bytes());
        }
    }
    h
}

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct Trial {
    pub pass: bool,
    pub digest: u64,
    /// Named quantities, for the failure record.
    pub observed: Vec<(String, f64)>,
    pub tolerance: f64,
    /// Free-form remark (kept even on success, e.g. a logged disagreement).
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub digest: u64,
    pub observed: Vec<(String, f64)>,
    pub tolerance: f64,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub suite: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    /// Remarks attached to passing trials.
    pub notes: Vec<(usize, String)>,
    pub elapsed: f64,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// `suite=<name> trials=<k> passes=<p> failures=<f>`
    pub fn summary(&self) -> String {
        format!(
            "suite={} trials={} passes={} failures={}",
            self.suite,
            self.trials,
            self.passes,
            self.failures.len()
        )
    }

    /// Everything except the timing, which is the only nondeterministic part.
    pub fn body(&self) -> String {
        let mut out = self.summary();
        out.push('\n');
        for f in &self.failures {
            out.push_str(&format!(
                "failure trial={} seed={} digest={:016x} tolerance={:e}",
                f.trial, f.seed, f.digest, f.tolerance
            ));
            for (k, v) in &f.observed {
                out.push_str(&format!(" {k}={v:e}"));
            }
            out.push('\n');
        }
        for (trial, note) in &self.notes {
            out.push_str(&format!("note trial={trial} {note}\n"));
        }
        out
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}elapsed={:.3}s", self.body(), self.elapsed)
    }
}

/// Seed of trial `index` in a suite run.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    mix_seed(seed, index as u64)
}

/// Runs `trials` independent trials of the named suite.
pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<PropertyReport> {
    let check = suites::lookup(name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let start = Instant::now();
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|k| check(trial_seed(seed, k), k))
        .collect();
    Ok(collect(name, seed, outcomes, start))
}

/// Re-runs a single trial from its seed (as printed in a failure record).
pub fn replay(name: &str, trial_seed: u64) -> Result<Trial> {
    let check = suites::lookup(name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(check(trial_seed, 0))
}

fn collect(name: &str, seed: u64, outcomes: Vec<Trial>, start: Instant) -> PropertyReport {
    let trials = outcomes.len();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (k, t) in outcomes.into_iter().enumerate() {
        if let Some(note) = &t.note {
            notes.push((k, note.clone()));
        }
        if !t.pass {
            failures.push(Failure {
                trial: k,
                seed: trial_seed(seed, k),
                digest: t.digest,
                observed: t.observed,
                tolerance: t.tolerance,
            });
        }
    }
    PropertyReport {
        suite: name.to_string(),
        trials,
        passes: trials - failures.len(),
        failures,
        notes,
        elapsed: start.elapsed().as_secs_f64(),
    }
}
