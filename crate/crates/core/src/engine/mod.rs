//! Extremal quantities over the `A`-unit sphere.
//!
//! Everything here works on the reduced operator `B` of
//! [`semispace`](crate::semispace), where the `A`-unit sphere becomes the
//! plain unit sphere of `ℂʳ`. The central object is the objective
//!
//! ```text
//!     f_λ(y) = λ‖By‖² + (1−λ)|⟨By, y⟩|²,     ‖y‖ = 1,
//! ```
//!
//! whose supremum is `‖T‖²_(A,λ)` and whose infimum is `m²_(A,λ)`. At the
//! endpoints there are direct algorithms (`λ = 1`: singular values; `λ = 0`:
//! support-function sweeps of the numerical range); for interior `λ` the
//! supremum is found by multistart projected ascent and reported as an
//! attained value, i.e. a rigorous lower bound.

mod ascent;
pub(crate) mod objective;
pub mod oracle;
pub(crate) mod sweep;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::harness::random::{random_unit_vector, SeedStream};
use crate::linalg::{svd, vector, Matrix};
use crate::scalar::{Real, C};
use crate::semispace::{PositiveOperator, ReducedOperator};

pub use oracle::{oracle_inf, oracle_sup, OracleValue};

use ascent::climb;
use sweep::{sweep, zero_point, Side};

/// Number of best sweep eigenvectors used as ascent seeds.
const SWEEP_SEEDS: usize = 4;
/// Relative agreement required to mark a value as certified.
pub const CERTIFY_TOL: f64 = 1e-6;

/// Mixing weight `λ ∈ [0, 1]` between the operator seminorm and the
/// numerical radius.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Lambda<R>(R);

impl<R: Real> Lambda<R> {
    pub fn new(value: R) -> Result<Self> {
        if value >= R::zero() && value <= R::one() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidLambda(value.as_f64()))
        }
    }

    pub fn zero() -> Self {
        Self(R::zero())
    }

    pub fn one() -> Self {
        Self(R::one())
    }

    #[inline]
    pub fn value(self) -> R {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sup,
    Inf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Random restarts on top of the structured seeds.
    pub restarts: usize,
    pub theta_grid: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            theta_grid: 720,
            max_iters: 500,
            grad_tol: 1e-10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.theta_grid == 0 || self.max_iters == 0 {
            return Err(Error::InvalidConfig(
                "restarts, theta_grid and max_iters must be positive".into(),
            ));
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::InvalidConfig("grad_tol must be positive".into()));
        }
        Ok(())
    }
}

/// An attained extremal value with its witness.
///
/// `value` is the seminorm-scale quantity (a square root of the objective),
/// so `objective(witness) = value²`.
#[derive(Clone, Debug)]
pub struct EvalResult<R: Real> {
    pub value: R,
    /// Unit vector in the reduced space.
    pub witness: Vec<C<R>>,
    /// The same witness as an `A`-unit vector of the original space.
    pub lifted: Vec<C<R>>,
    pub mode: Mode,
    pub restarts_used: usize,
    pub stationarity_residual: R,
    /// The value agrees with an independent eigenvalue/singular-value bound.
    pub certified: bool,
    /// That independent bound, when one exists for this quantity.
    pub reference: Option<R>,
}

/// One finished restart; `value` is on the objective (squared) scale.
#[derive(Clone, Debug)]
pub struct Candidate<R: Real> {
    pub value: R,
    pub y: Vec<C<R>>,
    pub residual: R,
    pub start: usize,
}

/// All restart outcomes of a multistart run, best first in `best`.
#[derive(Clone, Debug)]
pub struct Search<R: Real> {
    pub mode: Mode,
    pub candidates: Vec<Candidate<R>>,
    pub best: usize,
}

impl<R: Real> Search<R> {
    pub fn best(&self) -> &Candidate<R> {
        &self.candidates[self.best]
    }

    /// Candidates whose objective is within `defect` of the best one.
    pub fn near_optimal(&self, defect: R) -> impl Iterator<Item = &Candidate<R>> {
        let best = self.best().value;
        let mode = self.mode;
        self.candidates.iter().filter(move |c| match mode {
            Mode::Sup => best - c.value <= defect,
            Mode::Inf => c.value - best <= defect,
        })
    }
}

/// `λ‖By‖² + (1−λ)|⟨By, y⟩|²` for a unit vector `y` of the reduced space.
pub fn objective<R: Real>(red: &ReducedOperator<R>, lambda: Lambda<R>, y: &[C<R>]) -> Result<R> {
    if y.len() != red.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", red.dim()),
            found: format!("length {}", y.len()),
        });
    }
    let nrm = vector::norm(y);
    if (nrm - R::one()).abs() > R::tol(1e-10) {
        return Err(Error::NotUnit { norm: nrm.as_f64() });
    }
    Ok(objective::value(&red.b, lambda.value(), y))
}

/// Runs the ascent (or descent) from every seed on `b / ‖b‖_F` and rescales.
/// Ties go to the earliest seed.
pub(crate) fn multistart<R: Real>(
    b: &Matrix<R>,
    lambda: R,
    mode: Mode,
    seeds: Vec<Vec<C<R>>>,
    cfg: &OptimizerConfig,
) -> Search<R> {
    let scale = b.frobenius_norm();
    let unit_b = if scale > R::zero() { b.scale_real(R::one() / scale) } else { b.clone() };
    let bh = unit_b.adjoint();
    let scale_sq = scale * scale;
    let grad_tol = R::lit(cfg.grad_tol);

    let mut candidates = Vec::with_capacity(seeds.len());
    let mut best = 0;
    for (start, seed) in seeds.into_iter().enumerate() {
        let Some(y0) = vector::normalized(&seed) else { continue };
        let c = climb(&unit_b, &bh, lambda, y0, mode, cfg.max_iters, grad_tol);
        let cand = Candidate {
            value: c.value * scale_sq,
            y: c.y,
            residual: c.residual * scale_sq,
            start,
        };
        if !candidates.is_empty() {
            let incumbent: &Candidate<R> = &candidates[best];
            let better = match mode {
                Mode::Sup => cand.value > incumbent.value,
                Mode::Inf => cand.value < incumbent.value,
            };
            if better {
                best = candidates.len();
            }
        }
        candidates.push(cand);
    }
    Search {
        mode,
        candidates,
        best,
    }
}

pub(crate) fn random_seeds<R: Real>(r: usize, count: usize, seed: u64) -> Vec<Vec<C<R>>> {
    let mut stream = SeedStream::new(seed);
    (0..count)
        .map(|_| random_unit_vector(&mut stream.next_rng(), r))
        .collect()
}

/// The `k` sweep eigenvectors with the best objective value.
fn best_sweep_vectors<R: Real>(
    b: &Matrix<R>,
    lambda: R,
    list: &[sweep::Support<R>],
    k: usize,
    mode: Mode,
) -> Vec<Vec<C<R>>> {
    let mut scored: Vec<(R, usize)> = list
        .iter()
        .enumerate()
        .map(|(i, s)| (objective::value(b, lambda, &s.vector), i))
        .collect();
    scored.sort_by(|a, b| {
        let ord = a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal);
        let ord = if mode == Mode::Sup { ord.reverse() } else { ord };
        ord.then(a.1.cmp(&b.1))
    });
    scored
        .into_iter()
        .take(k)
        .map(|(_, i)| list[i].vector.clone())
        .collect()
}

fn empty_result<R: Real>(red: &ReducedOperator<R>, mode: Mode) -> EvalResult<R> {
    EvalResult {
        value: R::zero(),
        witness: Vec::new(),
        lifted: vec![C::zero(); red.original_dim()],
        mode,
        restarts_used: 0,
        stationarity_residual: R::zero(),
        certified: true,
        reference: Some(R::zero()),
    }
}

fn zero_operator_result<R: Real>(red: &ReducedOperator<R>, mode: Mode) -> EvalResult<R> {
    let y = vector::basis(red.dim(), 0);
    EvalResult {
        value: R::zero(),
        lifted: red.lift(&y),
        witness: y,
        mode,
        restarts_used: 0,
        stationarity_residual: R::zero(),
        certified: true,
        reference: Some(R::zero()),
    }
}

/// Values below this magnitude are compared on an absolute scale.
fn certify_floor<R: Real>(scale: R) -> R {
    R::lit(1e-3) * scale
}

fn agrees<R: Real>(value: R, reference: R, floor: R) -> bool {
    (value - reference).abs() <= R::lit(CERTIFY_TOL) * value.abs().max(reference.abs()).max(floor)
}

fn finish<R: Real>(
    red: &ReducedOperator<R>,
    search: &Search<R>,
    reference: Option<R>,
    floor: R,
) -> EvalResult<R> {
    let best = search.best();
    let value = best.value.max(R::zero()).sqrt();
    let certified = reference.is_some_and(|r| agrees(value, r, floor));
    EvalResult {
        value,
        witness: best.y.clone(),
        lifted: red.lift(&best.y),
        mode: search.mode,
        restarts_used: search.candidates.len(),
        stationarity_residual: best.residual,
        certified,
        reference,
    }
}

/// Certified numerical-range data of a reduced operator.
#[derive(Clone, Debug)]
pub struct RangeBounds<R: Real> {
    /// `max_θ λ_max(Re(e^{iθ}B))`, the numerical radius.
    pub numerical_radius: R,
    /// `max(0, max_θ λ_min(Re(e^{iθ}B)))`, the distance from 0 to `W(B)`.
    pub crawford: R,
}

/// Numerical radius and Crawford number by support-function sweeps only.
pub fn range_bounds<R: Real>(red: &ReducedOperator<R>, theta_grid: usize) -> RangeBounds<R> {
    if red.dim() == 0 {
        return RangeBounds {
            numerical_radius: R::zero(),
            crawford: R::zero(),
        };
    }
    let s = sweep(&red.b, theta_grid);
    RangeBounds {
        numerical_radius: s.refined_max(&red.b, Side::Top).value.max(R::zero()),
        crawford: s.refined_max(&red.b, Side::Bottom).value.max(R::zero()),
    }
}

/// Supremum of the objective with the full pool of restart outcomes.
pub fn seminorm_search<R: Real>(
    red: &ReducedOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<(EvalResult<R>, Option<Search<R>>)> {
    cfg.validate()?;
    let r = red.dim();
    if r == 0 {
        return Ok((empty_result(red, Mode::Sup), None));
    }
    let b = &red.b;
    let scale = b.frobenius_norm();
    if scale.is_zero() {
        return Ok((zero_operator_result(red, Mode::Sup), None));
    }
    let lam = lambda.value();
    let decomposition = svd(b)?;
    let s = sweep(b, cfg.theta_grid);
    let w_top = s.refined_max(b, Side::Top);

    let mut seeds = vec![decomposition.top_vector(), w_top.vector.clone()];
    seeds.extend(best_sweep_vectors(b, lam, &s.top, SWEEP_SEEDS, Mode::Sup));
    seeds.extend(random_seeds(r, cfg.restarts, cfg.seed));
    let search = multistart(b, lam, Mode::Sup, seeds, cfg);

    let reference = if lam.is_zero() {
        Some(w_top.value.max(R::zero()))
    } else if lam == R::one() {
        Some(decomposition.sigma_max())
    } else {
        None
    };
    let result = finish(red, &search, reference, certify_floor(scale));
    Ok((result, Some(search)))
}

/// `‖T‖_(A,λ)` on a reduced operator.
pub fn seminorm_reduced<R: Real>(
    red: &ReducedOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<EvalResult<R>> {
    Ok(seminorm_search(red, lambda, cfg)?.0)
}

/// `c_A(T)` on a reduced operator: sweep value, refined witness.
pub fn crawford_reduced<R: Real>(red: &ReducedOperator<R>, cfg: &OptimizerConfig) -> Result<EvalResult<R>> {
    cfg.validate()?;
    let r = red.dim();
    if r == 0 {
        return Ok(empty_result(red, Mode::Inf));
    }
    let b = &red.b;
    let scale = b.frobenius_norm();
    if scale.is_zero() {
        return Ok(zero_operator_result(red, Mode::Inf));
    }
    let s = sweep(b, cfg.theta_grid);
    let bottom = s.refined_max(b, Side::Bottom);
    let distance = bottom.value.max(R::zero());

    let mut seeds = Vec::new();
    if distance.is_zero() {
        if let Some(y) = zero_point(b, &s) {
            seeds.push(y);
        }
    }
    seeds.push(bottom.vector.clone());
    seeds.extend(best_sweep_vectors(b, R::zero(), &s.bottom, SWEEP_SEEDS, Mode::Inf));
    seeds.extend(random_seeds(r, cfg.restarts, cfg.seed));
    let search = multistart(b, R::zero(), Mode::Inf, seeds, cfg);
    Ok(finish(red, &search, Some(distance), certify_floor(scale)))
}

/// `w_A(T)` on a reduced operator.
pub fn numerical_radius_reduced<R: Real>(red: &ReducedOperator<R>, cfg: &OptimizerConfig) -> Result<EvalResult<R>> {
    seminorm_reduced(red, Lambda::zero(), cfg)
}

/// `[T]_A = σ_min(B)`.
pub fn min_modulus_reduced<R: Real>(red: &ReducedOperator<R>) -> Result<EvalResult<R>> {
    let r = red.dim();
    if r == 0 {
        return Ok(empty_result(red, Mode::Inf));
    }
    let d = svd(&red.b)?;
    let y = d.bottom_vector();
    let value = d.sigma_min();
    Ok(EvalResult {
        value,
        lifted: red.lift(&y),
        witness: y,
        mode: Mode::Inf,
        restarts_used: 1,
        stationarity_residual: R::zero(),
        certified: true,
        reference: Some(value),
    })
}

/// `m_(A,λ)(S)`: infimum of the objective over the reduced unit sphere.
pub fn m_lambda_reduced<R: Real>(
    red: &ReducedOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<EvalResult<R>> {
    cfg.validate()?;
    let r = red.dim();
    if r == 0 {
        return Ok(empty_result(red, Mode::Inf));
    }
    let b = &red.b;
    if b.frobenius_norm().is_zero() {
        return Ok(zero_operator_result(red, Mode::Inf));
    }
    let lam = lambda.value();
    let decomposition = svd(b)?;
    let crawford = crawford_reduced(red, cfg)?;
    let s = sweep(b, cfg.theta_grid);

    let mut seeds = vec![decomposition.bottom_vector(), crawford.witness.clone()];
    seeds.extend(best_sweep_vectors(b, lam, &s.bottom, SWEEP_SEEDS, Mode::Inf));
    seeds.extend(random_seeds(r, cfg.restarts, cfg.seed));
    let search = multistart(b, lam, Mode::Inf, seeds, cfg);

    let reference = if lam.is_zero() {
        crawford.reference
    } else if lam == R::one() {
        Some(decomposition.sigma_min())
    } else {
        None
    };
    Ok(finish(red, &search, reference, certify_floor(b.frobenius_norm())))
}

/// `‖T‖_(A,λ)`
pub fn seminorm<R: Real>(
    t: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<EvalResult<R>> {
    seminorm_reduced(&a.reduce(t)?, lambda, cfg)
}

/// `w_A(T) = ‖T‖_(A,0)`
pub fn a_numerical_radius<R: Real>(t: &Matrix<R>, a: &PositiveOperator<R>, cfg: &OptimizerConfig) -> Result<EvalResult<R>> {
    numerical_radius_reduced(&a.reduce(t)?, cfg)
}

/// `c_A(T)`
pub fn a_crawford<R: Real>(t: &Matrix<R>, a: &PositiveOperator<R>, cfg: &OptimizerConfig) -> Result<EvalResult<R>> {
    crawford_reduced(&a.reduce(t)?, cfg)
}

/// `[T]_A`
pub fn a_min_modulus<R: Real>(t: &Matrix<R>, a: &PositiveOperator<R>) -> Result<EvalResult<R>> {
    min_modulus_reduced(&a.reduce(t)?)
}

/// `m_(A,λ)(S)`
pub fn m_lambda<R: Real>(
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<EvalResult<R>> {
    m_lambda_reduced(&a.reduce(s)?, lambda, cfg)
}
