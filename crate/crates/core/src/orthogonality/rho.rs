//! Evaluation and minimization of `ρ(ξ) = ‖T + ξS‖_(A,λ)` over `ξ ∈ ℂ`.

use num_traits::Zero;

use crate::engine::sweep::{sweep, Side};
use crate::engine::{multistart, random_seeds, Mode, OptimizerConfig};
use crate::linalg::{svd, Matrix};
use crate::scalar::{cis, Real, C};

/// Coarse sweep used to seed each `ρ(ξ)` evaluation.
const LOCAL_SWEEP: usize = 16;
const LOCAL_RANDOM: usize = 2;

/// `ρ(ξ)` by warm-started multistart ascent.
///
/// Every evaluation reuses the same witness pool (near-maximizers of `T` and
/// `S`), so the attained values are consistent lower bounds of `ρ` across
/// the whole `ξ`-plane.
pub(crate) struct RhoEvaluator<'a, R: Real> {
    t: &'a Matrix<R>,
    s: &'a Matrix<R>,
    lambda: R,
    pool: Vec<Vec<C<R>>>,
    cfg: OptimizerConfig,
}

impl<'a, R: Real> RhoEvaluator<'a, R> {
    pub fn new(t: &'a Matrix<R>, s: &'a Matrix<R>, lambda: R, pool: Vec<Vec<C<R>>>, cfg: &OptimizerConfig) -> Self {
        Self {
            t,
            s,
            lambda,
            pool,
            cfg: cfg.clone(),
        }
    }

    pub fn operator(&self, xi: C<R>) -> Matrix<R> {
        self.t.add_scaled(xi, self.s).expect("same reduced dimension")
    }

    /// Attained value of `ρ(ξ)` (not squared).
    pub fn eval(&self, xi: C<R>) -> R {
        let b = self.operator(xi);
        let r = b.rows();
        if r == 0 || b.frobenius_norm().is_zero() {
            return R::zero();
        }
        let mut seeds = self.pool.clone();
        if let Ok(d) = svd(&b) {
            seeds.push(d.top_vector());
        }
        let sw = sweep(&b, LOCAL_SWEEP);
        let lam = self.lambda;
        let mut tops: Vec<(R, Vec<C<R>>)> = sw
            .top
            .iter()
            .map(|s| (crate::engine::objective::value(&b, lam, &s.vector), s.vector.clone()))
            .collect();
        tops.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
        seeds.extend(tops.into_iter().take(2).map(|(_, v)| v));
        seeds.push(sw.refined_max(&b, Side::Top).vector);
        seeds.extend(random_seeds(r, LOCAL_RANDOM, self.cfg.seed ^ 0x5EED));
        let search = multistart(&b, lam, Mode::Sup, seeds, &self.cfg);
        search.best().value.max(R::zero()).sqrt()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Minimum<R> {
    pub xi: C<R>,
    pub value: R,
    pub evaluations: usize,
}

/// Minimizes the convex function `ρ` over the disc `|ξ| ≤ 4·scale`:
/// a polar grid, then a golden-section line search along the best ray, then
/// a rotating pattern search.
pub(crate) fn minimize_rho<R: Real>(rho: &RhoEvaluator<'_, R>, rho_zero: R, scale: R) -> Minimum<R> {
    const ANGLES: usize = 24;
    const RADII: usize = 12;
    let lo = R::lit(1e-3) * scale;
    let hi = R::lit(4.0) * scale;
    let ratio = (hi / lo).powf(R::one() / R::from_usize(RADII - 1).unwrap());
    let radii: Vec<R> = (0..RADII).map(|k| lo * ratio.powi(k as i32)).collect();

    let mut best = Minimum {
        xi: C::zero(),
        value: rho_zero,
        evaluations: 0,
    };
    let mut best_ray = None;
    let mut evals = 0usize;
    for a in 0..ANGLES {
        let theta = R::TAU() * R::from_usize(a).unwrap() / R::from_usize(ANGLES).unwrap();
        let dir = cis(theta);
        for (k, &r) in radii.iter().enumerate() {
            let xi = dir * r;
            let v = rho.eval(xi);
            evals += 1;
            if v < best.value {
                best.value = v;
                best.xi = xi;
                best_ray = Some((dir, k));
            }
        }
    }

    // Line search on the best ray: ρ restricted to a ray is convex in |ξ|.
    if let Some((dir, k)) = best_ray {
        let r_lo = if k == 0 { R::zero() } else { radii[k - 1] };
        let r_hi = if k + 1 < RADII { radii[k + 1] } else { hi };
        let radius = crate::engine::sweep::golden_max(
            |r| {
                -rho.eval(dir * r)
            },
            r_lo,
            r_hi,
        );
        evals += 2 * 80;
        let xi = dir * radius;
        let v = rho.eval(xi);
        evals += 1;
        if v < best.value {
            best.value = v;
            best.xi = xi;
        }

        // Pattern search; directions rotate each time the step shrinks so
        // ridges of the nonsmooth ρ do not stall it on one axis.
        let mut step = (r_hi - r_lo).max(scale * R::lit(1e-3)) * R::lit(0.5);
        let floor = scale * R::lit(1e-10);
        let mut offset = R::zero();
        let mut budget = 400usize;
        while step > floor && budget > 0 {
            let mut improved = false;
            for d in 0..8 {
                let ang = offset + R::TAU() * R::from_usize(d).unwrap() / R::lit(8.0);
                let cand = best.xi + cis(ang) * step;
                let v = rho.eval(cand);
                evals += 1;
                budget = budget.saturating_sub(1);
                if v < best.value {
                    best.value = v;
                    best.xi = cand;
                    improved = true;
                    break;
                }
            }
            if !improved {
                step = step * R::lit(0.5);
                offset += R::PI() / R::lit(8.0) * R::lit(0.61803398875);
            }
        }
    }
    best.evaluations = evals;
    best
}
