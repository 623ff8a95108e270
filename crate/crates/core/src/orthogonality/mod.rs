//! Birkhoff–James orthogonality with respect to `‖·‖_(A,λ)` and the
//! triangle-equality characterization.
//!
//! `T ⊥ S` means `‖T + ξS‖_(A,λ) ≥ ‖T‖_(A,λ)` for every complex `ξ`. The
//! function `ρ(ξ) = ‖T + ξS‖_(A,λ)` is convex, so the decision reduces to a
//! two-dimensional convex minimization. Two further conditions are checked
//! independently of that search:
//!
//! * the quadratic lower bound `ρ(ξ)² ≥ ρ(0)² + |ξ|² m²_(A,λ)(S)`, which every
//!   orthogonal pair satisfies, and
//! * for every direction `θ`, some maximizer `x` of the `T`-objective with
//!   `Re(e^{iθ}[λ⟨Sx, Tx⟩_A + (1−λ)⟨x, Tx⟩_A⟨Sx, x⟩_A]) ≥ 0`.
//!
//! In finite dimension the sequences of near-maximizers collapse to attained
//! maximizers; the pool of restart outcomes stands in for the maximizer set.

mod rho;

use num_traits::Zero;

use crate::engine::{
    m_lambda_reduced, seminorm_reduced, seminorm_search, Candidate, Lambda, OptimizerConfig,
};
use crate::error::Result;
use crate::linalg::{vector, Matrix};
use crate::scalar::{cis, Real, C};
use crate::semispace::{PositiveOperator, ReducedOperator};

use rho::{minimize_rho, RhoEvaluator};

/// Default relative gap below which `T ⊥ S` is declared.
pub const DEFAULT_TOLERANCE: f64 = 1e-5;
/// Default number of `ξ` samples in [`certificate_check`].
pub const DEFAULT_XI_SAMPLES: usize = 96;
/// Default `θ` grid in [`theta_condition`].
pub const DEFAULT_THETA_GRID: usize = 360;
/// Relative maximality defect admitted into the maximizer pool.
pub const POOL_DEFECT: f64 = 1e-6;
const POOL_SEEDS: usize = 6;

#[derive(Clone, Debug)]
pub struct OrthogonalityVerdict<R: Real> {
    pub orthogonal: bool,
    /// Approximate minimizer of `ρ`.
    pub xi_star: C<R>,
    pub rho_zero: R,
    pub rho_min: R,
    /// `(ρ(0) − min ρ) / max(ρ(0), ε)`
    pub relative_gap: R,
    /// `m_(A,λ)(S)`
    pub m_value: R,
    /// `‖S‖_(A,λ)`
    pub s_seminorm: R,
    pub tolerance_used: R,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Holds,
    Fails,
    /// The pair was not found orthogonal, so the bound is not implied.
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct Certificate<R: Real> {
    pub status: CertificateStatus,
    pub samples: usize,
    /// Smallest `ρ(ξ)² − ρ(0)² − |ξ|²m²` over the samples.
    pub worst_margin: R,
    pub worst_xi: C<R>,
    pub slack: R,
}

impl<R: Real> Certificate<R> {
    pub fn holds(&self) -> bool {
        self.status == CertificateStatus::Holds
    }
}

#[derive(Clone, Debug)]
pub struct ThetaEntry<R: Real> {
    pub theta: R,
    /// Best `A`-unit witness for this direction.
    pub witness: Vec<C<R>>,
    /// `Re(e^{iθ}F(x))` at the witness.
    pub form_value: R,
    /// `‖T‖²_(A,λ) − f_T(x)`
    pub maximality_defect: R,
}

#[derive(Clone, Debug)]
pub struct ThetaConditionReport<R: Real> {
    pub entries: Vec<ThetaEntry<R>>,
    pub satisfied: bool,
    pub pool_size: usize,
    /// Pool members that differ by more than a unimodular factor.
    pub distinct_maximizers: usize,
    pub eps_max: R,
    pub eps_sign: R,
    pub worst_form_value: R,
}

impl<R: Real> ThetaConditionReport<R> {
    pub fn singleton_pool(&self) -> bool {
        self.distinct_maximizers <= 1
    }
}

#[derive(Clone, Debug)]
pub struct EqualityReport<R: Real> {
    /// `‖T + S‖_(A,λ)`
    pub sum_seminorm: R,
    /// `‖T‖_(A,λ) + ‖S‖_(A,λ)`
    pub seminorm_sum: R,
    pub t_seminorm: R,
    pub s_seminorm: R,
    pub holds: bool,
    /// `λ⟨Sx, Tx⟩_A + (1−λ)⟨x, Tx⟩_A⟨Sx, x⟩_A` at the witness.
    pub witness_value: C<R>,
    /// `‖T‖_(A,λ)·‖S‖_(A,λ)`
    pub target: R,
    /// `A`-unit maximizer of the `(T+S)`-objective.
    pub witness: Vec<C<R>>,
    pub tolerance: R,
    /// Equality holds but the witness value misses the product.
    pub near_miss: bool,
}

/// `F(y) = λ⟨B_S y, B_T y⟩ + (1−λ) conj(⟨B_T y, y⟩) ⟨B_S y, y⟩`, the mixed
/// form of the pair in reduced coordinates.
pub(crate) fn pair_form<R: Real>(bt: &Matrix<R>, bs: &Matrix<R>, lambda: R, y: &[C<R>]) -> C<R> {
    let ty = bt.mv(y);
    let sy = bs.mv(y);
    let zt = vector::inner(&ty, y);
    let zs = vector::inner(&sy, y);
    vector::inner(&sy, &ty) * lambda + zt.conj() * zs * (R::one() - lambda)
}

fn reduce_pair<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
) -> Result<(ReducedOperator<R>, ReducedOperator<R>)> {
    Ok((a.reduce(t)?, a.reduce(s)?))
}

/// Pool members, deduplicated up to a unimodular factor.
fn distinct<R: Real>(vectors: impl IntoIterator<Item = Vec<C<R>>>) -> Vec<Vec<C<R>>> {
    let mut out: Vec<Vec<C<R>>> = Vec::new();
    let same = R::one() - R::tol(1e-8);
    for v in vectors {
        if !out.iter().any(|u| vector::inner(u, &v).norm() > same) {
            out.push(v);
        }
    }
    out
}

fn pool_vectors<R: Real>(pool: &[&Candidate<R>]) -> Vec<Vec<C<R>>> {
    pool.iter().map(|c| c.y.clone()).collect()
}

/// `ρ(ξ) = ‖T + ξS‖_(A,λ)`, computed with the full seminorm machinery.
pub fn rho<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    xi: C<R>,
    cfg: &OptimizerConfig,
) -> Result<R> {
    let (rt, rs) = reduce_pair(t, s, a)?;
    Ok(seminorm_reduced(&rt.combine(xi, &rs), lambda, cfg)?.value)
}

struct PairContext<R: Real> {
    rt: ReducedOperator<R>,
    rs: ReducedOperator<R>,
    rho_zero: R,
    s_seminorm: R,
    pool: Vec<Vec<C<R>>>,
}

fn pair_context<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<PairContext<R>> {
    let (rt, rs) = reduce_pair(t, s, a)?;
    let (t_eval, t_search) = seminorm_search(&rt, lambda, cfg)?;
    let s_eval = seminorm_reduced(&rs, lambda, cfg)?;
    let rho_zero = t_eval.value;
    let mut pool = Vec::new();
    if let Some(search) = &t_search {
        let defect = R::tol(POOL_DEFECT) * rho_zero * rho_zero;
        let near: Vec<&Candidate<R>> = search.near_optimal(defect).collect();
        pool = distinct(pool_vectors(&near));
        pool.truncate(POOL_SEEDS);
    }
    if rs.dim() > 0 && !s_eval.witness.is_empty() {
        pool.push(s_eval.witness.clone());
    }
    Ok(PairContext {
        rt,
        rs,
        rho_zero,
        s_seminorm: s_eval.value,
        pool,
    })
}

/// Decides `T ⊥_(A,λ) S` by minimizing `ρ` over `ξ`.
pub fn bj_orthogonal<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    tolerance: R,
    cfg: &OptimizerConfig,
) -> Result<OrthogonalityVerdict<R>> {
    let ctx = pair_context(t, s, a, lambda, cfg)?;
    let m_value = m_lambda_reduced(&ctx.rs, lambda, cfg)?.value;
    let rho_zero = ctx.rho_zero;
    let trivial = |evaluations| OrthogonalityVerdict {
        orthogonal: true,
        xi_star: C::zero(),
        rho_zero,
        rho_min: rho_zero,
        relative_gap: R::zero(),
        m_value,
        s_seminorm: ctx.s_seminorm,
        tolerance_used: tolerance,
        evaluations,
    };
    let tiny = R::epsilon() * R::lit(16.0);
    // ρ ≥ 0 = ρ(0) when ‖T‖ vanishes; ρ is constant when ‖S‖ vanishes.
    if rho_zero <= tiny * ctx.rt.b.frobenius_norm().max(R::min_positive_value())
        || ctx.s_seminorm <= tiny * ctx.rs.b.frobenius_norm().max(R::min_positive_value())
    {
        return Ok(trivial(0));
    }

    let evaluator = RhoEvaluator::new(&ctx.rt.b, &ctx.rs.b, lambda.value(), ctx.pool.clone(), cfg);
    // |ξ*| ≤ 2‖T‖/‖S‖ because ρ(ξ) ≥ |ξ|‖S‖ − ‖T‖.
    let scale = (rho_zero / ctx.s_seminorm).min(R::lit(1e6));
    let found = minimize_rho(&evaluator, rho_zero, scale);
    let rho_min = found.value.min(rho_zero);
    let relative_gap = (rho_zero - rho_min) / rho_zero.max(R::min_positive_value());
    Ok(OrthogonalityVerdict {
        orthogonal: relative_gap <= tolerance,
        xi_star: if rho_min < rho_zero { found.xi } else { C::zero() },
        rho_zero,
        rho_min,
        relative_gap,
        m_value,
        s_seminorm: ctx.s_seminorm,
        tolerance_used: tolerance,
        evaluations: found.evaluations,
    })
}

/// Samples `ξ` on a polar grid and checks
/// `ρ(ξ)² ≥ ρ(0)² + |ξ|² m²_(A,λ)(S) − ε` for an orthogonal verdict.
pub fn certificate_check<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    verdict: &OrthogonalityVerdict<R>,
    xi_samples: usize,
    cfg: &OptimizerConfig,
) -> Result<Certificate<R>> {
    let rho_zero = verdict.rho_zero;
    let slack = R::tol(1e-6) * (rho_zero * rho_zero).max(R::one());
    if !verdict.orthogonal {
        return Ok(Certificate {
            status: CertificateStatus::NotApplicable,
            samples: 0,
            worst_margin: R::zero(),
            worst_xi: C::zero(),
            slack,
        });
    }
    let ctx = pair_context(t, s, a, lambda, cfg)?;
    let evaluator = RhoEvaluator::new(&ctx.rt.b, &ctx.rs.b, lambda.value(), ctx.pool.clone(), cfg);
    let scale = if ctx.s_seminorm > R::zero() && rho_zero > R::zero() {
        (rho_zero / ctx.s_seminorm).min(R::lit(1e6))
    } else {
        R::one()
    };
    let samples = xi_samples.max(1);
    let angles = samples.min(12);
    let rings = samples.div_ceil(angles);
    let lo = R::lit(1e-2) * scale;
    let hi = R::lit(10.0) * scale;
    let ratio = if rings > 1 {
        (hi / lo).powf(R::one() / R::from_usize(rings - 1).unwrap())
    } else {
        R::one()
    };
    let m_sq = verdict.m_value * verdict.m_value;

    let mut worst_margin = R::infinity();
    let mut worst_xi = C::zero();
    for k in 0..samples {
        let ring = k / angles;
        // Stagger the angles between rings.
        let theta = R::TAU()
            * (R::from_usize(k % angles).unwrap() + R::lit(0.5) * R::from_usize(ring % 2).unwrap())
            / R::from_usize(angles).unwrap();
        let xi = cis(theta) * (lo * ratio.powi(ring as i32));
        let value = evaluator.eval(xi);
        let margin = value * value - rho_zero * rho_zero - xi.norm_sqr() * m_sq;
        if margin < worst_margin {
            worst_margin = margin;
            worst_xi = xi;
        }
    }
    Ok(Certificate {
        status: if worst_margin >= -slack {
            CertificateStatus::Holds
        } else {
            CertificateStatus::Fails
        },
        samples,
        worst_margin,
        worst_xi,
        slack,
    })
}

/// For each `θ` on a grid, the best pool maximizer of `Re(e^{iθ}F(x))`.
pub fn theta_condition<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    theta_grid: usize,
    cfg: &OptimizerConfig,
) -> Result<ThetaConditionReport<R>> {
    let (rt, rs) = reduce_pair(t, s, a)?;
    let (t_eval, t_search) = seminorm_search(&rt, lambda, cfg)?;
    let s_norm = seminorm_reduced(&rs, lambda, cfg)?.value;
    let rho_t = t_eval.value;
    let eps_max = R::tol(POOL_DEFECT) * rho_t * rho_t;
    // Plus a rounding floor: an S that is numerically zero on ran A leaves
    // only noise of order ε·‖T‖·max(‖T‖, ‖S‖) in the form.
    let eps_sign = R::tol(1e-6) * rho_t * s_norm + R::epsilon() * R::lit(64.0) * rho_t * rho_t.max(s_norm);
    let lam = lambda.value();
    let grid = theta_grid.max(1);

    let pool: Vec<&Candidate<R>> = match &t_search {
        Some(search) => search.near_optimal(eps_max).collect(),
        None => Vec::new(),
    };
    let distinct_maximizers = distinct(pool_vectors(&pool)).len();
    let forms: Vec<C<R>> = pool
        .iter()
        .map(|c| pair_form(&rt.b, &rs.b, lam, &c.y))
        .collect();

    let mut entries = Vec::with_capacity(grid);
    let mut worst = R::infinity();
    for k in 0..grid {
        let theta = R::TAU() * R::from_usize(k).unwrap() / R::from_usize(grid).unwrap();
        let rot = cis(theta);
        let entry = if pool.is_empty() {
            // ‖T‖ = 0 or an empty range: every A-unit vector is a maximizer
            // and the form vanishes identically.
            ThetaEntry {
                theta,
                witness: t_eval.lifted.clone(),
                form_value: R::zero(),
                maximality_defect: R::zero(),
            }
        } else {
            let mut best = 0;
            for (i, f) in forms.iter().enumerate() {
                if (rot * f).re > (rot * forms[best]).re {
                    best = i;
                }
            }
            ThetaEntry {
                theta,
                witness: rt.lift(&pool[best].y),
                form_value: (rot * forms[best]).re,
                maximality_defect: rho_t * rho_t - pool[best].value,
            }
        };
        worst = worst.min(entry.form_value);
        entries.push(entry);
    }
    let satisfied = entries
        .iter()
        .all(|e| e.maximality_defect <= eps_max && e.form_value >= -eps_sign);
    Ok(ThetaConditionReport {
        entries,
        satisfied,
        pool_size: pool.len(),
        distinct_maximizers,
        eps_max,
        eps_sign,
        worst_form_value: worst,
    })
}

/// Checks `‖T + S‖_(A,λ) = ‖T‖_(A,λ) + ‖S‖_(A,λ)` and reports the mixed
/// form at the best maximizer of the `(T+S)`-objective.
pub fn triangle_equality<R: Real>(
    t: &Matrix<R>,
    s: &Matrix<R>,
    a: &PositiveOperator<R>,
    lambda: Lambda<R>,
    cfg: &OptimizerConfig,
) -> Result<EqualityReport<R>> {
    let (rt, rs) = reduce_pair(t, s, a)?;
    let sum_op = rt.combine(C::new(R::one(), R::zero()), &rs);
    let (sum_eval, sum_search) = seminorm_search(&sum_op, lambda, cfg)?;
    let t_seminorm = seminorm_reduced(&rt, lambda, cfg)?.value;
    let s_seminorm = seminorm_reduced(&rs, lambda, cfg)?.value;
    let seminorm_sum = t_seminorm + s_seminorm;
    let tolerance = R::tol(1e-6) * seminorm_sum.max(R::one());
    let holds = (sum_eval.value - seminorm_sum).abs() <= tolerance;
    let target = t_seminorm * s_seminorm;
    let lam = lambda.value();

    let (witness_value, witness) = match &sum_search {
        Some(search) => {
            let defect = R::tol(POOL_DEFECT) * sum_eval.value * sum_eval.value;
            let mut best: Option<(C<R>, &Candidate<R>)> = None;
            for c in search.near_optimal(defect) {
                let f = pair_form(&rt.b, &rs.b, lam, &c.y);
                let closer = match &best {
                    None => true,
                    Some((g, _)) => (f - target).norm() < (*g - target).norm(),
                };
                if closer {
                    best = Some((f, c));
                }
            }
            let (f, c) = best.expect("pool contains the best candidate");
            (f, sum_op.lift(&c.y))
        }
        None => (C::zero(), sum_eval.lifted.clone()),
    };
    let near_miss = holds && (witness_value - target).norm() > tolerance * target.max(R::one());
    Ok(EqualityReport {
        sum_seminorm: sum_eval.value,
        seminorm_sum,
        t_seminorm,
        s_seminorm,
        holds,
        witness_value,
        target,
        witness,
        tolerance,
        near_miss,
    })
}
