use rand::Rng;

use super::random::{random_complex, random_matrix, SeedStream};
use super::{digest, gen_member_stream, gen_psd, InstanceSpec, Trial};
use crate::engine::{
    a_crawford, a_numerical_radius, oracle::oracle_sup, range_bounds, seminorm, seminorm_search,
    Lambda, OptimizerConfig,
};
use crate::error::Result;
use crate::linalg::{svd, Matrix};
use crate::orthogonality::{
    bj_orthogonal, certificate_check, pair_form, theta_condition, triangle_equality, DEFAULT_THETA_GRID,
    DEFAULT_TOLERANCE, DEFAULT_XI_SAMPLES,
};
use crate::semispace::{PositiveOperator, ReducedOperator};
use crate::C;

type Check = fn(u64, usize) -> Trial;

pub const SUITES: [&str; 8] = [
    "seminorm-axioms",
    "sandwich",
    "r4-bounds",
    "endpoints",
    "oracle-n2",
    "t5-equality",
    "t7-equivalence",
    "corollaries",
];

pub(super) fn lookup(name: &str) -> Option<Check> {
    let f: Check = match name {
        "seminorm-axioms" => axioms,
        "sandwich" => sandwich,
        "r4-bounds" => two_sided_bounds,
        "endpoints" => endpoints,
        "oracle-n2" => oracle_n2,
        "t5-equality" => equality_suite,
        "t7-equivalence" => equivalence_suite,
        "corollaries" => corollaries,
        _ => return None,
    };
    Some(f)
}

const LAMBDAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const ORTH_LAMBDAS: [f64; 4] = [0.0, 0.3, 0.7, 1.0];
pub(crate) const ORACLE_DELTA: f64 = 0.002;

struct Instance {
    spec: InstanceSpec,
    a: PositiveOperator<f64>,
    t: Matrix<f64>,
    s: Matrix<f64>,
}

fn instance(seed: u64, lo: usize, hi: usize) -> Instance {
    let spec = InstanceSpec::sample(seed, lo, hi);
    let a = gen_psd(&spec);
    let t = gen_member_stream(&spec, &a, 1);
    let s = gen_member_stream(&spec, &a, 2);
    Instance { spec, a, t, s }
}

fn knobs(seed: u64) -> super::random::Rng64 {
    SeedStream::stream(seed, 3)
}

fn lam(x: f64) -> Lambda<f64> {
    Lambda::new(x).expect("grid value in [0, 1]")
}

fn trial(pass: bool, mats: &[&Matrix<f64>], observed: &[(&str, f64)], tolerance: f64) -> Trial {
    Trial {
        pass,
        digest: digest(mats),
        observed: observed.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        tolerance,
        note: None,
    }
}

fn errored(mats: &[&Matrix<f64>], e: crate::Error) -> Trial {
    Trial {
        pass: false,
        digest: digest(mats),
        observed: Vec::new(),
        tolerance: 0.0,
        note: Some(format!("error: {e}")),
    }
}

fn guard(mats: &[&Matrix<f64>], body: impl FnOnce() -> Result<Trial>) -> Trial {
    body().unwrap_or_else(|e| errored(mats, e))
}

fn sigma_max(red: &ReducedOperator<f64>) -> Result<f64> {
    if red.dim() == 0 {
        return Ok(0.0);
    }
    Ok(svd(&red.b)?.sigma_max())
}

fn rel_close(x: f64, reference: f64, tol: f64) -> bool {
    (x - reference).abs() <= tol * reference.abs().max(f64::MIN_POSITIVE) || (x - reference).abs() <= 1e-14
}

/// Homogeneity and the triangle inequality.
fn axioms(seed: u64, _: usize) -> Trial {
    let inst = instance(seed, 2, 6);
    let mut rng = knobs(seed);
    let lambda = lam(LAMBDAS[rng.random_range(0..LAMBDAS.len())]);
    let alpha: C<f64> = random_complex(&mut rng, 2.0);
    let cfg = OptimizerConfig::with_seed(seed);
    let mats = [inst.a.matrix(), &inst.t, &inst.s];
    guard(&mats, || {
        let st = seminorm(&inst.t, &inst.a, lambda, &cfg)?.value;
        let ss = seminorm(&inst.s, &inst.a, lambda, &cfg)?.value;
        let sat = seminorm(&inst.t.scale(alpha), &inst.a, lambda, &cfg)?.value;
        let sum = seminorm(&inst.t.add(&inst.s)?, &inst.a, lambda, &cfg)?.value;
        let homogeneous = rel_close(sat, alpha.norm() * st, 1e-8);
        let triangle = sum <= st + ss + 1e-7;
        Ok(trial(
            homogeneous && triangle && st >= 0.0,
            &mats,
            &[
                ("lambda", lambda.value()),
                ("t", st),
                ("s", ss),
                ("alpha_t", sat),
                ("abs_alpha", alpha.norm()),
                ("t_plus_s", sum),
            ],
            1e-7,
        ))
    })
}

/// `w_A ≤ ‖T‖_(A,λ) ≤ ‖T‖_A` against the sweep and the singular values.
fn sandwich(seed: u64, _: usize) -> Trial {
    let inst = instance(seed, 2, 6);
    let mut rng = knobs(seed);
    let lambda = lam(LAMBDAS[rng.random_range(0..LAMBDAS.len())]);
    let cfg = OptimizerConfig::with_seed(seed);
    let mats = [inst.a.matrix(), &inst.t];
    guard(&mats, || {
        let red = inst.a.reduce(&inst.t)?;
        let w = range_bounds(&red, cfg.theta_grid).numerical_radius;
        let norm = sigma_max(&red)?;
        let value = seminorm(&inst.t, &inst.a, lambda, &cfg)?.value;
        let tol = 1e-7;
        Ok(trial(
            w - tol <= value && value <= norm + tol,
            &mats,
            &[("lambda", lambda.value()), ("w_a", w), ("seminorm", value), ("norm_a", norm)],
            tol,
        ))
    })
}

/// Both bounds relating `‖T‖²_(A,λ)` to `w_A`, `c_A` and `‖T‖_A`.
fn two_sided_bounds(seed: u64, _: usize) -> Trial {
    let inst = instance(seed, 2, 6);
    let mut rng = knobs(seed);
    let lambda = lam(LAMBDAS[rng.random_range(0..LAMBDAS.len())]);
    let l = lambda.value();
    let cfg = OptimizerConfig::with_seed(seed);
    let mats = [inst.a.matrix(), &inst.t];
    guard(&mats, || {
        let red = inst.a.reduce(&inst.t)?;
        let norm = sigma_max(&red)?;
        let w = a_numerical_radius(&inst.t, &inst.a, &cfg)?.value;
        let c = a_crawford(&inst.t, &inst.a, &cfg)?.value;
        let v2 = seminorm(&inst.t, &inst.a, lambda, &cfg)?.value.powi(2);
        let lower = 2.0 * (l * (1.0 - l)).sqrt() * c * norm;
        let upper = (1.0 + l) * w * w + 2.0 * l * w * (w * w - c * c).max(0.0).sqrt();
        let tol = 1e-7;
        Ok(trial(
            lower <= v2 + tol && v2 <= upper + tol,
            &mats,
            &[("lambda", l), ("lower", lower), ("value_sq", v2), ("upper", upper)],
            tol,
        ))
    })
}

/// `λ = 0` against the certified sweep, `λ = 1` against `σ_max`.
fn endpoints(seed: u64, _: usize) -> Trial {
    let inst = instance(seed, 2, 6);
    let cfg = OptimizerConfig::with_seed(seed);
    let mats = [inst.a.matrix(), &inst.t];
    guard(&mats, || {
        let red = inst.a.reduce(&inst.t)?;
        let w = range_bounds(&red, cfg.theta_grid).numerical_radius;
        let norm = sigma_max(&red)?;
        let s0 = seminorm(&inst.t, &inst.a, Lambda::zero(), &cfg)?.value;
        let s1 = seminorm(&inst.t, &inst.a, Lambda::one(), &cfg)?.value;
        let tol = 1e-6;
        Ok(trial(
            rel_close(s0, w, tol) && rel_close(s1, norm, tol),
            &mats,
            &[("seminorm_0", s0), ("w_sweep", w), ("seminorm_1", s1), ("sigma_max", norm)],
            tol,
        ))
    })
}

/// Engine against the brute-force grid on random 2×2 reduced operators.
fn oracle_n2(seed: u64, _: usize) -> Trial {
    let b: Matrix<f64> = random_matrix(&mut SeedStream::stream(seed, 0), 2, 1.0);
    let red = ReducedOperator::from_matrix(b.clone());
    let cfg = OptimizerConfig::with_seed(seed);
    let mats = [&b];
    guard(&mats, || {
        let mut pass = true;
        let mut worst = (0.0, 0.0, 0.0, 0.0);
        for &l in &LAMBDAS {
            let engine = crate::engine::seminorm_reduced(&red, lam(l), &cfg)?.value.powi(2);
            let grid = oracle_sup(&red, lam(l), ORACLE_DELTA)?;
            let excess = (engine - grid.value).abs() - grid.error_bound - 1e-6;
            if excess > worst.3 || worst == (0.0, 0.0, 0.0, 0.0) {
                worst = (l, engine, grid.value, excess);
            }
            pass &= excess <= 0.0;
        }
        Ok(trial(
            pass,
            &mats,
            &[
                ("lambda", worst.0),
                ("engine_sq", worst.1),
                ("oracle", worst.2),
                ("excess", worst.3),
            ],
            1e-6,
        ))
    })
}

/// Positive multiples attain equality with the expected witness value;
/// random pairs with a clear strict inequality do not.
fn equality_suite(seed: u64, _: usize) -> Trial {
    let inst = instance(seed, 2, 6);
    let mut rng = knobs(seed);
    let lambda = lam(LAMBDAS[rng.random_range(0..LAMBDAS.len())]);
    let alpha = rng.random_range(0.1..5.0);
    let cfg = OptimizerConfig::with_seed(seed);
    let mats = [inst.a.matrix(), &inst.t, &inst.s];
    guard(&mats, || {
        let scaled = inst.t.scale_real(alpha);
        let eq = triangle_equality(&inst.t, &scaled, &inst.a, lambda, &cfg)?;
        let expected = alpha * eq.t_seminorm * eq.t_seminorm;
        let forward = eq.holds && rel_close(eq.witness_value.re, expected, 1e-6) && eq.witness_value.im.abs() <= 1e-6 * expected.max(1.0);

        let other = triangle_equality(&inst.t, &inst.s, &inst.a, lambda, &cfg)?;
        let strict = other.sum_seminorm < other.seminorm_sum - 1e-3;
        let backward = !strict || !other.holds;
        let consistent = !other.holds
            || (other.witness_value - other.target).norm() <= other.tolerance * other.target.max(1.0);
        Ok(trial(
            forward && backward && consistent,
            &mats,
            &[
                ("lambda", lambda.value()),
                ("alpha", alpha),
                ("witness_re", eq.witness_value.re),
                ("expected", expected),
                ("pair_sum", other.sum_seminorm),
                ("pair_bound", other.seminorm_sum),
            ],
            1e-6,
        ))
    })
}

/// `S0 − c·T` with `c` chosen so the mixed form vanishes at the computed
/// maximizer of `T`; such a pair satisfies the θ-condition with a single
/// witness and is therefore orthogonal.
pub fn orthogonal_partner(
    t: &Matrix<f64>,
    s0: &Matrix<f64>,
    a: &PositiveOperator<f64>,
    lambda: Lambda<f64>,
    cfg: &OptimizerConfig,
) -> Result<Matrix<f64>> {
    let rt = a.reduce(t)?;
    let rs = a.reduce(s0)?;
    let (eval, _) = seminorm_search(&rt, lambda, cfg)?;
    if eval.value == 0.0 || eval.witness.is_empty() {
        return Ok(s0.clone());
    }
    let ft = pair_form(&rt.b, &rt.b, lambda.value(), &eval.witness);
    let fs = pair_form(&rt.b, &rs.b, lambda.value(), &eval.witness);
    s0.sub(&t.scale(fs / ft))
}

fn equivalence_suite(seed: u64, _: usize) -> Trial {
    let inst = instance(seed, 2, 4);
    let mut rng = knobs(seed);
    let lambda = lam(ORTH_LAMBDAS[rng.random_range(0..ORTH_LAMBDAS.len())]);
    let constructed = rng.random_bool(0.5);
    let cfg = OptimizerConfig::with_seed(seed);
    let probe = inst.spec.n <= 3;
    let s = if constructed {
        match orthogonal_partner(&inst.t, &inst.s, &inst.a, lambda, &cfg) {
            Ok(s) => s,
            Err(e) => return errored(&[inst.a.matrix(), &inst.t, &inst.s], e),
        }
    } else {
        inst.s.clone()
    };
    let mats = [inst.a.matrix(), &inst.t, &s];
    guard(&mats, || {
        let tol = DEFAULT_TOLERANCE;
        let verdict = bj_orthogonal(&inst.t, &s, &inst.a, lambda, tol, &cfg)?;
        let certified = if verdict.orthogonal {
            certificate_check(&inst.t, &s, &inst.a, lambda, &verdict, DEFAULT_XI_SAMPLES, &cfg)?.holds()
        } else {
            true
        };
        let mut observed = vec![
            ("lambda", lambda.value()),
            ("constructed", f64::from(u8::from(constructed))),
            ("gap", verdict.relative_gap),
            ("orthogonal", f64::from(u8::from(verdict.orthogonal))),
            ("certificate", f64::from(u8::from(certified))),
        ];
        let mut note = None;
        let mut agree_or_banded = true;
        if probe {
            let theta = theta_condition(&inst.t, &s, &inst.a, lambda, DEFAULT_THETA_GRID, &cfg)?;
            let scale = (theta.eps_sign / 1e-6).max(f64::MIN_POSITIVE);
            let form = theta.worst_form_value / scale;
            observed.push(("theta_satisfied", f64::from(u8::from(theta.satisfied))));
            observed.push(("worst_form_rel", form));
            if theta.satisfied != verdict.orthogonal {
                // Both tests sit near their thresholds.
                agree_or_banded = verdict.relative_gap <= BAND && form >= -BAND;
                note = Some(format!(
                    "theta/bj disagreement orthogonal={} gap={:e} worst_form_rel={:e} pool={} distinct={}",
                    verdict.orthogonal, verdict.relative_gap, form, theta.pool_size, theta.distinct_maximizers
                ));
            }
        }
        let mut t = trial(certified && agree_or_banded, &mats, &observed, tol);
        t.note = note;
        Ok(t)
    })
}

/// Tolerance band for a θ-condition / gap disagreement.
pub(crate) const BAND: f64 = 1e-3;

/// Orthogonal pairs at `A = I` with `λ ∈ {0, 1}`: the quadratic lower bound
/// with `[S]` (λ = 1) or `c(S)` (λ = 0).
fn corollaries(seed: u64, _: usize) -> Trial {
    let mut rng = knobs(seed);
    let n = rng.random_range(2..=4);
    let lambda = if rng.random_bool(0.5) { Lambda::one() } else { Lambda::zero() };
    let mut stream = SeedStream::new(seed);
    let t: Matrix<f64> = random_matrix(&mut stream.next_rng(), n, 1.0);
    let s0: Matrix<f64> = random_matrix(&mut stream.next_rng(), n, 1.0);
    let a = PositiveOperator::identity(n);
    let cfg = OptimizerConfig::with_seed(seed);
    guard(&[&t, &s0], || {
        let s = orthogonal_partner(&t, &s0, &a, lambda, &cfg)?;
        let verdict = bj_orthogonal(&t, &s, &a, lambda, DEFAULT_TOLERANCE, &cfg)?;
        let cert = certificate_check(&t, &s, &a, lambda, &verdict, DEFAULT_XI_SAMPLES, &cfg)?;
        Ok(trial(
            verdict.orthogonal && cert.holds(),
            &[&t, &s],
            &[
                ("lambda", lambda.value()),
                ("gap", verdict.relative_gap),
                ("m", verdict.m_value),
                ("worst_margin", cert.worst_margin),
            ],
            cert.slack,
        ))
    })
}
