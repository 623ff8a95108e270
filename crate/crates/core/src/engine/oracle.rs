//! Brute-force grid oracle for reduced dimensions up to 3.
//!
//! The objective is invariant under `y ↦ e^{iγ}y`, so the sphere is charted
//! with the first coordinate real:
//!
//! ```text
//!   r = 2:  y = (cos α, e^{iβ} sin α)
//!   r = 3:  y = (cos α₁, e^{iβ₁} sin α₁ cos α₂, e^{iβ₂} sin α₁ sin α₂)
//! ```
//!
//! with `α ∈ [0, π/2]`, `β ∈ [0, 2π)`. Every chart partial has norm at most
//! one and every grid cell has half-width at most `δ/2`, so any unit vector is
//! within `(r−1)δ` of a grid point. The objective is `4‖B‖²`-Lipschitz on the
//! unit ball, which yields the reported error bound. Nothing here shares code
//! with the optimizer.

use rayon::prelude::*;

use super::Lambda;
use crate::error::{Error, Result};
use crate::linalg::svd;
use crate::scalar::{Real, C};
use crate::semispace::ReducedOperator;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleValue<R> {
    /// Extremal objective value over the grid (squared-seminorm scale).
    pub value: R,
    /// `|true extremum − value|` is at most this.
    pub error_bound: R,
}

fn axis(hi: f64, step: f64, include_end: bool) -> Vec<f64> {
    let cells = (hi / step).ceil().max(1.0) as usize;
    let h = hi / cells as f64;
    let count = if include_end { cells + 1 } else { cells };
    (0..count).map(|k| k as f64 * h).collect()
}

fn objective_at<R: Real>(b: &[Vec<C<R>>], lambda: R, y: &[C<R>]) -> R {
    let r = y.len();
    let mut norm_sq = R::zero();
    let mut z = C::new(R::zero(), R::zero());
    for i in 0..r {
        let mut acc = C::new(R::zero(), R::zero());
        for j in 0..r {
            acc += b[i][j] * y[j];
        }
        norm_sq += acc.norm_sqr();
        z += acc * y[i].conj();
    }
    lambda * norm_sq + (R::one() - lambda) * z.norm_sqr()
}

fn grid_extreme<R: Real>(red: &ReducedOperator<R>, lambda: Lambda<R>, delta: f64, maximize: bool) -> Result<OracleValue<R>> {
    let r = red.dim();
    if r > 3 {
        return Err(Error::DimensionTooLarge { dim: r });
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidConfig(format!("grid step must be positive, got {delta}")));
    }
    let lam = lambda.value();
    let rows: Vec<Vec<C<R>>> = (0..r).map(|i| red.b.row(i).to_vec()).collect();
    let norm = if r == 0 { R::zero() } else { svd(&red.b)?.sigma_max() };
    let bound = R::lit(4.0) * norm * norm * R::lit((r.saturating_sub(1)) as f64 * delta);

    let pick = |a: R, b: R| if maximize { a.max(b) } else { a.min(b) };
    let start = if maximize { R::neg_infinity() } else { R::infinity() };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let tau = std::f64::consts::TAU;

    let value = match r {
        0 => R::zero(),
        1 => objective_at(&rows, lam, &[C::new(R::one(), R::zero())]),
        2 => {
            let alphas = axis(half_pi, delta, true);
            let betas: Vec<C<R>> = axis(tau, delta, false)
                .into_iter()
                .map(|b| C::new(R::lit(b.cos()), R::lit(b.sin())))
                .collect();
            alphas
                .par_iter()
                .map(|&a| {
                    let (s, c) = (R::lit(a.sin()), R::lit(a.cos()));
                    betas.iter().fold(start, |acc, e| {
                        let y = [C::new(c, R::zero()), e * s];
                        pick(acc, objective_at(&rows, lam, &y))
                    })
                })
                .reduce(|| start, pick)
        }
        _ => {
            let alphas = axis(half_pi, delta, true);
            let betas: Vec<C<R>> = axis(tau, delta, false)
                .into_iter()
                .map(|b| C::new(R::lit(b.cos()), R::lit(b.sin())))
                .collect();
            let pairs: Vec<(f64, f64)> = alphas
                .iter()
                .flat_map(|&a1| alphas.iter().map(move |&a2| (a1, a2)))
                .collect();
            pairs
                .par_iter()
                .map(|&(a1, a2)| {
                    let (s1, c1) = (R::lit(a1.sin()), R::lit(a1.cos()));
                    let (s2, c2) = (R::lit(a2.sin()), R::lit(a2.cos()));
                    let mut acc = start;
                    for e1 in &betas {
                        for e2 in &betas {
                            let y = [C::new(c1, R::zero()), e1 * (s1 * c2), e2 * (s1 * s2)];
                            acc = pick(acc, objective_at(&rows, lam, &y));
                        }
                    }
                    acc
                })
                .reduce(|| start, pick)
        }
    };
    Ok(OracleValue {
        value,
        error_bound: bound,
    })
}

/// Grid maximum of the objective; a lower bound on the true supremum.
pub fn oracle_sup<R: Real>(red: &ReducedOperator<R>, lambda: Lambda<R>, delta: f64) -> Result<OracleValue<R>> {
    grid_extreme(red, lambda, delta, true)
}

/// Grid minimum of the objective; an upper bound on the true infimum.
pub fn oracle_inf<R: Real>(red: &ReducedOperator<R>, lambda: Lambda<R>, delta: f64) -> Result<OracleValue<R>> {
    grid_extreme(red, lambda, delta, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn red(entries: &[f64], n: usize) -> ReducedOperator<f64> {
        ReducedOperator::from_matrix(Matrix::from_real(n, n, entries).unwrap())
    }

    #[test]
    fn identity_is_exactly_one() {
        for lam in [0.0, 0.4, 1.0] {
            let v = oracle_sup(&red(&[1.0, 0.0, 0.0, 1.0], 2), Lambda::new(lam).unwrap(), 0.01).unwrap();
            assert!((v.value - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nilpotent_at_lambda_zero() {
        let v = oracle_sup(&red(&[0.0, 1.0, 0.0, 0.0], 2), Lambda::new(0.0).unwrap(), 0.005).unwrap();
        assert!((v.value - 0.25).abs() < 0.01);
    }

    #[test]
    fn diagonal_norm() {
        let v = oracle_sup(&red(&[3.0, 0.0, 0.0, 1.0], 2), Lambda::new(1.0).unwrap(), 0.005).unwrap();
        assert!((v.value - 9.0).abs() < 0.1);
        let v = oracle_inf(&red(&[3.0, 0.0, 0.0, 1.0], 2), Lambda::new(1.0).unwrap(), 0.005).unwrap();
        assert!((v.value - 1.0).abs() < 0.1);
    }

    #[test]
    fn three_dimensional_chart() {
        let v = oracle_sup(
            &red(&[2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.5], 3),
            Lambda::new(1.0).unwrap(),
            0.05,
        )
        .unwrap();
        assert!((v.value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_large_dimension_and_bad_step() {
        let b = ReducedOperator::from_matrix(Matrix::<f64>::identity(4));
        assert_eq!(
            oracle_sup(&b, Lambda::new(0.5).unwrap(), 0.1).unwrap_err(),
            Error::DimensionTooLarge { dim: 4 }
        );
        let b = ReducedOperator::from_matrix(Matrix::<f64>::identity(2));
        assert!(oracle_sup(&b, Lambda::new(0.5).unwrap(), 0.0).is_err());
    }
}
