//! Projected gradient ascent/descent on the complex unit sphere.

use super::objective::{value, value_grad};
use super::Mode;
use crate::linalg::{vector, Matrix};
use crate::scalar::{Real, C};

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;

#[derive(Clone, Debug)]
pub(crate) struct Climb<R: Real> {
    pub value: R,
    pub y: Vec<C<R>>,
    pub residual: R,
}

/// Tangent projection `g − Re⟨g, y⟩ y` of a gradient at the unit vector `y`.
pub(crate) fn tangent<R: Real>(g: &[C<R>], y: &[C<R>]) -> Vec<C<R>> {
    let radial = vector::inner(g, y).re;
    g.iter().zip(y).map(|(gi, yi)| gi - yi * radial).collect()
}

/// Climbs from the unit vector `y0` until the tangent gradient drops below
/// `grad_tol`, backtracking by halving from a unit step.
pub(crate) fn climb<R: Real>(
    b: &Matrix<R>,
    bh: &Matrix<R>,
    lambda: R,
    y0: Vec<C<R>>,
    mode: Mode,
    max_iters: usize,
    grad_tol: R,
) -> Climb<R> {
    let sign = match mode {
        Mode::Sup => R::one(),
        Mode::Inf => -R::one(),
    };
    let mut y = y0;
    let (mut f, mut g) = value_grad(b, bh, lambda, &y);
    let mut gt = tangent(&g, &y);
    let mut residual = vector::norm(&gt);

    for _ in 0..max_iters {
        if residual <= grad_tol {
            break;
        }
        let dir: Vec<C<R>> = gt.iter().map(|z| z * sign).collect();
        let mut t = R::one();
        let mut accepted = None;
        while t > R::lit(MIN_STEP) {
            let trial: Vec<C<R>> = y.iter().zip(&dir).map(|(yi, di)| yi + di * t).collect();
            if let Some(trial) = vector::normalized(&trial) {
                let ft = value(b, lambda, &trial);
                if sign * (ft - f) >= R::lit(ARMIJO) * t * residual * residual {
                    accepted = Some(trial);
                    break;
                }
            }
            t = t * R::lit(0.5);
        }
        let Some(next) = accepted else { break };
        y = next;
        (f, g) = value_grad(b, bh, lambda, &y);
        gt = tangent(&g, &y);
        residual = vector::norm(&gt);
    }
    Climb {
        value: f,
        y,
        residual,
    }
}
