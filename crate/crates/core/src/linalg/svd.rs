//! One-sided (Hestenes) Jacobi SVD for square complex matrices.
//!
//! Column pairs of `M·V` are rotated until mutually orthogonal; singular
//! values are then the column norms and `V` holds the right singular vectors.
//! Small singular values come out with absolute accuracy near
//! `ε‖M‖`, which the `M*M` route cannot offer.

use super::matrix::Matrix;
use super::vector;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

const MAX_SWEEPS: usize = 80;

#[derive(Clone, Debug)]
pub struct Svd<R: Real> {
    /// Descending.
    pub singular_values: Vec<R>,
    /// Right singular vectors as columns, ordered like `singular_values`.
    pub right_vectors: Matrix<R>,
}

impl<R: Real> Svd<R> {
    pub fn sigma_max(&self) -> R {
        self.singular_values.first().copied().unwrap_or_else(R::zero)
    }

    pub fn sigma_min(&self) -> R {
        self.singular_values.last().copied().unwrap_or_else(R::zero)
    }

    /// Unit vector attaining `‖Mv‖ = σ_max`.
    pub fn top_vector(&self) -> Vec<C<R>> {
        self.right_vectors.column(0)
    }

    /// Unit vector attaining `‖Mv‖ = σ_min`.
    pub fn bottom_vector(&self) -> Vec<C<R>> {
        self.right_vectors.column(self.right_vectors.cols() - 1)
    }
}

pub fn svd<R: Real>(m: &Matrix<R>) -> Result<Svd<R>> {
    m.validate_operator()?;
    let n = m.n();
    // Work column-wise: cols[j] is column j of M·V.
    let mut cols: Vec<Vec<C<R>>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C<R>>> = (0..n).map(|j| vector::basis(n, j)).collect();
    let eps = R::epsilon();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha = vector::norm_sqr(&cols[p]);
                let beta = vector::norm_sqr(&cols[q]);
                let gamma = vector::inner(&cols[q], &cols[p]); // a_p* a_q
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g <= R::min_positive_value() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (g + g);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + R::one()).sqrt());
                let c = R::one() / (t * t + R::one()).sqrt();
                let s = c * t;
                // a_q~ = e^{-iφ} a_q, then the real rotation
                // a_p' = c a_p − s a_q~,  a_q' = s a_p + c a_q~.
                let rot = |x: &mut Vec<Vec<C<R>>>| {
                    let (lo, hi) = x.split_at_mut(q);
                    let xp = &mut lo[p];
                    let xq = &mut hi[0];
                    for (ap, aq) in xp.iter_mut().zip(xq.iter_mut()) {
                        let aqt = *aq * phase.conj();
                        let np = *ap * c - aqt * s;
                        let nq = *ap * s + aqt * c;
                        *ap = np;
                        *aq = nq;
                    }
                };
                rot(&mut cols);
                rot(&mut v);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "one-sided Jacobi SVD",
        });
    }

    let mut pairs: Vec<(R, usize)> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (vector::norm(c), j))
        .collect();
    pairs.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
    });
    let singular_values = pairs.iter().map(|&(s, _)| s).collect();
    let ordered: Vec<Vec<C<R>>> = pairs.iter().map(|&(_, j)| v[j].clone()).collect();
    Ok(Svd {
        singular_values,
        right_vectors: Matrix::from_columns(n, &ordered),
    })
}

/// `(σ_min, σ_max)`: minimum modulus and operator norm.
pub fn svd_extremes<R: Real>(m: &Matrix<R>) -> Result<(R, R)> {
    let s = svd(m)?;
    Ok((s.sigma_min(), s.sigma_max()))
}
