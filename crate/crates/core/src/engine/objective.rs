//! The mixed objective `λ‖By‖² + (1−λ)|⟨By, y⟩|²` and its gradient.

use crate::linalg::{vector, Matrix};
use crate::scalar::{Real, C};

/// `(By, ⟨By, y⟩)`
#[inline]
pub(crate) fn forms<R: Real>(b: &Matrix<R>, y: &[C<R>]) -> (Vec<C<R>>, C<R>) {
    let by = b.mv(y);
    let z = vector::inner(&by, y);
    (by, z)
}

#[inline]
pub(crate) fn value<R: Real>(b: &Matrix<R>, lambda: R, y: &[C<R>]) -> R {
    let (by, z) = forms(b, y);
    lambda * vector::norm_sqr(&by) + (R::one() - lambda) * z.norm_sqr()
}

/// Objective and its real-coordinate gradient, written as the complex vector
/// `2 ∂f/∂ȳ = 2[λ B*By + (1−λ)(z̄ By + z B*y)]`.
pub(crate) fn value_grad<R: Real>(
    b: &Matrix<R>,
    bh: &Matrix<R>,
    lambda: R,
    y: &[C<R>],
) -> (R, Vec<C<R>>) {
    let (by, z) = forms(b, y);
    let bhy = bh.mv(y);
    let bhby = bh.mv(&by);
    let mu = R::one() - lambda;
    let f = lambda * vector::norm_sqr(&by) + mu * z.norm_sqr();
    let two = R::lit(2.0);
    let zc = z.conj();
    let g = (0..y.len())
        .map(|i| (bhby[i] * lambda + (by[i] * zc + bhy[i] * z) * mu) * two)
        .collect();
    (f, g)
}
