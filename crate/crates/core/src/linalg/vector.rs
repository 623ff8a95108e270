//! Free functions on complex vectors stored as slices.

use num_traits::Zero;

use crate::scalar::{Real, C};

/// `⟨u, v⟩ = Σ u_i conj(v_i)`, linear in the first argument.
#[inline]
pub fn inner<R: Real>(u: &[C<R>], v: &[C<R>]) -> C<R> {
    debug_assert_eq!(u.len(), v.len());
    u.iter()
        .zip(v)
        .fold(C::zero(), |acc, (a, b)| acc + a * b.conj())
}

#[inline]
pub fn norm_sqr<R: Real>(u: &[C<R>]) -> R {
    u.iter().map(|z| z.norm_sqr()).sum()
}

#[inline]
pub fn norm<R: Real>(u: &[C<R>]) -> R {
    norm_sqr(u).sqrt()
}

/// Returns `u / ‖u‖`, or `None` for a (numerically) zero vector.
pub fn normalized<R: Real>(u: &[C<R>]) -> Option<Vec<C<R>>> {
    let nrm = norm(u);
    if !(nrm > R::min_positive_value()) || !nrm.is_finite() {
        return None;
    }
    let inv = R::one() / nrm;
    Some(u.iter().map(|z| z * inv).collect())
}

/// `y ← y + alpha x`
#[inline]
pub fn axpy<R: Real>(alpha: C<R>, x: &[C<R>], y: &mut [C<R>]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Standard basis vector `e_k` of length `n`.
pub fn basis<R: Real>(n: usize, k: usize) -> Vec<C<R>> {
    let mut e = vec![C::zero(); n];
    e[k] = C::new(R::one(), R::zero());
    e
}
