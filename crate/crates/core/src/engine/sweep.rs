//! Support-function sweeps of the numerical range `W(B) = {⟨By, y⟩ : ‖y‖ = 1}`.
//!
//! For each direction `θ`, the extreme eigenpairs of `H(θ) = Re(e^{iθ}B)`
//! give the support values of the convex set `W(B)` and the boundary points
//! attaining them. Hence
//!
//! ```text
//!     w(B) = max_θ λ_max(H(θ)),     c(B) = max(0, max_θ λ_min(H(θ))),
//! ```
//!
//! the second being the distance from the origin to `W(B)`.

use num_traits::Zero;

use super::objective::forms;
use crate::linalg::eigen::jacobi;
use crate::linalg::{vector, Matrix};
use crate::scalar::{Real, C};

const GOLDEN_ITERS: usize = 80;
const BISECT_ITERS: usize = 100;

#[derive(Clone, Debug)]
pub(crate) struct Support<R: Real> {
    pub theta: R,
    pub value: R,
    pub vector: Vec<C<R>>,
}

#[derive(Clone, Debug)]
pub(crate) struct RangeSweep<R: Real> {
    /// `λ_max(H(θ_k))` with its eigenvector.
    pub top: Vec<Support<R>>,
    /// `λ_min(H(θ_k))` with its eigenvector.
    pub bottom: Vec<Support<R>>,
    pub step: R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Top,
    Bottom,
}

pub(crate) fn support<R: Real>(b: &Matrix<R>, theta: R, side: Side) -> Support<R> {
    let h = b.rotated_hermitian_part(theta);
    let eig = jacobi(&h).expect("Jacobi converges on Hermitian input");
    let k = match side {
        Side::Top => eig.dim() - 1,
        Side::Bottom => 0,
    };
    Support {
        theta,
        value: eig.eigenvalues[k],
        vector: eig.vector(k),
    }
}

pub(crate) fn sweep<R: Real>(b: &Matrix<R>, grid: usize) -> RangeSweep<R> {
    let step = R::TAU() / R::from_usize(grid).unwrap();
    let mut top = Vec::with_capacity(grid);
    let mut bottom = Vec::with_capacity(grid);
    for k in 0..grid {
        let theta = step * R::from_usize(k).unwrap();
        let h = b.rotated_hermitian_part(theta);
        let eig = jacobi(&h).expect("Jacobi converges on Hermitian input");
        let last = eig.dim() - 1;
        top.push(Support {
            theta,
            value: eig.eigenvalues[last],
            vector: eig.vector(last),
        });
        bottom.push(Support {
            theta,
            value: eig.eigenvalues[0],
            vector: eig.vector(0),
        });
    }
    RangeSweep { top, bottom, step }
}

impl<R: Real> RangeSweep<R> {
    fn best_index(&self, side: Side) -> usize {
        let list = match side {
            Side::Top => &self.top,
            Side::Bottom => &self.bottom,
        };
        let mut best = 0;
        for (k, s) in list.iter().enumerate() {
            if s.value > list[best].value {
                best = k;
            }
        }
        best
    }

    /// Maximizes the chosen support value over `θ`, refining the best grid
    /// angle by golden-section search on the neighbouring cells.
    pub fn refined_max(&self, b: &Matrix<R>, side: Side) -> Support<R> {
        let list = match side {
            Side::Top => &self.top,
            Side::Bottom => &self.bottom,
        };
        let k = self.best_index(side);
        let center = list[k].theta;
        let refined = golden_max(
            |theta| support(b, theta, side).value,
            center - self.step,
            center + self.step,
        );
        let candidate = support(b, refined, side);
        if candidate.value >= list[k].value {
            candidate
        } else {
            list[k].clone()
        }
    }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub(crate) fn golden_max<R: Real>(f: impl Fn(R) -> R, mut lo: R, mut hi: R) -> R {
    let inv_phi = (R::lit(5.0).sqrt() - R::one()) * R::lit(0.5);
    let mut x1 = hi - (hi - lo) * inv_phi;
    let mut x2 = lo + (hi - lo) * inv_phi;
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERS {
        if (hi - lo).abs() <= R::epsilon() * (R::one() + lo.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * inv_phi;
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * inv_phi;
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

#[inline]
fn cross<R: Real>(a: C<R>, b: C<R>) -> R {
    a.re * b.im - a.im * b.re
}

/// Unit vector `y` in `span{u, v}` with `⟨By, y⟩ = target`, where `target`
/// lies on the segment between `⟨Bu, u⟩` and `⟨Bv, v⟩`.
///
/// After shifting by `target` and rotating the segment onto the real axis,
/// the phase of `v` is chosen so the imaginary part of the form vanishes on
/// the whole arc `cos t·u + sin t·e^{iφ}v`; bisection on `t` then zeroes the
/// real part.
pub(crate) fn hit_point<R: Real>(
    b: &Matrix<R>,
    u: &[C<R>],
    v: &[C<R>],
    target: C<R>,
) -> Option<Vec<C<R>>> {
    let n = b.rows();
    let zu = forms(b, u).1 - target;
    let zv = forms(b, v).1 - target;
    if zu.norm() <= R::epsilon() {
        return Some(u.to_vec());
    }
    if zv.norm() <= R::epsilon() {
        return Some(v.to_vec());
    }
    let dir = zv - zu;
    if dir.norm() <= R::min_positive_value() {
        return None;
    }
    let rot = (dir / dir.norm()).conj();
    let shifted = Matrix::from_fn(n, n, |i, j| {
        let base = b[(i, j)] - if i == j { target } else { C::zero() };
        base * rot
    });
    // K = (C − C*) / 2i
    let half_i = C::new(R::zero(), R::lit(-0.5));
    let k = Matrix::from_fn(n, n, |i, j| (shifted[(i, j)] - shifted[(j, i)].conj()) * half_i);
    let cross_term = vector::inner(&k.mv(v), u);
    let phase = if cross_term.norm() > R::min_positive_value() {
        C::new(R::zero(), R::one()) * cross_term.conj() / cross_term.norm()
    } else {
        C::new(R::one(), R::zero())
    };
    let pv: Vec<C<R>> = v.iter().map(|x| x * phase).collect();
    let arc = |t: R| -> Vec<C<R>> {
        let (s, c) = t.sin_cos();
        u.iter().zip(&pv).map(|(a, b)| a * c + b * s).collect()
    };
    let h = |t: R| {
        let y = arc(t);
        vector::inner(&shifted.mv(&y), &y).re
    };
    let (mut lo, mut hi) = (R::zero(), R::FRAC_PI_2());
    if h(lo) > R::zero() || h(hi) < R::zero() {
        return None;
    }
    for _ in 0..BISECT_ITERS {
        let mid = (lo + hi) * R::lit(0.5);
        if h(mid) <= R::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    vector::normalized(&arc((lo + hi) * R::lit(0.5)))
}

/// Unit vector with `⟨By, y⟩ ≈ 0`, if `0` lies inside the polygon spanned by
/// the sweep's boundary points.
pub(crate) fn zero_point<R: Real>(b: &Matrix<R>, sweep: &RangeSweep<R>) -> Option<Vec<C<R>>> {
    let pts: Vec<C<R>> = sweep.bottom.iter().map(|s| forms(b, &s.vector).1).collect();
    let p0 = pts[0];
    let scale = pts.iter().fold(R::zero(), |m, p| m.max(p.norm()));
    let slack = R::epsilon() * R::lit(16.0) * scale * scale;
    for i in 1..pts.len().saturating_sub(1) {
        let (p1, p2) = (pts[i], pts[i + 1]);
        let area = cross(p1 - p0, p2 - p0);
        if area.abs() <= slack {
            continue;
        }
        // Barycentric sign test for the origin.
        let s0 = cross(p1 - p0, -p0) * area.signum();
        let s1 = cross(p2 - p1, -p1) * area.signum();
        let s2 = cross(p0 - p2, -p2) * area.signum();
        if s0 < -slack || s1 < -slack || s2 < -slack {
            continue;
        }
        // Where the line through p0 and the origin meets [p1, p2].
        let d = p2 - p1;
        let denom = cross(d, p0);
        let s = if denom.abs() > R::min_positive_value() {
            (-cross(p1, p0) / denom).max(R::zero()).min(R::one())
        } else {
            R::zero()
        };
        let q = p1 + d * s;
        let yq = hit_point(b, &sweep.bottom[i].vector, &sweep.bottom[i + 1].vector, q)?;
        let y = hit_point(b, &sweep.bottom[0].vector, &yq, C::zero())?;
        if forms(b, &y).1.norm() <= R::tol(1e-10) * scale.max(R::one()) {
            return Some(y);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::{random_matrix, random_unit_vector, SeedStream};

    #[test]
    fn sweep_of_nilpotent_is_flat() {
        let b = Matrix::<f64>::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = sweep(&b, 36);
        for sup in &s.top {
            assert!((sup.value - 0.5).abs() < 1e-14);
        }
        for inf in &s.bottom {
            assert!((inf.value + 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let x = golden_max(|x: f64| -(x - 0.3).powi(2), -1.0, 2.0);
        assert!((x - 0.3).abs() < 1e-7);
    }

    #[test]
    fn hit_point_lands_on_segment() {
        let mut seeds = SeedStream::new(99);
        for _ in 0..20 {
            let mut rng = seeds.next_rng();
            let b: Matrix<f64> = random_matrix(&mut rng, 3, 1.0);
            let u: Vec<C<f64>> = random_unit_vector(&mut rng, 3);
            let v: Vec<C<f64>> = random_unit_vector(&mut rng, 3);
            let (zu, zv) = (forms(&b, &u).1, forms(&b, &v).1);
            let target = zu * 0.35 + zv * 0.65;
            let y = hit_point(&b, &u, &v, target).unwrap();
            assert!((vector::norm(&y) - 1.0).abs() < 1e-12);
            assert!((forms(&b, &y).1 - target).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_point_for_traceless_matrices() {
        let mut seeds = SeedStream::new(12);
        for _ in 0..20 {
            let mut rng = seeds.next_rng();
            let mut b: Matrix<f64> = random_matrix(&mut rng, 4, 1.0);
            let tr = (0..4).fold(C::zero(), |acc, i| acc + b[(i, i)]) / 4.0;
            for i in 0..4 {
                b[(i, i)] -= tr;
            }
            // trace zero puts 0 = tr/n inside W(B)
            let s = sweep(&b, 180);
            let y = zero_point(&b, &s).expect("origin inside numerical range");
            assert!(forms(&b, &y).1.norm() < 1e-10);
        }
    }
}
