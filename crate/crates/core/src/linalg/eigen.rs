//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `m_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! composite `U = D·R` annihilates `m_pq` exactly. Sweeps repeat until the
//! off-diagonal mass is at rounding level.

use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<R: Real> {
    pub eigenvalues: Vec<R>,
    pub eigenvectors: Matrix<R>,
}

impl<R: Real> HermitianEigen<R> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, k: usize) -> Vec<C<R>> {
        self.eigenvectors.column(k)
    }

    pub fn min(&self) -> R {
        self.eigenvalues.first().copied().unwrap_or_else(R::zero)
    }

    pub fn max(&self) -> R {
        self.eigenvalues.last().copied().unwrap_or_else(R::zero)
    }

    /// `U diag(f(μ)) U*`
    pub fn map_spectrum(&self, f: impl Fn(R) -> R) -> Matrix<R> {
        let n = self.dim();
        let u = &self.eigenvectors;
        let fm: Vec<R> = self.eigenvalues.iter().map(|&mu| f(mu)).collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(C::zero(), |acc, k| {
                acc + u[(i, k)] * u[(j, k)].conj() * fm[k]
            })
        })
    }

    pub fn reconstruct(&self) -> Matrix<R> {
        self.map_spectrum(|mu| mu)
    }
}

/// Relative Hermitian tolerance used as the precondition on inputs.
pub fn hermitian_tolerance<R: Real>(m: &Matrix<R>) -> R {
    R::tol(1e-10) * m.frobenius_norm().max(R::one())
}

/// Eigendecomposition of a Hermitian matrix, with post-condition checks.
pub fn hermitian_eigen<R: Real>(m: &Matrix<R>) -> Result<HermitianEigen<R>> {
    m.validate_operator()?;
    let scale = m.frobenius_norm().max(R::one());
    let tol = hermitian_tolerance(m);
    let defect = m.hermitian_defect();
    if defect > tol {
        return Err(Error::NotHermitian {
            asymmetry: defect.as_f64(),
            tolerance: tol.as_f64(),
        });
    }
    let eig = jacobi(m).ok_or(Error::NoConvergence {
        what: "Hermitian Jacobi eigensolver",
    })?;

    let eps_eig = R::tol(1e-10);
    let n = eig.dim();
    let u = &eig.eigenvectors;
    let gram = u.adjoint().mm(u);
    let orth = gram.sub(&Matrix::identity(n))?.frobenius_norm();
    let recon = eig.reconstruct().sub(m)?.frobenius_norm();
    // The strict Hermitian parts of m are what the rotations see; the
    // antihermitian residue (bounded by `tol`) cannot be reconstructed.
    if orth > eps_eig || recon > eps_eig * scale + defect {
        return Err(Error::NoConvergence {
            what: "Hermitian Jacobi eigensolver",
        });
    }
    Ok(eig)
}

/// Core Jacobi iteration on the Hermitian part of `m`; no input validation.
pub(crate) fn jacobi<R: Real>(m: &Matrix<R>) -> Option<HermitianEigen<R>> {
    let n = m.rows();
    let half = R::lit(0.5);
    let mut a = Matrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * half);
    for i in 0..n {
        a[(i, i)] = C::new(a[(i, i)].re, R::zero());
    }
    let mut v = Matrix::identity(n);

    let total = a.frobenius_norm();
    let threshold = R::epsilon() * total;
    let mut converged = n < 2 || total.is_zero();

    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold * R::lit(16.0) {
        return None;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Some(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm<R: Real>(a: &Matrix<R>) -> R {
    let n = a.rows();
    let mut acc = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate<R: Real>(a: &mut Matrix<R>, v: &mut Matrix<R>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= R::min_positive_value() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots that are already negligible relative to the diagonal.
    let tiny = R::epsilon() * R::lit(0.01);
    if mag <= tiny * (app.abs() + aqq.abs()) {
        a[(p, q)] = C::zero();
        a[(q, p)] = C::zero();
        return;
    }
    let phase = apq / mag; // e^{iφ}
    let theta = (aqq - app) / (mag + mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + R::one()).sqrt());
    let c = R::one() / (t * t + R::one()).sqrt();
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let u00 = C::new(c, R::zero());
    let u01 = C::new(s, R::zero());
    let u10 = -phase.conj() * s;
    let u11 = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u00 + akq * u10;
        a[(k, q)] = akp * u01 + akq * u11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
        a[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[(p, q)] = C::zero();
    a[(q, p)] = C::zero();
    a[(p, p)] = C::new(a[(p, p)].re, R::zero());
    a[(q, q)] = C::new(a[(q, q)].re, R::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u00 + vkq * u10;
        v[(k, q)] = vkp * u01 + vkq * u11;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::{random_hermitian, SeedStream};

    type M = Matrix<f64>;

    #[test]
    fn diagonal_is_sorted() {
        let e = hermitian_eigen(&M::from_real_diag(&[3.0, 1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 3.0]);
        let u = &e.eigenvectors;
        assert!((u[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((u[(0, 1)].norm() - 1.0).abs() < 1e-15);
        assert!(u[(0, 0)].norm() < 1e-15 && u[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eigen(&M::identity(4)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn pauli_x() {
        let e = hermitian_eigen(&M::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_pauli_y() {
        let m = M::from_rows(vec![
            vec![C::new(0.0, 0.0), C::new(0.0, -1.0)],
            vec![C::new(0.0, 1.0), C::new(0.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(e.reconstruct().sub(&m).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = M::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn random_reconstruction() {
        let mut seeds = SeedStream::new(11);
        for trial in 0..100 {
            let mut rng = seeds.next_rng();
            let n = 1 + trial % 8;
            let m: M = random_hermitian(&mut rng, n, 1.0 + trial as f64);
            let e = hermitian_eigen(&m).unwrap();
            let scale = m.frobenius_norm().max(1.0);
            let recon = e.reconstruct().sub(&m).unwrap().frobenius_norm();
            assert!(recon <= 1e-10 * scale, "trial {trial}: {recon}");
            let u = &e.eigenvectors;
            let orth = u.adjoint().mm(u).sub(&M::identity(n)).unwrap().frobenius_norm();
            assert!(orth <= 1e-10);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn single_precision() {
        let mut rng = SeedStream::new(5).next_rng();
        let m: Matrix<f32> = random_hermitian(&mut rng, 6, 1.0);
        let e = hermitian_eigen(&m).unwrap();
        let recon = e.reconstruct().sub(&m).unwrap().frobenius_norm();
        assert!(recon <= f32::tol(1e-10) * m.frobenius_norm().max(1.0));
    }
}
