//! Semi-Hilbertian structure induced by a positive operator `A`.
//!
//! `⟨x, y⟩_A = ⟨Ax, y⟩` is only a semi-inner product when `A` is singular.
//! Every extremal problem over the `A`-unit sphere is moved onto the ordinary
//! unit sphere of `range(A) ≅ ℂʳ` through the substitution `y = V*A^{1/2}x`,
//! where `V` is an orthonormal basis of `range(A)`. Under it
//!
//! ```text
//!     ‖Tx‖_A = ‖B y‖,   ⟨Tx, x⟩_A = ⟨B y, y⟩,   B = V* A^{1/2} T (A^{1/2})⁺ V,
//! ```
//!
//! valid whenever `T` has an `A^{1/2}`-adjoint. In finite dimension that is
//! the case exactly when `A^{1/2}T` annihilates `ker A`; otherwise `‖T‖_A`
//! is infinite.


use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_tolerance, vector, HermitianEigen, Matrix};
use crate::scalar::{Real, C};

/// Relative threshold for the kernel-inclusion membership test.
pub const MEMBER_TOL: f64 = 1e-8;
/// Default relative rank cutoff (times the largest eigenvalue of `A`).
pub const RANK_TOL: f64 = 1e-10;

/// A validated positive semidefinite operator with its spectral caches.
#[derive(Clone, Debug)]
pub struct PositiveOperator<R: Real> {
    a: Matrix<R>,
    eigen: HermitianEigen<R>,
    rank: usize,
    range_basis: Matrix<R>,
    kernel_basis: Matrix<R>,
    sqrt: Matrix<R>,
    sqrt_pinv: Matrix<R>,
    tau_rank: R,
}

/// An operator moved onto `range(A)`: an `r × r` matrix plus the map that
/// lifts reduced unit vectors back to `A`-unit vectors in `ℂⁿ`.
#[derive(Clone, Debug)]
pub struct ReducedOperator<R: Real> {
    pub b: Matrix<R>,
    lift: Matrix<R>,
}

impl<R: Real> ReducedOperator<R> {
    /// Wraps a bare `r × r` matrix, lifting by the identity (the `A = I` case).
    pub fn from_matrix(b: Matrix<R>) -> Self {
        let lift = Matrix::identity(b.rows());
        Self { b, lift }
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    /// The `A`-unit vector `x = (A^{1/2})⁺ V y` corresponding to `y`.
    pub fn lift(&self, y: &[C<R>]) -> Vec<C<R>> {
        self.lift.mv(y)
    }

    pub fn original_dim(&self) -> usize {
        self.lift.rows()
    }

    /// `self + xi · other`, sharing the lift (both must come from the same `A`).
    pub fn combine(&self, xi: C<R>, other: &Self) -> Self {
        Self {
            b: self.b.add_scaled(xi, &other.b).expect("same reduced dimension"),
            lift: self.lift.clone(),
        }
    }
}

impl<R: Real> PositiveOperator<R> {
    /// Validates `a` and caches its spectral data. `tau_rank` defaults to
    /// `1e-10 · λ_max(A)`; eigenvalues below it are treated as exact zeros.
    pub fn new(a: Matrix<R>, tau_rank: Option<R>) -> Result<Self> {
        let eigen = hermitian_eigen(&a)?;
        let eps_herm = hermitian_tolerance(&a);
        let lowest = eigen.min();
        if lowest < -eps_herm {
            return Err(Error::NotPositive {
                eigenvalue: lowest.as_f64(),
            });
        }
        let top = eigen.max().max(R::zero());
        let tau_rank = tau_rank.unwrap_or_else(|| R::tol(RANK_TOL) * top);
        let n = a.rows();

        let kept: Vec<usize> = (0..n)
            .filter(|&k| eigen.eigenvalues[k] > tau_rank && eigen.eigenvalues[k] > R::zero())
            .collect();
        let dropped: Vec<usize> = (0..n).filter(|k| !kept.contains(k)).collect();
        let rank = kept.len();

        // Range basis ordered by descending eigenvalue; the standard basis when
        // A is invertible, so that A = I reduces T to itself.
        let range_basis = if rank == n {
            Matrix::identity(n)
        } else {
            let range_cols: Vec<Vec<C<R>>> = kept.iter().rev().map(|&k| eigen.vector(k)).collect();
            Matrix::from_columns(n, &range_cols)
        };
        let kernel_cols: Vec<Vec<C<R>>> = dropped.iter().map(|&k| eigen.vector(k)).collect();
        let kernel_basis = Matrix::from_columns(n, &kernel_cols);

        let sqrt = eigen.map_spectrum(|mu| if mu > tau_rank { mu.sqrt() } else { R::zero() });
        let sqrt_pinv = eigen.map_spectrum(|mu| {
            if mu > tau_rank && mu > R::zero() {
                R::one() / mu.sqrt()
            } else {
                R::zero()
            }
        });

        Ok(Self {
            a,
            eigen,
            rank,
            range_basis,
            kernel_basis,
            sqrt,
            sqrt_pinv,
            tau_rank,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n), None).expect("identity is positive")
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.a
    }

    pub fn eigen(&self) -> &HermitianEigen<R> {
        &self.eigen
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn range_basis(&self) -> &Matrix<R> {
        &self.range_basis
    }

    pub fn kernel_basis(&self) -> &Matrix<R> {
        &self.kernel_basis
    }

    /// `A^{1/2}`
    pub fn sqrt(&self) -> &Matrix<R> {
        &self.sqrt
    }

    /// `(A^{1/2})⁺`
    pub fn sqrt_pinv(&self) -> &Matrix<R> {
        &self.sqrt_pinv
    }

    pub fn tau_rank(&self) -> R {
        self.tau_rank
    }

    fn check_vec(&self, x: &[C<R>]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.dim()),
                found: format!("length {}", x.len()),
            });
        }
        Ok(())
    }

    fn check_op(&self, t: &Matrix<R>) -> Result<()> {
        t.validate_operator()?;
        if t.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("{0}x{0} operator", self.dim()),
                found: format!("{0}x{0}", t.rows()),
            });
        }
        Ok(())
    }

    /// `⟨x, y⟩_A = ⟨Ax, y⟩`
    pub fn a_inner(&self, x: &[C<R>], y: &[C<R>]) -> Result<C<R>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(vector::inner(&self.a.mv(x), y))
    }

    /// `‖x‖_A = ‖A^{1/2}x‖`
    pub fn a_norm(&self, x: &[C<R>]) -> Result<R> {
        self.check_vec(x)?;
        Ok(vector::norm(&self.sqrt.mv(x)))
    }

    /// Largest kernel defect `max_k ‖A^{1/2} T k‖` over the kernel basis,
    /// normalized by `‖A^{1/2}‖`.
    fn membership_defect(&self, t: &Matrix<R>) -> R {
        let scale = self.eigen.max().max(R::zero()).sqrt();
        if scale.is_zero() {
            return R::zero();
        }
        let weighted = self.sqrt.mm(t);
        (0..self.kernel_basis.cols())
            .map(|j| vector::norm(&weighted.mv(&self.kernel_basis.column(j))) / scale)
            .fold(R::zero(), R::max)
    }

    /// Whether `T` admits an `A^{1/2}`-adjoint (equivalently `‖T‖_A < ∞`),
    /// decided by `ker A ⊆ ker(A^{1/2}T)`.
    pub fn is_member(&self, t: &Matrix<R>) -> Result<bool> {
        self.check_op(t)?;
        Ok(self.membership_defect(t) <= R::tol(MEMBER_TOL) * t.frobenius_norm())
    }

    /// Moves `T` onto `range(A)`; fails with `NotMember` when `‖T‖_A = ∞`.
    pub fn reduce(&self, t: &Matrix<R>) -> Result<ReducedOperator<R>> {
        self.check_op(t)?;
        let defect = self.membership_defect(t);
        if defect > R::tol(MEMBER_TOL) * t.frobenius_norm() {
            return Err(Error::NotMember {
                defect: defect.as_f64(),
            });
        }
        let v = &self.range_basis;
        let lift = self.sqrt_pinv.mm(v);
        let b = v.adjoint().mm(&self.sqrt).mm(t).mm(&lift);
        Ok(ReducedOperator { b, lift })
    }

    /// Reduced coordinates `V* A^{1/2} x` of a vector.
    pub fn to_reduced(&self, x: &[C<R>]) -> Result<Vec<C<R>>> {
        self.check_vec(x)?;
        Ok(self.range_basis.adjoint().mv(&self.sqrt.mv(x)))
    }
}
