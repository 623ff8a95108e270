use semiop::engine::{seminorm, Lambda, OptimizerConfig};
use semiop::harness::random::{random_complex, SeedStream};
use semiop::harness::{gen_member_stream, gen_psd, orthogonal_partner, InstanceSpec};
use semiop::linalg::Matrix;
use semiop::orthogonality::{
    bj_orthogonal, certificate_check, rho, theta_condition, triangle_equality, CertificateStatus,
    DEFAULT_TOLERANCE, DEFAULT_XI_SAMPLES,
};
use semiop::{ComplexMatrix, PositiveOperator, C};

fn lam(x: f64) -> Lambda<f64> {
    Lambda::new(x).unwrap()
}

fn cfg() -> OptimizerConfig {
    OptimizerConfig::with_seed(21)
}

fn diag(d: &[f64]) -> ComplexMatrix {
    Matrix::from_real_diag(d)
}

fn random_pair(seed: u64) -> (PositiveOperator, ComplexMatrix, ComplexMatrix) {
    let spec = InstanceSpec::sample(seed, 2, 4);
    let a = gen_psd(&spec);
    (a.clone(), gen_member_stream(&spec, &a, 1), gen_member_stream(&spec, &a, 2))
}

#[test]
fn rho_examples() {
    let id = PositiveOperator::identity(2);
    let (t, s) = (diag(&[1.0, 0.0]), diag(&[0.0, 1.0]));
    let two = rho(&t, &s, &id, Lambda::one(), C::new(2.0, 0.0), &cfg()).unwrap();
    assert!((two - 2.0).abs() < 1e-12);

    let (a, t, s) = random_pair(4);
    let base = seminorm(&t, &a, lam(0.3), &cfg()).unwrap().value;
    assert!((rho(&t, &s, &a, lam(0.3), C::new(0.0, 0.0), &cfg()).unwrap() - base).abs() < 1e-12);
    let zero = Matrix::zeros(t.rows(), t.cols());
    let flat = rho(&t, &zero, &a, lam(0.3), C::new(-1.5, 2.0), &cfg()).unwrap();
    assert!((flat - base).abs() < 1e-12);
}

#[test]
fn zero_partner_is_orthogonal() {
    let (a, t, _) = random_pair(9);
    let zero = Matrix::zeros(t.rows(), t.cols());
    let v = bj_orthogonal(&t, &zero, &a, lam(0.5), DEFAULT_TOLERANCE, &cfg()).unwrap();
    assert!(v.orthogonal);
    assert_eq!(v.xi_star, C::new(0.0, 0.0));
    let cert = certificate_check(&t, &zero, &a, lam(0.5), &v, DEFAULT_XI_SAMPLES, &cfg()).unwrap();
    assert!(cert.holds());
    let theta = theta_condition(&t, &zero, &a, lam(0.5), 360, &cfg()).unwrap();
    assert!(theta.satisfied);
}

#[test]
fn self_is_not_orthogonal() {
    let (a, t, _) = random_pair(10);
    for l in [0.0, 0.5, 1.0] {
        let v = bj_orthogonal(&t, &t, &a, lam(l), DEFAULT_TOLERANCE, &cfg()).unwrap();
        assert!(!v.orthogonal);
        assert!((v.xi_star - C::new(-1.0, 0.0)).norm() < 1e-4, "{:?}", v.xi_star);
        assert!(v.rho_min < 1e-4 * v.rho_zero);
        let cert = certificate_check(&t, &t, &a, lam(l), &v, DEFAULT_XI_SAMPLES, &cfg()).unwrap();
        assert_eq!(cert.status, CertificateStatus::NotApplicable);
        let theta = theta_condition(&t, &t, &a, lam(l), 360, &cfg()).unwrap();
        assert!(!theta.satisfied);
        let half_turn = &theta.entries[180];
        assert!((half_turn.form_value + v.rho_zero * v.rho_zero).abs() < 1e-8 * v.rho_zero.powi(2).max(1.0));
    }
}

#[test]
fn diagonal_pair_in_operator_norm() {
    let id = PositiveOperator::identity(2);
    let (t, s) = (diag(&[1.0, 0.0]), diag(&[0.0, 1.0]));
    let v = bj_orthogonal(&t, &s, &id, Lambda::one(), DEFAULT_TOLERANCE, &cfg()).unwrap();
    assert!(v.orthogonal);
    assert!(v.m_value < 1e-12);
    let cert = certificate_check(&t, &s, &id, Lambda::one(), &v, 96, &cfg()).unwrap();
    assert!(cert.holds());
    assert_eq!(cert.samples, 96);
    let theta = theta_condition(&t, &s, &id, Lambda::one(), 360, &cfg()).unwrap();
    assert!(theta.satisfied);
    assert!(theta.entries.iter().all(|e| e.form_value.abs() < 1e-12));
}

#[test]
fn traceless_diagonal_against_identity_in_numerical_radius() {
    let id = PositiveOperator::identity(2);
    let t = diag(&[1.0, -1.0]);
    let s = Matrix::identity(2);
    let v = bj_orthogonal(&t, &s, &id, Lambda::zero(), DEFAULT_TOLERANCE, &cfg()).unwrap();
    assert!(v.orthogonal);
    assert!((v.m_value - 1.0).abs() < 1e-10);
    let cert = certificate_check(&t, &s, &id, Lambda::zero(), &v, 96, &cfg()).unwrap();
    assert!(cert.holds(), "{cert:?}");
}

#[test]
fn identity_partner_in_operator_norm() {
    // ‖diag(1,0) + ξI‖ = max(|1+ξ|, |ξ|) and [I] = 1.
    let id = PositiveOperator::identity(2);
    let t = diag(&[1.0, 0.0]);
    let s = Matrix::identity(2);
    let v = bj_orthogonal(&t, &s, &id, Lambda::one(), DEFAULT_TOLERANCE, &cfg()).unwrap();
    assert!(!v.orthogonal);
    assert!((v.xi_star - C::new(-0.5, 0.0)).norm() < 1e-3);
    assert!((v.rho_min - 0.5).abs() < 1e-6);
}

#[test]
fn triangle_examples() {
    let (a, t, _) = random_pair(12);
    for l in [0.0, 0.5, 1.0] {
        let st = seminorm(&t, &a, lam(l), &cfg()).unwrap().value;
        let same = triangle_equality(&t, &t, &a, lam(l), &cfg()).unwrap();
        assert!(same.holds);
        assert!((same.witness_value.re - st * st).abs() < 1e-6 * (st * st).max(1.0));
        let double = triangle_equality(&t, &t.scale_real(2.0), &a, lam(l), &cfg()).unwrap();
        assert!(double.holds);
        assert!((double.witness_value.re - 2.0 * st * st).abs() < 1e-6 * (st * st).max(1.0));
        assert!(!double.near_miss);
    }
    let id = PositiveOperator::identity(2);
    let r = triangle_equality(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0]), &id, Lambda::one(), &cfg()).unwrap();
    assert!(!r.holds);
    assert!((r.sum_seminorm - 1.0).abs() < 1e-12);
    assert!((r.seminorm_sum - 2.0).abs() < 1e-12);
}

#[test]
fn equality_report_invariants() {
    for seed in 0..20 {
        let (a, t, s) = random_pair(100 + seed);
        let r = triangle_equality(&t, &s, &a, lam(0.4), &OptimizerConfig::with_seed(seed)).unwrap();
        assert!(r.sum_seminorm <= r.seminorm_sum + 1e-9);
        if r.holds {
            assert!((r.witness_value - r.target).norm() <= r.tolerance * r.target.max(1.0));
        }
        assert!((a.a_norm(&r.witness).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn verdict_invariants_and_scaling() {
    let mut rng = SeedStream::stream(3, 0);
    for seed in 0..50u64 {
        let (a, t, s0) = random_pair(200 + seed);
        let l = [0.0, 0.3, 0.7, 1.0][(seed % 4) as usize];
        let c = OptimizerConfig::with_seed(seed);
        // Alternate between constructed orthogonal and random partners.
        let s = if seed % 2 == 0 { orthogonal_partner(&t, &s0, &a, lam(l), &c).unwrap() } else { s0 };
        let v = bj_orthogonal(&t, &s, &a, lam(l), DEFAULT_TOLERANCE, &c).unwrap();
        assert!(v.rho_min <= v.rho_zero + 1e-12);
        assert_eq!(v.orthogonal, v.relative_gap <= v.tolerance_used);
        let alpha: C<f64> = random_complex(&mut rng, 3.0);
        let beta: C<f64> = random_complex(&mut rng, 3.0);
        let w = bj_orthogonal(&t.scale(alpha), &s.scale(beta), &a, lam(l), DEFAULT_TOLERANCE, &c).unwrap();
        assert_eq!(v.orthogonal, w.orthogonal, "seed {seed}: gaps {} {}", v.relative_gap, w.relative_gap);
    }
}

#[test]
fn constructed_partners_are_orthogonal_and_certified() {
    for seed in 0..12u64 {
        let (a, t, s0) = random_pair(300 + seed);
        let l = lam([0.0, 0.3, 0.7, 1.0][(seed % 4) as usize]);
        let c = OptimizerConfig::with_seed(seed);
        let s = orthogonal_partner(&t, &s0, &a, l, &c).unwrap();
        let v = bj_orthogonal(&t, &s, &a, l, DEFAULT_TOLERANCE, &c).unwrap();
        assert!(v.orthogonal, "seed {seed}: gap {}", v.relative_gap);
        let cert = certificate_check(&t, &s, &a, l, &v, DEFAULT_XI_SAMPLES, &c).unwrap();
        assert!(cert.holds(), "seed {seed}: {cert:?}");
        assert!(theta_condition(&t, &s, &a, l, 360, &c).unwrap().satisfied);
    }
}
