use proptest::prelude::*;
use semiop::engine::{
    a_crawford, a_min_modulus, a_numerical_radius, m_lambda, objective, oracle_sup, seminorm, seminorm_reduced,
    Lambda, Mode, OptimizerConfig,
};
use semiop::harness::random::{random_matrix, SeedStream};
use semiop::harness::{gen_member, gen_member_stream, gen_psd, InstanceSpec};
use semiop::linalg::{svd, vector, Matrix};
use semiop::{ComplexMatrix, Error, PositiveOperator, ReducedOperator, C};

fn real(n: usize, entries: &[f64]) -> ComplexMatrix {
    Matrix::from_real(n, n, entries).unwrap()
}

fn nilpotent() -> ComplexMatrix {
    real(2, &[0.0, 1.0, 0.0, 0.0])
}

fn lam(x: f64) -> Lambda<f64> {
    Lambda::new(x).unwrap()
}

fn cfg() -> OptimizerConfig {
    OptimizerConfig::with_seed(11)
}

fn id(n: usize) -> PositiveOperator {
    PositiveOperator::identity(n)
}

/// Independent closed form: the objective restricted to `t = |y₂|²` is
/// `λt + (1−λ)t(1−t)`; maximize it on a fine grid of `t`.
fn nilpotent_by_scan(l: f64) -> f64 {
    let steps = 200_000;
    (0..=steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            l * t + (1.0 - l) * t * (1.0 - t)
        })
        .fold(0.0, f64::max)
        .sqrt()
}

fn nilpotent_closed_form(l: f64) -> f64 {
    if l <= 0.5 {
        (1.0 / (4.0 * (1.0 - l))).sqrt()
    } else {
        l.sqrt()
    }
}

#[test]
fn closed_form_agrees_with_scan() {
    for k in 0..=20 {
        let l = k as f64 / 20.0;
        assert!((nilpotent_closed_form(l) - nilpotent_by_scan(l)).abs() < 1e-9, "λ={l}");
    }
}

#[test]
fn nilpotent_seminorm_matches_closed_form() {
    for k in 0..=10 {
        let l = k as f64 / 10.0;
        let r = seminorm(&nilpotent(), &id(2), lam(l), &cfg()).unwrap();
        assert!((r.value - nilpotent_closed_form(l)).abs() < 1e-6, "λ={l}: {}", r.value);
    }
    let quarter = seminorm(&nilpotent(), &id(2), lam(0.25), &cfg()).unwrap().value;
    assert!((quarter - (1.0f64 / 3.0).sqrt()).abs() < 1e-9);
}

#[test]
fn nilpotent_closed_form_matches_grid_oracle() {
    let red = ReducedOperator::from_matrix(nilpotent());
    for l in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let o = oracle_sup(&red, lam(l), 0.002).unwrap();
        let exact = nilpotent_closed_form(l).powi(2);
        assert!(o.value <= exact + 1e-12);
        assert!(exact - o.value <= o.error_bound);
    }
}

#[test]
fn objective_examples() {
    let red = ReducedOperator::from_matrix(nilpotent());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let y = [C::new(h, 0.0), C::new(h, 0.0)];
    assert!((objective(&red, lam(0.0), &y).unwrap() - 0.25).abs() < 1e-15);
    let e2 = [C::new(0.0, 0.0), C::new(1.0, 0.0)];
    assert!((objective(&red, lam(1.0), &e2).unwrap() - 1.0).abs() < 1e-15);
    let ident = ReducedOperator::from_matrix(Matrix::identity(3));
    let mut rng = SeedStream::new(1).next_rng();
    let u: Vec<C<f64>> = semiop::harness::random::random_unit_vector(&mut rng, 3);
    for l in [0.0, 0.3, 1.0] {
        assert!((objective(&ident, lam(l), &u).unwrap() - 1.0).abs() < 1e-14);
    }
    let long = [C::new(1.0, 0.0), C::new(1.0, 0.0)];
    assert!(matches!(objective(&red, lam(0.5), &long), Err(Error::NotUnit { .. })));
}

#[test]
fn seminorm_examples() {
    let r = seminorm(&real(2, &[3.0, 0.0, 0.0, 1.0]), &id(2), Lambda::one(), &cfg()).unwrap();
    assert!((r.value - 3.0).abs() < 1e-12);
    assert!(r.certified);
    assert_eq!(r.mode, Mode::Sup);

    let a = PositiveOperator::new(Matrix::from_real_diag(&[1.0, 0.0]), None).unwrap();
    for l in [0.0, 0.4, 1.0] {
        let r = seminorm(&Matrix::from_real_diag(&[2.0, 5.0]), &a, lam(l), &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }
}

#[test]
fn seminorm_rejects_non_members() {
    let a = PositiveOperator::new(Matrix::from_real_diag(&[1.0, 0.0]), None).unwrap();
    assert!(matches!(
        seminorm(&nilpotent(), &a, lam(0.5), &cfg()),
        Err(Error::NotMember { .. })
    ));
}

#[test]
fn numerical_radius_examples() {
    let one = a_numerical_radius(&Matrix::identity(2), &id(2), &cfg()).unwrap();
    assert!((one.value - 1.0).abs() < 1e-12);
    let half = a_numerical_radius(&nilpotent(), &id(2), &cfg()).unwrap();
    assert!((half.value - 0.5).abs() < 1e-12);
    assert!(half.certified);
    let d = Matrix::from_diag(&[C::new(0.0, 1.0), C::new(0.0, -1.0)]);
    assert!((a_numerical_radius(&d, &id(2), &cfg()).unwrap().value - 1.0).abs() < 1e-12);
}

#[test]
fn crawford_examples() {
    let r = a_crawford(&Matrix::identity(2), &id(2), &cfg()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-12);
    assert_eq!(r.mode, Mode::Inf);
    assert!(a_crawford(&nilpotent(), &id(2), &cfg()).unwrap().value < 1e-10);
    let r = a_crawford(&Matrix::from_real_diag(&[2.0, 3.0]), &id(2), &cfg()).unwrap();
    assert!((r.value - 2.0).abs() < 1e-12);
}

#[test]
fn min_modulus_examples() {
    assert!((a_min_modulus(&Matrix::from_real_diag(&[3.0, 1.0]), &id(2)).unwrap().value - 1.0).abs() < 1e-12);
    assert!(a_min_modulus(&nilpotent(), &id(2)).unwrap().value < 1e-12);
    let a = PositiveOperator::new(Matrix::from_real_diag(&[1.0, 0.0]), None).unwrap();
    assert!((a_min_modulus(&Matrix::from_real_diag(&[2.0, 5.0]), &a).unwrap().value - 2.0).abs() < 1e-12);
}

#[test]
fn m_lambda_examples() {
    for l in [0.0, 0.5, 1.0] {
        assert!((m_lambda(&Matrix::identity(2), &id(2), lam(l), &cfg()).unwrap().value - 1.0).abs() < 1e-12);
        assert!(m_lambda(&nilpotent(), &id(2), lam(l), &cfg()).unwrap().value < 1e-8);
    }
    let r = m_lambda(&Matrix::from_real_diag(&[2.0, 3.0]), &id(2), Lambda::one(), &cfg()).unwrap();
    assert!((r.value - 2.0).abs() < 1e-10);
}

#[test]
fn m_lambda_endpoints_match_min_modulus_and_crawford() {
    for seed in 0..30 {
        let spec = InstanceSpec::sample(seed, 2, 5);
        let a = gen_psd(&spec);
        let s = gen_member(&spec, &a);
        let c = OptimizerConfig::with_seed(seed);
        let m1 = m_lambda(&s, &a, Lambda::one(), &c).unwrap().value;
        let mm = a_min_modulus(&s, &a).unwrap().value;
        assert!((m1 - mm).abs() <= 1e-6 * mm.max(1.0), "seed {seed}: {m1} vs {mm}");
        let m0 = m_lambda(&s, &a, Lambda::zero(), &c).unwrap().value;
        let cr = a_crawford(&s, &a, &c).unwrap().value;
        assert!((m0 - cr).abs() <= 1e-6 * cr.max(1.0), "seed {seed}: {m0} vs {cr}");
    }
}

#[test]
fn witness_invariants() {
    for seed in 0..30 {
        let spec = InstanceSpec::sample(seed, 2, 6);
        let a = gen_psd(&spec);
        let t = gen_member(&spec, &a);
        let red = a.reduce(&t).unwrap();
        for l in [0.0, 0.6, 1.0] {
            let r = seminorm(&t, &a, lam(l), &OptimizerConfig::with_seed(seed)).unwrap();
            assert!((vector::norm(&r.witness) - 1.0).abs() < 1e-12);
            assert!((a.a_norm(&r.lifted).unwrap() - 1.0).abs() < 1e-9);
            let f = objective(&red, lam(l), &r.witness).unwrap();
            assert!((f - r.value * r.value).abs() < 1e-9);
        }
    }
}

#[test]
fn oracle_agreement_in_two_dimensions() {
    let mut seeds = SeedStream::new(5);
    for _ in 0..8 {
        let b: Matrix<f64> = random_matrix(&mut seeds.next_rng(), 2, 1.0);
        let red = ReducedOperator::from_matrix(b);
        for l in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let e = seminorm_reduced(&red, lam(l), &cfg()).unwrap().value.powi(2);
            let o = oracle_sup(&red, lam(l), 0.01).unwrap();
            assert!((e - o.value).abs() <= o.error_bound + 1e-6);
        }
    }
}

#[test]
fn identical_seeds_reproduce_bit_for_bit() {
    let spec = InstanceSpec::full(5, 77);
    let a = gen_psd(&spec);
    let t = gen_member(&spec, &a);
    let one = seminorm(&t, &a, lam(0.37), &OptimizerConfig::with_seed(3)).unwrap();
    let two = seminorm(&t, &a, lam(0.37), &OptimizerConfig::with_seed(3)).unwrap();
    assert_eq!(one.value.to_bits(), two.value.to_bits());
    assert_eq!(one.witness, two.witness);
}

#[test]
fn single_precision_path() {
    let t = Matrix::<f32>::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    let a = semiop::semispace::PositiveOperator::<f32>::identity(2);
    let r = seminorm(&t, &a, Lambda::new(0.25f32).unwrap(), &cfg()).unwrap();
    assert!((r.value - (1.0f32 / 3.0).sqrt()).abs() < 1e-4);
}

#[test]
fn lambda_out_of_range() {
    assert!(Lambda::new(1.5).is_err());
    assert!(Lambda::new(-0.1).is_err());
    assert!(Lambda::new(f64::NAN).is_err());
}

#[test]
fn zero_range_gives_zero() {
    let a = PositiveOperator::new(Matrix::zeros(2, 2), None).unwrap();
    let r = seminorm(&Matrix::zeros(2, 2), &a, lam(0.5), &cfg()).unwrap();
    assert_eq!(r.value, 0.0);
}

fn instance(seed: u64) -> (PositiveOperator, ComplexMatrix, ComplexMatrix) {
    let spec = InstanceSpec::sample(seed, 2, 4);
    let a = gen_psd(&spec);
    let t = gen_member_stream(&spec, &a, 1);
    let s = gen_member_stream(&spec, &a, 2);
    (a, t, s)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn monotone_and_lipschitz_in_lambda(seed in any::<u64>()) {
        let (a, t, _) = instance(seed);
        let c = OptimizerConfig::with_seed(seed);
        let red = a.reduce(&t).unwrap();
        let norm = svd(&red.b).unwrap().sigma_max();
        let values: Vec<f64> = (0..=10)
            .map(|k| seminorm(&t, &a, lam(k as f64 / 10.0), &c).unwrap().value)
            .collect();
        for w in values.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-8);
            prop_assert!((w[1] * w[1] - w[0] * w[0]).abs() <= 0.1 * norm * norm + 1e-7);
        }
    }

    #[test]
    fn homogeneous_and_subadditive(seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0, l in 0.0f64..=1.0) {
        let (a, t, s) = instance(seed);
        let c = OptimizerConfig::with_seed(seed);
        let alpha = C::new(re, im);
        let st = seminorm(&t, &a, lam(l), &c).unwrap().value;
        let ss = seminorm(&s, &a, lam(l), &c).unwrap().value;
        let sa = seminorm(&t.scale(alpha), &a, lam(l), &c).unwrap().value;
        prop_assert!((sa - alpha.norm() * st).abs() <= 1e-8 * (alpha.norm() * st).max(1e-12));
        let sum = seminorm(&t.add(&s).unwrap(), &a, lam(l), &c).unwrap().value;
        prop_assert!(sum <= st + ss + 1e-7);
    }

    #[test]
    fn sandwich_between_radius_and_norm(seed in any::<u64>(), l in 0.0f64..=1.0) {
        let (a, t, _) = instance(seed);
        let c = OptimizerConfig::with_seed(seed);
        let w = a_numerical_radius(&t, &a, &c).unwrap().value;
        let norm = svd(&a.reduce(&t).unwrap().b).unwrap().sigma_max();
        let v = seminorm(&t, &a, lam(l), &c).unwrap().value;
        prop_assert!(w - 1e-7 <= v && v <= norm + 1e-7);
        prop_assert!(0.5 * norm <= w + 1e-9);
    }

    #[test]
    fn invariant_under_a_scaling_of_t_by_unimodular(seed in any::<u64>(), phi in 0.0f64..6.28) {
        let (a, t, _) = instance(seed);
        let c = OptimizerConfig::with_seed(seed);
        let v = seminorm(&t, &a, lam(0.5), &c).unwrap().value;
        let u = seminorm(&t.scale(C::from_polar(1.0, phi)), &a, lam(0.5), &c).unwrap().value;
        prop_assert!((u - v).abs() <= 1e-8 * v.max(1e-12));
    }
}
