use semiop::harness::{gen_member, gen_psd, replay, run_suite, trial_seed, InstanceSpec, SUITES};
use semiop::Error;

#[test]
fn endpoints_suite_passes() {
    let r = run_suite("endpoints", 50, 42).unwrap();
    assert_eq!(r.passes, 50, "{r}");
    assert!(r.ok());
}

#[test]
fn oracle_suite_passes() {
    let r = run_suite("oracle-n2", 50, 7).unwrap();
    assert_eq!(r.passes, 50, "{r}");
}

#[test]
fn every_suite_runs_a_few_trials() {
    for name in SUITES {
        let trials = if name == "oracle-n2" { 2 } else { 6 };
        let r = run_suite(name, trials, 1).unwrap();
        assert_eq!(r.passes + r.failures.len(), r.trials);
        assert!(r.ok(), "{r}");
    }
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite("sandwich", 20, 5).unwrap();
    let b = run_suite("sandwich", 20, 5).unwrap();
    assert_eq!(a.body(), b.body());
    assert!(a.body().starts_with("suite=sandwich trials=20 passes=20 failures=0\n"));
}

#[test]
fn unknown_suite_is_an_error() {
    assert_eq!(run_suite("bogus", 1, 0).unwrap_err(), Error::UnknownSuite("bogus".into()));
    assert!(replay("bogus", 0).is_err());
}

#[test]
fn replay_reproduces_a_trial() {
    let seed = trial_seed(42, 3);
    let one = replay("r4-bounds", seed).unwrap();
    let two = replay("r4-bounds", seed).unwrap();
    assert_eq!(one, two);
    assert!(one.pass);
}

#[test]
fn thousand_members() {
    for seed in 0..1000 {
        let spec = InstanceSpec::sample(seed, 2, 8);
        let a = gen_psd(&spec);
        assert_eq!(a.rank(), spec.rank_a);
        assert!(a.is_member(&gen_member(&spec, &a)).unwrap(), "seed {seed}");
    }
}

#[test]
fn full_rank_is_invertible_and_rank_one_is_rank_one() {
    let a = gen_psd(&InstanceSpec::full(5, 3));
    assert!(a.eigen().min() > 0.0);
    let b = gen_psd(&InstanceSpec::new(5, 1, 3).unwrap());
    assert_eq!(b.rank(), 1);
    assert_eq!(b.kernel_basis().cols(), 4);
}
