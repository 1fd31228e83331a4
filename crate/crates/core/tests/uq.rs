use flume_core::forces::{Estimator, ForceRecord};
use flume_core::uq::*;
use proptest::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF, LogNormal, Normal};

/// CDF evaluated with statrs, independent of the crate's quantile code.
fn oracle_cdf(d: &Distribution, x: f64) -> f64 {
    match *d {
        Distribution::Normal { mean, sd } => Normal::new(mean, sd).unwrap().cdf(x),
        Distribution::Lognormal { mean, sd } => {
            let s2 = (1.0 + (sd / mean).powi(2)).ln();
            LogNormal::new(mean.ln() - 0.5 * s2, s2.sqrt()).unwrap().cdf(x)
        }
        Distribution::Uniform { min, max } => (x - min) / (max - min),
        Distribution::Beta { alpha, beta, min, max } => Beta::new(alpha, beta).unwrap().cdf((x - min) / (max - min)),
        _ => unreachable!(),
    }
}

fn arb_distribution() -> impl Strategy<Value = Distribution> {
    prop_oneof![
        (-10.0f64..10.0, 0.1f64..5.0).prop_map(|(mean, sd)| Distribution::Normal { mean, sd }),
        (0.5f64..5.0, 0.05f64..2.0).prop_map(|(mean, sd)| Distribution::Lognormal { mean, sd }),
        (-5.0f64..5.0, 0.1f64..10.0).prop_map(|(min, w)| Distribution::Uniform { min, max: min + w }),
        (0.5f64..6.0, 0.5f64..6.0, 0.0f64..2.0).prop_map(|(alpha, beta, min)| Distribution::Beta {
            alpha,
            beta,
            min,
            max: min + 1.2
        }),
    ]
}

fn specs(ds: Vec<Distribution>) -> Vec<RandomVariableSpec> {
    ds.into_iter()
        .enumerate()
        .map(|(i, d)| RandomVariableSpec::new(&format!("x{i}"), d))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn every_stratum_holds_exactly_one_sample(
        ds in proptest::collection::vec(arb_distribution(), 1..=8),
        q in 1usize..=1000,
        seed in any::<u64>(),
    ) {
        let m = lhs_sample(&specs(ds.clone()), q, seed).unwrap();
        for (j, d) in ds.iter().enumerate() {
            let mut hits = vec![0usize; q];
            for x in m.column(j) {
                let b = ((oracle_cdf(d, x) * q as f64).floor() as usize).min(q - 1);
                hits[b] += 1;
            }
            prop_assert!(hits.iter().all(|&h| h == 1), "column {j}");
        }
    }

    #[test]
    fn same_seed_same_matrix(ds in proptest::collection::vec(arb_distribution(), 1..=4), q in 1usize..200, seed in any::<u64>()) {
        let a = lhs_sample(&specs(ds.clone()), q, seed).unwrap();
        let b = lhs_sample(&specs(ds), q, seed).unwrap();
        prop_assert!(a.values.iter().zip(&b.values).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn kde_integrates_to_one(xs in proptest::collection::vec(-100.0f64..100.0, 2..200)) {
        prop_assume!(xs.iter().any(|x| *x != xs[0]));
        let r = kde_estimate(&xs, None).unwrap();
        prop_assert!((r.integral() - 1.0).abs() < 1e-3);
    }
}

#[test]
fn interval_width_is_range_over_q() {
    let s = specs(vec![
        Distribution::Uniform { min: 0.4, max: 0.9 },
        Distribution::Beta {
            alpha: 5.0,
            beta: 2.0,
            min: 0.4,
            max: 1.6,
        },
    ]);
    let m = lhs_sample(&s, 600, 1).unwrap();
    assert!((m.interval_width(0).unwrap() - 0.5 / 600.0).abs() < 1e-15);
    assert!((m.interval_width(1).unwrap() - 1.2 / 600.0).abs() < 1e-15);
}

#[test]
fn single_kernel_is_the_gaussian() {
    let h = 0.3;
    let r = kde_estimate(&[2.0], Some(h)).unwrap();
    for (x, f) in r.grid.iter().zip(&r.density) {
        let z = (x - 2.0) / h;
        let g = (-0.5 * z * z).exp() / (h * (2.0 * std::f64::consts::PI).sqrt());
        assert!((f - g).abs() < 1e-9);
    }
}

#[test]
fn lhs_marginal_moments_converge() {
    let s = vec![RandomVariableSpec::new(
        "e",
        Distribution::Normal { mean: 200e9, sd: 40e9 },
    )];
    let m = lhs_sample(&s, 2000, 9).unwrap();
    let x = m.column(0);
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let sd = (x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (x.len() - 1) as f64).sqrt();
    assert!((mean - 200e9).abs() < 1e-3 * 200e9);
    assert!((sd - 40e9).abs() < 1e-2 * 40e9);
}

fn synthetic_library(heights: &[f64]) -> LoadLibrary {
    let mut lib = LoadLibrary::default();
    for &h in heights {
        let mut r = ForceRecord::new(Estimator::Sph);
        for i in 0..=1200 {
            let t = i as f64 * 0.01;
            r.push(t, 400.0 * h * (-((t - 6.0) / 0.4).powi(2)).exp());
        }
        lib.insert(h, r);
    }
    lib
}

const HEIGHTS: [f64; 6] = [0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[test]
fn sweep_gives_one_hundred_rows_per_height() {
    let mut s = structural_specs();
    s.push(wave_height_spec(&HEIGHTS));
    let m = lhs_sample(&s, 600, 42).unwrap();
    let res = propagate(&m, &synthetic_library(&HEIGHTS), &PropagationConfig::default()).unwrap();
    assert_eq!(res.rows.len(), 600);
    for h in HEIGHTS {
        assert_eq!(res.rmsa_for_height(h).len(), 100);
    }
    assert!(res.rows.iter().enumerate().all(|(i, r)| r.sample_id == i));
}

#[test]
fn doubling_the_load_doubles_elastic_rmsa() {
    let mut s = structural_specs();
    s.push(wave_height_spec(&[0.4]));
    let m = lhs_sample(&s, 50, 5).unwrap();
    let lib = synthetic_library(&[0.4]);
    let mut doubled = LoadLibrary::default();
    doubled.insert(0.4, lib.get(0.4).unwrap().scaled(2.0));
    let cfg = PropagationConfig::default();
    let a = propagate(&m, &lib, &cfg).unwrap();
    let b = propagate(&m, &doubled, &cfg).unwrap();
    let mut checked = 0;
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        if !ra.yielded && !rb.yielded {
            assert!((rb.rmsa - 2.0 * ra.rmsa).abs() <= 1e-6 * rb.rmsa);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn missing_height_aborts_the_sweep() {
    let mut s = structural_specs();
    s.push(wave_height_spec(&[0.4, 0.5]));
    let m = lhs_sample(&s, 10, 5).unwrap();
    let err = propagate(&m, &synthetic_library(&[0.4]), &PropagationConfig::default()).unwrap_err();
    assert_eq!(err, UqError::MissingLoad(0.5));
}

#[test]
fn thread_count_does_not_change_results() {
    let mut s = structural_specs();
    s.push(wave_height_spec(&HEIGHTS));
    let m = lhs_sample(&s, 60, 8).unwrap();
    let lib = synthetic_library(&HEIGHTS);
    let one = propagate(
        &m,
        &lib,
        &PropagationConfig {
            jobs: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let three = propagate(
        &m,
        &lib,
        &PropagationConfig {
            jobs: Some(3),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(one, three);
}

#[test]
fn constant_factor_has_the_smallest_maximum() {
    let groups = distribution_study(
        &mean_structural_specs(),
        &synthetic_library(&[0.6]),
        100,
        3,
        &PropagationConfig::default(),
    )
    .unwrap();
    let max_of = |label: &str| groups.iter().find(|g| g.distribution == label).unwrap().stats.max;
    let c = max_of("constant");
    for other in ["lognormal", "normal", "uniform", "beta"] {
        assert!(max_of(other) > c, "{other}");
    }
}
