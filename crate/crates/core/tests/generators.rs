use cauker::generate::{
    generate_batch, generate_sample, generate_streaming, GeneratorConfig, Method,
};
use cauker::rng::{derive_stream, MasterSeed};
use cauker::Error;

/// Two-sample Kolmogorov–Smirnov statistic.
fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// Asymptotic p-value of `d` for effective sample sizes `n` and `m`.
fn ks_p_value(d: f64, n: f64, m: f64) -> f64 {
    let ne = n * m / (n + m);
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    // the series does not converge near zero, where the tail is 1 anyway
    if lambda < 0.3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let sign = if k as i64 % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * (-2.0 * k * k * lambda * lambda).exp();
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[test]
fn ks_helpers() {
    assert_eq!(ks_statistic(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
    assert_eq!(ks_statistic(&[0.0, 1.0], &[2.0, 3.0]), 1.0);
    assert!(ks_p_value(0.0, 100.0, 100.0) > 0.99);
    assert!(ks_p_value(0.5, 100.0, 100.0) < 1e-6);
    // tabulated 5% critical value for n = m = 100 is about 0.192
    assert!((ks_p_value(0.192, 100.0, 100.0) - 0.05).abs() < 0.01);
}

#[test]
fn batch_is_independent_of_worker_count() {
    let cfg = GeneratorConfig::new(Method::Cauker);
    let (one, s1) = generate_batch(MasterSeed(42), 100, &cfg, 1).unwrap();
    let (eight, s8) = generate_batch(MasterSeed(42), 100, &cfg, 8).unwrap();
    assert_eq!((one.n(), one.length()), (100, 512));
    assert!(one.is_finite());
    let bits = |b: &cauker::SeriesBatch| b.data().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&one), bits(&eight));
    assert_eq!(s1, s8);

    for i in [0usize, 17, 99] {
        let mut s = derive_stream(MasterSeed(42), i as u64);
        let row: Vec<f32> = generate_sample(&mut s, &cfg)
            .unwrap()
            .iter()
            .map(|&v| v as f32)
            .collect();
        assert_eq!(row, one.row(i));
    }

    let mut streamed = Vec::new();
    generate_streaming(MasterSeed(42), 100, &cfg, 3, |_, row| {
        streamed.extend_from_slice(row);
        Ok(())
    })
    .unwrap();
    assert_eq!(streamed, one.data());
}

#[test]
fn single_row_repeats() {
    let cfg = GeneratorConfig::new(Method::MeanKernelSynth);
    let a = generate_batch(MasterSeed(9), 1, &cfg, 1).unwrap().0;
    let b = generate_batch(MasterSeed(9), 1, &cfg, 2).unwrap().0;
    assert_eq!(a, b);
    assert_ne!(a, generate_batch(MasterSeed(10), 1, &cfg, 1).unwrap().0);
}

#[test]
fn every_method_yields_finite_fixed_length_rows() {
    for method in [Method::Cauker, Method::KernelSynth, Method::MeanKernelSynth] {
        let cfg = GeneratorConfig::new(method);
        for seed in 0..20 {
            let mut s = derive_stream(MasterSeed(seed), seed * 31);
            let x = generate_sample(&mut s, &cfg).unwrap();
            assert_eq!(x.len(), 512);
            assert!(x.iter().all(|v| v.is_finite() && (*v as f32).is_finite()));
        }
    }
}

#[test]
fn resample_fraction_stays_small() {
    let cfg = GeneratorConfig::new(Method::Cauker);
    let (_, stats) = generate_batch(MasterSeed(5), 400, &cfg, 1).unwrap();
    assert_eq!(stats.samples, 400);
    assert!(stats.resample_fraction() < 0.05, "{stats:?}");
}

#[test]
fn exhaustion_names_the_sample() {
    let mut cfg = GeneratorConfig::new(Method::MeanKernelSynth);
    cfg.target_length = 16;
    cfg.root_lengths = vec![16];
    cfg.max_resample_attempts = 3;
    cfg.mean_ranges.exp_b = (199.0, 200.0);
    cfg.mean_ranges.linear_a = (1e39, 2e39);
    cfg.mean_ranges.anomaly_value = (1e39, 2e39);
    match generate_batch(MasterSeed(0), 4, &cfg, 2) {
        Err(Error::GenerationExhausted {
            sample_index,
            attempts,
            ..
        }) => {
            assert_eq!(attempts, 3);
            assert!(sample_index < 4);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cauker_without_causal_stage_matches_mean_kernelsynth() {
    let mut mk = GeneratorConfig::new(Method::MeanKernelSynth);
    mk.target_length = 128;
    mk.root_lengths = vec![128, 256];
    mk.standardize = false;
    let mut ck = mk.clone();
    ck.method = Method::Cauker;
    ck.max_roots = 1;
    ck.max_edges = 1;
    ck.identity_edges = true;

    let n = 2000;
    let (a, _) = generate_batch(MasterSeed(1), n, &ck, 1).unwrap();
    let (b, _) = generate_batch(MasterSeed(2), n, &mk, 1).unwrap();

    // values inside one series are correlated, so the series count is the
    // effective sample size for the pooled test
    let pooled = |x: &cauker::SeriesBatch| x.data().iter().map(|&v| v as f64).collect::<Vec<_>>();
    let d = ks_statistic(&pooled(&a), &pooled(&b));
    let p = ks_p_value(d, n as f64, n as f64);
    assert!(p > 0.01, "pooled D = {d}, p = {p}");

    // one value per series is an exact i.i.d. sample
    for t in [0, 64, 127] {
        let col = |x: &cauker::SeriesBatch| (0..n).map(|i| x.row(i)[t] as f64).collect::<Vec<_>>();
        let d = ks_statistic(&col(&a), &col(&b));
        let p = ks_p_value(d, n as f64, n as f64);
        assert!(p > 0.01, "t = {t}: D = {d}, p = {p}");
    }
}

#[test]
fn cauker_differs_from_mean_kernelsynth_with_causal_stage() {
    let mut mk = GeneratorConfig::new(Method::MeanKernelSynth);
    mk.target_length = 128;
    mk.root_lengths = vec![128, 256];
    let mut ck = mk.clone();
    ck.method = Method::Cauker;
    let (a, _) = generate_batch(MasterSeed(1), 1000, &ck, 1).unwrap();
    let (b, _) = generate_batch(MasterSeed(2), 1000, &mk, 1).unwrap();
    let col = |x: &cauker::SeriesBatch| (0..1000).map(|i| x.row(i)[64] as f64).collect::<Vec<_>>();
    let d = ks_statistic(&col(&a), &col(&b));
    assert!(ks_p_value(d, 1000.0, 1000.0) < 0.01, "D = {d}");
}
