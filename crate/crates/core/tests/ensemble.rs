use infoeq::ensemble::{
    default_m_grid, fluctuation_comparison, monte_carlo, monte_carlo_serial, period_changes,
    write_monte_carlo_csv, ChangeKind, MarketEnsemble, MonteCarloConfig,
};
use infoeq::{Error, TimeSeries};

fn small_config(seed: u64) -> MonteCarloConfig {
    MonteCarloConfig { n0: 20, a_mean: 1.5, a_sd: 0.5, runs: 16, m_grid: vec![1.0, 3.0, 10.0, 100.0], seed }
}

#[test]
fn monte_carlo_is_reproducible_and_order_independent() {
    let cfg = small_config(42);
    let a = monte_carlo(&cfg).unwrap();
    let b = monte_carlo(&cfg).unwrap();
    let serial = monte_carlo_serial(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, serial);
    assert_ne!(a, monte_carlo(&small_config(43)).unwrap());
    assert!(a.iter().enumerate().all(|(i, r)| r.run == i));
}

#[test]
fn zero_spread_gives_closed_form_curves() {
    let cfg = MonteCarloConfig { n0: 10, a_mean: 1.5, a_sd: 0.0, runs: 1, m_grid: default_m_grid(), seed: 1 };
    let run = &monte_carlo(&cfg).unwrap()[0];
    for (j, &m) in cfg.m_grid.iter().enumerate() {
        assert_eq!(run.avg_a[j], 1.5);
        let n = 10.0 * m.powf(1.5);
        assert!((run.avg_n[j] / n - 1.0).abs() < 1e-12);
        assert!((run.avg_price[j] / (1.5 * m.sqrt()) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn average_price_matches_derivative_oracle() {
    // ⟨a m^(a-1)⟩ with weights m^(-a)/Z reduces to Σ a_i / (m Z)
    let ens = MarketEnsemble::new(vec![0.4, 1.1, 1.9, 2.6]).unwrap();
    for m in [1.0, 2.5, 40.0] {
        let z = ens.partition_fn(m).unwrap();
        let oracle = ens.exponents().iter().sum::<f64>() / (m * z);
        assert!((ens.avg_price(m).unwrap() / oracle - 1.0).abs() < 1e-13);
    }
}

#[test]
fn average_index_is_minus_log_partition_slope() {
    let ens = MarketEnsemble::new(vec![0.2, 0.9, 1.4, 2.2, 3.0]).unwrap();
    for m in [1.0, 5.0, 70.0] {
        let h = 1e-5;
        let lm = f64::ln(m);
        let slope = (ens.log_partition((lm + h).exp()).unwrap() - ens.log_partition((lm - h).exp()).unwrap()) / (2.0 * h);
        assert!((ens.avg_index(m).unwrap() + slope).abs() < 1e-8);
    }
}

#[test]
fn csv_has_one_row_per_run_and_grid_point() {
    let cfg = small_config(7);
    let runs = monte_carlo(&cfg).unwrap();
    let mut buf = Vec::new();
    write_monte_carlo_csv(&runs, &cfg.m_grid, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("run,m,avg_a,avg_n,avg_price"));
    assert_eq!(lines.count(), cfg.runs * cfg.m_grid.len());
}

#[test]
fn invalid_configs_are_rejected() {
    let mut cfg = small_config(1);
    cfg.a_sd = -1.0;
    assert!(matches!(monte_carlo(&cfg), Err(Error::InvalidConfig(_))));
}

/// Samples with density ∝ e^(Δ/2) on [-2, 2], drawn by inverse CDF on a
/// stratified uniform grid. Mirrored bin counts then differ by e^Δ.
fn exponential_tilt_samples(n: usize) -> Vec<f64> {
    let (a, b) = ((-1.0f64).exp(), 1.0f64.exp());
    (0..n)
        .map(|i| {
            let u = (i as f64 + 0.5) / n as f64;
            2.0 * (a + u * (b - a)).ln()
        })
        .collect()
}

#[test]
fn fluctuation_ratios_follow_exponential_law_for_tilted_samples() {
    let samples = exponential_tilt_samples(400_000);
    let h = fluctuation_comparison(&samples, 8).unwrap();
    assert_eq!(h.total(), 400_000);
    for (center, ratio) in h.measured_ratios() {
        assert!((ratio / center.exp() - 1.0).abs() < 2e-3, "{center}: {ratio}");
    }
    for b in h.bins.iter().filter(|b| b.center() < 0.0) {
        assert!((b.theory / b.count as f64 - 1.0).abs() < 2e-3);
    }
    let mut buf = Vec::new();
    h.write_csv(&mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 9);
}

#[test]
fn period_changes_modes() {
    let ts = TimeSeries::from_columns("x", vec![0.0, 0.25, 0.5], vec![100.0, 110.0, 99.0]).unwrap();
    let log = period_changes(&ts, ChangeKind::LogPercent).unwrap();
    assert!((log[0] - 100.0 * 1.1f64.ln()).abs() < 1e-12);
    assert_eq!(period_changes(&ts, ChangeKind::Level).unwrap(), vec![10.0, -11.0]);
    let bad = TimeSeries::from_columns("x", vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
    assert!(period_changes(&bad, ChangeKind::LogPercent).is_err());
}
