mod common;

use std::collections::HashMap;

use common::*;

use quantum_eraser::analysis::{build_histogram, fit_fringe, Selector};
use quantum_eraser::experiment::{ExperimentConfig, SwitchSchedule};
use quantum_eraser::quantum::*;
use quantum_eraser::sim::*;
use quantum_eraser::Error;

fn geometry(n_bins: usize) -> SlitScreenGeometry {
    SlitScreenGeometry::new(D, LAMBDA, F, L, n_bins).unwrap()
}

fn config(n_bins: usize, schedule: &SwitchSchedule) -> ExperimentConfig {
    ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry(n_bins)).with_schedule(schedule)
}

fn cell_counts(triples: &[CoincidenceTriple], dist: &CoincidenceDistribution) -> Vec<u64> {
    let mut counts = vec![0u64; dist.probabilities().len()];
    for t in triples {
        counts[dist.cell_index(t.x_bin, t.babu, t.alisha)] += 1;
    }
    counts
}

#[test]
fn sampled_cells_follow_the_table() {
    let schedule = SwitchSchedule::new(vec![1; 4], 50_000).unwrap();
    let cfg = config(64, &schedule);
    let triples = sample_triples(&cfg, &schedule, 99).unwrap();
    let dist = joint_distribution(&cfg.apparatus().unwrap());
    let (stat, dof) = pooled_chi_square(&cell_counts(&triples, &dist), dist.probabilities());
    assert!(stat < chi_square_critical(dof, 0.001), "chi2 {stat} dof {dof}");
}

#[test]
fn single_mode_cells_follow_the_table() {
    let schedule = SwitchSchedule::new(vec![1; 2], 50_000).unwrap();
    let mut cfg = ExperimentConfig::balanced(Mode::SingleDelayedChoice, geometry(64)).with_schedule(&schedule);
    cfg.envelope = Envelope::Gaussian { sigma: 0.004 };
    let triples = sample_triples(&cfg, &schedule, 5).unwrap();
    assert!(triples.iter().all(|t| t.alisha.is_none()));
    let dist = joint_distribution(&cfg.apparatus().unwrap());
    let (stat, dof) = pooled_chi_square(&cell_counts(&triples, &dist), dist.probabilities());
    assert!(stat < chi_square_critical(dof, 0.001), "chi2 {stat} dof {dof}");
}

#[test]
fn alisha_record_does_not_depend_on_babu() {
    let on = SwitchSchedule::new(vec![1; 3], 4000).unwrap();
    let off = SwitchSchedule::new(vec![0; 3], 4000).unwrap();
    let a = sample_triples(&config(128, &on), &on, 17).unwrap();
    let b = sample_triples(&config(128, &off), &off, 17).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| (x.x_bin, x.alisha) == (y.x_bin, y.alisha)));
    assert!(a.iter().zip(&b).any(|(x, y)| x.babu != y.babu));
}

#[test]
fn fringe_coefficient_is_recoverable_from_counts() {
    let n_bins = 128;
    let (t, ch, tp, chp) = (0.5, 0.8, 1.1, -0.3);
    let babu = ArmOptics::new(0.2, true, unitary_from_angle(t, ch)).unwrap();
    let alisha = ArmOptics::new(0.3, true, unitary_from_angle(tp, chp)).unwrap();
    let mut cfg = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry(n_bins));
    cfg.babu = quantum_eraser::experiment::ArmSettings::new(0.2, true, t, ch).unwrap();
    cfg.alisha = quantum_eraser::experiment::ArmSettings::new(0.3, true, tp, chp).unwrap();
    let schedule = SwitchSchedule::new(vec![1; 8], 100_000).unwrap();
    let triples = sample_triples(&cfg, &schedule, 23).unwrap();
    let n = triples.len() as f64;
    let w = 1.0 / n_bins as f64;

    use ArmOutcome::*;
    for (j, k) in [(D1, D1), (D1, D2), (D2, D1), (D2, D2)] {
        let hist = build_histogram(triples.iter(), Selector::Pair(j, k), n_bins);
        let fit = fit_fringe(&hist, &geometry(n_bins)).unwrap();
        // Counts follow n w (|cA|^2 + |cB|^2)/2 + n w Re(P e^{i k x}), so the
        // cosine amplitude is n w Re(P) and the coefficient 2 Re(P).
        let measured = 2.0 * fit.amplitude * fit.phase.cos() / (n * w);
        let scale = (1.0 - 0.2) * (1.0 - 0.3);
        let expected = scale * interference_coefficient(j, k, babu.unitary(), alisha.unitary()).unwrap();
        let tol = 4.0 * 2.0 * fit.standard_error / (n * w);
        assert!((measured - expected).abs() < tol, "{j}{k}: {measured} vs {expected} (tol {tol})");
    }
}

#[test]
fn clean_stream_round_trips() {
    let schedule = SwitchSchedule::new(vec![0, 1, 1], 700).unwrap();
    let cfg = config(32, &schedule);
    let layout = TimingLayout::for_config(&cfg, schedule.block_size);
    let triples = sample_triples(&cfg, &schedule, 4).unwrap();
    let events = emit_events(&triples, &layout, 4);
    assert_eq!(events.len(), 3 * triples.len());
    let matched = match_coincidences(&events, DEFAULT_WINDOW_NS, &layout, cfg.mode).unwrap();
    assert_eq!(matched.triples, triples);
    assert!(matched.orphans.is_empty());
}

#[test]
fn dense_pairs_still_round_trip() {
    // Minimum spacing puts triples 100 ns apart, well clear of the window.
    let schedule = SwitchSchedule::new(vec![1, 0], 2000).unwrap();
    let mut cfg = config(32, &schedule);
    cfg.pair_rate_scale = 0.01;
    let layout = TimingLayout::for_config(&cfg, schedule.block_size);
    assert_eq!(layout.spacing_ns, 100);
    let triples = sample_triples(&cfg, &schedule, 8).unwrap();
    let matched = match_coincidences(&emit_events(&triples, &layout, 8), DEFAULT_WINDOW_NS, &layout, cfg.mode).unwrap();
    assert_eq!(matched.triples, triples);
}

type Key = (usize, usize, ArmOutcome, Option<ArmOutcome>);

fn key(t: &CoincidenceTriple) -> Key {
    (t.block_index, t.x_bin, t.babu, t.alisha)
}

#[test]
fn background_costs_few_triples() {
    let schedule = SwitchSchedule::new(vec![1, 0, 1, 0], 1000).unwrap();
    let cfg = config(32, &schedule);
    let layout = TimingLayout::for_config(&cfg, schedule.block_size);
    let triples = sample_triples(&cfg, &schedule, 2).unwrap();
    let clean = emit_events(&triples, &layout, 2);
    let noisy = inject_background(&clean, 2e-4, cfg.mode, 32, 2);
    let dark = noisy.len() - clean.len();
    assert!(dark > 400 && dark < 1200, "{dark} dark counts");
    assert!(noisy.windows(2).all(|w| w[0].time_ns <= w[1].time_ns));

    let matched = match_coincidences(&noisy, DEFAULT_WINDOW_NS, &layout, cfg.mode).unwrap();
    let mut remaining: HashMap<Key, i64> = HashMap::new();
    for t in &triples {
        *remaining.entry(key(t)).or_default() += 1;
    }
    for t in &matched.triples {
        *remaining.entry(key(t)).or_default() -= 1;
    }
    let missing: i64 = remaining.values().filter(|&&v| v > 0).sum();
    let spurious: i64 = -remaining.values().filter(|&&v| v < 0).sum::<i64>();
    assert!(missing <= 40, "{missing} triples lost");
    assert!(spurious <= 40, "{spurious} triples altered or invented");
    assert!(matched.orphans.len() >= dark - 80);
}

#[test]
fn unsorted_stream_is_rejected() {
    let schedule = SwitchSchedule::new(vec![1], 10).unwrap();
    let cfg = config(16, &schedule);
    let layout = TimingLayout::for_config(&cfg, 10);
    let mut events = emit_events(&sample_triples(&cfg, &schedule, 0).unwrap(), &layout, 0);
    events.swap(3, 9);
    let err = match_coincidences(&events, DEFAULT_WINDOW_NS, &layout, cfg.mode).unwrap_err();
    assert!(matches!(err, Error::UnsortedStream { .. }));
}

#[test]
fn seeds_are_reproducible_and_distinct() {
    let schedule = SwitchSchedule::new(vec![1, 0], 3000).unwrap();
    let cfg = config(64, &schedule);
    let a = sample_triples(&cfg, &schedule, 42).unwrap();
    let b = sample_triples(&cfg, &schedule, 42).unwrap();
    let c = sample_triples(&cfg, &schedule, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn simulate_summary_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let schedule = SwitchSchedule::new(vec![1, 0, 0, 1, 1], 8000).unwrap();
    let mut cfg = config(64, &schedule);
    let (p, pp) = (0.3, 0.6);
    cfg.babu = quantum_eraser::experiment::ArmSettings::new(p, true, std::f64::consts::FRAC_PI_4, 0.0).unwrap();
    cfg.alisha = quantum_eraser::experiment::ArmSettings::new(pp, true, std::f64::consts::FRAC_PI_4, 0.0).unwrap();
    let opts = quantum_eraser::cli::SimulateOptions { seed: 12, ..Default::default() };
    let summary = quantum_eraser::cli::cmd_simulate(&cfg, "inline", &opts, tmp.path()).unwrap();
    let n = 5 * 8000;
    assert_eq!(summary.sampled_triples, n);
    assert_eq!(summary.matched_triples, n);
    // Either idler reaches D3/D4 (or D3'/D4') with 1 - (1-p)(1-p').
    let expected = 1.0 - (1.0 - p) * (1.0 - pp);
    let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
    assert!((summary.which_path_fraction - expected).abs() < 3.0 * sigma, "{}", summary.which_path_fraction);
}

#[test]
fn alisha_information_never_exceeds_full_record() {
    use quantum_eraser::analysis::{alisha_observables, bit_labels, mutual_information, omniscient_observables};
    let schedule = SwitchSchedule::new(vec![0, 1, 1, 0, 1, 0], 5000).unwrap();
    let cfg = config(64, &schedule);
    let triples = sample_triples(&cfg, &schedule, 31).unwrap();
    let labels = bit_labels(&triples, &schedule);
    let a = mutual_information(&labels, &alisha_observables(&triples)).unwrap();
    let o = mutual_information(&labels, &omniscient_observables(&triples)).unwrap();
    assert!(a.mi_bits <= o.mi_bits + 3.0 * (a.bias_bound + o.bias_bound));
    assert!(o.mi_bits > 3.0 * o.bias_bound);
}

#[test]
fn identity_splitters_give_flat_tables() {
    let mut cfg = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry(64));
    cfg.babu = quantum_eraser::experiment::ArmSettings::new(0.5, false, 0.3, 0.0).unwrap();
    cfg.alisha = quantum_eraser::experiment::ArmSettings::new(0.5, false, 0.3, 0.0).unwrap();
    let tables = quantum_eraser::cli::patterns::pattern_tables(&cfg).unwrap();
    let rows: Vec<Vec<f64>> = tables
        .conditional
        .body()
        .lines()
        .map(|l| l.split(',').skip(1).map(|c| c.parse().unwrap()).collect())
        .collect();
    for row in &rows {
        for (a, b) in row.iter().zip(&rows[0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}

#[test]
fn emitted_marginal_is_unchanged_by_babu_toggle() {
    let tmp = tempfile::tempdir().unwrap();
    let read = |cfg: &ExperimentConfig, name: &str| {
        let dir = tmp.path().join(name);
        quantum_eraser::cli::cmd_patterns(cfg, "inline", &dir).unwrap();
        std::fs::read_to_string(dir.join("alisha_marginal.csv")).unwrap()
    };
    let on = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry(128));
    let mut off = on.clone();
    off.babu = quantum_eraser::experiment::ArmSettings::new(0.5, false, std::f64::consts::FRAC_PI_4, 0.0).unwrap();
    let (a, b) = (read(&on, "on"), read(&off, "off"));
    // Only the digest line may differ; every value agrees to 1e-12.
    let rows = |t: &str| -> Vec<Vec<f64>> {
        t.lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
            .collect()
    };
    let (ra, rb) = (rows(&a), rows(&b));
    assert_eq!(ra.len(), 128);
    for (x, y) in ra.iter().zip(&rb) {
        for (u, v) in x.iter().zip(y) {
            assert!((u - v).abs() <= 1e-12);
        }
    }
    let headers = |t: &str| -> Vec<String> {
        t.lines().filter(|l| l.starts_with('#') && !l.contains("config_digest")).map(String::from).collect()
    };
    assert_eq!(headers(&a), headers(&b));
}
