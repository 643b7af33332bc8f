use gclm_core::moments::{Statistic, SummaryConfig, MeasureKind};
use gclm_core::rng::{self, Domain};
use gclm_core::screening::*;

fn gaussian_matrix(p: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..p)
        .map(|i| {
            let mut r = rng::stream(seed, Domain::Synthetic, i as u64);
            (0..n).map(|_| rng::standard_normal(&mut r)).collect()
        })
        .collect()
}

fn matrix(rows: Vec<Vec<f64>>) -> DataMatrix {
    let p = rows.len();
    let n = rows[0].len();
    DataMatrix::from_rows(
        (0..p).map(|i| format!("v{i:03}")).collect(),
        (0..n).map(|j| format!("s{j}")).collect(),
        rows,
    )
    .unwrap()
}

fn order(list: &RankedList) -> Vec<String> {
    list.entries.iter().map(|e| e.variable_id.clone()).collect()
}

const SHAPE: [Statistic; 8] = [
    Statistic::Skewness,
    Statistic::Kurtosis,
    Statistic::LSkewness,
    Statistic::LKurtosis,
    Statistic::HlSkewness,
    Statistic::HlKurtosis,
    Statistic::RlSkewness,
    Statistic::Bowley,
];

#[test]
fn gaussian_rows_concentrate_near_zero() {
    let m = matrix(gaussian_matrix(200, 300, 1));
    let lists = screen(&m, &[Statistic::LSkewness, Statistic::HlKurtosis, Statistic::RlKurtosis], &SummaryConfig::default()).unwrap();
    for l in &lists {
        let mean = l.entries.iter().map(|e| e.metric).sum::<f64>() / l.len() as f64;
        assert!(mean.abs() < 0.02, "{}: {mean}", l.statistic);
        assert!(l.entries.iter().all(|e| e.metric.abs() < 0.3));
    }
}

#[test]
fn planted_skewed_variable_is_found() {
    let cfg = SummaryConfig::default();
    let seeds = 200;
    let mut hits = 0;
    for seed in 0..seeds {
        let mut rows = gaussian_matrix(100, 200, 1000 + seed);
        let mut r = rng::stream(seed, Domain::Sampling, 7);
        // left-skewed: negated standard exponential
        rows[37] = (0..200).map(|_| rng::open_unit(&mut r).ln()).collect();
        let m = matrix(rows);
        let l = &screen(&m, &[Statistic::LSkewness], &cfg).unwrap()[0];
        hits += usize::from(bottom_k(l, 1).unwrap()[0].variable_id == "v037");
    }
    assert!(hits as f64 / seeds as f64 > 0.99, "{hits}/{seeds}");
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let m = matrix(gaussian_matrix(120, 60, 3));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| serde_json::to_string(&screen(&m, &Statistic::ALL, &SummaryConfig::default()).unwrap()).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(8));
}

#[test]
fn affine_maps_keep_order_and_negation_flips_skewness() {
    let m = matrix(gaussian_matrix(80, 50, 4));
    let cfg = SummaryConfig::default();
    let base = screen(&m, &SHAPE, &cfg).unwrap();
    let moved = screen(&m.map_values(|v| 3.5 * v - 20.0).unwrap(), &SHAPE, &cfg).unwrap();
    let flipped = screen(&m.map_values(|v| -v).unwrap(), &SHAPE, &cfg).unwrap();
    for ((b, a), f) in base.iter().zip(&moved).zip(&flipped) {
        assert_eq!(order(b), order(a), "{}", b.statistic);
        let stat: Statistic = b.statistic.parse().unwrap();
        match stat.kind() {
            MeasureKind::Skewness => assert_eq!(order(&b.negated()), order(f), "{}", b.statistic),
            _ => assert_eq!(order(b), order(f), "{}", b.statistic),
        }
    }
}

#[test]
fn exclusions_are_accounted_for() {
    let mut rows = gaussian_matrix(10, 30, 5);
    rows[2] = vec![1.0; 30];
    for v in rows[5].iter_mut().skip(5) {
        *v = f64::NAN;
    }
    rows[7][3] = f64::NAN;
    let m = matrix(rows);
    let lists = screen(&m, &[Statistic::LKurtosis], &SummaryConfig::default()).unwrap();
    let l = &lists[0];
    assert_eq!(l.len() + l.excluded.len(), m.p());
    let ex: Vec<&str> = l.excluded.iter().map(|e| e.variable_id.as_str()).collect();
    assert_eq!(ex, ["v002", "v005"]);
    // the ragged row is summarised on its 29 observed values
    let sums = compute_summaries(&m, &SummaryConfig::default()).unwrap();
    assert_eq!(sums[7].n_observed, 29);
    assert!(sums[7].summary.is_some());
}
