use gclm_core::gsea::*;
use gclm_core::moments::{Statistic, SummaryConfig};
use gclm_core::rng::{self, Domain};
use gclm_core::screening::{RankedEntry, RankedList};
use proptest::prelude::*;

fn random_list(n: usize, seed: u64) -> RankedList {
    let mut r = rng::stream(seed, Domain::Synthetic, 0);
    let entries = (0..n)
        .map(|i| RankedEntry {
            variable_id: format!("g{i:04}"),
            metric: rng::standard_normal(&mut r),
        })
        .collect();
    RankedList::new("random", entries, vec![])
}

fn collection(sets: Vec<(String, Vec<String>)>) -> GeneSetCollection {
    GeneSetCollection::new(
        sets.into_iter()
            .map(|(name, members)| GeneSet {
                name,
                description: String::new(),
                members,
            })
            .collect(),
    )
    .unwrap()
}

fn ids(range: std::ops::Range<usize>) -> Vec<String> {
    range.map(|i| format!("g{i:04}")).collect()
}

/// Kolmogorov–Smirnov distance of `p` from the uniform law on (0, 1].
fn ks_uniform(mut p: Vec<f64>) -> f64 {
    p.sort_by(f64::total_cmp);
    let n = p.len() as f64;
    p.iter()
        .enumerate()
        .map(|(i, &v)| (v - i as f64 / n).abs().max(((i + 1) as f64 / n - v).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn permutation_p_values_are_uniform_under_the_null() {
    let reps = 300;
    let set = collection(vec![("S".into(), ids(0..40))]);
    let p: Vec<f64> = (0..reps)
        .map(|k| {
            let list = random_list(300, 10_000 + k);
            let es = enrichment_score(&list, "S", &set.sets[0].members, 0.0).unwrap().es;
            let null = permutation_null(&list, &set, 1000, k, 0.0).unwrap();
            nominal_p_value(es, null.column(0))
        })
        .collect();
    let d = ks_uniform(p);
    // 1% critical value of the one-sample KS statistic
    assert!(d < 1.628 / (reps as f64).sqrt(), "D = {d}");
}

#[test]
fn null_scores_shrink_with_set_size() {
    let list = random_list(1000, 3);
    let sizes = [10, 40, 160];
    let sets = collection(sizes.iter().map(|&s| (format!("S{s}"), ids(0..s))).collect());
    let null = permutation_null(&list, &sets, 500, 1, 0.0).unwrap();
    let mean_abs: Vec<f64> = (0..sizes.len())
        .map(|m| null.column(m).map(f64::abs).sum::<f64>() / 500.0)
        .collect();
    assert!(mean_abs[0] > mean_abs[1] && mean_abs[1] > mean_abs[2], "{mean_abs:?}");
    assert!(null.values.iter().all(|v| v.abs() <= 1.0));
}

#[test]
fn null_matrix_is_thread_count_independent() {
    let list = random_list(400, 5);
    let sets = collection(vec![("A".into(), ids(0..30)), ("B".into(), ids(100..150))]);
    let run = |t| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .unwrap()
            .install(|| permutation_null(&list, &sets, 300, 11, 1.0).unwrap())
    };
    let a = run(1);
    assert_eq!(a, run(4));
    assert_eq!(a, run(8));
}

#[test]
fn reversing_the_list_negates_scores() {
    let list = random_list(200, 9);
    let members = ids(20..45);
    let a = enrichment_score(&list, "S", &members, 0.0).unwrap();
    let b = enrichment_score(&list.negated(), "S", &members, 0.0).unwrap();
    assert!((a.es + b.es).abs() < 1e-12);
    let sets = collection(vec![("S".into(), members)]);
    let cfg = GseaConfig {
        permutations: 200,
        ..GseaConfig::default()
    };
    let ra = run_gsea(&list, &sets, &cfg).unwrap();
    let rb = run_gsea(&list.negated(), &sets, &cfg).unwrap();
    assert_eq!(ra.results[0].direction, -rb.results[0].direction);
}

#[test]
fn fisher_reproduces_the_printed_comparison() {
    let p = fisher_exact_comparison(6316, 6271, 15312).unwrap();
    assert!((p - 0.6093).abs() < 0.02, "{p}");
}

#[test]
fn comparing_a_statistic_with_itself() {
    let (m, sets) = planted_benchmark(
        &PlantedConfig {
            variables: 120,
            samples: 60,
            planted: 20,
            outlier_controls: 10,
            decoy_sets: 3,
            ..PlantedConfig::default()
        },
        1,
    )
    .unwrap();
    let gsea = GseaConfig {
        permutations: 100,
        ..GseaConfig::default()
    };
    let stats = [Statistic::LSkewness, Statistic::LSkewness];
    let (table, _) = compare_estimators(&m, &sets, &stats, 0.25, &SummaryConfig::default(), &gsea).unwrap();
    assert_eq!(table.estimators[0].enriched, table.estimators[1].enriched);
    assert!((table.pairwise[0].p_value - 1.0).abs() < 1e-12);
    assert!(compare_estimators(&m, &sets, &stats[..1], 0.25, &SummaryConfig::default(), &gsea).is_err());
}

proptest! {
    #[test]
    fn classic_score_bounds(hits in prop::collection::vec(any::<bool>(), 2..60)) {
        prop_assume!(hits.iter().any(|h| *h) && !hits.iter().all(|h| *h));
        let n = hits.len();
        let list = RankedList::new(
            "x",
            (0..n).map(|i| RankedEntry { variable_id: format!("g{i:04}"), metric: (n - i) as f64 }).collect(),
            vec![],
        );
        let members: Vec<String> = (0..n).filter(|&i| hits[i]).map(|i| format!("g{i:04}")).collect();
        let e = enrichment_score(&list, "S", &members, 0.0).unwrap();
        prop_assert!(e.es.abs() <= 1.0);
        prop_assert!(e.running[n - 1].abs() < 1e-12);
        let k = members.len();
        let leading = hits[..k].iter().all(|h| *h);
        prop_assert_eq!(e.es == 1.0, leading);
        prop_assert!(e.running[e.position - 1] == e.es);
    }
}
