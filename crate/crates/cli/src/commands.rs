//! Subcommand bodies.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use gclm_core::gsea::{
    compare_estimators, enrichment_score, load_gmt_path, planted_benchmark, run_gsea, ComparisonTable,
    GeneSetCollection, GseaConfig, GseaReport, PlantedConfig, DEFAULT_FDR_LEVELS, DEFAULT_MAX_SET_SIZE,
    DEFAULT_MIN_SET_SIZE, DEFAULT_PERMUTATIONS, DEFAULT_PERMUTATION_SEED,
};
use gclm_core::moments::{Statistic, SummaryConfig, DEFAULT_BIAS_REPLICATES, DEFAULT_BIAS_SEED};
use gclm_core::robustness::{expected_growth, growth_order, log_grid, GrowthOrderEstimate, GROWTH_STATISTICS};
use gclm_core::screening::{compute_summaries, export_marginal_plot_data, load_matrix_path, rank_by, DataMatrix};
use gclm_core::{RankedList, TukeyGH};
use serde::Serialize;

use crate::config::{
    delimiter_name, parse_delimiter, parse_direction, parse_estimator, FileConfig, GseaSettings, Resolved,
    RobustnessSettings, ScreenSettings, DEFAULT_H, DEFAULT_K,
};
use crate::{CliError, Command, CommonArgs, GseaArgs, RobustnessArgs, ScreenArgs, SimulateArgs, StatsArgs};

type CliResult<T = ()> = Result<T, CliError>;

const DEFAULT_TOP_PROFILES: usize = 10;
const DEFAULT_X_MIN: f64 = 1.0;
const DEFAULT_X_MAX: f64 = 100.0;
const DEFAULT_X_POINTS: usize = 49;
/// Allowed distance between fitted and expected exponents.
const EXPONENT_TOLERANCE: f64 = 0.3;

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Stats(a) => stats(a),
        Command::Screen(a) => screen(a),
        Command::Gsea(a) => gsea(a),
        Command::Robustness(a) => robustness(a),
        Command::Simulate(a) => simulate(a),
    }
}

/// Settings shared by every subcommand after merging flags over the file.
struct Base {
    file: FileConfig,
    delimiter: u8,
    summary: SummaryConfig,
    seed: u64,
    out_dir: PathBuf,
}

impl Base {
    fn new(common: &CommonArgs) -> CliResult<Self> {
        let file = FileConfig::load(common.config.as_deref())?;
        let threads = common.threads.or(file.threads);
        if let Some(t) = threads {
            if t == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .context("starting the worker pool")?;
        }
        let delimiter = parse_delimiter(common.delimiter.as_deref().or(file.delimiter.as_deref()).unwrap_or("tab"))?;
        let hl_estimator = match common.hl_estimator.as_deref().or(file.hl_estimator.as_deref()) {
            Some(s) => parse_estimator(s)?,
            None => Default::default(),
        };
        let summary = SummaryConfig {
            hl_estimator,
            bias_replicates: common.bias_replicates.or(file.bias_replicates).unwrap_or(DEFAULT_BIAS_REPLICATES),
            bias_seed: common.bias_seed.or(file.bias_seed).unwrap_or(DEFAULT_BIAS_SEED),
        };
        let seed = common.seed.or(file.seed).unwrap_or(DEFAULT_PERMUTATION_SEED);
        let out_dir = common.out_dir.clone().or(file.out_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
        Ok(Self {
            file,
            delimiter,
            summary,
            seed,
            out_dir,
        })
    }

    fn resolved(&self, subcommand: &str, statistics: &[Statistic]) -> Resolved {
        Resolved {
            subcommand: subcommand.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input: None,
            gmt: None,
            ranked: None,
            labels: None,
            delimiter: delimiter_name(self.delimiter),
            statistics: statistics.iter().map(|s| s.id().to_string()).collect(),
            hl_estimator: self.summary.hl_estimator,
            bias_replicates: self.summary.bias_replicates,
            bias_seed: self.summary.bias_seed,
            seed: self.seed,
            screen: None,
            gsea: None,
            robustness: None,
        }
    }

    /// Prints the header and writes the resolved config before any work.
    fn start(&self, resolved: &Resolved) -> CliResult {
        for line in resolved.header() {
            eprintln!("# {line}");
        }
        resolved.write(&self.out_dir)?;
        Ok(())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

fn required(flag: Option<PathBuf>, file: Option<PathBuf>, name: &str) -> CliResult<PathBuf> {
    flag.or(file).ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn parse_statistic(s: &str) -> CliResult<Statistic> {
    s.trim().parse().map_err(|e: gclm_core::Error| CliError::Usage(e.to_string()))
}

fn load_matrix(path: &Path, delimiter: u8) -> CliResult<DataMatrix> {
    load_matrix_path(path, delimiter).map_err(|e| match e {
        gclm_core::Error::Io(io) => CliError::Runtime(anyhow::Error::new(io).context(format!("reading {}", path.display()))),
        other => other.into(),
    })
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).context("serialising JSON")?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn stats(args: StatsArgs) -> CliResult {
    let base = Base::new(&args.common)?;
    let input = required(args.input, base.file.input.clone(), "input")?;
    let mut resolved = base.resolved("stats", &Statistic::ALL);
    resolved.input = Some(input.clone());
    base.start(&resolved)?;

    let matrix = load_matrix(&input, base.delimiter)?;
    let summaries = compute_summaries(&matrix, &base.summary)?;
    let path = base.path("summary.tsv");
    let mut out = create(&path)?;
    write!(out, "variable_id\tn\tstatus\treason")?;
    for s in Statistic::ALL {
        write!(out, "\t{}", s.id())?;
    }
    writeln!(out)?;
    let mut excluded = 0;
    for v in &summaries {
        match &v.summary {
            Some(s) => {
                write!(out, "{}\t{}\tOK\t", v.variable_id, v.n_observed)?;
                for st in Statistic::ALL {
                    write!(out, "\t{}", st.value(s))?;
                }
            }
            None => {
                excluded += 1;
                let reason = v.excluded_reason.as_deref().unwrap_or("").replace(['\t', '\n'], " ");
                write!(out, "{}\t{}\tEXCLUDED\t{reason}", v.variable_id, v.n_observed)?;
                for _ in Statistic::ALL {
                    write!(out, "\tNA")?;
                }
            }
        }
        writeln!(out)?;
    }
    out.flush()?;
    eprintln!(
        "# {} variables summarised, {excluded} excluded -> {}",
        summaries.len(),
        path.display()
    );
    Ok(())
}

/// Labels in matrix column order from `sample_id<delim>label` lines.
fn load_labels(path: &Path, delimiter: u8, matrix: &DataMatrix) -> CliResult<Vec<String>> {
    let reader = BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?);
    let delim = delimiter as char;
    let mut map: HashMap<String, String> = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, delim);
        let (Some(id), Some(label)) = (parts.next(), parts.next()) else {
            return Err(CliError::Runtime(anyhow::anyhow!(
                "{}:{}: expected `sample_id{}label`",
                path.display(),
                i + 1,
                delimiter_name(delimiter)
            )));
        };
        if map.insert(id.trim().to_string(), label.trim().to_string()).is_some() {
            return Err(CliError::Runtime(anyhow::anyhow!(
                "{}:{}: duplicate sample `{}`",
                path.display(),
                i + 1,
                id.trim()
            )));
        }
    }
    matrix
        .sample_ids()
        .iter()
        .map(|s| {
            map.get(s)
                .cloned()
                .ok_or_else(|| CliError::Runtime(anyhow::anyhow!("{}: no label for sample `{s}`", path.display())))
        })
        .collect()
}

fn screen(args: ScreenArgs) -> CliResult {
    let base = Base::new(&args.common)?;
    let input = required(args.input, base.file.input.clone(), "input")?;
    let stat_name = args
        .stat
        .or(base.file.stat.clone())
        .ok_or_else(|| CliError::Usage("--stat is required".into()))?;
    let statistic = parse_statistic(&stat_name)?;
    let k = args.k.or(base.file.k).unwrap_or(DEFAULT_K);
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let direction = match args.direction.as_deref().or(base.file.direction.as_deref()) {
        Some(d) => parse_direction(d)?,
        None => Default::default(),
    };
    let labels_path = args.labels.or(base.file.labels.clone());
    let mut resolved = base.resolved("screen", &[statistic]);
    resolved.input = Some(input.clone());
    resolved.labels = labels_path.clone();
    resolved.screen = Some(ScreenSettings { k, direction });
    base.start(&resolved)?;

    let matrix = load_matrix(&input, base.delimiter)?;
    let labels = labels_path
        .as_deref()
        .map(|p| load_labels(p, base.delimiter, &matrix))
        .transpose()?;
    let summaries = compute_summaries(&matrix, &base.summary)?;
    let list = rank_by(&summaries, statistic);
    let id = statistic.id();
    let mut out = create(&base.path(&format!("ranked_{id}.tsv")))?;
    list.write_tsv(&mut out)?;
    out.flush()?;
    write_json(&base.path(&format!("ranked_{id}.json")), &list)?;

    let selection = list.select(k, direction)?;
    let mut out = create(&base.path(&format!("selection_{id}.tsv")))?;
    writeln!(out, "rank\tvariable_id\tmetric")?;
    for (i, e) in selection.iter().enumerate() {
        writeln!(out, "{}\t{}\t{}", i + 1, e.variable_id, e.metric)?;
    }
    out.flush()?;
    let ids: Vec<String> = selection.iter().map(|e| e.variable_id.clone()).collect();
    let plot = export_marginal_plot_data(&matrix, &ids, labels.as_deref())?;
    write_json(&base.path(&format!("plot_data_{id}.json")), &plot)?;
    eprintln!(
        "# ranked {} variables by {id} ({} excluded); selected {}",
        list.len(),
        list.excluded.len(),
        ids.join(",")
    );
    Ok(())
}

#[derive(Serialize)]
struct Profile {
    set_name: String,
    size: usize,
    es: f64,
    position: usize,
    p_value: f64,
    fdr_q: f64,
    running: Vec<f64>,
}

#[derive(Serialize)]
struct ProfileDocument<'a> {
    statistic: &'a str,
    list_length: usize,
    /// Metric at each list position, for the ranking panel of a plot.
    metrics: Vec<f64>,
    profiles: Vec<Profile>,
}

/// Running-score profiles for the `top` sets with the smallest q, then p,
/// then the largest |ES|.
fn profiles<'a>(report: &'a GseaReport, list: &RankedList, sets: &GeneSetCollection, top: usize) -> CliResult<ProfileDocument<'a>> {
    let cfg = &report.config;
    let filtered = sets.filter(
        list.entries.iter().map(|e| e.variable_id.as_str()),
        cfg.min_set_size,
        cfg.max_set_size,
    );
    let mut order: Vec<_> = report.results.iter().collect();
    order.sort_by(|a, b| {
        a.fdr_q
            .total_cmp(&b.fdr_q)
            .then(a.p_value.total_cmp(&b.p_value))
            .then(b.es.abs().total_cmp(&a.es.abs()))
            .then(a.set_name.cmp(&b.set_name))
    });
    let mut out = Vec::new();
    for r in order.into_iter().take(top) {
        let set = filtered
            .sets
            .iter()
            .find(|s| s.name == r.set_name)
            .context("reported set missing after filtering")?;
        let e = enrichment_score(list, &set.name, &set.members, cfg.weight_p)?;
        out.push(Profile {
            set_name: r.set_name.clone(),
            size: r.size,
            es: r.es,
            position: r.position,
            p_value: r.p_value,
            fdr_q: r.fdr_q,
            running: e.running,
        });
    }
    Ok(ProfileDocument {
        statistic: &report.statistic,
        list_length: list.len(),
        metrics: list.entries.iter().map(|e| e.metric).collect(),
        profiles: out,
    })
}

fn write_report(base: &Base, report: &GseaReport, list: &RankedList, sets: &GeneSetCollection, top: usize) -> CliResult {
    let name = &report.statistic;
    let mut out = create(&base.path(&format!("gsea_{name}.tsv")))?;
    report.write_tsv(&mut out)?;
    out.flush()?;
    write_json(&base.path(&format!("gsea_{name}.json")), report)?;
    write_json(&base.path(&format!("profiles_{name}.json")), &profiles(report, list, sets, top)?)?;
    let counts: Vec<String> = report
        .config
        .fdr_levels
        .iter()
        .map(|&l| format!("{} at q < {l}", report.enriched_count(l)))
        .collect();
    eprintln!("# {name}: {} sets tested, enriched {}", report.results.len(), counts.join(", "));
    Ok(())
}

fn gsea(args: GseaArgs) -> CliResult {
    let base = Base::new(&args.common)?;
    let f = &base.file;
    let gmt = required(args.gmt, f.gmt.clone(), "gmt")?;
    let ranked = args.ranked.or(f.ranked.clone());
    let input = if ranked.is_some() { None } else { args.input.or(f.input.clone()) };
    if ranked.is_none() && input.is_none() {
        return Err(CliError::Usage("either --input or --ranked is required".into()));
    }
    let names: Vec<String> = match (args.stats, args.stat) {
        (Some(v), _) => v,
        (None, Some(s)) => vec![s],
        (None, None) => f.stats.clone().or(f.stat.clone().map(|s| vec![s])).unwrap_or_default(),
    };
    let statistics: Vec<Statistic> = names.iter().map(|s| parse_statistic(s)).collect::<CliResult<_>>()?;
    if input.is_some() && statistics.is_empty() {
        return Err(CliError::Usage("--stat or --stats is required with --input".into()));
    }
    if ranked.is_some() && statistics.len() > 1 {
        return Err(CliError::Usage("comparing statistics needs --input, not --ranked".into()));
    }
    let fdr_levels = args
        .fdr_levels
        .or(f.fdr_levels.clone())
        .unwrap_or_else(|| DEFAULT_FDR_LEVELS.to_vec());
    if fdr_levels.is_empty() || fdr_levels.iter().any(|l| !(*l > 0.0 && *l <= 1.0)) {
        return Err(CliError::Usage("FDR levels must be a non-empty list in (0, 1]".into()));
    }
    let cfg = GseaConfig {
        permutations: args.permutations.or(f.permutations).unwrap_or(DEFAULT_PERMUTATIONS),
        seed: base.seed,
        weight_p: args.weight_p.or(f.weight_p).unwrap_or(0.0),
        fdr_levels,
        min_set_size: args.min_size.or(f.min_set_size).unwrap_or(DEFAULT_MIN_SET_SIZE),
        max_set_size: args.max_size.or(f.max_set_size).unwrap_or(DEFAULT_MAX_SET_SIZE),
    };
    if cfg.permutations == 0 {
        return Err(CliError::Usage("--permutations must be at least 1".into()));
    }
    if !(cfg.weight_p >= 0.0 && cfg.weight_p.is_finite()) {
        return Err(CliError::Usage("--weight-p must be a finite number >= 0".into()));
    }
    if cfg.min_set_size > cfg.max_set_size {
        return Err(CliError::Usage("--min-size exceeds --max-size".into()));
    }
    let top = args.top_profiles.or(f.top_profiles).unwrap_or(DEFAULT_TOP_PROFILES);
    let compare = statistics.len() > 1;
    let mut resolved = base.resolved("gsea", &statistics);
    resolved.input = input.clone();
    resolved.ranked = ranked.clone();
    resolved.gmt = Some(gmt.clone());
    resolved.gsea = Some(GseaSettings {
        permutations: cfg.permutations,
        fdr_levels: cfg.fdr_levels.clone(),
        weight_p: cfg.weight_p,
        min_set_size: cfg.min_set_size,
        max_set_size: cfg.max_set_size,
        top_profiles: top,
        compare,
    });
    base.start(&resolved)?;

    let sets = load_gmt_path(&gmt).map_err(|e| match e {
        gclm_core::Error::Io(io) => CliError::Runtime(anyhow::Error::new(io).context(format!("reading {}", gmt.display()))),
        other => other.into(),
    })?;
    if let Some(path) = ranked {
        let name = statistics.first().map(|s| s.id().to_string()).unwrap_or_else(|| "ranked".into());
        let reader = BufReader::new(File::open(&path).with_context(|| format!("opening {}", path.display()))?);
        let list = RankedList::read_tsv(reader, &path.display().to_string(), &name)?;
        let report = run_gsea(&list, &sets, &cfg)?;
        return write_report(&base, &report, &list, &sets, top);
    }

    let matrix = load_matrix(input.as_deref().expect("checked above"), base.delimiter)?;
    if !compare {
        let summaries = compute_summaries(&matrix, &base.summary)?;
        let list = rank_by(&summaries, statistics[0]);
        let report = run_gsea(&list, &sets, &cfg)?;
        return write_report(&base, &report, &list, &sets, top);
    }

    let (first, reports) =
        compare_estimators(&matrix, &sets, &statistics, cfg.fdr_levels[0], &base.summary, &cfg)?;
    let summaries = compute_summaries(&matrix, &base.summary)?;
    for report in &reports {
        let statistic = parse_statistic(&report.statistic)?;
        write_report(&base, report, &rank_by(&summaries, statistic), &sets, top)?;
    }
    let tables: Vec<ComparisonTable> = cfg
        .fdr_levels
        .iter()
        .map(|&l| {
            let mut t = ComparisonTable::from_reports(&reports, l);
            t.failures = first.failures.clone();
            t
        })
        .collect();
    for f in &first.failures {
        eprintln!("# {} failed: {}", f.statistic, f.error);
    }
    write_json(&base.path("comparison.json"), &tables)?;
    Ok(())
}

#[derive(Serialize)]
struct GrowthRow {
    statistic: Statistic,
    h: f64,
    expected_exponent: f64,
    expected_log_power: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<GrowthOrderEstimate>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Exponent check: within tolerance of the expected order, except for HL
/// measures whose fitted slope must fall strictly between 1 and the
/// conventional order of the same kind, with a positive log correction.
fn growth_passes(statistic: Statistic, e: &GrowthOrderEstimate, expected: f64) -> bool {
    match statistic {
        Statistic::HlSkewness | Statistic::HlKurtosis => {
            let conventional = if statistic == Statistic::HlSkewness { 3.0 } else { 4.0 };
            e.exponent > 1.0 && e.exponent < conventional && e.log_correction_power.is_some_and(|c| c > 0.0)
        }
        _ => (e.exponent - expected).abs() <= EXPONENT_TOLERANCE,
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "NA".into())
}

fn robustness(args: RobustnessArgs) -> CliResult {
    let base = Base::new(&args.common)?;
    let f = &base.file;
    let statistics: Vec<Statistic> = match args.stats.or(f.stats.clone()) {
        Some(v) => v.iter().map(|s| parse_statistic(s)).collect::<CliResult<_>>()?,
        None => GROWTH_STATISTICS.to_vec(),
    };
    if statistics.is_empty() {
        return Err(CliError::Usage("no statistics given".into()));
    }
    if let Some(s) = statistics.iter().find(|s| expected_growth(**s).is_none()) {
        return Err(CliError::Usage(format!("{s} has no growth order to study")));
    }
    let h = args.h.or(f.h.clone()).unwrap_or_else(|| vec![DEFAULT_H]);
    if h.is_empty() {
        return Err(CliError::Usage("the h list is empty".into()));
    }
    if h.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(CliError::Usage("h values must be finite and > 0".into()));
    }
    let x_min = args.x_min.or(f.x_min).unwrap_or(DEFAULT_X_MIN);
    let x_max = args.x_max.or(f.x_max).unwrap_or(DEFAULT_X_MAX);
    let x_points = args.x_points.or(f.x_points).unwrap_or(DEFAULT_X_POINTS);
    if !(x_min > 0.0 && x_max > x_min && x_max.is_finite()) || x_points < 2 {
        return Err(CliError::Usage("the x grid needs 0 < x-min < x-max and at least 2 points".into()));
    }
    let mut resolved = base.resolved("robustness", &statistics);
    resolved.robustness = Some(RobustnessSettings {
        h: h.clone(),
        x_min,
        x_max,
        x_points,
    });
    base.start(&resolved)?;

    let grid = log_grid(x_min, x_max, x_points);
    let mut rows = Vec::new();
    for &hv in &h {
        let tgh = TukeyGH::new(0.0, hv)?;
        for &s in &statistics {
            let expected = expected_growth(s).expect("checked above");
            let (estimate, error) = match growth_order(s, tgh, &grid) {
                Ok(e) => (Some(e), None),
                Err(e) => {
                    eprintln!("# {s} at h = {hv}: {e}");
                    (None, Some(e.to_string()))
                }
            };
            let pass = estimate.as_ref().is_some_and(|e| growth_passes(s, e, expected.exponent));
            rows.push(GrowthRow {
                statistic: s,
                h: hv,
                expected_exponent: expected.exponent,
                expected_log_power: expected.log_power,
                estimate,
                pass,
                error,
            });
        }
    }

    let mut out = create(&base.path("growth.csv"))?;
    writeln!(
        out,
        "statistic,g,h,expected_exponent,expected_log_power,fitted_exponent,log_correction_power,r_squared,fit_lo,fit_hi,fit_points,pass,error"
    )?;
    for r in &rows {
        let e = r.estimate.as_ref();
        writeln!(
            out,
            "{},0,{},{},{},{},{},{},{},{},{},{},{}",
            r.statistic,
            r.h,
            r.expected_exponent,
            r.expected_log_power,
            fmt_opt(e.map(|e| e.exponent)),
            fmt_opt(e.and_then(|e| e.log_correction_power)),
            fmt_opt(e.map(|e| e.r_squared)),
            fmt_opt(e.map(|e| e.fit_range[0])),
            fmt_opt(e.map(|e| e.fit_range[1])),
            e.map(|e| e.fit_points.to_string()).unwrap_or_else(|| "NA".into()),
            r.pass,
            r.error.as_deref().map(|m| format!("\"{}\"", m.replace('"', "'"))).unwrap_or_default(),
        )?;
        eprintln!(
            "# h = {}: {:<12} expected {} fitted {} {}",
            r.h,
            r.statistic.id(),
            r.expected_exponent,
            fmt_opt(e.map(|e| (e.exponent * 1000.0).round() / 1000.0)),
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    out.flush()?;
    write_json(&base.path("growth.json"), &rows)?;
    Ok(())
}

fn simulate(args: SimulateArgs) -> CliResult {
    let base = Base::new(&args.common)?;
    let resolved = base.resolved("simulate", &[]);
    base.start(&resolved)?;
    let (matrix, sets) = planted_benchmark(&PlantedConfig::default(), base.seed)?;
    let ext = if base.delimiter == b',' { "csv" } else { "tsv" };
    let mut out = create(&base.path(&format!("matrix.{ext}")))?;
    matrix.write_delimited(&mut out, base.delimiter)?;
    out.flush()?;
    let mut out = create(&base.path("sets.gmt"))?;
    sets.write_gmt(&mut out)?;
    out.flush()?;
    eprintln!("# wrote {} x {} matrix and {} gene sets", matrix.p(), matrix.n(), sets.len());
    Ok(())
}
