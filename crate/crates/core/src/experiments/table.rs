use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use csv::StringRecord;

use super::config::Mode;
use crate::error::{Error, Result};
use crate::graph::Gso;

/// One (configuration, filter, trial) measurement. Numeric fields of an
/// error row are NaN.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub mode: Mode,
    pub gso: Gso,
    pub filter: String,
    pub n: usize,
    pub p_re: f64,
    pub trial: usize,
    pub seed: u64,
    pub distance: f64,
    pub leakage: f64,
    pub eig_term: f64,
    pub vec_term: f64,
    pub total: f64,
    pub eta_empirical: f64,
    pub gap_ok: bool,
    pub connected: bool,
    pub error: Option<String>,
    pub wall_time: f64,
}

/// Community-structure drift of one independent pair of planted partitions.
#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyRow {
    pub n: usize,
    pub p_re: f64,
    pub trial: usize,
    pub seed: u64,
    /// `‖V_k − V̂_k‖₂` of the unnormalized Laplacians, signs aligned.
    pub vec_drift: f64,
    /// `‖Λ_k − Λ̂_k‖₂` of the unnormalized Laplacians.
    pub eig_drift: f64,
    pub proj_drift: f64,
    /// `‖L_norm − L̂_norm‖₂`
    pub lnorm_diff: f64,
    pub connected: bool,
    pub error: Option<String>,
    pub wall_time: f64,
}

pub const RESULT_COLUMNS: [&str; 16] = [
    "mode",
    "gso",
    "filter",
    "n",
    "p_re",
    "trial",
    "seed",
    "distance",
    "leakage",
    "eig_term",
    "vec_term",
    "total",
    "eta_empirical",
    "gap_ok",
    "connected",
    "error",
];

pub const CONSISTENCY_COLUMNS: [&str; 10] = [
    "n",
    "p_re",
    "trial",
    "seed",
    "vec_drift",
    "eig_drift",
    "proj_drift",
    "lnorm_diff",
    "connected",
    "error",
];

pub const WALL_TIME_COLUMN: &str = "wall_time";

/// Rows in canonical order: configuration keys, then trial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConsistencyTable {
    pub rows: Vec<ConsistencyRow>,
}

impl ResultTable {
    pub fn new(mut rows: Vec<ResultRow>) -> Self {
        rows.sort_by(|a, b| {
            (a.mode, a.gso, &a.filter, a.n)
                .cmp(&(b.mode, b.gso, &b.filter, b.n))
                .then(a.p_re.total_cmp(&b.p_re))
                .then(a.trial.cmp(&b.trial))
        });
        ResultTable { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &ResultRow> {
        self.rows.iter().filter(|r| r.error.is_some())
    }
}

impl ConsistencyTable {
    pub fn new(mut rows: Vec<ConsistencyRow>) -> Self {
        rows.sort_by(|a, b| {
            a.n.cmp(&b.n)
                .then(a.p_re.total_cmp(&b.p_re))
                .then(a.trial.cmp(&b.trial))
        });
        ConsistencyTable { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// 17 significant digits, exact on re-parse. NaN is written as an empty
/// field.
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.16e}")
    }
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    if s.is_empty() {
        Ok(f64::NAN)
    } else {
        s.parse().map_err(|_| format!("invalid number '{s}'"))
    }
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    s.parse().map_err(|_| format!("invalid boolean '{s}'"))
}

fn parse_int<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|_| format!("invalid integer '{s}'"))
}

struct Fields<'r> {
    index: &'r BTreeMap<String, usize>,
    record: &'r StringRecord,
}

impl<'r> Fields<'r> {
    fn get(&self, name: &str) -> &'r str {
        self.index
            .get(name)
            .and_then(|&i| self.record.get(i))
            .unwrap_or("")
    }
}

trait CsvRow: Sized {
    const COLUMNS: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
    fn wall_time(&self) -> f64;
    fn from_fields(f: &Fields<'_>) -> std::result::Result<Self, String>;
}

impl CsvRow for ResultRow {
    const COLUMNS: &'static [&'static str] = &RESULT_COLUMNS;

    fn fields(&self) -> Vec<String> {
        vec![
            self.mode.to_string(),
            self.gso.to_string(),
            self.filter.clone(),
            self.n.to_string(),
            format_f64(self.p_re),
            self.trial.to_string(),
            self.seed.to_string(),
            format_f64(self.distance),
            format_f64(self.leakage),
            format_f64(self.eig_term),
            format_f64(self.vec_term),
            format_f64(self.total),
            format_f64(self.eta_empirical),
            self.gap_ok.to_string(),
            self.connected.to_string(),
            self.error.clone().unwrap_or_default(),
        ]
    }

    fn wall_time(&self) -> f64 {
        self.wall_time
    }

    fn from_fields(f: &Fields<'_>) -> std::result::Result<Self, String> {
        let get = |name| f.get(name);
        let error = get("error");
        Ok(ResultRow {
            mode: get("mode").parse().map_err(|e: Error| e.to_string())?,
            gso: get("gso").parse().map_err(|e: Error| e.to_string())?,
            filter: get("filter").to_string(),
            n: parse_int(get("n"))?,
            p_re: parse_f64(get("p_re"))?,
            trial: parse_int(get("trial"))?,
            seed: parse_int(get("seed"))?,
            distance: parse_f64(get("distance"))?,
            leakage: parse_f64(get("leakage"))?,
            eig_term: parse_f64(get("eig_term"))?,
            vec_term: parse_f64(get("vec_term"))?,
            total: parse_f64(get("total"))?,
            eta_empirical: parse_f64(get("eta_empirical"))?,
            gap_ok: parse_bool(get("gap_ok"))?,
            connected: parse_bool(get("connected"))?,
            error: (!error.is_empty()).then(|| error.to_string()),
            wall_time: parse_f64(get(WALL_TIME_COLUMN))?,
        })
    }
}

impl CsvRow for ConsistencyRow {
    const COLUMNS: &'static [&'static str] = &CONSISTENCY_COLUMNS;

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_f64(self.p_re),
            self.trial.to_string(),
            self.seed.to_string(),
            format_f64(self.vec_drift),
            format_f64(self.eig_drift),
            format_f64(self.proj_drift),
            format_f64(self.lnorm_diff),
            self.connected.to_string(),
            self.error.clone().unwrap_or_default(),
        ]
    }

    fn wall_time(&self) -> f64 {
        self.wall_time
    }

    fn from_fields(f: &Fields<'_>) -> std::result::Result<Self, String> {
        let get = |name| f.get(name);
        let error = get("error");
        Ok(ConsistencyRow {
            n: parse_int(get("n"))?,
            p_re: parse_f64(get("p_re"))?,
            trial: parse_int(get("trial"))?,
            seed: parse_int(get("seed"))?,
            vec_drift: parse_f64(get("vec_drift"))?,
            eig_drift: parse_f64(get("eig_drift"))?,
            proj_drift: parse_f64(get("proj_drift"))?,
            lnorm_diff: parse_f64(get("lnorm_diff"))?,
            connected: parse_bool(get("connected"))?,
            error: (!error.is_empty()).then(|| error.to_string()),
            wall_time: parse_f64(get(WALL_TIME_COLUMN))?,
        })
    }
}

fn write_rows<R: CsvRow>(rows: &[R], path: &Path, timings: bool) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut header: Vec<&str> = R::COLUMNS.to_vec();
    if timings {
        header.push(WALL_TIME_COLUMN);
    }
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        let mut f = r.fields();
        if timings {
            f.push(format_f64(r.wall_time()));
        }
        w.write_record(&f).map_err(csv_err)?;
    }
    w.into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?
        .flush()
        .map_err(|e| Error::io(path, e))
}

fn read_rows<R: CsvRow>(path: &Path) -> Result<Vec<R>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let header = rdr.headers().map_err(csv_err)?.clone();
    let index: BTreeMap<String, usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| (h.to_string(), i))
        .collect();
    if let Some(missing) = R::COLUMNS.iter().find(|c| !index.contains_key(**c)) {
        return Err(Error::Parse {
            line: 1,
            message: format!("{}: missing column '{missing}'", path.display()),
        });
    }
    let mut rows = Vec::new();
    let mut record = StringRecord::new();
    let mut line = 1;
    while rdr.read_record(&mut record).map_err(csv_err)? {
        line += 1;
        let fields = Fields {
            index: &index,
            record: &record,
        };
        let row = R::from_fields(&fields).map_err(|message| Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        })?;
        rows.push(row);
    }
    Ok(rows)
}

/// Writes the table with a header row. `timings` appends a wall-clock
/// column, which makes the file run-dependent.
pub fn write_csv(t: &ResultTable, path: impl AsRef<Path>, timings: bool) -> Result<()> {
    write_rows(&t.rows, path.as_ref(), timings)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<ResultTable> {
    read_rows(path.as_ref()).map(ResultTable::new)
}

pub fn write_consistency_csv(
    t: &ConsistencyTable,
    path: impl AsRef<Path>,
    timings: bool,
) -> Result<()> {
    write_rows(&t.rows, path.as_ref(), timings)
}

pub fn read_consistency_csv(path: impl AsRef<Path>) -> Result<ConsistencyTable> {
    read_rows(path.as_ref()).map(ConsistencyTable::new)
}

/// Which table a CSV file holds, judged from its header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Results,
    Consistency,
}

pub fn detect_table(path: impl AsRef<Path>) -> Result<TableKind> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let header = rdr
        .headers()
        .map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?
        .clone();
    let has = |cols: &[&str]| cols.iter().all(|c| header.iter().any(|h| h == *c));
    if has(&RESULT_COLUMNS) {
        Ok(TableKind::Results)
    } else if has(&CONSISTENCY_COLUMNS) {
        Ok(TableKind::Consistency)
    } else {
        Err(Error::Parse {
            line: 1,
            message: format!("{}: header matches no known table", path.display()),
        })
    }
}

/// Location and spread of one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stats {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub std: f64,
    /// `mean ± 1.96 s / √count`
    pub ci_low: f64,
    pub ci_high: f64,
    /// Set when fewer than two values make the interval meaningless.
    pub degenerate: bool,
    pub median: f64,
    /// Distribution-free interval for the median from order statistics,
    /// coverage at least 95%; the sample range when `count` is too small.
    pub median_low: f64,
    pub median_high: f64,
}

pub const Z95: f64 = 1.96;

impl Stats {
    /// NaN entries are ignored.
    pub fn of(values: impl IntoIterator<Item = f64>) -> Stats {
        let mut v: Vec<f64> = values.into_iter().filter(|x| !x.is_nan()).collect();
        let count = v.len();
        if count == 0 {
            return Stats {
                count,
                mean: f64::NAN,
                std: f64::NAN,
                ci_low: f64::NAN,
                ci_high: f64::NAN,
                degenerate: true,
                median: f64::NAN,
                median_low: f64::NAN,
                median_high: f64::NAN,
            };
        }
        let t = count as f64;
        let mean = v.iter().sum::<f64>() / t;
        let std = if count > 1 {
            (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0)).sqrt()
        } else {
            0.0
        };
        let half = Z95 * std / t.sqrt();
        v.sort_by(f64::total_cmp);
        let median = if count % 2 == 1 {
            v[count / 2]
        } else {
            0.5 * (v[count / 2 - 1] + v[count / 2])
        };
        let (lo, hi) = median_rank_interval(count);
        Stats {
            count,
            mean,
            std,
            ci_low: mean - half,
            ci_high: mean + half,
            degenerate: count < 2,
            median,
            median_low: v[lo],
            median_high: v[hi],
        }
    }
}

/// Zero-based ranks `(j, count − 1 − j)` with the largest `j` such that
/// `P(Bin(count, 1/2) ≤ j) ≤ 0.025`.
fn median_rank_interval(count: usize) -> (usize, usize) {
    let ln_half = 0.5f64.ln() * count as f64;
    let mut ln_choose = 0.0f64;
    let mut cdf = 0.0;
    let mut j = 0;
    for i in 0..count {
        let p = (ln_choose + ln_half).exp();
        if cdf + p > 0.025 {
            break;
        }
        cdf += p;
        j = i + 1;
        ln_choose += ((count - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    let j = j.saturating_sub(1).min((count - 1) / 2);
    (j, count - 1 - j)
}

/// Aggregate of one `(mode, gso, filter, n, p_re)` group.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub mode: Mode,
    pub gso: Gso,
    pub filter: String,
    pub n: usize,
    pub p_re: f64,
    pub errors: usize,
    pub distance: Stats,
    pub total_mean: f64,
    /// Fraction of successful trials meeting the common-gap condition.
    pub gap_ok_rate: f64,
}

pub fn summarize(t: &ResultTable) -> Vec<SummaryRow> {
    let mut groups: Vec<(&ResultRow, Vec<&ResultRow>)> = Vec::new();
    for r in &t.rows {
        match groups.last_mut() {
            Some((head, members))
                if (head.mode, head.gso, &head.filter, head.n)
                    == (r.mode, r.gso, &r.filter, r.n)
                    && head.p_re.to_bits() == r.p_re.to_bits() =>
            {
                members.push(r)
            }
            _ => groups.push((r, vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|(head, members)| {
            let ok: Vec<&ResultRow> = members
                .iter()
                .copied()
                .filter(|r| r.error.is_none())
                .collect();
            let gap = ok.iter().filter(|r| r.gap_ok).count();
            SummaryRow {
                mode: head.mode,
                gso: head.gso,
                filter: head.filter.clone(),
                n: head.n,
                p_re: head.p_re,
                errors: members.len() - ok.len(),
                distance: Stats::of(ok.iter().map(|r| r.distance)),
                total_mean: Stats::of(ok.iter().map(|r| r.total)).mean,
                gap_ok_rate: if ok.is_empty() {
                    f64::NAN
                } else {
                    gap as f64 / ok.len() as f64
                },
            }
        })
        .collect()
}

/// Per-`(n, p_re)` aggregate of the drift columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencySummary {
    pub n: usize,
    pub p_re: f64,
    pub errors: usize,
    pub vec_drift: Stats,
    pub eig_drift: Stats,
    pub proj_drift: Stats,
    pub lnorm_diff: Stats,
}

pub fn summarize_consistency(t: &ConsistencyTable) -> Vec<ConsistencySummary> {
    let mut keys: Vec<(usize, f64)> = Vec::new();
    for r in &t.rows {
        if !keys
            .iter()
            .any(|&(n, p)| n == r.n && p.to_bits() == r.p_re.to_bits())
        {
            keys.push((r.n, r.p_re));
        }
    }
    keys.into_iter()
        .map(|(n, p_re)| {
            let members: Vec<&ConsistencyRow> = t
                .rows
                .iter()
                .filter(|r| r.n == n && r.p_re.to_bits() == p_re.to_bits())
                .collect();
            let ok: Vec<&ConsistencyRow> = members
                .iter()
                .copied()
                .filter(|r| r.error.is_none())
                .collect();
            let col = |f: fn(&ConsistencyRow) -> f64| Stats::of(ok.iter().map(|r| f(r)));
            ConsistencySummary {
                n,
                p_re,
                errors: members.len() - ok.len(),
                vec_drift: col(|r| r.vec_drift),
                eig_drift: col(|r| r.eig_drift),
                proj_drift: col(|r| r.proj_drift),
                lnorm_diff: col(|r| r.lnorm_diff),
            }
        })
        .collect()
}

const STATS_SUFFIXES: [&str; 8] = [
    "mean",
    "std",
    "ci_low",
    "ci_high",
    "degenerate_ci",
    "median",
    "median_low",
    "median_high",
];

fn stats_header(prefix: &str) -> Vec<String> {
    STATS_SUFFIXES
        .iter()
        .map(|s| format!("{prefix}_{s}"))
        .collect()
}

fn stats_fields(s: &Stats) -> Vec<String> {
    vec![
        format_f64(s.mean),
        format_f64(s.std),
        format_f64(s.ci_low),
        format_f64(s.ci_high),
        s.degenerate.to_string(),
        format_f64(s.median),
        format_f64(s.median_low),
        format_f64(s.median_high),
    ]
}

fn write_records(path: &Path, header: Vec<String>, rows: Vec<Vec<String>>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    w.into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?
        .flush()
        .map_err(|e| Error::io(path, e))
}

pub fn write_summary_csv(rows: &[SummaryRow], path: impl AsRef<Path>) -> Result<()> {
    let mut header: Vec<String> = ["mode", "gso", "filter", "n", "p_re", "trials", "errors"]
        .map(String::from)
        .to_vec();
    header.extend(stats_header("distance"));
    header.extend(["total_mean", "gap_ok_rate"].map(String::from));
    let body = rows
        .iter()
        .map(|r| {
            let mut f = vec![
                r.mode.to_string(),
                r.gso.to_string(),
                r.filter.clone(),
                r.n.to_string(),
                format_f64(r.p_re),
                r.distance.count.to_string(),
                r.errors.to_string(),
            ];
            f.extend(stats_fields(&r.distance));
            f.push(format_f64(r.total_mean));
            f.push(format_f64(r.gap_ok_rate));
            f
        })
        .collect();
    write_records(path.as_ref(), header, body)
}

pub fn write_consistency_summary_csv(
    rows: &[ConsistencySummary],
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut header: Vec<String> = ["n", "p_re", "trials", "errors"].map(String::from).to_vec();
    for m in ["vec_drift", "eig_drift", "proj_drift", "lnorm_diff"] {
        header.extend(stats_header(m));
    }
    let body = rows
        .iter()
        .map(|r| {
            let mut f = vec![
                r.n.to_string(),
                format_f64(r.p_re),
                r.vec_drift.count.to_string(),
                r.errors.to_string(),
            ];
            for s in [&r.vec_drift, &r.eig_drift, &r.proj_drift, &r.lnorm_diff] {
                f.extend(stats_fields(s));
            }
            f
        })
        .collect();
    write_records(path.as_ref(), header, body)
}
