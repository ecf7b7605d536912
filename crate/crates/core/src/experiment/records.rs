use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::ExperimentKind;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "kind",
    "trial",
    "seed",
    "q",
    "n",
    "k",
    "L",
    "epsilon",
    "t",
    "measure_name",
    "measure_value",
    "pass",
];

/// One measured quantity of one trial; one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub kind: ExperimentKind,
    pub trial: u64,
    pub seed: u64,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub epsilon: Option<f64>,
    pub t: Option<usize>,
    pub measure_name: String,
    pub measure_value: f64,
    pub pass: Option<bool>,
}

/// 17 significant digits, which round-trips every f64.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl TrialRecord {
    fn fields(&self) -> [String; 12] {
        [
            self.kind.as_str().to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            self.q.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            opt(self.l),
            self.epsilon.map(fmt_float).unwrap_or_default(),
            opt(self.t),
            self.measure_name.clone(),
            fmt_float(self.measure_value),
            opt(self.pass),
        ]
    }

    fn from_fields(row: &csv::StringRecord) -> Result<Self> {
        if row.len() != CSV_HEADER.len() {
            return Err(Error::Parse(format!("expected 12 fields, found {}", row.len())));
        }
        fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
            s.parse().map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
        }
        fn opt_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<Option<T>> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s, what).map(Some)
            }
        }
        Ok(TrialRecord {
            kind: ExperimentKind::parse(&row[0])?,
            trial: num(&row[1], "trial")?,
            seed: num(&row[2], "seed")?,
            q: num(&row[3], "q")?,
            n: num(&row[4], "n")?,
            k: num(&row[5], "k")?,
            l: opt_num(&row[6], "L")?,
            epsilon: opt_num(&row[7], "epsilon")?,
            t: opt_num(&row[8], "t")?,
            measure_name: row[9].to_string(),
            measure_value: num(&row[10], "measure_value")?,
            pass: opt_num(&row[11], "pass")?,
        })
    }

    /// Identifies the aggregation cell a record belongs to.
    fn cell_key(&self) -> (u32, usize, usize, Option<usize>, Option<u64>, Option<usize>, &str) {
        (
            self.q,
            self.n,
            self.k,
            self.l,
            self.epsilon.map(f64::to_bits),
            self.t,
            &self.measure_name,
        )
    }
}

/// Writes the header and one row per record, LF-terminated.
pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    rdr.records()
        .map(|row| TrialRecord::from_fields(&row?))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Quantiles {
    /// Linear interpolation between order statistics.
    pub fn of(values: &[f64]) -> Self {
        let mut v = values.to_vec();
        v.sort_by(|a, b| a.total_cmp(b));
        let at = |p: f64| {
            if v.is_empty() {
                return f64::NAN;
            }
            let h = p * (v.len() - 1) as f64;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        };
        Quantiles {
            min: at(0.0),
            q25: at(0.25),
            median: at(0.5),
            q75: at(0.75),
            max: at(1.0),
        }
    }
}

/// Aggregates of one measure over the trials of one parameter cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub params: serde_json::Value,
    pub n_trials: usize,
    pub mean: f64,
    pub stderr: f64,
    pub quantiles: Quantiles,
    /// Fraction of records with `pass = true`, when the measure has a pass flag.
    pub success_prob: Option<f64>,
    #[serde(default)]
    pub skipped: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl CellSummary {
    pub fn skipped(params: serde_json::Value, reason: String) -> Self {
        CellSummary {
            params,
            n_trials: 0,
            mean: f64::NAN,
            stderr: f64::NAN,
            quantiles: Quantiles::of(&[]),
            success_prob: None,
            skipped: true,
            flags: vec![reason],
        }
    }
}

/// Groups records by (q, n, k, L, ε, t, measure) in order of first
/// appearance and summarizes each group, summing in record order.
pub fn aggregate(records: &[TrialRecord]) -> Vec<CellSummary> {
    let mut keys: Vec<_> = Vec::new();
    let mut groups: Vec<Vec<&TrialRecord>> = Vec::new();
    for r in records {
        match keys.iter().position(|k| *k == r.cell_key()) {
            Some(i) => groups[i].push(r),
            None => {
                keys.push(r.cell_key());
                groups.push(vec![r]);
            }
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let first = g[0];
            let values: Vec<f64> = g.iter().map(|r| r.measure_value).collect();
            let m = values.len() as f64;
            let mean = values.iter().sum::<f64>() / m;
            let stderr = if values.len() > 1 {
                let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
                (var / m).sqrt()
            } else {
                0.0
            };
            let flagged: Vec<bool> = g.iter().filter_map(|r| r.pass).collect();
            let success_prob = (!flagged.is_empty())
                .then(|| flagged.iter().filter(|&&p| p).count() as f64 / flagged.len() as f64);
            CellSummary {
                params: serde_json::json!({
                    "q": first.q,
                    "n": first.n,
                    "k": first.k,
                    "L": first.l,
                    "epsilon": first.epsilon,
                    "t": first.t,
                    "measure": first.measure_name,
                }),
                n_trials: values.len(),
                mean,
                stderr,
                quantiles: Quantiles::of(&values),
                success_prob,
                skipped: false,
                flags: Vec::new(),
            }
        })
        .collect()
}

/// Result of one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config_echo: serde_json::Value,
    pub cells: Vec<CellSummary>,
    pub summary: serde_json::Value,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl SweepResult {
    pub(crate) fn new(
        config: &impl Serialize,
        records: Vec<TrialRecord>,
        skipped: Vec<CellSummary>,
        summary: serde_json::Value,
    ) -> Result<Self> {
        let mut cells = aggregate(&records);
        cells.extend(skipped);
        Ok(SweepResult {
            config_echo: serde_json::to_value(config)?,
            cells,
            summary,
            records,
        })
    }

    pub fn csv_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        write_csv(&self.records, &mut buf)?;
        Ok(buf)
    }

    /// Writes the CSV to `path` and the JSON summary next to it.
    pub fn persist(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.csv_bytes()?)?;
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path.with_extension("json"), json + "\n")?;
        Ok(())
    }

    pub fn cell(&self, measure: &str) -> impl Iterator<Item = &CellSummary> {
        let measure = measure.to_string();
        self.cells
            .iter()
            .filter(move |c| c.params.get("measure").and_then(|m| m.as_str()) == Some(measure.as_str()))
    }
}
