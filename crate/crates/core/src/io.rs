//! CSV formats for per-session angular momentum records and time series.
//!
//! Session files have the header
//! `treatment,a,session,L12,L13,L14,L15,L23,L24,L25,L34,L35,L45`.
//! Time-series files have a `t` column followed by counts `n1..n5`,
//! frequencies `x1..x5`, or both; `# key=value` lines before the header carry
//! `population`, `a` and `seed`.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{GameSpec, SimplexPoint};
use crate::sim::{SeriesMeta, TimeSeries};
use crate::subspace::{pair_label, SubspaceVector, N_STRATEGIES, N_SUBSPACES};

/// Points whose components miss the simplex by more than this are rejected.
pub const TIMESERIES_SIMPLEX_TOL: f64 = 1e-6;

const A_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Treatment {
    Tr1,
    Tr2,
    Tr3,
    Tr4,
    Tr5,
}

impl Treatment {
    pub const ALL: [Treatment; 5] = [Self::Tr1, Self::Tr2, Self::Tr3, Self::Tr4, Self::Tr5];

    /// Canonical payoff parameter. Treatment 3 uses `sqrt(5) - 2` to three places.
    pub fn a(self) -> f64 {
        match self {
            Self::Tr1 => -4.236,
            Self::Tr2 => -0.618,
            Self::Tr3 => 0.236,
            Self::Tr4 => 1.618,
            Self::Tr5 => 4.236,
        }
    }

    /// Treatment 3 is also quoted as `0.234`.
    pub fn accepts_a(self, a: f64) -> bool {
        (a - self.a()).abs() <= A_TOL || (self == Self::Tr3 && (a - 0.234).abs() <= A_TOL)
    }

    pub fn from_a(a: f64) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.accepts_a(a))
    }

    pub fn spec(self) -> GameSpec {
        GameSpec::new(self.a())
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Treatment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tr{}", self.index() + 1)
    }
}

impl FromStr for Treatment {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tr1" => Ok(Self::Tr1),
            "tr2" => Ok(Self::Tr2),
            "tr3" => Ok(Self::Tr3),
            "tr4" => Ok(Self::Tr4),
            "tr5" => Ok(Self::Tr5),
            other => Err(format!("unknown treatment {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SessionRecord {
    pub treatment: Treatment,
    pub a: f64,
    pub session_id: u32,
    pub l: SubspaceVector,
}

fn schema(source: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Schema {
        source_name: source.to_string(),
        line,
        message: message.into(),
    }
}

fn parse_finite(source: &str, line: usize, column: &str, raw: &str) -> Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| schema(source, line, format!("{column}: {raw:?} is not a number")))?;
    if !v.is_finite() {
        return Err(schema(source, line, format!("{column}: value is not finite")));
    }
    Ok(v)
}

fn session_header() -> Vec<String> {
    let mut h: Vec<String> = ["treatment", "a", "session"].iter().map(|s| s.to_string()).collect();
    h.extend((0..N_SUBSPACES).map(|i| format!("L{}", pair_label(i))));
    h
}

/// Parse session records from any reader. An empty input is an empty list.
pub fn parse_sessions<R: Read>(reader: R, source: &str) -> Result<Vec<SessionRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Ok(Vec::new());
    }
    let expected = session_header();
    let mut columns = Vec::with_capacity(expected.len());
    for name in &expected {
        let pos = headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| schema(source, 1, format!("missing column {name}")))?;
        columns.push(pos);
    }

    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != headers.len() {
            let missing = columns
                .iter()
                .zip(&expected)
                .find(|(c, _)| **c >= record.len())
                .map(|(_, name)| name.as_str());
            return Err(schema(
                source,
                line,
                match missing {
                    Some(name) => format!(
                        "expected {} fields, found {}; missing value for {name}",
                        headers.len(),
                        record.len()
                    ),
                    None => format!("expected {} fields, found {}", headers.len(), record.len()),
                },
            ));
        }
        let treatment: Treatment = record[columns[0]]
            .parse()
            .map_err(|e: String| schema(source, line, e))?;
        let a = parse_finite(source, line, "a", &record[columns[1]])?;
        if !treatment.accepts_a(a) {
            return Err(schema(
                source,
                line,
                format!("a = {a} does not match {treatment} (a = {})", treatment.a()),
            ));
        }
        let session_id: u32 = record[columns[2]].parse().map_err(|_| {
            schema(
                source,
                line,
                format!("session: {:?} is not an integer", &record[columns[2]]),
            )
        })?;
        let mut l = [0.0; N_SUBSPACES];
        for (k, v) in l.iter_mut().enumerate() {
            *v = parse_finite(source, line, &expected[3 + k], &record[columns[3 + k]])?;
        }
        out.push(SessionRecord {
            treatment,
            a,
            session_id,
            l: SubspaceVector(l),
        });
    }
    Ok(out)
}

pub fn load_session_csv(path: &Path) -> Result<Vec<SessionRecord>> {
    let file = fs::File::open(path)?;
    parse_sessions(file, &path.display().to_string())
}

pub fn write_sessions<W: Write>(writer: W, records: &[SessionRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(session_header())?;
    for r in records {
        let mut row = vec![r.treatment.to_string(), r.a.to_string(), r.session_id.to_string()];
        row.extend(r.l.iter().map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_session_csv(path: &Path, records: &[SessionRecord]) -> Result<()> {
    write_sessions(fs::File::create(path)?, records)
}

/// Parse a time series. With counts only, a `# population=N` line is required.
pub fn parse_timeseries(text: &str, source: &str) -> Result<TimeSeries> {
    let mut population: Option<u32> = None;
    let mut a = f64::NAN;
    let mut seed = None;
    for (i, line) in text.lines().enumerate() {
        let Some(rest) = line.trim().strip_prefix('#') else {
            break;
        };
        let Some((key, value)) = rest.split_once('=') else {
            continue;
        };
        let value = value.trim();
        let bad = || schema(source, i + 1, format!("bad {} value {value:?}", key.trim()));
        match key.trim() {
            "population" => population = Some(value.parse().map_err(|_| bad())?),
            "a" => a = value.parse().map_err(|_| bad())?,
            "seed" => seed = Some(value.parse().map_err(|_| bad())?),
            _ => {}
        }
    }

    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let t_col = find("t").ok_or_else(|| schema(source, 1, "missing column t"))?;
    let n_cols: Option<Vec<usize>> = (1..=N_STRATEGIES).map(|k| find(&format!("n{k}"))).collect();
    let x_cols: Option<Vec<usize>> = (1..=N_STRATEGIES).map(|k| find(&format!("x{k}"))).collect();
    if n_cols.is_none() && x_cols.is_none() {
        return Err(schema(source, 1, "need columns x1..x5 or n1..n5"));
    }
    if x_cols.is_none() && population.is_none() {
        return Err(schema(source, 1, "count columns need a '# population=N' line"));
    }

    let mut times = Vec::new();
    let mut points = Vec::new();
    let mut counts = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let ctx = |msg: String| schema(source, line, format!("row {}: {msg}", row + 1));
        let t = parse_finite(source, line, "t", &record[t_col])?;
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(ctx(format!("t = {t} does not increase (previous {prev})")));
            }
        }
        times.push(t);

        let c = match &n_cols {
            Some(cols) => {
                let mut c = [0u32; N_STRATEGIES];
                for (k, (ci, &col)) in c.iter_mut().zip(cols).enumerate() {
                    *ci = record[col]
                        .parse()
                        .map_err(|_| ctx(format!("n{}: {:?} is not a count", k + 1, &record[col])))?;
                }
                if let Some(p) = population {
                    let total: u32 = c.iter().sum();
                    if total != p {
                        return Err(ctx(format!("counts sum to {total}, population is {p}")));
                    }
                }
                Some(c)
            }
            None => None,
        };
        let x = match &x_cols {
            Some(cols) => {
                let mut x = [0.0; N_STRATEGIES];
                for (k, (xi, &col)) in x.iter_mut().zip(cols).enumerate() {
                    *xi = parse_finite(source, line, &format!("x{}", k + 1), &record[col])?;
                }
                x
            }
            None => {
                let c = c.expect("count columns present");
                let total: u32 = c.iter().sum();
                c.map(|v| v as f64 / total as f64)
            }
        };
        let point = SimplexPoint::with_tolerance(x, TIMESERIES_SIMPLEX_TOL).map_err(|e| ctx(e.to_string()))?;
        if let Some(c) = c {
            let total: u32 = c.iter().sum();
            if x.iter()
                .zip(&c)
                .any(|(xi, ci)| (xi - *ci as f64 / total as f64).abs() > TIMESERIES_SIMPLEX_TOL)
            {
                return Err(ctx("frequencies disagree with counts".into()));
            }
            counts.push(c);
        }
        points.push(point);
    }

    let dt = if times.len() >= 2 { times[1] - times[0] } else { 1.0 };
    Ok(TimeSeries {
        points,
        dt,
        counts: n_cols.map(|_| counts),
        meta: SeriesMeta {
            a,
            seed,
            policy: None,
            agent_payoffs: Vec::new(),
        },
    })
}

pub fn load_timeseries_csv(path: &Path) -> Result<TimeSeries> {
    let text = fs::read_to_string(path)?;
    parse_timeseries(&text, &path.display().to_string())
}

/// Write `t` plus counts (when present) and frequencies. Values use the
/// shortest round-trip float representation, so re-reading is bit-exact.
pub fn write_timeseries<W: Write>(mut writer: W, series: &TimeSeries) -> Result<()> {
    if series.meta.a.is_finite() {
        writeln!(writer, "# a={}", series.meta.a)?;
    }
    if let Some(seed) = series.meta.seed {
        writeln!(writer, "# seed={seed}")?;
    }
    let population = series
        .counts
        .as_ref()
        .and_then(|c| c.first())
        .map(|c| c.iter().sum::<u32>());
    if let Some(p) = population {
        writeln!(writer, "# population={p}")?;
    }
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["t".to_string()];
    if series.counts.is_some() {
        header.extend((1..=N_STRATEGIES).map(|k| format!("n{k}")));
    }
    header.extend((1..=N_STRATEGIES).map(|k| format!("x{k}")));
    w.write_record(&header)?;
    for (i, p) in series.points.iter().enumerate() {
        let mut row = vec![series.time(i).to_string()];
        if let Some(counts) = &series.counts {
            row.extend(counts[i].iter().map(|c| c.to_string()));
        }
        row.extend(p.as_array().iter().map(|x| x.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_timeseries_csv(path: &Path, series: &TimeSeries) -> Result<()> {
    write_timeseries(fs::File::create(path)?, series)
}
