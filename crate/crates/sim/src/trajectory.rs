//! `trajectory.csv`: one row per agent per step.
//!
//! The file opens with `#`-prefixed `key=value` header lines, followed by an
//! RFC-4180 table. Coordinates are written with 17 significant digits so
//! that every double round-trips exactly.

use std::fmt;
use std::io::{self, Write};

use centerstone_core::consensus::{Role, StepReport, StepStatus};

pub const FORMAT: &str = "centerstone/trajectory@1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryHeader {
    pub config_sha256: String,
    pub seed: u64,
    pub method: String,
    pub build: String,
    pub dimension: usize,
}

/// Per-row outcome column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Updated,
    NoGuarantee,
    Failed,
    /// Terminal step: recorded but not updated.
    Final,
    Adversary,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Updated => "updated",
            RowStatus::NoGuarantee => "no_guarantee",
            RowStatus::Failed => "failed",
            RowStatus::Final => "final",
            RowStatus::Adversary => "adversary",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "updated" => RowStatus::Updated,
            "no_guarantee" => RowStatus::NoGuarantee,
            "failed" => RowStatus::Failed,
            "final" => RowStatus::Final,
            "adversary" => RowStatus::Adversary,
            _ => return None,
        })
    }

    pub fn is_flagged(self) -> bool {
        matches!(self, RowStatus::NoGuarantee | RowStatus::Failed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub t: u64,
    pub agent: usize,
    pub normal: bool,
    pub position: Vec<f64>,
    pub safe_point: Option<Vec<f64>>,
    pub status: RowStatus,
    /// Monitor columns; `None` on adversary rows.
    pub n_neighbors: Option<usize>,
    pub n_adversarial: Option<usize>,
    pub bound: Option<usize>,
    pub resilient: Option<bool>,
    pub in_hull: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryLog {
    pub header: TrajectoryHeader,
    pub rows: Vec<TrajectoryRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for LogError {}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "NA".to_owned(), |v| v.to_string())
}

fn flag(v: Option<bool>) -> String {
    opt(v.map(u8::from))
}

impl TrajectoryRow {
    /// Rows for one step, in agent order.
    pub fn from_report(report: &StepReport, roles: &[Role]) -> Vec<TrajectoryRow> {
        report
            .agents
            .iter()
            .zip(roles)
            .enumerate()
            .map(|(agent, (a, role))| {
                let normal = role.is_normal();
                let status = match (normal, a.status) {
                    (false, _) => RowStatus::Adversary,
                    (true, None) => RowStatus::Final,
                    (true, Some(StepStatus::Updated)) => RowStatus::Updated,
                    (true, Some(StepStatus::NoGuarantee)) => RowStatus::NoGuarantee,
                    (true, Some(StepStatus::Failed)) => RowStatus::Failed,
                };
                let m = |v| normal.then_some(v);
                TrajectoryRow {
                    t: report.t,
                    agent,
                    normal,
                    position: a.position.coords().to_vec(),
                    safe_point: a.safe_point.as_ref().map(|p| p.coords().to_vec()),
                    status,
                    n_neighbors: m(a.n_neighbors),
                    n_adversarial: m(a.n_adversarial),
                    bound: m(a.bound),
                    resilient: normal.then_some(a.resilient),
                    in_hull: normal.then_some(a.in_hull),
                }
            })
            .collect()
    }
}

fn column_names(d: usize) -> Vec<String> {
    let mut cols = vec!["t".to_owned(), "agent".to_owned(), "role".to_owned()];
    cols.extend((0..d).map(|k| format!("x{k}")));
    cols.extend((0..d).map(|k| format!("s{k}")));
    for c in [
        "status",
        "n_neighbors",
        "n_adversarial",
        "bound",
        "resilient",
        "in_hull",
    ] {
        cols.push(c.to_owned());
    }
    cols
}

/// Streams a log: header first, then rows as they are produced.
pub struct TrajectoryWriter<W: Write> {
    inner: csv::Writer<W>,
    dim: usize,
}

impl<W: Write> TrajectoryWriter<W> {
    pub fn new(mut out: W, header: &TrajectoryHeader) -> io::Result<Self> {
        writeln!(out, "# format={FORMAT}")?;
        writeln!(out, "# config_sha256={}", header.config_sha256)?;
        writeln!(out, "# seed={}", header.seed)?;
        writeln!(out, "# method={}", header.method)?;
        writeln!(out, "# build={}", header.build)?;
        writeln!(out, "# dimension={}", header.dimension)?;
        let mut inner = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(out);
        inner.write_record(column_names(header.dimension))?;
        Ok(TrajectoryWriter {
            inner,
            dim: header.dimension,
        })
    }

    pub fn write_row(&mut self, row: &TrajectoryRow) -> io::Result<()> {
        let mut rec = Vec::with_capacity(9 + 2 * self.dim);
        rec.push(row.t.to_string());
        rec.push(row.agent.to_string());
        rec.push(if row.normal { "normal" } else { "adversarial" }.to_owned());
        rec.extend(row.position.iter().map(|&x| num(x)));
        match &row.safe_point {
            Some(s) => rec.extend(s.iter().map(|&x| num(x))),
            None => rec.extend((0..self.dim).map(|_| "NA".to_owned())),
        }
        rec.push(row.status.as_str().to_owned());
        rec.push(opt(row.n_neighbors));
        rec.push(opt(row.n_adversarial));
        rec.push(opt(row.bound));
        rec.push(flag(row.resilient));
        rec.push(flag(row.in_hull));
        self.inner.write_record(&rec)?;
        Ok(())
    }

    pub fn finish(self) -> io::Result<W> {
        self.inner.into_inner().map_err(|e| e.into_error())
    }
}

impl std::fmt::Display for TrajectoryLog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let buf = self.write(Vec::new()).map_err(|_| std::fmt::Error)?;
        f.write_str(std::str::from_utf8(&buf).map_err(|_| std::fmt::Error)?)
    }
}

impl TrajectoryLog {
    pub fn write<W: Write>(&self, out: W) -> io::Result<W> {
        let mut w = TrajectoryWriter::new(out, &self.header)?;
        for r in &self.rows {
            w.write_row(r)?;
        }
        w.finish()
    }

    pub fn parse(src: &str) -> Result<TrajectoryLog, LogError> {
        let mut fields: Vec<(String, String)> = Vec::new();
        let mut header_lines = 0;
        for (i, line) in src.lines().enumerate() {
            let Some(rest) = line.strip_prefix('#') else {
                break;
            };
            header_lines = i + 1;
            let (k, v) = rest.trim().split_once('=').ok_or(LogError {
                line: i + 1,
                message: "header lines must read `# key=value`".to_owned(),
            })?;
            fields.push((k.trim().to_owned(), v.trim().to_owned()));
        }
        let get = |key: &str| -> Result<&str, LogError> {
            fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or(LogError {
                    line: header_lines.max(1),
                    message: format!("missing header field `{key}`"),
                })
        };
        let format = get("format")?;
        if format != FORMAT {
            return Err(LogError {
                line: 1,
                message: format!("unsupported log format {format:?}"),
            });
        }
        let bad_header = |key: &str| LogError {
            line: header_lines.max(1),
            message: format!("malformed header field `{key}`"),
        };
        let header = TrajectoryHeader {
            config_sha256: get("config_sha256")?.to_owned(),
            seed: get("seed")?.parse().map_err(|_| bad_header("seed"))?,
            method: get("method")?.to_owned(),
            build: get("build")?.to_owned(),
            dimension: get("dimension")?
                .parse()
                .map_err(|_| bad_header("dimension"))?,
        };
        let d = header.dimension;
        let expected = column_names(d);

        // Byte offset of the first line after the header block.
        let body = src
            .split_inclusive('\n')
            .take(header_lines)
            .map(str::len)
            .sum::<usize>();
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(&src.as_bytes()[body..]);
        let cols = rdr.headers().map_err(|e| LogError {
            line: header_lines + 1,
            message: e.to_string(),
        })?;
        if cols.iter().ne(expected.iter().map(String::as_str)) {
            return Err(LogError {
                line: header_lines + 1,
                message: format!("expected columns {}", expected.join(",")),
            });
        }

        let mut rows = Vec::new();
        // Records never span lines: the column line follows the header block.
        for (k, rec) in rdr.records().enumerate() {
            let line = header_lines + 2 + k;
            let rec = rec.map_err(|e| LogError {
                line,
                message: e.to_string(),
            })?;
            rows.push(parse_row(&rec, d).map_err(|message| LogError { line, message })?);
        }
        Ok(TrajectoryLog { header, rows })
    }
}

fn parse_row(rec: &csv::StringRecord, d: usize) -> Result<TrajectoryRow, String> {
    let field = |i: usize| rec.get(i).ok_or_else(|| format!("missing column {i}"));
    let float = |i: usize| -> Result<f64, String> {
        let s = field(i)?;
        let v: f64 = s.parse().map_err(|_| format!("bad number {s:?}"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite number {s:?}"))
        }
    };
    fn maybe<T: std::str::FromStr>(s: &str) -> Result<Option<T>, String> {
        if s == "NA" {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|_| format!("bad value {s:?}"))
        }
    }
    let t = field(0)?.parse().map_err(|_| "bad step".to_owned())?;
    let agent = field(1)?.parse().map_err(|_| "bad agent id".to_owned())?;
    let normal = match field(2)? {
        "normal" => true,
        "adversarial" => false,
        other => return Err(format!("bad role {other:?}")),
    };
    let position = (0..d).map(|k| float(3 + k)).collect::<Result<Vec<_>, _>>()?;
    let safe_point = if field(3 + d)? == "NA" {
        if (0..d).any(|k| rec.get(3 + d + k) != Some("NA")) {
            return Err("safe point must be all NA or all numbers".to_owned());
        }
        None
    } else {
        Some((0..d).map(|k| float(3 + d + k)).collect::<Result<Vec<_>, _>>()?)
    };
    let base = 3 + 2 * d;
    let status = RowStatus::parse(field(base)?).ok_or("bad status")?;
    let to_flag = |v: Option<u8>| -> Result<Option<bool>, String> {
        match v {
            None => Ok(None),
            Some(0) => Ok(Some(false)),
            Some(1) => Ok(Some(true)),
            Some(_) => Err("flags must be 0, 1 or NA".to_owned()),
        }
    };
    Ok(TrajectoryRow {
        t,
        agent,
        normal,
        position,
        safe_point,
        status,
        n_neighbors: maybe(field(base + 1)?)?,
        n_adversarial: maybe(field(base + 2)?)?,
        bound: maybe(field(base + 3)?)?,
        resilient: to_flag(maybe(field(base + 4)?)?)?,
        in_hull: to_flag(maybe(field(base + 5)?)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TrajectoryLog {
        TrajectoryLog {
            header: TrajectoryHeader {
                config_sha256: "ab".repeat(32),
                seed: 9,
                method: "centerpoint".to_owned(),
                build: "test".to_owned(),
                dimension: 2,
            },
            rows: vec![
                TrajectoryRow {
                    t: 0,
                    agent: 0,
                    normal: true,
                    position: vec![0.1, -1.0 / 3.0],
                    safe_point: Some(vec![1e-300, -0.0]),
                    status: RowStatus::Updated,
                    n_neighbors: Some(4),
                    n_adversarial: Some(1),
                    bound: Some(1),
                    resilient: Some(true),
                    in_hull: Some(true),
                },
                TrajectoryRow {
                    t: 0,
                    agent: 1,
                    normal: false,
                    position: vec![std::f64::consts::PI, 2.0],
                    safe_point: None,
                    status: RowStatus::Adversary,
                    n_neighbors: None,
                    n_adversarial: None,
                    bound: None,
                    resilient: None,
                    in_hull: None,
                },
            ],
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let log = sample();
        let text = log.to_string();
        let back = TrajectoryLog::parse(&text).unwrap();
        assert_eq!(back, log);
        assert_eq!(back.rows[0].safe_point.as_ref().unwrap()[1].to_bits(), (-0.0f64).to_bits());
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn parse_errors_have_lines() {
        let text = sample().to_string().replace(",adversarial,", ",robot,");
        let err = TrajectoryLog::parse(&text).unwrap_err();
        assert_eq!(err.line, 9, "{err}");
        let err = TrajectoryLog::parse("t,agent\n").unwrap_err();
        assert!(err.message.contains("format"));
    }
}
