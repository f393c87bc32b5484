//! CSV and JSON emission of sweep rows.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::sim::config::OutputFormat;
use crate::sim::sweep::{Scenario, SweepRow};

pub const CSV_HEADER: &str =
    "n,scenario,sum_sp_utility,sum_user_utility,avg_bw_per_user,association_rate,trials,stderr_sp,stderr_user";

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_record(row: &SweepRow) -> [String; 9] {
    [
        row.n.to_string(),
        row.scenario.name().to_string(),
        row.sum_sp_utility.to_string(),
        row.sum_user_utility.to_string(),
        row.avg_bw_per_user.to_string(),
        row.association_rate.to_string(),
        row.trials.to_string(),
        row.stderr_sp.to_string(),
        row.stderr_user.to_string(),
    ]
}

/// Floats are written in their shortest exact form so that reading the
/// file back reproduces every value bit for bit.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn to_json_string(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"
}

/// Writes `rows` to `path`.
pub fn emit(rows: &[SweepRow], format: OutputFormat, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_error(path))?;
    let mut out = BufWriter::new(file);
    match format {
        OutputFormat::Csv => write_csv(rows, &mut out).map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })?,
        OutputFormat::Json => out.write_all(to_json_string(rows).as_bytes()).map_err(io_error(path))?,
    }
    out.flush().map_err(io_error(path))
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = r.headers().map_err(csv_err)?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Config {
            path: path.to_path_buf(),
            message: format!("unexpected header `{header}`"),
        });
    }
    let mut rows = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let bad = |field: &str| Error::Config {
            path: path.to_path_buf(),
            message: format!("row {}: bad `{field}`", line + 1),
        };
        let get = |i: usize| record.get(i).unwrap_or("");
        let float = |i: usize, name: &str| get(i).parse::<f64>().map_err(|_| bad(name));
        let count = |i: usize, name: &str| get(i).parse::<usize>().map_err(|_| bad(name));
        let scenario = match get(1) {
            "EUT" => Scenario::Eut,
            "PT" => Scenario::Pt,
            "PT_EXPANSION" => Scenario::PtExpansion,
            _ => return Err(bad("scenario")),
        };
        rows.push(SweepRow {
            n: count(0, "n")?,
            scenario,
            sum_sp_utility: float(2, "sum_sp_utility")?,
            sum_user_utility: float(3, "sum_user_utility")?,
            avg_bw_per_user: float(4, "avg_bw_per_user")?,
            association_rate: float(5, "association_rate")?,
            trials: count(6, "trials")?,
            stderr_sp: float(7, "stderr_sp")?,
            stderr_user: float(8, "stderr_user")?,
        });
    }
    Ok(rows)
}

pub fn read_json(path: &Path) -> Result<Vec<SweepRow>> {
    let text = std::fs::read_to_string(path).map_err(io_error(path))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read(path: &Path, format: OutputFormat) -> Result<Vec<SweepRow>> {
    match format {
        OutputFormat::Csv => read_csv(path),
        OutputFormat::Json => read_json(path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<SweepRow> {
        (0..30)
            .map(|i| SweepRow {
                n: 50 * (i / 3 + 1),
                scenario: Scenario::ALL[i % 3],
                sum_sp_utility: 1.0 / (i as f64 + 3.0),
                sum_user_utility: -0.1 * i as f64,
                avg_bw_per_user: 1e-7 * i as f64,
                association_rate: i as f64 / 30.0,
                trials: 20,
                stderr_sp: 0.0,
                stderr_user: std::f64::consts::PI,
            })
            .collect()
    }

    #[test]
    fn csv_layout() {
        let text = to_csv_string(&rows());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 31);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[3].starts_with("50,PT_EXPANSION,"));
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for format in [OutputFormat::Csv, OutputFormat::Json] {
            let path = dir.path().join(format!("rows.{format:?}"));
            emit(&rows(), format, &path).unwrap();
            assert_eq!(read(&path, format).unwrap(), rows());
        }
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let err = emit(&rows(), OutputFormat::Csv, Path::new("/nonexistent/dir/out.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.csv"));
    }
}
