//! Matrix files: headerless CSV or `{"n": .., "rows": [[..], ..]}` JSON.
//!
//! The format is detected from the first non-whitespace byte (`{` means
//! JSON). Every failure — syntax, ragged rows, negatives, NaN — is reported
//! as [`Error::Parse`] so callers can treat bad input uniformly.

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn detect(text: &str) -> Format {
        match text.trim_start().as_bytes().first() {
            Some(b'{') => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// A parsed matrix together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    /// `-` for standard input.
    pub path: PathBuf,
    pub format: Format,
    pub parsed: Matrix,
    /// The raw bytes, kept for digests.
    pub raw: Vec<u8>,
}

impl MatrixFile {
    /// Reads `path`, or standard input when `path` is `-`.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let raw = if path == Path::new("-") {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            buf
        } else {
            std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        };
        let text = std::str::from_utf8(&raw)
            .map_err(|e| Error::Parse(format!("{}: not UTF-8: {e}", path.display())))?;
        let format = Format::detect(text);
        let parsed = parse(text, format)
            .map_err(|e| Error::Parse(format!("{}: {}", path.display(), strip(e))))?;
        Ok(Self {
            path: path.to_path_buf(),
            format,
            parsed,
            raw,
        })
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Parse(m) => m,
        other => other.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    n: usize,
    rows: Vec<Vec<f64>>,
}

pub fn parse(text: &str, format: Format) -> Result<Matrix> {
    let result = match format {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    };
    result.map_err(|e| Error::Parse(describe(e)))
}

/// Messages for file input use 1-based row and column numbers.
fn describe(e: Error) -> String {
    match e {
        Error::Parse(m) => m,
        Error::RaggedRow {
            row,
            expected,
            found,
        } => {
            format!("row {} has {found} entries, expected {expected}", row + 1)
        }
        Error::InvalidEntry { row, col, value } => format!(
            "row {}, column {}: {value} is not a finite nonnegative number",
            row + 1,
            col + 1
        ),
        Error::Empty => "no rows".to_string(),
        other => other.to_string(),
    }
}

pub fn parse_auto(text: &str) -> Result<Matrix> {
    parse(text, Format::detect(text))
}

fn parse_json(text: &str) -> Result<Matrix> {
    let m: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if m.rows.len() != m.n {
        return Err(Error::Parse(format!(
            "\"n\" is {} but {} rows given",
            m.n,
            m.rows.len()
        )));
    }
    Matrix::from_rows(&m.rows)
}

fn parse_csv(text: &str) -> Result<Matrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!(
                        "row {}, column {}: {field:?} is not a number",
                        i + 1,
                        j + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Matrix::from_rows(&rows)
}

/// Compact JSON; entries use the shortest representation that parses back
/// to the same bits.
pub fn to_json(a: &Matrix) -> String {
    let m = JsonMatrix {
        n: a.n(),
        rows: a.to_rows(),
    };
    serde_json::to_string(&m).expect("finite floats always serialize")
}

pub fn to_csv(a: &Matrix) -> String {
    let mut out = String::new();
    for row in a.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_basic() {
        let a = parse_auto("0, 8, 1\n3,0,2\n4,1,1\n").unwrap();
        assert_eq!(
            a.to_rows(),
            vec![
                vec![0.0, 8.0, 1.0],
                vec![3.0, 0.0, 2.0],
                vec![4.0, 1.0, 1.0]
            ]
        );
        assert_eq!(parse_auto("7").unwrap().get(0, 0), 7.0);
    }

    #[test]
    fn json_basic() {
        let a = parse_auto(r#" {"n": 2, "rows": [[1, 2], [0.5, 1]]}"#).unwrap();
        assert_eq!(a.get(1, 0), 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "1,2\n3\n",
            "1,2,3\n4,5,6\n",
            "1,-2\n3,4\n",
            "1,NaN\n3,4\n",
            "1,x\n3,4\n",
            "",
            r#"{"n": 3, "rows": [[1, 2], [3, 4]]}"#,
            r#"{"n": 2, "rows": [[1, 2], [3]]}"#,
            r#"{"n": 1, "rows": [[-1]]}"#,
            r#"{"rows": [[1]]}"#,
        ] {
            assert!(matches!(parse_auto(text), Err(Error::Parse(_))), "{text:?}");
        }
    }

    #[test]
    fn round_trips_bit_exact() {
        let a = Matrix::from_rows(&[[0.1, 1.0 / 3.0], [f64::MIN_POSITIVE, 1e300]]).unwrap();
        assert_eq!(parse_auto(&to_json(&a)).unwrap(), a);
        assert_eq!(parse_auto(&to_csv(&a)).unwrap(), a);
        assert_eq!(to_json(&Matrix::identity(1)), r#"{"n":1,"rows":[[1.0]]}"#);
    }
}
