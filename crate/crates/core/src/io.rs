//! CSV ingestion and export for matrices, series and memberships.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::clustering::Membership;
use crate::data::{default_names, Axis, LabeledMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvOptions {
    /// First record holds column names.
    pub has_header: bool,
    /// First field of every record is a row name.
    pub has_row_names: bool,
    /// Cell contents (after trimming) treated as missing.
    pub na_tokens: Vec<String>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            has_header: true,
            has_row_names: true,
            na_tokens: vec![String::new(), "NA".to_string()],
        }
    }
}

impl CsvOptions {
    fn is_na(&self, cell: &str) -> bool {
        let cell = cell.trim();
        self.na_tokens.iter().any(|t| t == cell)
    }
}

/// A parsed matrix plus non-fatal findings (duplicate names).
#[derive(Debug, Clone)]
pub struct Loaded<F> {
    pub matrix: LabeledMatrix<F>,
    pub warnings: Vec<String>,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(r)
}

pub fn load_matrix<F: Scalar>(path: impl AsRef<Path>, opts: &CsvOptions) -> Result<Loaded<F>> {
    read_matrix(open(path.as_ref())?, opts)
}

pub fn read_matrix<F: Scalar, R: Read>(input: R, opts: &CsvOptions) -> Result<Loaded<F>> {
    let mut records = Vec::new();
    for rec in reader(input).records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        records.push((line, rec));
    }
    let mut iter = records.into_iter();
    let header = if opts.has_header { iter.next() } else { None };
    let body: Vec<_> = iter.collect();
    if body.is_empty() {
        return Err(Error::dim("csv has no data rows"));
    }

    let offset = usize::from(opts.has_row_names);
    let first_len = body[0].1.len();
    // Header is either as wide as the body or (R style, with row names) one
    // field short, omitting the corner cell.
    let (expected, header_skip) = match &header {
        Some((_, h)) if opts.has_row_names && h.len() + 1 == first_len => (first_len, 0),
        Some((_, h)) => (h.len(), offset),
        None => (first_len, 0),
    };
    if expected <= offset {
        return Err(Error::dim("csv has no value columns"));
    }

    let mut rows = Vec::with_capacity(body.len());
    let mut row_names = Vec::with_capacity(body.len());
    for (i, (line, rec)) in body.iter().enumerate() {
        if rec.len() != expected {
            return Err(Error::Ragged {
                line: *line,
                expected,
                got: rec.len(),
            });
        }
        if opts.has_row_names {
            row_names.push(rec[0].to_string());
        } else {
            row_names.push((i + 1).to_string());
        }
        let row = rec
            .iter()
            .enumerate()
            .skip(offset)
            .map(|(c, cell)| parse_cell::<F>(cell, opts, *line, c + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }

    let n_cols = expected - offset;
    let col_names = match &header {
        Some((_, h)) => h.iter().skip(header_skip).map(str::to_string).collect(),
        None => default_names("V", n_cols),
    };
    let matrix = LabeledMatrix::new(rows, row_names, col_names)?;

    let mut warnings = Vec::new();
    for (axis, what) in [(Axis::Row, "row"), (Axis::Column, "column")] {
        for (name, at) in matrix.duplicate_names(axis) {
            let msg = format!("duplicate {what} name {name:?} at positions {at:?}");
            log::warn!("{msg}");
            warnings.push(msg);
        }
    }
    Ok(Loaded { matrix, warnings })
}

fn parse_cell<F: Scalar>(
    cell: &str,
    opts: &CsvOptions,
    line: u64,
    col: usize,
) -> Result<Option<F>> {
    if opts.is_na(cell) {
        return Ok(None);
    }
    let trimmed = cell.trim();
    match trimmed.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Some(F::of(v))),
        _ => Err(Error::NotNumeric {
            row: line,
            col,
            value: cell.to_string(),
        }),
    }
}

/// Writes a matrix with a header row and row names; missing cells as `NA`.
pub fn write_matrix<F: Scalar, W: Write>(m: &LabeledMatrix<F>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![String::new()];
    header.extend(m.col_names().iter().cloned());
    w.write_record(&header)?;
    for r in 0..m.n_rows() {
        let mut rec = vec![m.row_names()[r].clone()];
        rec.extend(m.row(r).iter().map(|v| match v {
            Some(x) => x.to_string(),
            None => "NA".to_string(),
        }));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Reads a `name,value` series. A first record whose value is neither
/// numeric nor NA is taken as a header.
pub fn read_series<R: Read>(input: R, opts: &CsvOptions) -> Result<Vec<(String, Option<f64>)>> {
    let mut out = Vec::new();
    for (i, rec) in reader(input).records().enumerate() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(Error::Ragged {
                line,
                expected: 2,
                got: rec.len(),
            });
        }
        match parse_cell::<f64>(&rec[1], opts, line, 2) {
            Ok(v) => out.push((rec[0].to_string(), v)),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn load_series(
    path: impl AsRef<Path>,
    opts: &CsvOptions,
) -> Result<Vec<(String, Option<f64>)>> {
    read_series(open(path.as_ref())?, opts)
}

/// Reads one named column of a headed CSV (for example a column of the
/// matrix file that should not be part of the heatmap).
pub fn read_series_column<R: Read>(
    input: R,
    column: &str,
    opts: &CsvOptions,
) -> Result<Vec<Option<f64>>> {
    let mut records = reader(input).into_records();
    let header = records.next().ok_or_else(|| Error::dim("csv is empty"))??;
    let idx = header
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::invalid("series column", format!("no column named {column:?}")))?;
    let mut out = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        // tolerate R-style headers that omit the row-name corner cell
        let shift = rec.len().saturating_sub(header.len());
        let cell = rec.get(idx + shift).ok_or(Error::Ragged {
            line,
            expected: header.len(),
            got: rec.len(),
        })?;
        out.push(parse_cell::<f64>(cell, opts, line, idx + shift + 1)?);
    }
    Ok(out)
}

pub fn load_series_column(
    path: impl AsRef<Path>,
    column: &str,
    opts: &CsvOptions,
) -> Result<Vec<Option<f64>>> {
    read_series_column(open(path.as_ref())?, column, opts)
}

/// Reads an `object_name,cluster_label` membership file. Labels may be any
/// strings; cluster ids follow first occurrence and the original strings
/// become the label names.
pub fn read_membership<R: Read>(input: R) -> Result<(Vec<String>, Membership)> {
    let mut names = Vec::new();
    let mut raw = Vec::new();
    for (i, rec) in reader(input).records().enumerate() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(Error::Ragged {
                line,
                expected: 2,
                got: rec.len(),
            });
        }
        if i == 0 && rec[0].eq_ignore_ascii_case("object_name") {
            continue;
        }
        names.push(rec[0].to_string());
        raw.push(rec[1].trim().to_string());
    }
    if raw.is_empty() {
        return Err(Error::dim("membership file has no rows"));
    }
    let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
    let mut label_names = Vec::new();
    let labels: Vec<usize> = raw
        .iter()
        .map(|l| {
            *ids.entry(l.as_str()).or_insert_with(|| {
                label_names.push(l.clone());
                label_names.len() - 1
            })
        })
        .collect();
    let k = label_names.len();
    let mem = Membership::new(labels, k)?.with_label_names(label_names)?;
    Ok((names, mem))
}

pub fn load_membership(path: impl AsRef<Path>) -> Result<(Vec<String>, Membership)> {
    read_membership(open(path.as_ref())?)
}

pub fn write_membership<W: Write>(names: &[String], mem: &Membership, out: W) -> Result<()> {
    if names.len() != mem.len() {
        return Err(Error::dim(format!(
            "{} names for a membership of {} objects",
            names.len(),
            mem.len()
        )));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["object_name", "cluster_label"])?;
    for (name, &label) in names.iter().zip(mem.labels()) {
        w.write_record([name.as_str(), mem.label_name(label).as_str()])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Loaded<f64>> {
        read_matrix(s.as_bytes(), &CsvOptions::default())
    }

    #[test]
    fn two_by_two_with_header() {
        let l = parse(",x,y\na,1,2\nb,3,4\n").unwrap();
        let m = l.matrix;
        assert_eq!(m.dims(), (2, 2));
        assert_eq!(m.row(0), &[Some(1.0), Some(2.0)]);
        assert_eq!(m.row(1), &[Some(3.0), Some(4.0)]);
        assert_eq!(m.row_names(), &["a", "b"]);
        assert_eq!(m.col_names(), &["x", "y"]);
        assert!(l.warnings.is_empty());
    }

    #[test]
    fn r_style_header_without_corner() {
        let m = parse("x,y\na,1,2\nb,3,4\n").unwrap().matrix;
        assert_eq!(m.col_names(), &["x", "y"]);
        assert_eq!(m.row(1), &[Some(3.0), Some(4.0)]);
    }

    #[test]
    fn na_and_empty_are_missing() {
        let m = parse(",x,y,z\na,NA,2,\nb,3, NA ,4\n").unwrap().matrix;
        assert_eq!(m.missing_count(), 3);
        assert_eq!(m.get(0, 0), None);
        assert_eq!(m.get(0, 2), None);
        assert_eq!(m.get(1, 1), None);
    }

    #[test]
    fn ragged_row_reports_line() {
        let text = ",a,b,c\nr1,1,2,3\nr2,1,2,3\nr3,1,2,3\nr4,1,2\n";
        let err = parse(text).unwrap_err();
        assert_eq!(err.to_string(), "row 5: expected 4 fields, got 3");
    }

    #[test]
    fn non_numeric_cell_names_coordinates() {
        let err = parse(",a,b\nr1,1,oops\n").unwrap_err();
        assert!(
            matches!(err, Error::NotNumeric { row: 2, col: 3, .. }),
            "{err}"
        );
        assert!(err.to_string().contains("oops"));
    }

    #[test]
    fn duplicate_row_names_warn() {
        let l = parse(",a\nx,1\nx,2\n").unwrap();
        assert_eq!(l.matrix.n_rows(), 2);
        assert_eq!(l.warnings.len(), 1);
        assert!(l.warnings[0].contains("\"x\""));
    }

    #[test]
    fn headerless_without_row_names() {
        let opts = CsvOptions {
            has_header: false,
            has_row_names: false,
            ..CsvOptions::default()
        };
        let m: LabeledMatrix<f64> = read_matrix("1,2\n3,4\n".as_bytes(), &opts).unwrap().matrix;
        assert_eq!(m.row_names(), &["1", "2"]);
        assert_eq!(m.col_names(), &["V1", "V2"]);
    }

    #[test]
    fn custom_na_tokens() {
        let opts = CsvOptions {
            na_tokens: vec!["-".into()],
            ..CsvOptions::default()
        };
        let m: LabeledMatrix<f64> = read_matrix(",a,b\nr,-,1\n".as_bytes(), &opts)
            .unwrap()
            .matrix;
        assert_eq!(m.row(0), &[None, Some(1.0)]);
        assert!(read_matrix::<f64, _>(",a\nr,NA\n".as_bytes(), &opts).is_err());
    }

    #[test]
    fn series_with_and_without_header() {
        let opts = CsvOptions::default();
        let a = read_series("name,value\nx,1\ny,NA\n".as_bytes(), &opts).unwrap();
        let b = read_series("x,1\ny,NA\n".as_bytes(), &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![("x".into(), Some(1.0)), ("y".into(), None)]);
    }

    #[test]
    fn series_column() {
        let opts = CsvOptions::default();
        let v = read_series_column(",a,b\nr1,1,2\nr2,3,NA\n".as_bytes(), "b", &opts).unwrap();
        assert_eq!(v, vec![Some(2.0), None]);
        assert!(read_series_column(",a\nr1,1\n".as_bytes(), "zz", &opts).is_err());
    }

    #[test]
    fn membership_string_labels() {
        let (names, mem) =
            read_membership("object_name,cluster_label\nw1,war\nw2,court\nw3,war\n".as_bytes())
                .unwrap();
        assert_eq!(names, vec!["w1", "w2", "w3"]);
        assert_eq!(mem.labels(), &[0, 1, 0]);
        assert_eq!(mem.label_name(1), "court");

        let mut buf = Vec::new();
        write_membership(&names, &mem, &mut buf).unwrap();
        let (names2, mem2) = read_membership(buf.as_slice()).unwrap();
        assert_eq!(names, names2);
        assert_eq!(mem, mem2);
    }
}
