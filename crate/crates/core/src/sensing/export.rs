//! Text export of sensing matrices.
//!
//! Native format: a header `K N kind [p m h d r1..rh]`, then K lines, each
//! holding the N entries of one row as space-separated `re:im` pairs written
//! with round-trip precision. The CSV variant is long-form `k,n,re,im`.

use std::io::{self, Write};

use num_complex::Complex64;

use super::{MatrixKind, SensingMatrix};
use crate::{Error, Result};

fn header(m: &SensingMatrix) -> String {
    let mut h = format!("{} {} {}", m.rows(), m.cols(), m.kind());
    if let Some(c) = m.construction() {
        let s = c.spec();
        h.push_str(&format!(" {} {} {} {}", s.p(), s.m(), s.h(), s.d()));
        for r in s.exponents() {
            h.push_str(&format!(" {r}"));
        }
    }
    h
}

pub fn write_matrix<W: Write>(m: &SensingMatrix, out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", header(m))?;
    let columns: Vec<Vec<Complex64>> = (0..m.cols()).map(|n| m.column(n)).collect();
    let mut line = String::new();
    for k in 0..m.rows() {
        line.clear();
        for (n, col) in columns.iter().enumerate() {
            if n > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{:?}:{:?}", col[k].re, col[k].im));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn write_matrix_csv<W: Write>(m: &SensingMatrix, out: &mut W) -> io::Result<()> {
    writeln!(out, "k,n,re,im")?;
    for n in 0..m.cols() {
        for (k, z) in m.column(n).iter().enumerate() {
            writeln!(out, "{k},{n},{:?},{:?}", z.re, z.im)?;
        }
    }
    Ok(())
}

/// A parsed native-format matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub kind: MatrixKind,
    /// p, m, h, d, r1..rh for additive character matrices.
    pub parameters: Vec<u64>,
    /// Row-major entries.
    pub entries: Vec<Complex64>,
}

fn parse_num<T: std::str::FromStr>(t: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    t.parse().map_err(|e| Error::Parse(format!("{t:?}: {e}")))
}

pub fn read_matrix(text: &str) -> Result<MatrixFile> {
    let mut lines = text.lines();
    let head: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?
        .split_whitespace()
        .collect();
    if head.len() < 3 {
        return Err(Error::Parse("header needs K N kind".into()));
    }
    let rows: usize = parse_num(head[0])?;
    let cols: usize = parse_num(head[1])?;
    let kind: MatrixKind = head[2].parse()?;
    let parameters = head[3..]
        .iter()
        .map(|t| parse_num(t))
        .collect::<Result<Vec<u64>>>()?;
    let mut entries = Vec::with_capacity(rows * cols);
    for (k, line) in lines.enumerate() {
        let before = entries.len();
        for tok in line.split_whitespace() {
            let (re, im) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("entry {tok:?} is not re:im")))?;
            entries.push(Complex64::new(parse_num(re)?, parse_num(im)?));
        }
        if entries.len() - before != cols {
            return Err(Error::Parse(format!(
                "row {k} has {} entries, expected {cols}",
                entries.len() - before
            )));
        }
    }
    if entries.len() != rows * cols {
        return Err(Error::Parse(format!("expected {rows} rows")));
    }
    Ok(MatrixFile {
        rows,
        cols,
        kind,
        parameters,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldContext;
    use crate::sensing::{build_matrix, ConstructionSpec};

    #[test]
    fn native_format_round_trips_bit_exactly() {
        let spec = ConstructionSpec::construction_1a(3, 2).unwrap();
        let m = build_matrix(&spec, &FieldContext::new(3, 2, None).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_matrix(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("9 81 additive-character 3 2 2 2 1 2\n"));
        let back = read_matrix(&text).unwrap();
        assert_eq!(back.parameters, vec![3, 2, 2, 2, 1, 2]);
        for k in 0..9 {
            for n in 0..81 {
                assert_eq!(back.entries[k * 81 + n], m.entry(k, n));
            }
        }
        assert!(read_matrix("9 81 additive-character\n0:0\n").is_err());
    }

    #[test]
    fn csv_variant_has_one_line_per_entry() {
        let m = crate::sensing::construction_1a(3, 1).unwrap();
        let mut buf = Vec::new();
        write_matrix_csv(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 3 * 9);
        assert_eq!(lines[0], "k,n,re,im");
        assert!(lines[1].starts_with("0,0,0.57735"));
    }
}
