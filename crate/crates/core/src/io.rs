//! File formats. Every file is written to a temporary sibling and renamed into
//! place, so a failed write never leaves a partial file behind.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::curve::PointSet;
use crate::geometry::SecantTable;
use crate::gf::{Field, FieldDescriptor};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), IoError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

/// Field header line, then `x,y,z,t`, then one row of encoded homogeneous
/// coordinates per point in canonical order.
pub fn points_csv(pts: &PointSet) -> String {
    let f = pts.params().field();
    let mut s = String::new();
    writeln!(s, "{}", f.descriptor().header_line()).unwrap();
    s.push_str("x,y,z,t\n");
    for i in 0..pts.len() {
        let c = pts.coords(i);
        writeln!(
            s,
            "{},{},{},{}",
            f.encode(c[0]),
            f.encode(c[1]),
            f.encode(c[2]),
            f.encode(c[3])
        )
        .unwrap();
    }
    s
}

/// Field header line, then `line_form1,line_form2,order,point_indices`; forms
/// and index lists are space-separated inside their fields.
pub fn secants_csv(f: &Field, table: &SecantTable) -> String {
    let mut s = String::new();
    writeln!(s, "{}", f.descriptor().header_line()).unwrap();
    s.push_str("line_form1,line_form2,order,point_indices\n");
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    for l in table.secants() {
        let [a, b] = l.line.forms();
        writeln!(
            s,
            "{},{},{},{}",
            join(&mut a.iter().map(|e| f.encode(*e).to_string())),
            join(&mut b.iter().map(|e| f.encode(*e).to_string())),
            l.order(),
            join(&mut l.points.iter().map(|i| i.to_string())),
        )
        .unwrap();
    }
    s
}

/// Matrix file: optional `#` comment lines, then `rows cols p k modulus`,
/// then one row of encoded entries per line.
pub fn matrix_text(f: &Field, m: &Matrix, comment: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(s, "# {line}").unwrap();
        }
    }
    writeln!(
        s,
        "{} {} {}",
        m.rows(),
        m.cols(),
        f.descriptor().header_line()
    )
    .unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|e| f.encode(*e).to_string()).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

/// Parses a matrix file; the field is rebuilt from the header.
pub fn parse_matrix(text: &str) -> Result<(FieldDescriptor, Matrix), IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let perr = |line: usize, msg: &str| IoError::Parse {
        line: line + 1,
        msg: msg.to_string(),
    };
    let (hl, header) = lines.next().ok_or_else(|| perr(0, "missing header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 5 {
        return Err(perr(hl, "header must be `rows cols p k modulus`"));
    }
    let rows: usize = nums[0].parse().map_err(|_| perr(hl, "bad row count"))?;
    let cols: usize = nums[1].parse().map_err(|_| perr(hl, "bad column count"))?;
    let desc = FieldDescriptor::parse_header(&nums[2..].join(" ")).map_err(|m| perr(hl, &m))?;
    let field = Field::from_descriptor(desc.clone());
    let mut m = Matrix::zeros(rows, cols);
    let mut r = 0;
    for (ln, line) in lines {
        if r == rows {
            return Err(perr(ln, "more rows than declared"));
        }
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != cols {
            return Err(perr(ln, "wrong number of entries"));
        }
        for (c, v) in vals.iter().enumerate() {
            let n: u64 = v.parse().map_err(|_| perr(ln, "bad entry"))?;
            m.set(r, c, field.decode(n).map_err(|e| perr(ln, &e.to_string()))?);
        }
        r += 1;
    }
    if r != rows {
        return Err(perr(0, "fewer rows than declared"));
    }
    Ok((desc, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveParams;

    #[test]
    fn matrix_round_trip() {
        let c = CurveParams::new(2).unwrap();
        let f = c.field();
        let mut m = Matrix::zeros(2, 3);
        m.set(0, 1, f.decode(63).unwrap());
        m.set(1, 2, f.decode(5).unwrap());
        let text = matrix_text(f, &m, Some("{\"family\":\"test\"}"));
        assert!(text.lines().nth(1).unwrap().starts_with("2 3 2 6 67"));
        let (desc, back) = parse_matrix(&text).unwrap();
        assert_eq!(&desc, f.descriptor());
        assert_eq!(back, m);
    }

    #[test]
    fn atomic_write_replaces_whole_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"first").unwrap();
        write_atomic(&p, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/x"), b"x").is_err());
    }
}
