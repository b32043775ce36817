//! Input parsing: inline matrices or matrix files, rational parameter
//! lists, and 1-based column selections. Every error names the exact
//! offending position.

use gkz_core::exactlat::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::path::Path;

/// A user-input problem: `kind` is a stable machine-readable tag,
/// `message` the human explanation (with row/column positions where
/// applicable).
#[derive(Debug, Clone)]
pub struct InputError {
    pub kind: String,
    pub message: String,
}

impl InputError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        InputError { kind: kind.to_string(), message: message.into() }
    }
}

/// Parses `-A`: either inline rows (`"1 1 0; 0 1 1"`, rows split on `;`
/// or newlines, entries on whitespace) or a path to a file holding the
/// same format.
pub fn parse_matrix(spec: &str) -> Result<IntMatrix, InputError> {
    let inline;
    let text: &str = if Path::new(spec).is_file() {
        inline = std::fs::read_to_string(spec).map_err(|e| {
            InputError::new("io", format!("cannot read matrix file {spec:?}: {e}"))
        })?;
        &inline
    } else {
        spec
    };
    let rows: Vec<&str> = text
        .split(|c| c == ';' || c == '\n')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .collect();
    if rows.is_empty() {
        return Err(InputError::new("parse", "matrix has no rows"));
    }
    let mut parsed: Vec<Vec<BigInt>> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut entries: Vec<BigInt> = Vec::new();
        for (c, token) in row.split_whitespace().enumerate() {
            let v: BigInt = token.parse().map_err(|_| {
                InputError::new(
                    "parse",
                    format!("row {}, column {}: invalid integer {token:?}", r + 1, c + 1),
                )
            })?;
            entries.push(v);
        }
        if let Some(first) = parsed.first() {
            if entries.len() != first.len() {
                return Err(InputError::new(
                    "parse",
                    format!(
                        "row {}: expected {} entries, found {}",
                        r + 1,
                        first.len(),
                        entries.len()
                    ),
                ));
            }
        }
        parsed.push(entries);
    }
    let cols = parsed[0].len();
    if cols == 0 {
        return Err(InputError::new("parse", "row 1: matrix has no columns"));
    }
    let data: Vec<BigInt> = parsed.into_iter().flatten().collect();
    Ok(IntMatrix::new(data.len() / cols, cols, data))
}

/// Parses `-b`: comma-separated rationals, each an integer or `p/q`.
pub fn parse_beta(spec: &str) -> Result<Vec<BigRational>, InputError> {
    let mut out = Vec::new();
    for (i, token) in spec.split(',').map(str::trim).enumerate() {
        let v: BigRational = token.parse().map_err(|_| {
            InputError::new(
                "parse",
                format!("beta entry {}: invalid rational {token:?}", i + 1),
            )
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Parses a 1-based column list (`"1,3"` or `"1 3"`) into sorted,
/// deduplicated 0-based indices, checking the range against `n`.
pub fn parse_columns(spec: &str, n: usize, what: &str) -> Result<Vec<usize>, InputError> {
    let mut out: Vec<usize> = Vec::new();
    for (i, token) in spec
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        let v: usize = token.parse().map_err(|_| {
            InputError::new(
                "parse",
                format!("{what} entry {}: invalid column index {token:?}", i + 1),
            )
        })?;
        if v == 0 || v > n {
            return Err(InputError::new(
                "index-out-of-range",
                format!("{what} entry {}: column {v} outside 1..={n}", i + 1),
            ));
        }
        out.push(v - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Parses `--j`: a single 1-based column index.
pub fn parse_single_column(j: usize, n: usize) -> Result<usize, InputError> {
    if j == 0 || j > n {
        return Err(InputError::new(
            "index-out-of-range",
            format!("column {j} outside 1..={n}"),
        ));
    }
    Ok(j - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_matrix_with_semicolons() {
        let m = parse_matrix("1 1 0; 0 1 1").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(*m.get(1, 2), BigInt::from(1));
    }

    #[test]
    fn parse_errors_name_row_and_column() {
        let e = parse_matrix("1 2; 3 x").unwrap_err();
        assert_eq!(e.kind, "parse");
        assert!(e.message.contains("row 2, column 2"), "{}", e.message);
        let e = parse_matrix("1 2; 3").unwrap_err();
        assert!(e.message.contains("row 2: expected 2 entries, found 1"), "{}", e.message);
    }

    #[test]
    fn beta_accepts_fractions() {
        let b = parse_beta("1,-1/2").unwrap();
        assert_eq!(b[1], BigRational::new(BigInt::from(-1), BigInt::from(2)));
        let e = parse_beta("1,oops").unwrap_err();
        assert!(e.message.contains("beta entry 2"));
    }

    #[test]
    fn columns_are_one_based_and_range_checked() {
        assert_eq!(parse_columns("3,1", 3, "tau").unwrap(), vec![0, 2]);
        let e = parse_columns("0", 3, "tau").unwrap_err();
        assert_eq!(e.kind, "index-out-of-range");
        let e = parse_columns("4", 3, "face").unwrap_err();
        assert!(e.message.contains("column 4 outside 1..=3"));
    }
}
