//! Matrix Market coordinate format, read into dense storage.
//!
//! Supported headers are `%%MatrixMarket matrix coordinate <field> <symmetry>`
//! with field `real`, `integer` or `complex` and symmetry `general`,
//! `symmetric` or `hermitian`. Duplicate entries are summed.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default cap on the order of matrices accepted by the reader.
pub const DEFAULT_MAX_N: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
}

fn parse_header(line: &str) -> Result<(Field, Symmetry)> {
    let tokens: Vec<String> = line
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.len() != 5
        || tokens[0] != "%%matrixmarket"
        || tokens[1] != "matrix"
        || tokens[2] != "coordinate"
    {
        return Err(Error::parse(
            1,
            "expected header '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    let field = match tokens[3].as_str() {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        other => return Err(Error::parse(1, format!("unsupported field '{other}'"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(Error::parse(1, format!("unsupported symmetry '{other}'"))),
    };
    Ok((field, symmetry))
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{token}'")))
}

fn parse_value(token: &str, field: Field, line: usize) -> Result<f64> {
    let value = match field {
        Field::Integer => token.parse::<i64>().map(|v| v as f64).ok(),
        Field::Real | Field::Complex => token.parse::<f64>().ok().filter(|v| v.is_finite()),
    };
    value.ok_or_else(|| Error::parse(line, format!("invalid numeric value '{token}'")))
}

pub fn parse_matrix_market(text: &str) -> Result<Matrix> {
    parse_matrix_market_with_limit(text, DEFAULT_MAX_N)
}

/// Parses a coordinate file, rejecting orders above `max_n`.
pub fn parse_matrix_market_with_limit(text: &str, max_n: usize) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let (field, symmetry) = parse_header(header)?;

    let mut content = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = content
        .next()
        .ok_or_else(|| Error::parse(1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(Error::parse(
            size_line,
            "size line must be 'rows cols entries'",
        ));
    }
    let rows = parse_usize(dims[0], size_line, "row count")?;
    let cols = parse_usize(dims[1], size_line, "column count")?;
    let nnz = parse_usize(dims[2], size_line, "entry count")?;
    if rows != cols {
        return Err(Error::parse(
            size_line,
            format!("matrix is {rows}x{cols}, not square"),
        ));
    }
    if rows == 0 {
        return Err(Error::parse(size_line, "matrix order must be at least 1"));
    }
    if rows > max_n {
        return Err(Error::parse(
            size_line,
            format!("order {rows} exceeds the limit {max_n}"),
        ));
    }
    let n = rows;

    let expected_tokens = if field == Field::Complex { 4 } else { 3 };
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    let mut last_line = size_line;
    for _ in 0..nnz {
        let (line_no, line) = content.next().ok_or_else(|| {
            Error::parse(
                last_line,
                format!("expected {nnz} entries, input ended early"),
            )
        })?;
        last_line = line_no;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != expected_tokens {
            return Err(Error::parse(
                line_no,
                format!("expected {expected_tokens} fields, found {}", tokens.len()),
            ));
        }
        let i = parse_usize(tokens[0], line_no, "row index")?;
        let j = parse_usize(tokens[1], line_no, "column index")?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::parse(
                line_no,
                format!("index ({i}, {j}) outside 1..={n}"),
            ));
        }
        let re = parse_value(tokens[2], field, line_no)?;
        let im = if field == Field::Complex {
            parse_value(tokens[3], field, line_no)?
        } else {
            0.0
        };
        let (i, j) = (i - 1, j - 1);
        let value = Complex64::new(re, im);
        entries[i * n + j] += value;
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => entries[j * n + i] += value,
                Symmetry::Hermitian => entries[j * n + i] += value.conj(),
            }
        }
    }
    if let Some((line_no, _)) = content.next() {
        return Err(Error::parse(line_no, format!("more than {nnz} entries")));
    }
    Matrix::from_entries(n, entries)
}

pub fn read_matrix_market(path: impl AsRef<Path>, max_n: usize) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix_market_with_limit(&text, max_n)
}

/// Writes the nonzero entries in row-major order, `general` symmetry.
///
/// Values use the shortest decimal form that parses back to the same
/// double, so a round trip reproduces the matrix bit for bit.
pub fn write_matrix_market(a: &Matrix) -> String {
    let n = a.order();
    let complex = !a.is_real();
    let nonzeros: Vec<(usize, usize, Complex64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, a.entry(i, j)))
        .filter(|(_, _, z)| z.re != 0.0 || z.im != 0.0)
        .collect();

    let mut out = String::new();
    let field = if complex { "complex" } else { "real" };
    writeln!(out, "%%MatrixMarket matrix coordinate {field} general").unwrap();
    writeln!(out, "{n} {n} {}", nonzeros.len()).unwrap();
    for (i, j, z) in nonzeros {
        if complex {
            writeln!(out, "{} {} {} {}", i + 1, j + 1, z.re, z.im).unwrap();
        } else {
            writeln!(out, "{} {} {}", i + 1, j + 1, z.re).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "%%MatrixMarket matrix coordinate real general\n";

    #[test]
    fn transcribes_general_file() {
        let text = format!("{HEADER}% comment\n2 2 3\n1 1 1.0\n1 2 1.0\n2 2 2.0\n");
        let a = parse_matrix_market(&text).unwrap();
        assert_eq!(a, Matrix::from_rows([[1.0, 1.0], [0.0, 2.0]]));
    }

    #[test]
    fn expands_symmetric_storage() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 2\n2 1 1\n2 2 2\n";
        let a = parse_matrix_market(text).unwrap();
        assert_eq!(a, Matrix::from_rows([[2.0, 1.0], [1.0, 2.0]]));
    }

    #[test]
    fn complex_entries_and_hermitian_mirror() {
        let text = "%%MatrixMarket matrix coordinate complex hermitian\n2 2 3\n1 1 6 0\n2 1 3.0 4.0\n2 2 6 0\n";
        let a = parse_matrix_market(text).unwrap();
        assert_eq!(a.entry(1, 0), Complex64::new(3.0, 4.0));
        assert_eq!(a.entry(0, 1), Complex64::new(3.0, -4.0));
        assert_eq!(a.modulus(0, 1), 5.0);

        let text = "%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 2 3.0 4.0\n";
        let a = parse_matrix_market(text).unwrap();
        assert_eq!(a.entry(0, 1), Complex64::new(3.0, 4.0));
        assert_eq!(a.modulus(0, 1), 5.0);
    }

    #[test]
    fn sums_duplicates() {
        let text = format!("{HEADER}1 1 2\n1 1 1.5\n1 1 2.5\n");
        assert_eq!(
            parse_matrix_market(&text).unwrap(),
            Matrix::from_rows([[4.0]])
        );
    }

    #[test]
    fn integer_field() {
        let text = "%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 -3\n";
        assert_eq!(
            parse_matrix_market(text).unwrap(),
            Matrix::from_rows([[-3.0]])
        );
        let bad = "%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 1.5\n";
        assert!(matches!(
            parse_matrix_market(bad),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    fn parse_error_line(text: &str) -> usize {
        match parse_matrix_market(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_error_line("%%MatrixMarket matrix array real general\n"),
            1
        );
        assert_eq!(
            parse_error_line("%%MatrixMarket matrix coordinate pattern general\n"),
            1
        );
        assert_eq!(parse_error_line(&format!("{HEADER}2 3 0\n")), 2);
        assert_eq!(parse_error_line(&format!("{HEADER}2 2 1\n3 1 1.0\n")), 3);
        assert_eq!(
            parse_error_line(&format!("{HEADER}2 2 1\n% c\n1 1 abc\n")),
            4
        );
        assert_eq!(parse_error_line(&format!("{HEADER}2 2 2\n1 1 1.0\n")), 3);
        assert_eq!(
            parse_error_line(&format!("{HEADER}2 2 1\n1 1 1.0\n2 2 1.0\n")),
            4
        );
        assert_eq!(parse_error_line(&format!("{HEADER}2 2 1\n1 1 nan\n")), 3);
        assert_eq!(parse_error_line(""), 1);
    }

    #[test]
    fn enforces_size_cap() {
        let text = format!("{HEADER}5 5 0\n");
        assert!(parse_matrix_market_with_limit(&text, 4).is_err());
        assert!(parse_matrix_market_with_limit(&text, 5).is_ok());
    }

    #[test]
    fn writer_round_trips() {
        let a = Matrix::from_rows([[0.1, -1.0 / 3.0], [0.0, 2.5e-7]]);
        let back = parse_matrix_market(&write_matrix_market(&a)).unwrap();
        assert_eq!(back, a);

        let c = Matrix::from_complex_rows([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, -0.7)],
            [Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)],
        ]);
        assert_eq!(parse_matrix_market(&write_matrix_market(&c)).unwrap(), c);
    }
}
