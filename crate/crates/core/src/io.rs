//! Text formats: matrix files and canonicalization reports.
//!
//! A matrix is written as a header line `rows cols` followed by the
//! entries in row-major order, whitespace separated. Several matrices
//! (a pair, or two pairs) are separated by a line containing `---`.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalDecomposition;
use crate::error::{Error, Result};
use crate::field::{GaussianRational, Scalar, TowerElement};
use crate::matrix::ExactMatrix;
use crate::summands::{Summand, SummandDescriptor};

/// Parse one matrix block.
pub fn parse_matrix<S: Scalar + FromStr<Err = Error>>(text: &str) -> Result<ExactMatrix<S>> {
    let mut tokens = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .flat_map(str::split_whitespace);
    let mut dim = |what: &str| -> Result<usize> {
        let t = tokens.next().ok_or_else(|| Error::Parse(format!("missing {what} in header")))?;
        t.parse().map_err(|_| Error::Parse(format!("invalid {what} `{t}` in header")))
    };
    let rows = dim("row count")?;
    let cols = dim("column count")?;
    let data: Vec<S> = tokens.map(str::parse).collect::<Result<_>>()?;
    if data.len() != rows * cols {
        return Err(Error::Parse(format!("expected {} entries for a {rows}x{cols} matrix, found {}", rows * cols, data.len())));
    }
    ExactMatrix::new(rows, cols, data)
}

/// Parse a file holding one or more matrices separated by `---` lines.
pub fn parse_matrices<S: Scalar + FromStr<Err = Error>>(text: &str) -> Result<Vec<ExactMatrix<S>>> {
    let mut chunks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            chunks.push(String::new());
        } else {
            let cur = chunks.last_mut().unwrap();
            cur.push_str(line);
            cur.push('\n');
        }
    }
    chunks.iter().map(|c| parse_matrix(c)).collect()
}

/// Parse exactly `count` matrices.
pub fn parse_exactly<S: Scalar + FromStr<Err = Error>>(text: &str, count: usize) -> Result<Vec<ExactMatrix<S>>> {
    let ms = parse_matrices(text)?;
    if ms.len() != count {
        return Err(Error::Parse(format!("expected {count} matrices separated by `---`, found {}", ms.len())));
    }
    Ok(ms)
}

/// Parse a pencil: two matrices of the same shape.
pub fn parse_pair<S: Scalar + FromStr<Err = Error>>(text: &str) -> Result<(ExactMatrix<S>, ExactMatrix<S>)> {
    let mut ms = parse_exactly(text, 2)?;
    let b = ms.pop().unwrap();
    let a = ms.pop().unwrap();
    if a.shape() != b.shape() {
        return Err(Error::Parse(format!(
            "pair members have shapes {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok((a, b))
}

/// Serialize one matrix in the file format.
pub fn format_matrix<S: Scalar>(m: &ExactMatrix<S>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Serialize several matrices separated by `---`.
pub fn format_matrices<S: Scalar>(ms: &[&ExactMatrix<S>]) -> String {
    ms.iter().map(|m| format_matrix(*m)).collect::<Vec<_>>().join("---\n")
}

/// Materialized canonical form, in `Q(i)` when possible.
fn materialized_text(c: &CanonicalDecomposition) -> Result<String> {
    fn render<S: Scalar>(s: Summand<S>) -> String {
        match s {
            Summand::Matrix(a) => format_matrix(&a),
            Summand::Pair(a, b) => format_matrices(&[&a, &b]),
        }
    }
    match c.materialize::<GaussianRational>() {
        Ok(s) => Ok(render(s)),
        Err(Error::RequiresRadicalExtension(_)) => Ok(render(c.materialize::<TowerElement>()?)),
        Err(e) => Err(e),
    }
}

/// Result of a `canon` run, printable as text or JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub relation: String,
    pub summands: Vec<String>,
    pub blocks: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical_form: Option<String>,
}

impl Report {
    pub fn new(c: &CanonicalDecomposition, materialize: bool) -> Result<Self> {
        Ok(Self {
            relation: c.relation.to_string(),
            summands: c.summands.iter().map(ToString::to_string).collect(),
            blocks: c.blocks.iter().map(ToString::to_string).collect(),
            notes: c.notes(),
            canonical_form: if materialize { Some(materialized_text(c)?) } else { None },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "relation: {}", self.relation).unwrap();
        writeln!(out, "summands:").unwrap();
        for s in &self.summands {
            writeln!(out, "  {s}").unwrap();
        }
        writeln!(out, "blocks:").unwrap();
        for b in &self.blocks {
            writeln!(out, "  {b}").unwrap();
        }
        if !self.notes.is_empty() {
            writeln!(out, "notes:").unwrap();
            for n in &self.notes {
                writeln!(out, "  {n}").unwrap();
            }
        }
        if let Some(m) = &self.canonical_form {
            writeln!(out, "canonical form:").unwrap();
            out.push_str(m);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid report JSON: {e}")))
    }

    /// Parse the descriptor lines back.
    pub fn descriptors(&self) -> Result<Vec<SummandDescriptor>> {
        self.summands.iter().map(|s| s.parse()).collect()
    }
}

/// Read the descriptor lines out of a text report.
pub fn parse_report_summands(text: &str) -> Result<Vec<SummandDescriptor>> {
    let mut in_section = false;
    let mut out = Vec::new();
    for line in text.lines() {
        if line == "summands:" {
            in_section = true;
        } else if in_section && line.starts_with("  ") {
            out.push(line.trim().parse()?);
        } else if in_section {
            break;
        }
    }
    if !in_section {
        return Err(Error::Parse("report has no `summands:` section".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canon_pair_hermitian, canonicalize, CanonInput, Relation};
    use crate::matrix::GMatrix;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let m: GMatrix = parse_matrix("2 2\n1 1/2\n-i 3+4i\n").unwrap();
        assert_eq!(m.get(1, 1), &"3+4i".parse::<GaussianRational>().unwrap());
        let (a, b) = parse_pair::<GaussianRational>("1 1\n2\n---\n1 1\n1\n").unwrap();
        assert_eq!((a.get(0, 0).to_string(), b.get(0, 0).to_string()), ("2".into(), "1".into()));
        let (a, _) = parse_pair::<GaussianRational>("# F_1\n1 2\n0 1\n---\n1 2\n1 0\n").unwrap();
        assert_eq!(a.shape(), (1, 2));
        for bad in ["", "x 2\n", "2 2\n1 2 3\n", "1 1\nfoo\n", "1\n"] {
            assert!(matches!(parse_matrix::<GaussianRational>(bad), Err(Error::Parse(_))), "{bad:?}");
        }
        assert!(parse_pair::<GaussianRational>("1 1\n1\n---\n1 2\n1 1\n").is_err());
        assert!(parse_pair::<GaussianRational>("1 1\n1\n").is_err());
    }

    #[test]
    fn tower_entries_parse() {
        let m: ExactMatrix<TowerElement> = parse_matrix("1 2\nsqrt(2) 1/2*sqrt(3)+i\n").unwrap();
        assert_eq!(parse_matrix::<TowerElement>(&format_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn report_round_trip() {
        let a = GMatrix::from_rows(vec![vec!["3/5".parse().unwrap()]]).unwrap();
        let b = GMatrix::from_rows(vec![vec!["4/5".parse().unwrap()]]).unwrap();
        let c = canon_pair_hermitian(&a, &b).unwrap();
        let r = Report::new(&c, true).unwrap();
        let text = r.to_text();
        assert!(text.contains("HE2(n=1, c=4/3, sign=?)"));
        assert!(text.contains("FiniteEigen(4/3) size 1"));
        assert_eq!(parse_report_summands(&text).unwrap(), c.summands);
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.descriptors().unwrap(), c.summands);
        // the materialized pair is in the same class
        let (ma, mb) = parse_pair::<GaussianRational>(r.canonical_form.as_ref().unwrap()).unwrap();
        assert!(canon_pair_hermitian(&ma, &mb).unwrap().eq_up_to_sign(&c));
    }

    #[test]
    fn tower_materialization_in_reports() {
        let a = GMatrix::identity(3);
        let b = GMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let c = canonicalize(Relation::SymSymSecond, &CanonInput::Pair(a, b)).unwrap();
        let r = Report::new(&c, true).unwrap();
        let (ma, mb) = parse_pair::<TowerElement>(r.canonical_form.as_ref().unwrap()).unwrap();
        let again = canonicalize(Relation::SymSymSecond, &CanonInput::Pair(ma, mb)).unwrap();
        assert_eq!(again.summands, c.summands);
    }

    proptest! {
        #[test]
        fn matrix_text_round_trips(v in proptest::collection::vec((-9i64..10, 1i64..5, -9i64..10, 1i64..5), 6)) {
            let m = GMatrix::new(2, 3, v.into_iter().map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d)).collect()).unwrap();
            prop_assert_eq!(parse_matrix::<GaussianRational>(&format_matrix(&m)).unwrap(), m.clone());
            let two = format_matrices(&[&m, &m]);
            prop_assert_eq!(parse_matrices::<GaussianRational>(&two).unwrap(), vec![m.clone(), m]);
        }
    }
}
