//! Bundled word tables for genus 1, 2 and 3 and their row-by-row checks.
//!
//! Each row carries the word as printed and, where the printed word does not
//! realize its data set, a model word that does. Rows are checked on the
//! model word; the printed word is certified too and reported alongside.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::symplectic::{certify_matrix, evaluate, evaluate_in, lefschetz_certify, CertificateReport};
use crate::twistword::{CurveTable, TwistWord};
use crate::{DataSet, Error, Result};

const TABLE1: &str = include_str!("../data/table1.txt");
const TABLE2: &str = include_str!("../data/table2.txt");
const TABLE3: &str = include_str!("../data/table3.txt");

/// Algorithm column of a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Algorithm {
    Table,
    Involution,
    Chain,
    Star,
    #[serde(rename = "starFT")]
    StarFt,
    Symplectic,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "table" => Algorithm::Table,
            "involution" => Algorithm::Involution,
            "chain" => Algorithm::Chain,
            "star" => Algorithm::Star,
            "starFT" => Algorithm::StarFt,
            "symplectic" => Algorithm::Symplectic,
            _ => return Err(Error::Syntax { pos: 0, msg: format!("unknown algorithm `{s}`") }),
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Table => "table",
            Algorithm::Involution => "involution",
            Algorithm::Chain => "chain",
            Algorithm::Star => "star",
            Algorithm::StarFt => "starFT",
            Algorithm::Symplectic => "symplectic",
        })
    }
}

impl Algorithm {
    /// The method family a synthesized word for this row should come from.
    pub fn family(self) -> crate::synthesis::MethodFamily {
        use crate::synthesis::MethodFamily as F;
        match self {
            Algorithm::Table => F::Table,
            Algorithm::Involution => F::Rotational,
            Algorithm::Chain | Algorithm::Star | Algorithm::StarFt => F::Gluing,
            Algorithm::Symplectic => F::Symplectic,
        }
    }

    /// The single method named by the column.
    pub fn method(self) -> crate::synthesis::MethodTag {
        use crate::synthesis::MethodTag as M;
        match self {
            Algorithm::Table => M::Torus,
            Algorithm::Involution => M::Involution,
            Algorithm::Chain => M::Chain,
            Algorithm::Star => M::Star,
            Algorithm::StarFt => M::StarFt,
            Algorithm::Symplectic => M::Search,
        }
    }
}

/// One transcribed row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub genus: u32,
    pub order: u32,
    pub data_set: DataSet,
    /// The word as printed, in the text grammar of [`TwistWord::parse`].
    pub printed: String,
    /// Replacement word when the printed one does not realize the data set.
    pub model: Option<String>,
    pub algorithm: Algorithm,
    pub note: String,
}

impl TableRow {
    pub fn printed_word(&self) -> Result<TwistWord> {
        TwistWord::parse(&self.printed, self.genus)
    }

    /// The word the row is checked on: the model word if present.
    pub fn word(&self) -> Result<TwistWord> {
        TwistWord::parse(self.model.as_deref().unwrap_or(&self.printed), self.genus)
    }
}

fn source(genus: u32) -> Result<&'static str> {
    match genus {
        1 => Ok(TABLE1),
        2 => Ok(TABLE2),
        3 => Ok(TABLE3),
        _ => Err(Error::IndexOutOfRange(format!("tables exist for genus 1, 2, 3, not {genus}"))),
    }
}

/// Parses a table file: `order | data set | printed | model | algorithm | note`.
pub fn parse_rows(text: &str, genus: u32) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        let bad = |msg: &str| Error::Syntax { pos: lineno, msg: format!("line {}: {msg}", lineno + 1) };
        if f.len() != 6 {
            return Err(bad("expected 6 fields"));
        }
        rows.push(TableRow {
            genus,
            order: f[0].parse().map_err(|_| bad("bad order"))?,
            data_set: f[1].parse()?,
            printed: f[2].to_string(),
            model: (!f[3].is_empty()).then(|| f[3].to_string()),
            algorithm: f[4].parse()?,
            note: f[5].to_string(),
        });
    }
    Ok(rows)
}

/// The bundled rows for genus 1, 2 or 3.
pub fn rows(genus: u32) -> Result<Vec<TableRow>> {
    parse_rows(source(genus)?, genus)
}

/// Outcome of checking one row.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RowCheck {
    pub row: TableRow,
    pub certificate: CertificateReport,
    /// Certificate of the printed word when a model word replaced it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_certificate: Option<CertificateReport>,
    /// Order and Lefschetz traces of the checked word match the data set.
    pub pass: bool,
    /// `pass` plus matching eigenspace signatures.
    pub strong: bool,
}

fn check_row(row: &TableRow) -> Result<RowCheck> {
    let certificate = lefschetz_certify(&row.word()?, &row.data_set);
    let printed_certificate = match row.model {
        Some(_) => Some(lefschetz_certify(&row.printed_word()?, &row.data_set)),
        None => None,
    };
    Ok(RowCheck {
        pass: certificate.pass && row.order == row.data_set.n,
        strong: certificate.strong() && row.order == row.data_set.n,
        row: row.clone(),
        certificate,
        printed_certificate,
    })
}

/// Checks every row of one table, in table order.
pub fn check_table(genus: u32) -> Result<Vec<RowCheck>> {
    rows(genus)?.par_iter().map(check_row).collect()
}

/// Rows passing under one choice of orientation signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CalibrationEntry {
    pub c_sign: i64,
    pub a_prime_sign: i64,
    /// Genus 1 and 2 rows whose word attains the stated order.
    pub order_hits: usize,
    /// Genus 1 and 2 rows passing order and traces.
    pub certified: usize,
    pub total: usize,
}

/// Evidence for the orientation signs of `[c_i]` and `[a_i']`: for each of
/// the four sign choices, how many genus 1 and 2 fixture words attain their
/// order and certify.
pub fn calibration_report() -> Result<Vec<CalibrationEntry>> {
    let mut fixtures = rows(1)?;
    fixtures.extend(rows(2)?);
    let mut out = Vec::new();
    for c_sign in [1, -1] {
        for a_prime_sign in [1, -1] {
            let (mut order_hits, mut certified) = (0, 0);
            for r in &fixtures {
                let table = CurveTable::with_signs(r.genus, c_sign, a_prime_sign);
                let m = evaluate_in(&r.word()?, &table)?;
                let cert = certify_matrix(&m, &r.data_set);
                order_hits += usize::from(cert.order.finite() == Some(r.order));
                certified += usize::from(cert.pass);
            }
            out.push(CalibrationEntry { c_sign, a_prime_sign, order_hits, certified, total: fixtures.len() });
        }
    }
    Ok(out)
}

/// Every word in the three tables, printed and model, for filter checks.
pub fn all_words() -> Result<Vec<TwistWord>> {
    let mut out = Vec::new();
    for g in 1..=3 {
        for r in rows(g)? {
            out.push(r.printed_word()?);
            if r.model.is_some() {
                out.push(r.word()?);
            }
        }
    }
    Ok(out)
}

/// Symplectic images of the model words of one table.
pub fn images(genus: u32) -> Result<Vec<crate::SympMatrix>> {
    rows(genus)?.iter().map(|r| r.word().map(|w| evaluate(&w))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(rows(1).unwrap().len(), 7);
        assert_eq!(rows(2).unwrap().len(), 17);
        assert_eq!(rows(3).unwrap().len(), 47);
        assert!(rows(4).is_err());
    }

    #[test]
    fn order_column_is_the_degree() {
        for g in 1..=3 {
            for r in rows(g).unwrap() {
                assert_eq!(r.order, r.data_set.n, "{}", r.data_set);
                assert!(r.data_set.is_valid(), "{}", r.data_set);
                assert_eq!(r.data_set.genus().unwrap(), g);
            }
        }
    }

    #[test]
    fn genus_one_and_two_certify() {
        for g in 1..=2 {
            for c in check_table(g).unwrap() {
                assert!(c.strong, "{} {}", c.row.data_set, c.row.printed);
            }
        }
    }

    #[test]
    fn calibration_prefers_the_constants() {
        let rep = calibration_report().unwrap();
        let best = rep.iter().max_by_key(|e| e.certified).unwrap();
        assert_eq!(best.certified, best.total);
        assert_eq!(best.c_sign, crate::twistword::C_SIGN);
    }

    #[test]
    fn malformed_rows() {
        assert!(parse_rows("6|(6,0;(1,2),(1,3),(1,6))|T_aT_b", 1).is_err());
        assert!(parse_rows("6|(6,0;(1,2),(1,3),(1,6))|T_aT_b||magic|", 1).is_err());
    }
}
