//! Exact images of twist words in `Sp(2g, Z)`, orders, and the Lefschetz
//! certificate.
//!
//! Homology classes are row vectors over the basis `(a1, b1, ..., ag, bg)` and
//! a matrix acts by `x -> x M`. The twist `T_c^e` acts by
//! `x -> x + e <x, [c]> [c]`. Under this convention the leftmost twist of a
//! word acts first and `evaluate(uv) = evaluate(u) * evaluate(v)`.
//!
//! The certificate is a necessary condition only: a word that passes has the
//! right order and trace profile on homology, but it may still differ from a
//! periodic map by an element of the Torelli group, which homology cannot see.
//! The report also compares eigenspace signatures (see [`signature`]), a
//! strictly finer conjugacy invariant than the trace profile.

pub mod signature;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::twistword::{CurveId, CurveTable, TwistWord};
use crate::{DataSet, Error, IntMatrix, Result};
pub use signature::SignatureCheck;

/// A `2g x 2g` integer matrix on `H_1(S_g; Z)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SympMatrix {
    genus: u32,
    m: IntMatrix,
}

impl SympMatrix {
    pub fn identity(genus: u32) -> Self {
        SympMatrix { genus, m: IntMatrix::identity(2 * genus as usize) }
    }

    /// Wraps a matrix; fails unless it is `2g x 2g` and symplectic.
    pub fn from_matrix(genus: u32, m: IntMatrix) -> Result<Self> {
        let d = 2 * genus as usize;
        if m.rows() != d || m.cols() != d {
            return Err(Error::GenusMismatch(genus, (m.rows() / 2) as u32));
        }
        let s = SympMatrix { genus, m };
        if !s.is_symplectic() {
            return Err(Error::InvalidDataSet("matrix is not symplectic".into()));
        }
        Ok(s)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.m
    }

    /// `M J M^T = J` for the standard form `J`.
    pub fn is_symplectic(&self) -> bool {
        let j = CurveTable::new(self.genus).pairing_matrix();
        self.m.checked_mul(&j).and_then(|x| x.checked_mul(&self.m.transpose())).is_some_and(|x| x == j)
    }

    pub fn mul(&self, rhs: &SympMatrix) -> SympMatrix {
        SympMatrix { genus: self.genus, m: self.m.mul(&rhs.m) }
    }

    pub fn pow(&self, e: u32) -> SympMatrix {
        SympMatrix { genus: self.genus, m: self.m.pow(e) }
    }

    /// The inverse `-J M^T J`.
    pub fn inverse(&self) -> SympMatrix {
        let j = CurveTable::new(self.genus).pairing_matrix();
        let mut inv = j.mul(&self.m.transpose()).mul(&j);
        let d = inv.rows();
        for a in 0..d {
            for b in 0..d {
                inv[(a, b)] = -inv[(a, b)];
            }
        }
        SympMatrix { genus: self.genus, m: inv }
    }

    pub fn trace(&self) -> i64 {
        self.m.trace()
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// `det(xI - M)`, coefficients from `x^0` to `x^{2g}`.
    pub fn char_poly(&self) -> Vec<i128> {
        self.m.char_poly()
    }

    /// Entries reduced into `0..modulus`.
    pub fn reduce_mod(&self, modulus: i64) -> IntMatrix {
        self.m.reduce_mod(modulus)
    }

    /// Image of a row vector.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.m.cols()).map(|j| x.iter().enumerate().map(|(i, xi)| xi * self.m[(i, j)]).sum()).collect()
    }

    pub fn order(&self, bound: u32) -> Order {
        order(self, bound)
    }
}

impl fmt::Debug for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SympMatrix(g={}) {:?}", self.genus, self.m)
    }
}

impl fmt::Display for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}

/// `x -> x + e <x, v> v` for a homology class `v`.
pub fn transvection_of_class(genus: u32, v: &[i64], e: i64) -> SympMatrix {
    let d = 2 * genus as usize;
    let mut jv = vec![0i64; d];
    for i in 0..genus as usize {
        // <x, v> = sum_i x_i (Jv)_i
        jv[2 * i] = v[2 * i + 1];
        jv[2 * i + 1] = -v[2 * i];
    }
    let mut m = IntMatrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] += e * jv[i] * v[j];
        }
    }
    SympMatrix { genus, m }
}

/// The image of `T_c^e`. Separating curves give the identity.
pub fn transvection(curve: CurveId, e: i64, genus: u32) -> Result<SympMatrix> {
    let v = CurveTable::new(genus).homology(&curve)?;
    Ok(transvection_of_class(genus, &v, e))
}

/// The image of a word.
pub fn evaluate(w: &TwistWord) -> SympMatrix {
    evaluate_with(w, None)
}

/// The image of a word with entries reduced mod `m` after every step.
pub fn evaluate_mod(w: &TwistWord, m: i64) -> IntMatrix {
    evaluate_with(w, Some(m)).m
}

/// The image of a word over a table with non-default orientation signs.
pub fn evaluate_in(w: &TwistWord, table: &CurveTable) -> Result<SympMatrix> {
    if table.genus() != w.genus() {
        return Err(Error::GenusMismatch(table.genus(), w.genus()));
    }
    Ok(evaluate_over(w, table, None))
}

fn evaluate_with(w: &TwistWord, modulus: Option<i64>) -> SympMatrix {
    evaluate_over(w, &CurveTable::new(w.genus()), modulus)
}

fn evaluate_over(w: &TwistWord, table: &CurveTable, modulus: Option<i64>) -> SympMatrix {
    let g = w.genus();
    let mut acc = SympMatrix::identity(g);
    for &(c, e) in w.syllables() {
        let v = table.homology(&c).expect("words only hold curves of their genus");
        if v.iter().all(|x| *x == 0) {
            continue;
        }
        acc.m = acc.m.mul(&transvection_of_class(g, &v, e).m);
        if let Some(m) = modulus {
            acc.m = acc.m.reduce_mod(m);
        }
    }
    acc
}

/// Serialized as the integer order or the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Order {
    Finite(u32),
    #[serde(with = "infinite")]
    Infinite,
}

mod infinite {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinite")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "infinite" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected \"infinite\""))
        }
    }
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Default bound on the order search: `2(4g+2)`, twice the largest torsion order.
pub fn default_order_bound(genus: u32) -> u32 {
    2 * (4 * genus + 2)
}

/// Least `k <= bound` with `M^k = I`.
pub fn order(m: &SympMatrix, bound: u32) -> Order {
    let mut p = m.m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Order::Finite(k);
        }
        match p.checked_mul(&m.m) {
            Some(next) => p = next,
            None => return Order::Infinite,
        }
    }
    Order::Infinite
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCheck {
    pub k: u32,
    pub expected: i64,
    pub actual: i64,
}

/// Outcome of [`lefschetz_certify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateReport {
    pub order: Order,
    pub expected_order: u32,
    pub traces: Vec<TraceCheck>,
    pub pass: bool,
    /// Eigenspace signatures against the holomorphic multiplicities of the
    /// data set; empty unless order and traces pass.
    #[serde(default)]
    pub signatures: Vec<SignatureCheck>,
    #[serde(default)]
    pub signatures_match: bool,
    /// Why the check failed before traces were compared, if it did.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Checks that `evaluate(w)` has order exactly `n` and that
/// `tr(M^k) = 2 - fix(F^k)` for `1 <= k < n`; when both hold it also
/// compares eigenspace signatures.
///
/// `pass` is necessary, not sufficient, for `w` to represent `d`;
/// [`CertificateReport::strong`] adds the signature comparison.
pub fn lefschetz_certify(w: &TwistWord, d: &DataSet) -> CertificateReport {
    let m = evaluate(w);
    certify_matrix(&m, d)
}

/// [`lefschetz_certify`] on an already evaluated matrix.
pub fn certify_matrix(m: &SympMatrix, d: &DataSet) -> CertificateReport {
    let n = d.n;
    let fail = |order, note: String| CertificateReport {
        order,
        expected_order: n,
        traces: vec![],
        pass: false,
        signatures: vec![],
        signatures_match: false,
        note: Some(note),
    };
    match d.genus() {
        Ok(g) if g == m.genus => {}
        Ok(g) => return fail(Order::Infinite, format!("data set has genus {g}, word has genus {}", m.genus)),
        Err(e) => return fail(Order::Infinite, e.to_string()),
    }
    let ord = order(m, default_order_bound(m.genus).max(n));
    let profile = d.fixed_point_profile();
    let mut traces = Vec::with_capacity(n as usize);
    let mut p = m.m.clone();
    for k in 1..n {
        traces.push(TraceCheck { k, expected: 2 - profile.at(k) as i64, actual: p.trace() });
        match p.checked_mul(&m.m) {
            Some(next) => p = next,
            None => return fail(Order::Infinite, "entries overflow; the matrix has infinite order".into()),
        }
    }
    let pass = ord == Order::Finite(n) && traces.iter().all(|t| t.expected == t.actual);
    let signatures = if pass { signature::signature_checks(m, d).unwrap_or_default() } else { vec![] };
    let signatures_match = !signatures.is_empty() && signatures.iter().all(|c| c.positive == c.expected);
    CertificateReport { order: ord, expected_order: n, traces, pass, signatures, signatures_match, note: None }
}

impl CertificateReport {
    /// Order, traces and eigenspace signatures all match.
    pub fn strong(&self) -> bool {
        self.pass && self.signatures_match
    }
}

/// A diagonal block of [`block_assemble`].
#[derive(Debug, Clone)]
pub enum Block {
    Matrix(SympMatrix),
    /// `cycle` copies of a genus-`genus` piece permuted cyclically.
    Permutation {
        cycle: u32,
        genus: u32,
    },
}

impl Block {
    fn genus(&self) -> u32 {
        match self {
            Block::Matrix(m) => m.genus,
            Block::Permutation { cycle, genus } => cycle * genus,
        }
    }
}

/// Block-diagonal matrix from the blocks in order.
pub fn block_assemble(blocks: &[Block], genus: u32) -> Result<SympMatrix> {
    let got: u32 = blocks.iter().map(Block::genus).sum();
    if got != genus {
        return Err(Error::GenusSumMismatch { got, want: genus });
    }
    let mats: Vec<IntMatrix> = blocks
        .iter()
        .map(|b| match b {
            Block::Matrix(m) => m.m.clone(),
            Block::Permutation { cycle, genus } => {
                let (c, d) = (*cycle as usize, 2 * *genus as usize);
                let mut p = IntMatrix::zeros(c * d, c * d);
                for piece in 0..c {
                    let to = (piece + 1) % c;
                    for i in 0..d {
                        p[(piece * d + i, to * d + i)] = 1;
                    }
                }
                p
            }
        })
        .collect();
    Ok(SympMatrix { genus, m: IntMatrix::direct_sum(&mats) })
}

/// The lcm of `1..=4g+2`, a multiple of every torsion order in genus `g`.
pub fn torsion_exponent(genus: u32) -> u64 {
    (1..=(4 * genus as u64 + 2)).fold(1, lcm)
}
