//! Words in Dehn twists over a fixed per-genus curve alphabet.
//!
//! The alphabet is the Lickorish set `a_i, b_i, c_i` together with the
//! auxiliary curves `a_i'` (bounding-pair partners of `a_i`), `x_i`
//! (handle-swap curves), and separating curves `s_i`, `gamma_i`.

mod curves;
mod fills;
mod relations;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use curves::{CurveTable, A_PRIME_SIGN, C_SIGN};
pub use fills::fills;
pub use relations::{
    chain_word, lickorish_chain, named_relation_word, star_block, star_word, ChainClosure, ChainWord, NamedRelation,
    StarForm,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    A,
    B,
    C,
    APrime,
    X,
    S,
    Gamma,
}

/// A named curve, e.g. `a1`, `c2`, `a1'`, `x1`, `s1`, `gamma1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveId {
    pub kind: CurveKind,
    pub index: u32,
}

impl CurveId {
    pub const fn new(kind: CurveKind, index: u32) -> Self {
        CurveId { kind, index }
    }
    pub const fn a(i: u32) -> Self {
        Self::new(CurveKind::A, i)
    }
    pub const fn b(i: u32) -> Self {
        Self::new(CurveKind::B, i)
    }
    pub const fn c(i: u32) -> Self {
        Self::new(CurveKind::C, i)
    }
    pub const fn a_prime(i: u32) -> Self {
        Self::new(CurveKind::APrime, i)
    }
    pub const fn x(i: u32) -> Self {
        Self::new(CurveKind::X, i)
    }
    pub const fn s(i: u32) -> Self {
        Self::new(CurveKind::S, i)
    }
    pub const fn gamma(i: u32) -> Self {
        Self::new(CurveKind::Gamma, i)
    }

    pub fn is_lickorish(&self) -> bool {
        matches!(self.kind, CurveKind::A | CurveKind::B | CurveKind::C)
    }

    pub fn is_separating(&self) -> bool {
        matches!(self.kind, CurveKind::S | CurveKind::Gamma)
    }

    /// Shifts the handle index by `k` (used when placing blocks side by side).
    pub fn shifted(self, k: u32) -> Self {
        CurveId::new(self.kind, self.index + k)
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        match self.kind {
            CurveKind::A => write!(f, "a{i}"),
            CurveKind::B => write!(f, "b{i}"),
            CurveKind::C => write!(f, "c{i}"),
            CurveKind::APrime => write!(f, "a{i}'"),
            CurveKind::X => write!(f, "x{i}"),
            CurveKind::S => write!(f, "s{i}"),
            CurveKind::Gamma => write!(f, "gamma{i}"),
        }
    }
}

impl FromStr for CurveId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownCurve(s.to_string());
        let (body, prime) = match s.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let split = body.find(|c: char| c.is_ascii_digit()).unwrap_or(body.len());
        let (head, digits) = body.split_at(split);
        // Genus-one shorthand: `a`, `b`, `a'`.
        let index: u32 = if digits.is_empty() {
            if matches!(head, "a" | "b") {
                1
            } else {
                return Err(unknown());
            }
        } else {
            digits.parse().map_err(|_| unknown())?
        };
        if index == 0 {
            return Err(unknown());
        }
        let kind = match (head, prime) {
            ("a", false) => CurveKind::A,
            ("a", true) => CurveKind::APrime,
            ("b", false) => CurveKind::B,
            ("c", false) => CurveKind::C,
            ("x", false) => CurveKind::X,
            ("s", false) => CurveKind::S,
            ("gamma" | "γ" | "g", false) => CurveKind::Gamma,
            _ => return Err(unknown()),
        };
        Ok(CurveId::new(kind, index))
    }
}

impl Serialize for CurveId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A reduced word: adjacent syllables have distinct curves and exponents are
/// non-zero. Syllables are listed left to right; the leftmost twist acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistWord {
    genus: u32,
    syllables: Vec<(CurveId, i64)>,
}

impl TwistWord {
    /// Builds and reduces a word; every curve must exist in the genus-`g` table.
    pub fn new(genus: u32, syllables: impl IntoIterator<Item = (CurveId, i64)>) -> Result<Self> {
        let table = CurveTable::new(genus);
        let mut w = TwistWord { genus, syllables: Vec::new() };
        for (c, e) in syllables {
            if !table.contains(&c) {
                return Err(Error::UnknownCurve(c.to_string()));
            }
            w.push(c, e);
        }
        Ok(w)
    }

    pub fn identity(genus: u32) -> Self {
        TwistWord { genus, syllables: Vec::new() }
    }

    /// Single twist `T_c^e`.
    pub fn twist(genus: u32, c: CurveId, e: i64) -> Result<Self> {
        Self::new(genus, [(c, e)])
    }

    fn push(&mut self, c: CurveId, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == c {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((c, e));
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn syllables(&self) -> &[(CurveId, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    /// Total number of twists, counted with multiplicity.
    pub fn letter_count(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Idempotent: the stored form is already reduced.
    pub fn reduce(&self) -> Self {
        let mut w = TwistWord::identity(self.genus);
        for &(c, e) in &self.syllables {
            w.push(c, e);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        TwistWord { genus: self.genus, syllables: self.syllables.iter().rev().map(|&(c, e)| (c, -e)).collect() }
    }

    pub fn concat(&self, other: &TwistWord) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let mut w = self.clone();
        for &(c, e) in &other.syllables {
            w.push(c, e);
        }
        Ok(w)
    }

    /// `self^k`; negative `k` powers the inverse.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = TwistWord::identity(self.genus);
        for _ in 0..k.unsigned_abs() {
            for &(c, e) in &base.syllables {
                w.push(c, e);
            }
        }
        w
    }

    /// `by * self * by^-1`.
    pub fn conjugate(&self, by: &TwistWord) -> Result<Self> {
        by.concat(self)?.concat(&by.inverse())
    }

    /// Maximum number of syllables on a single curve.
    pub fn depth(&self) -> u32 {
        let mut counts = std::collections::HashMap::new();
        for (c, _) in &self.syllables {
            *counts.entry(*c).or_insert(0u32) += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }

    /// Largest absolute exponent.
    pub fn max_power(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).max().unwrap_or(0)
    }

    /// Distinct curves in order of first appearance.
    pub fn curves(&self) -> Vec<CurveId> {
        let mut out: Vec<CurveId> = Vec::new();
        for (c, _) in &self.syllables {
            if !out.contains(c) {
                out.push(*c);
            }
        }
        out
    }

    /// Re-homes the word on a larger genus, shifting handle indices by `offset`.
    pub fn embed(&self, genus: u32, offset: u32) -> Result<Self> {
        Self::new(genus, self.syllables.iter().map(|&(c, e)| (c.shifted(offset), e)))
    }

    /// Replaces curves through `f`.
    pub fn relabel(&self, f: impl Fn(CurveId) -> CurveId) -> Result<Self> {
        Self::new(self.genus, self.syllables.iter().map(|&(c, e)| (f(c), e)))
    }

    /// Parses the text grammar: tokens `T_a1`, `T_b3^-1`, parenthesised
    /// groups with integer exponents such as `(T_a1 T_b1)^3`, and `1` for the
    /// identity. Braces and underscores inside curve names are ignored, so
    /// `T_{a_1}^{2}` is accepted.
    pub fn parse(text: &str, genus: u32) -> Result<Self> {
        let raw = parse_syllables(text)?;
        Self::new(genus, raw)
    }

    /// `[[curve, exponent], ...]`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.syllables.iter().map(|(c, e)| serde_json::json!([c.to_string(), e])).collect())
    }

    pub fn from_json(v: &serde_json::Value, genus: u32) -> Result<Self> {
        let bad = |msg: &str| Error::Syntax { pos: 0, msg: msg.to_string() };
        let arr = v.as_array().ok_or_else(|| bad("expected an array of [curve, exponent]"))?;
        let mut syl = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("expected [curve, exponent]"))?;
            let name = pair[0].as_str().ok_or_else(|| bad("curve must be a string"))?;
            let e = pair[1].as_i64().ok_or_else(|| bad("exponent must be an integer"))?;
            syl.push((name.parse()?, e));
        }
        Self::new(genus, syl)
    }
}

/// Serialized as the text form; deserializing needs the genus, so use
/// [`TwistWord::parse`] or [`TwistWord::from_json`].
impl Serialize for TwistWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.syllables.iter().map(|(c, e)| if *e == 1 { format!("T_{c}") } else { format!("T_{c}^{e}") }).collect();
        f.write_str(&parts.join(" "))
    }
}

fn parse_syllables(text: &str) -> Result<Vec<(CurveId, i64)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut stack: Vec<Vec<(CurveId, i64)>> = vec![Vec::new()];
    let err = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    let byte = |i: usize| chars.get(i).map_or(text.len(), |c| c.0);

    // Reads `^e`, `^{e}` or `^-e` if present.
    let exponent = |i: &mut usize| -> Result<i64> {
        if chars.get(*i).map(|c| c.1) != Some('^') {
            return Ok(1);
        }
        *i += 1;
        let braced = chars.get(*i).map(|c| c.1) == Some('{');
        if braced {
            *i += 1;
        }
        let start = *i;
        if matches!(chars.get(*i).map(|c| c.1), Some('-' | '+')) {
            *i += 1;
        }
        while chars.get(*i).is_some_and(|c| c.1.is_ascii_digit()) {
            *i += 1;
        }
        let s: String = chars[start..*i].iter().map(|c| c.1).collect();
        let v = s.parse::<i64>().map_err(|_| err(byte(start), "expected an integer exponent"))?;
        if braced {
            if chars.get(*i).map(|c| c.1) != Some('}') {
                return Err(err(byte(*i), "expected `}`"));
            }
            *i += 1;
        }
        Ok(v)
    };

    while i < chars.len() {
        let (pos, ch) = chars[i];
        match ch {
            c if c.is_whitespace() || c == '*' || c == '\u{b7}' => i += 1,
            '(' => {
                stack.push(Vec::new());
                i += 1;
            }
            ')' => {
                i += 1;
                let e = exponent(&mut i)?;
                let group = stack.pop().filter(|_| !stack.is_empty()).ok_or_else(|| err(pos, "unbalanced `)`"))?;
                let top = stack.last_mut().expect("stack is never empty");
                let (base, k): (Vec<_>, i64) =
                    if e < 0 { (group.iter().rev().map(|&(c, x)| (c, -x)).collect(), -e) } else { (group, e) };
                for _ in 0..k {
                    top.extend(base.iter().copied());
                }
            }
            '1' if chars.get(i + 1).is_none_or(|c| c.1.is_whitespace() || c.1 == ')') => i += 1,
            'T' => {
                i += 1;
                if chars.get(i).map(|c| c.1) == Some('_') {
                    i += 1;
                }
                let start = i;
                let mut name = String::new();
                while let Some(&(_, c)) = chars.get(i) {
                    // Curve names never contain `T`, so `T_aT_b` splits.
                    if c == 'T' && !name.is_empty() {
                        break;
                    }
                    if c.is_alphanumeric() || c == '\'' || c == '_' || c == '{' || c == '}' {
                        // `T_{a_1}^{2}`: a `}` directly before `^` closes the name.
                        if c != '_' && c != '{' && c != '}' {
                            name.push(c);
                        }
                        i += 1;
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(err(byte(start), "expected a curve name"));
                }
                let curve: CurveId = name.parse().map_err(|_| err(byte(start), &format!("unknown curve `{name}`")))?;
                let e = exponent(&mut i)?;
                stack.last_mut().expect("stack is never empty").push((curve, e));
            }
            _ => return Err(err(pos, &format!("unexpected `{ch}`"))),
        }
    }
    if stack.len() != 1 {
        return Err(err(text.len(), "unbalanced `(`"));
    }
    Ok(stack.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, g: u32) -> TwistWord {
        TwistWord::parse(s, g).unwrap()
    }

    #[test]
    fn reduce_and_group_ops() {
        assert!(w("T_a1 T_a1^-1", 1).is_empty());
        assert_eq!(w("T_a1 T_b1", 1).power(3), w("T_a1 T_b1 T_a1 T_b1 T_a1 T_b1", 1));
        assert_eq!(w("T_a1 T_b1", 1).inverse(), w("T_b1^-1 T_a1^-1", 1));
        assert_eq!(w("T_a1 T_b1 T_b1^-1 T_a1^2", 1), w("T_a1^3", 1));
        let x = w("T_a1 T_b1^2", 2);
        assert_eq!(x.reduce(), x);
        assert!(matches!(x.concat(&w("T_a1", 1)), Err(Error::GenusMismatch(2, 1))));
        assert_eq!(x.conjugate(&w("T_c1", 2)).unwrap(), w("T_c1 T_a1 T_b1^2 T_c1^-1", 2));
    }

    #[test]
    fn depth_and_power() {
        let x = w("T_a1^5 T_a2^4 T_b2 T_a2^2 T_b1", 2);
        assert_eq!(x.depth(), 2);
        assert_eq!(x.max_power(), 5);
        assert_eq!(TwistWord::identity(3).depth(), 0);
    }

    #[test]
    fn grammar() {
        assert_eq!(w("(T_a1 T_b1)^-2", 1), w("T_b1^-1 T_a1^-1 T_b1^-1 T_a1^-1", 1));
        assert_eq!(w("T_a T_b", 1), w("T_a1 T_b1", 1));
        assert_eq!(w("T_aT_b", 1), w("T_a1 T_b1", 1));
        assert_eq!(w("T_{a_1}^{2} T_{b_1}", 1), w("T_a1^2 T_b1", 1));
        assert_eq!(w("T_a2' T_gamma1^-1 T_x1", 2).to_string(), "T_a2' T_gamma1^-1 T_x1");
        assert!(w("1", 2).is_empty());
        assert!(matches!(TwistWord::parse("T_a3", 2), Err(Error::UnknownCurve(_))));
        assert!(matches!(TwistWord::parse("T_q1", 2), Err(Error::Syntax { .. })));
        assert!(matches!(TwistWord::parse("(T_a1", 2), Err(Error::Syntax { .. })));
        let x = w("T_a1^2 T_b3^-1", 3);
        assert_eq!(TwistWord::from_json(&x.to_json(), 3).unwrap(), x);
        assert_eq!(w(&x.to_string(), 3), x);
    }
}
