//! Data sets: the integer invariants of a cyclic action on a closed surface.
//!
//! A data set `(n, g0, r; (c1,m1), ..., (cl,ml))` records the degree `n`, the
//! genus `g0` of the quotient orbifold, the rotation parameter `r` of a free
//! action and one cone pair per branch point. Pairs are kept sorted by
//! `(m, c)` so that structural equality is multiset equality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, lcm, lcm_all};
use crate::{Error, Result};

/// A branch point with stabilizer of order `m` and local rotation `2*pi*c^-1/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConePair {
    pub c: u32,
    pub m: u32,
}

impl ConePair {
    pub const fn new(c: u32, m: u32) -> Self {
        ConePair { c, m }
    }

    /// Whether `c` is a unit modulo `m >= 2`.
    pub fn is_unit(&self) -> bool {
        self.m >= 2 && self.c >= 1 && self.c < self.m && gcd(self.c as u64, self.m as u64) == 1
    }

    /// The pair `(1,n)_{k,F}`: the image of a fixed point with pair `self`
    /// (where `self.m` is the full degree) in the data set of `F^k`.
    pub fn trace(&self, k: u32) -> Result<ConePair> {
        let n = self.m as u64;
        let k = k as u64 % n;
        if k == 0 {
            return Err(Error::DegenerateResult);
        }
        let d = gcd(k, n);
        let n2 = n / d;
        if n2 == 1 {
            return Err(Error::DegenerateResult);
        }
        let kinv = inv_mod((k / d) as i64, n2 as i64).expect("k/d is a unit mod n/d");
        let c = (self.c as i64 * kinv).rem_euclid(n2 as i64);
        Ok(ConePair::new(c as u32, n2 as u32))
    }
}

impl PartialOrd for ConePair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConePair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.m, self.c).cmp(&(other.m, other.c))
    }
}

impl fmt::Display for ConePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.m)
    }
}

/// `pairTrace((1,n), k)`: convenience wrapper around [`ConePair::trace`].
pub fn pair_trace(p: ConePair, k: u32) -> Result<ConePair> {
    p.trace(k)
}

/// The conjugacy-class invariant of a `Z_n`-action on `S_g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "DataSetJson", from = "DataSetJson")]
pub struct DataSet {
    pub n: u32,
    pub g0: u32,
    pub r: u32,
    pairs: Vec<ConePair>,
}

#[derive(Serialize, Deserialize)]
struct DataSetJson {
    n: u32,
    g0: u32,
    r: u32,
    pairs: Vec<[u32; 2]>,
}

impl From<DataSet> for DataSetJson {
    fn from(d: DataSet) -> Self {
        DataSetJson { n: d.n, g0: d.g0, r: d.r, pairs: d.pairs.iter().map(|p| [p.c, p.m]).collect() }
    }
}

impl From<DataSetJson> for DataSet {
    fn from(j: DataSetJson) -> Self {
        DataSet::new(j.n, j.g0, j.r, j.pairs.into_iter().map(|[c, m]| ConePair::new(c, m)))
    }
}

/// The numbered conditions of the definition of a data set, plus the two
/// implicit requirements (unit residues and a positive integral genus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// Each `c_i` is a unit modulo `m_i >= 2`.
    Residue,
    /// (i) `r > 0` iff there are no pairs, and `gcd(r,n) = 1`.
    FreeParameter,
    /// (ii) each `m_i` divides `n`.
    Divisibility,
    /// (iii) dropping any one `m_i` leaves the lcm unchanged; it is `n` when `g0 = 0`.
    Lcm,
    /// (iv) `sum (n/m_i) c_i = 0 mod n`.
    AngleSum,
    /// Riemann-Hurwitz yields a positive integral genus.
    Genus,
}

impl Condition {
    pub fn label(&self) -> &'static str {
        match self {
            Condition::Residue => "residue",
            Condition::FreeParameter => "i",
            Condition::Divisibility => "ii",
            Condition::Lcm => "iii",
            Condition::AngleSum => "iv",
            Condition::Genus => "genus",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<Condition>,
    pub genus: Option<u32>,
}

/// Classification of a valid data set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassKind {
    FreeRotation,
    NonFreeRotation,
    Type1Irreducible,
    Type1Reducible,
    Type2,
}

/// `k -> fix(F^k)` for `1 <= k <= n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointProfile {
    pub n: u32,
    /// `fix[k-1]` is the number of fixed points of `F^k`.
    pub fix: Vec<u32>,
}

impl FixedPointProfile {
    pub fn at(&self, k: u32) -> u32 {
        let k = k % self.n;
        if k == 0 {
            panic!("fix(F^0) is not defined for a surface action");
        }
        self.fix[k as usize - 1]
    }

    /// Expected Lefschetz traces `2 - fix(F^k)`.
    pub fn traces(&self) -> Vec<i64> {
        self.fix.iter().map(|&f| 2 - f as i64).collect()
    }
}

impl DataSet {
    /// Builds a data set, sorting the pairs canonically. No validation.
    pub fn new(n: u32, g0: u32, r: u32, pairs: impl IntoIterator<Item = ConePair>) -> Self {
        let mut pairs: Vec<ConePair> = pairs.into_iter().collect();
        pairs.sort();
        DataSet { n, g0, r, pairs }
    }

    /// A free action `(n, g0, 1;)`.
    pub fn free(n: u32, g0: u32) -> Self {
        DataSet::new(n, g0, 1, [])
    }

    pub fn pairs(&self) -> &[ConePair] {
        &self.pairs
    }

    pub fn is_free(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Free actions with the same `(n, g0)` are conjugate, so the canonical
    /// form sets `r = 1` for them.
    pub fn canonical(&self) -> DataSet {
        let mut d = self.clone();
        if d.pairs.is_empty() && d.r != 0 {
            d.r = 1;
        }
        d
    }

    /// Pairs grouped with multiplicities, in canonical order.
    pub fn grouped(&self) -> Vec<(ConePair, u32)> {
        let mut out: Vec<(ConePair, u32)> = Vec::new();
        for &p in &self.pairs {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Twice the Euler-characteristic numerator: `2g - 2` when integral.
    fn two_g_minus_two(&self) -> Option<i64> {
        let n = self.n as i64;
        let mut acc = n * (2 * self.g0 as i64 - 2);
        for p in &self.pairs {
            if p.m == 0 || !self.n.is_multiple_of(p.m) {
                return None;
            }
            acc += n - n / p.m as i64;
        }
        Some(acc)
    }

    /// Riemann-Hurwitz genus.
    pub fn genus(&self) -> Result<u32> {
        if self.n < 2 {
            return Err(Error::NonIntegralGenus);
        }
        match self.two_g_minus_two() {
            Some(t) if t >= 0 && t % 2 == 0 => Ok((t / 2 + 1) as u32),
            _ => Err(Error::NonIntegralGenus),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.n as u64;
        if self.pairs.iter().any(|p| !p.is_unit()) {
            failures.push(Condition::Residue);
        }
        let free_ok = if self.pairs.is_empty() {
            self.r > 0 && self.r < self.n && gcd(self.r as u64, n) == 1
        } else {
            self.r == 0
        };
        if !free_ok {
            failures.push(Condition::FreeParameter);
        }
        if self.pairs.iter().any(|p| p.m == 0 || !n.is_multiple_of(p.m as u64)) {
            failures.push(Condition::Divisibility);
        }
        if !self.pairs.is_empty() {
            let ms: Vec<u64> = self.pairs.iter().map(|p| p.m as u64).collect();
            let big_n = lcm_all(ms.iter().copied());
            let mut ok = self.g0 != 0 || big_n == n;
            for i in 0..ms.len() {
                let others = lcm_all(ms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &m)| m));
                ok &= others == big_n;
            }
            if !ok {
                failures.push(Condition::Lcm);
            }
            let sum: u64 = self.pairs.iter().filter(|p| p.m != 0).map(|p| (n / p.m as u64) * p.c as u64).sum();
            if !sum.is_multiple_of(n) {
                failures.push(Condition::AngleSum);
            }
        }
        let genus = self.genus().ok();
        if genus.is_none() {
            failures.push(Condition::Genus);
        }
        ValidationReport { ok: failures.is_empty() && self.n >= 2, failures, genus }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok
    }

    fn require_valid(&self) -> Result<u32> {
        let rep = self.validate();
        if !rep.ok {
            let names: Vec<_> = rep.failures.iter().map(|c| c.label()).collect();
            return Err(Error::InvalidDataSet(format!("{self} fails {}", names.join(", "))));
        }
        Ok(rep.genus.expect("valid data sets have a genus"))
    }

    /// Whether the pairs have the rotational form `(s,n),(n-s,n)` repeated,
    /// with a single such couple when `n > 2`.
    fn is_rotational_nonfree(&self) -> bool {
        let n = self.n;
        if self.pairs.is_empty() || self.pairs.iter().any(|p| p.m != n) {
            return false;
        }
        if n == 2 {
            return self.pairs.len().is_multiple_of(2);
        }
        self.pairs.len() == 2 && (self.pairs[0].c + self.pairs[1].c).is_multiple_of(n)
    }

    pub fn classify(&self) -> Result<ClassKind> {
        self.require_valid()?;
        if self.pairs.is_empty() {
            return Ok(ClassKind::FreeRotation);
        }
        if self.is_rotational_nonfree() {
            return Ok(ClassKind::NonFreeRotation);
        }
        let type1 = self.pairs.len() == 3 && self.pairs.iter().any(|p| p.m == self.n);
        Ok(match (type1, self.g0) {
            (true, 0) => ClassKind::Type1Irreducible,
            (true, _) => ClassKind::Type1Reducible,
            _ => ClassKind::Type2,
        })
    }

    /// The data set of `F^k`.
    pub fn power(&self, k: u32) -> Result<DataSet> {
        let g = self.require_valid()?;
        let n = self.n as u64;
        let k = k as u64 % n;
        if k == 0 {
            return Err(Error::DegenerateResult);
        }
        let d = gcd(k, n);
        let n2 = n / d;
        if n2 == 1 {
            return Err(Error::DegenerateResult);
        }
        let kd = k / d;
        let mut pairs = Vec::new();
        for p in &self.pairs {
            let m = p.m as u64;
            let m2 = n / lcm(n / m, d);
            if m2 == 1 {
                continue;
            }
            let count = d * m2 / m;
            let inv = inv_mod(kd as i64, m2 as i64).expect("k/d is coprime to n/d");
            let c2 = (p.c as i64 * inv).rem_euclid(m2 as i64) as u32;
            for _ in 0..count {
                pairs.push(ConePair::new(c2, m2 as u32));
            }
        }
        // Riemann-Hurwitz for the quotient by <F^k>.
        let mut rest: i64 = 2 * g as i64 - 2;
        for p in &pairs {
            rest -= n2 as i64 - n2 as i64 / p.m as i64;
        }
        debug_assert!(rest % (2 * n2 as i64) == 0);
        let g0 = (rest / n2 as i64 + 2) / 2;
        let r = if pairs.is_empty() { 1 } else { 0 };
        Ok(DataSet::new(n2 as u32, g0 as u32, r, pairs))
    }

    pub fn fixed_point_profile(&self) -> FixedPointProfile {
        let n = self.n;
        let fix = (1..n)
            .map(|k| self.pairs.iter().filter(|p| p.m != 0 && k % (n / p.m) == 0).map(|p| n / p.m).sum())
            .collect();
        FixedPointProfile { n, fix }
    }

    /// Canonical text with multiplicities compressed as `((c,m),k)`.
    pub fn format_compact(&self) -> String {
        self.render(true)
    }

    /// Canonical text with every pair written out.
    pub fn format_plain(&self) -> String {
        self.render(false)
    }

    fn render(&self, compact: bool) -> String {
        let head = if self.pairs.is_empty() {
            format!("({},{},{};", self.n, self.g0, self.r)
        } else {
            format!("({},{};", self.n, self.g0)
        };
        let body: Vec<String> = if compact {
            self.grouped().into_iter().map(|(p, k)| if k > 1 { format!("({p},{k})") } else { p.to_string() }).collect()
        } else {
            self.pairs.iter().map(|p| p.to_string()).collect()
        };
        format!("{head}{})", body.join(","))
    }

    pub fn parse(text: &str) -> Result<DataSet> {
        Parser::new(text).data_set()
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_compact())
    }
}

impl FromStr for DataSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DataSet::parse(s)
    }
}

/// Every valid data set of genus `g` (and degree `n` if given), canonical and sorted.
pub fn enumerate(g: u32, n: Option<u32>) -> Vec<DataSet> {
    assert!(g >= 1, "genus must be positive");
    let degrees: Vec<u32> = match n {
        Some(n) => vec![n],
        None => (2..=4 * g + 2).collect(),
    };
    let mut out = Vec::new();
    for n in degrees {
        if n < 2 {
            continue;
        }
        enumerate_degree(g, n, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

fn enumerate_degree(g: u32, n: u32, out: &mut Vec<DataSet>) {
    let cones: Vec<ConePair> = (2..=n)
        .filter(|m| n.is_multiple_of(*m))
        .flat_map(|m| (1..m).filter(move |&c| gcd(c as u64, m as u64) == 1).map(move |c| ConePair::new(c, m)))
        .collect();
    // Each cone pair (c,m) consumes n - n/m of the budget 2g - 2 - n(2g0 - 2).
    for g0 in 0..=g {
        let budget = 2 * g as i64 - 2 - n as i64 * (2 * g0 as i64 - 2);
        if budget < 0 {
            continue;
        }
        if budget == 0 {
            if g0 >= 1 && g > 1 {
                out.push(DataSet::free(n, g0));
            }
            continue;
        }
        let mut chosen = Vec::new();
        choose(&cones, 0, budget, n as i64, &mut chosen, &mut |pairs| {
            let d = DataSet::new(n, g0, 0, pairs.iter().copied());
            if d.is_valid() {
                out.push(d);
            }
        });
    }
}

fn choose(
    cones: &[ConePair],
    start: usize,
    budget: i64,
    n: i64,
    chosen: &mut Vec<ConePair>,
    emit: &mut dyn FnMut(&[ConePair]),
) {
    if budget == 0 {
        if !chosen.is_empty() {
            emit(chosen);
        }
        return;
    }
    for i in start..cones.len() {
        let cost = n - n / cones[i].m as i64;
        if cost <= budget {
            chosen.push(cones[i]);
            choose(cones, i, budget - cost, n, chosen, emit);
            chosen.pop();
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { s: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", ch as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        match txt.parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn nonneg(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let v = self.int()?;
        u32::try_from(v).or_else(|_| {
            self.pos = at;
            self.err(format!("{what} must be a non-negative integer"))
        })
    }

    /// `(c,m)` with `c` reduced modulo `m`.
    fn pair(&mut self) -> Result<ConePair> {
        self.expect(b'(')?;
        let c = self.int()?;
        self.expect(b',')?;
        let m = self.nonneg("m")?;
        self.expect(b')')?;
        let c = if m == 0 { c.max(0) } else { c.rem_euclid(m as i64) };
        Ok(ConePair::new(c as u32, m))
    }

    fn data_set(&mut self) -> Result<DataSet> {
        self.expect(b'(')?;
        let n = self.nonneg("n")?;
        self.expect(b',')?;
        let g0 = self.nonneg("g0")?;
        let mut r = 0;
        if self.peek() == Some(b',') {
            self.pos += 1;
            r = self.nonneg("r")?;
        }
        self.expect(b';')?;
        let mut pairs = Vec::new();
        match self.peek() {
            Some(b')') => {}
            Some(b'(') => loop {
                // Either (c,m) or ((c,m),k).
                let save = self.pos;
                self.expect(b'(')?;
                if self.peek() == Some(b'(') {
                    let p = self.pair()?;
                    self.expect(b',')?;
                    let k = self.nonneg("multiplicity")?;
                    self.expect(b')')?;
                    pairs.extend(std::iter::repeat_n(p, k as usize));
                } else {
                    self.pos = save;
                    pairs.push(self.pair()?);
                }
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    _ => break,
                }
            },
            // `(n,g0;r)` is accepted as an alternative spelling of a free action.
            Some(_) if r == 0 => r = self.nonneg("r")?,
            _ => return self.err("expected a cone pair"),
        }
        self.expect(b')')?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(DataSet::new(n, g0, r, pairs))
    }
}

/// Groups pairs by their order `m`: used by callers that need per-orbit counts.
pub fn pair_counts(pairs: &[ConePair]) -> BTreeMap<ConePair, u32> {
    let mut map = BTreeMap::new();
    for &p in pairs {
        *map.entry(p).or_insert(0) += 1;
    }
    map
}
