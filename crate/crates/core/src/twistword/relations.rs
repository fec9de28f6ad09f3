//! Constructors for the relation words: chains, star blocks, the
//! hyperelliptic involution, handle swaps and the torus generators.

use serde::{Deserialize, Serialize};

use super::{CurveId, CurveTable, TwistWord};
use crate::dataset::{ConePair, DataSet};
use crate::{Error, Result};

/// The sequence `a1, b1, c1, b2, c2, ..., c_{g-1}, b_g, a_g` truncated to `k`
/// curves. At genus one the third curve is `a1'`.
pub fn lickorish_chain(k: usize, genus: u32) -> Result<Vec<CurveId>> {
    let mut all = vec![CurveId::a(1), CurveId::b(1)];
    for i in 1..genus {
        all.extend([CurveId::c(i), CurveId::b(i + 1)]);
    }
    all.push(if genus == 1 { CurveId::a_prime(1) } else { CurveId::a(genus) });
    if k == 0 || k > all.len() {
        return Err(Error::IndexOutOfRange(format!("chain of length {k} in genus {genus}")));
    }
    all.truncate(k);
    Ok(all)
}

/// Closure data of a chain relation: `W^exponent` equals the product of the
/// twists about the boundary curves, whose homology classes are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainClosure {
    pub exponent: u32,
    pub boundary_classes: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWord {
    pub word: TwistWord,
    pub closure: ChainClosure,
}

/// `W = T_{c1}^(2) T_{c2} ... T_{ck}` for a chain `c1, ..., ck`.
///
/// For `k` even the neighbourhood of the chain has one boundary curve `d` and
/// `W^{2k+2} = T_d` (`W^{2k}` when squared first). For `k` odd there are two
/// boundary curves and `W^{k+1} = T_{d1} T_{d2}` (`W^k` when squared first).
pub fn chain_word(chain: &[CurveId], genus: u32, squared_first: bool) -> Result<ChainWord> {
    let table = CurveTable::new(genus);
    let k = chain.len();
    if k == 0 {
        return Err(Error::NotAChain);
    }
    for (i, u) in chain.iter().enumerate() {
        for (j, v) in chain.iter().enumerate().skip(i + 1) {
            let want = u32::from(j == i + 1);
            if table.intersection(u, v) != Some(want) {
                return Err(Error::NotAChain);
            }
        }
    }
    let word = TwistWord::new(
        genus,
        chain.iter().enumerate().map(|(i, c)| (*c, if i == 0 && squared_first { 2 } else { 1 })),
    )?;
    // Orient the chain so consecutive pairings are +1; the boundary class is
    // the sum of the odd-position curves.
    let mut v = vec![0i64; table.dim()];
    let mut prev: Option<Vec<i64>> = None;
    for (i, c) in chain.iter().enumerate() {
        let mut h = table.homology(c)?;
        if let Some(p) = &prev {
            if CurveTable::pairing(p, &h) < 0 {
                h.iter_mut().for_each(|x| *x = -*x);
            }
        }
        if i % 2 == 0 {
            v.iter_mut().zip(&h).for_each(|(x, y)| *x += y);
        }
        prev = Some(h);
    }
    let k32 = k as u32;
    let closure = if k.is_multiple_of(2) {
        ChainClosure {
            exponent: if squared_first { 2 * k32 } else { 2 * k32 + 2 },
            boundary_classes: vec![vec![0; table.dim()]],
        }
    } else {
        ChainClosure { exponent: if squared_first { k32 } else { k32 + 1 }, boundary_classes: vec![v.clone(), v] }
    };
    Ok(ChainWord { word, closure })
}

/// The four star configurations by the degree of the associated periodic map
/// on a genus-`h` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StarForm {
    /// Degree `2h+1`: `T_a1 T_a1' prod(T_bi T_ci) T_bh T_ah`.
    Odd,
    /// Degree `2h+2`: `T_a1 prod(T_bi T_ci) T_bh T_ah`.
    Even,
    /// Degree `4h`: `T_a1 T_a1' prod(T_bi T_ci) T_bh`.
    Quad,
    /// Degree `4h+2`: `T_a1 prod(T_bi T_ci) T_bh`.
    Max,
}

impl StarForm {
    pub const ALL: [StarForm; 4] = [StarForm::Odd, StarForm::Even, StarForm::Quad, StarForm::Max];

    pub fn degree(self, h: u32) -> u32 {
        match self {
            StarForm::Odd => 2 * h + 1,
            StarForm::Even => 2 * h + 2,
            StarForm::Quad => 4 * h,
            StarForm::Max => 4 * h + 2,
        }
    }

    /// The form from the word index `i` at genus `h`.
    pub fn from_index(i: u32, h: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.degree(h) == i)
    }

    /// Whether the block word starts with `T_a1 T_a1'`.
    pub fn has_prime(self) -> bool {
        matches!(self, StarForm::Odd | StarForm::Quad)
    }

    /// Whether the block word ends with `T_ah`.
    pub fn has_tail(self) -> bool {
        matches!(self, StarForm::Odd | StarForm::Even)
    }

    /// The data set of the periodic map the block word represents.
    ///
    /// `Even` at `h = 1` gives a valid data set, but its word `T_a1 T_b1 T_a1`
    /// repeats a curve and is not a star configuration.
    pub fn data_set(self, h: u32) -> Option<DataSet> {
        let n = self.degree(h);
        let p = ConePair::new;
        let pairs = match self {
            StarForm::Odd => vec![p(2 * h - 1, n), p(1, n), p(1, n)],
            StarForm::Even => vec![p(h, h + 1), p(1, n), p(1, n)],
            StarForm::Quad => vec![p(1, 2), p(1, n), p(2 * h - 1, n)],
            StarForm::Max => vec![p(1, 2), p(h, 2 * h + 1), p(1, n)],
        };
        let d = DataSet::new(n, 0, 0, pairs);
        d.is_valid().then_some(d)
    }

    /// Cone pairs corresponding to the boundary components `d1, d2, d3` of the
    /// star configuration, `None` where the component does not exist.
    pub fn boundaries(self, h: u32) -> [Option<ConePair>; 3] {
        let n = self.degree(h);
        let unit = Some(ConePair::new(1, n));
        match self {
            StarForm::Odd => [unit, Some(ConePair::new(n - 2, n)), unit],
            StarForm::Even => [unit, None, unit],
            StarForm::Quad => [unit, Some(ConePair::new(2 * h - 1, n)), None],
            StarForm::Max => [unit, None, None],
        }
    }
}

/// Syllables of the star word of `form` on a genus-`h` block whose handles are
/// `offset+1, ..., offset+h`. Without `use_prime` the `a1'` twist is replaced
/// by a second twist on `a1`.
pub fn star_block(form: StarForm, h: u32, offset: u32, use_prime: bool) -> Vec<(CurveId, i64)> {
    let s = |c: CurveId| (c.shifted(offset), 1i64);
    let mut out = vec![s(CurveId::a(1))];
    if form.has_prime() {
        out.push(if use_prime { s(CurveId::a_prime(1)) } else { s(CurveId::a(1)) });
    }
    for i in 1..h {
        out.extend([s(CurveId::b(i)), s(CurveId::c(i))]);
    }
    out.push(s(CurveId::b(h)));
    if form.has_tail() {
        out.push(s(CurveId::a(h)));
    }
    out
}

/// `W_i` for `i` in `{4g+2, 4g, 2g+2, 2g+1}` on the genus-`g` alphabet.
pub fn star_word(i: u32, genus: u32) -> Result<TwistWord> {
    let form = StarForm::from_index(i, genus).ok_or(Error::UnsupportedIndex(i))?;
    TwistWord::new(genus, star_block(form, genus, 0, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedRelation {
    /// `T_{c_{2g+1}} ... T_{c_1} T_{c_1} ... T_{c_{2g+1}}` over the `2g+1` chain.
    Hyperelliptic(u32),
    /// `H_{i+1,i} = (T_{a_{i+1}} T_{b_{i+1}} T_{x_i} T_{a_i} T_{b_i})^3` on genus `g`.
    HandleSwap(u32, u32),
    /// `T_a T_b`.
    TorusOrder6,
    /// `T_a^2 T_b`.
    TorusOrder4,
}

pub fn named_relation_word(kind: NamedRelation) -> Result<TwistWord> {
    match kind {
        NamedRelation::Hyperelliptic(g) => {
            if g == 0 {
                return Err(Error::IndexOutOfRange("hyperelliptic genus 0".into()));
            }
            let chain = lickorish_chain(2 * g as usize + 1, g)?;
            let rev = chain.iter().rev().map(|c| (*c, 1));
            TwistWord::new(g, rev.chain(chain.iter().map(|c| (*c, 1))))
        }
        NamedRelation::HandleSwap(i, g) => {
            if i == 0 || i >= g {
                return Err(Error::IndexOutOfRange(format!("handle swap {i} in genus {g}")));
            }
            let w = TwistWord::new(
                g,
                [CurveId::a(i + 1), CurveId::b(i + 1), CurveId::x(i), CurveId::a(i), CurveId::b(i)].map(|c| (c, 1)),
            )?;
            Ok(w.power(3))
        }
        NamedRelation::TorusOrder6 => TwistWord::new(1, [(CurveId::a(1), 1), (CurveId::b(1), 1)]),
        NamedRelation::TorusOrder4 => TwistWord::new(1, [(CurveId::a(1), 2), (CurveId::b(1), 1)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_examples() {
        let c = chain_word(&lickorish_chain(2, 1).unwrap(), 1, false).unwrap();
        assert_eq!(c.word.to_string(), "T_a1 T_b1");
        assert_eq!(c.closure.exponent, 6);
        let ch = lickorish_chain(4, 2).unwrap();
        assert_eq!(chain_word(&ch, 2, false).unwrap().closure.exponent, 10);
        let sq = chain_word(&ch, 2, true).unwrap();
        assert_eq!(sq.word.to_string(), "T_a1^2 T_b1 T_c1 T_b2");
        assert_eq!(sq.closure.exponent, 8);
        assert!(matches!(chain_word(&[CurveId::a(1), CurveId::c(1)], 2, false), Err(Error::NotAChain)));
        assert!(matches!(chain_word(&[CurveId::x(1), CurveId::a(1)], 2, false), Err(Error::NotAChain)));
    }

    #[test]
    fn star_words() {
        assert_eq!(star_word(7, 3).unwrap().to_string(), "T_a1 T_a1' T_b1 T_c1 T_b2 T_c2 T_b3 T_a3");
        assert_eq!(star_word(10, 2).unwrap().to_string(), "T_a1 T_b1 T_c1 T_b2");
        assert!(matches!(star_word(9, 2), Err(Error::UnsupportedIndex(9))));
        for h in 1..=5 {
            for f in StarForm::ALL {
                let d = f.data_set(h).unwrap();
                assert_eq!(d.genus().unwrap(), h, "{f:?} {h}");
            }
        }
    }

    #[test]
    fn named() {
        assert_eq!(named_relation_word(NamedRelation::TorusOrder4).unwrap().to_string(), "T_a1^2 T_b1");
        assert_eq!(
            named_relation_word(NamedRelation::HandleSwap(1, 2)).unwrap(),
            TwistWord::parse("(T_a2 T_b2 T_x1 T_a1 T_b1)^3", 2).unwrap()
        );
        assert!(named_relation_word(NamedRelation::HandleSwap(2, 2)).is_err());
        let h = named_relation_word(NamedRelation::Hyperelliptic(2)).unwrap();
        assert_eq!(h.to_string(), "T_a2 T_b2 T_c1 T_b1 T_a1^2 T_b1 T_c1 T_b2 T_a2");
    }
}
