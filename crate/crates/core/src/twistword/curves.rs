use super::{CurveId, CurveKind};
use crate::{Error, Result};

/// Sign in `[c_i] = [a_i] + C_SIGN [a_{i+1}]`.
///
/// Fixed once so that every bundled fixture word attains its stated order;
/// see `tables::calibration_report` for the generated evidence.
pub const C_SIGN: i64 = -1;

/// Sign in `[a_i'] = A_PRIME_SIGN [a_i]`.
pub const A_PRIME_SIGN: i64 = 1;

/// Read-only registry of the named curves of `S_g`.
///
/// Homology vectors are over the basis `(a1, b1, ..., ag, bg)` with
/// `<a_i, b_i> = 1`. Geometric intersection numbers and ribbon data are known
/// for the Lickorish curves only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveTable {
    genus: u32,
    c_sign: i64,
    a_prime_sign: i64,
}

impl CurveTable {
    pub fn new(genus: u32) -> Self {
        Self::with_signs(genus, C_SIGN, A_PRIME_SIGN)
    }

    /// A table with non-default orientation signs, used by the calibration report.
    pub fn with_signs(genus: u32, c_sign: i64, a_prime_sign: i64) -> Self {
        CurveTable { genus, c_sign, a_prime_sign }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn contains(&self, c: &CurveId) -> bool {
        let (g, i) = (self.genus, c.index);
        i >= 1
            && match c.kind {
                CurveKind::A | CurveKind::B | CurveKind::APrime => i <= g,
                CurveKind::C | CurveKind::X => i < g,
                CurveKind::S | CurveKind::Gamma => true,
            }
    }

    fn unit(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    /// Homology class of `c`; separating curves give the zero vector.
    pub fn homology(&self, c: &CurveId) -> Result<Vec<i64>> {
        if !self.contains(c) {
            return Err(Error::UnknownCurve(c.to_string()));
        }
        let i = c.index as usize - 1;
        Ok(match c.kind {
            CurveKind::A => self.unit(2 * i),
            CurveKind::B => self.unit(2 * i + 1),
            CurveKind::APrime => self.unit(2 * i).into_iter().map(|x| x * self.a_prime_sign).collect(),
            CurveKind::C => {
                let mut v = self.unit(2 * i);
                v[2 * i + 2] = self.c_sign;
                v
            }
            CurveKind::X => {
                let mut v = self.unit(2 * i + 1);
                v[2 * i + 2] = 1;
                v
            }
            CurveKind::S | CurveKind::Gamma => vec![0; self.dim()],
        })
    }

    /// Algebraic intersection `<u, v>` of two homology vectors.
    pub fn pairing(u: &[i64], v: &[i64]) -> i64 {
        u.chunks(2).zip(v.chunks(2)).map(|(x, y)| x[0] * y[1] - x[1] * y[0]).sum()
    }

    /// Gram matrix of the standard basis: the symplectic form `J`.
    pub fn pairing_matrix(&self) -> crate::IntMatrix {
        let d = self.dim();
        let mut j = crate::IntMatrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                j[(a, b)] = Self::pairing(&self.unit(a), &self.unit(b));
            }
        }
        j
    }

    /// The Lickorish generators in the order `a1, b1, c1, b2, a2, c2, ..., b_g, a_g`.
    pub fn lickorish(&self) -> Vec<CurveId> {
        let mut out = Vec::with_capacity(3 * self.genus as usize);
        for i in 1..=self.genus {
            if i == 1 {
                out.extend([CurveId::a(1), CurveId::b(1)]);
            } else {
                out.extend([CurveId::b(i), CurveId::a(i)]);
            }
            if i < self.genus {
                out.push(CurveId::c(i));
            }
        }
        out
    }

    /// Geometric intersection number, when known.
    ///
    /// Known for pairs of Lickorish curves and for `a_i'` against Lickorish
    /// curves (it meets `b_i` once and nothing else).
    pub fn intersection(&self, u: &CurveId, v: &CurveId) -> Option<u32> {
        if !self.contains(u) || !self.contains(v) {
            return None;
        }
        let kind = |c: &CurveId| match c.kind {
            CurveKind::APrime => CurveKind::A,
            k => k,
        };
        let known = |c: &CurveId| c.is_lickorish() || c.kind == CurveKind::APrime;
        if !known(u) || !known(v) {
            return None;
        }
        if u.kind == CurveKind::APrime && v.kind == CurveKind::APrime {
            return Some(0);
        }
        let (i, j) = (u.index, v.index);
        let hit = match (kind(u), kind(v)) {
            (CurveKind::A, CurveKind::B) | (CurveKind::B, CurveKind::A) => i == j,
            (CurveKind::B, CurveKind::C) => j == i || j + 1 == i,
            (CurveKind::C, CurveKind::B) => i == j || i + 1 == j,
            _ => false,
        };
        Some(u32::from(hit))
    }

    /// Cyclic order of the crossings met while travelling along a Lickorish
    /// curve, or `None` for curves without ribbon data.
    pub fn crossings_along(&self, c: &CurveId) -> Option<Vec<CurveId>> {
        if !c.is_lickorish() || !self.contains(c) {
            return None;
        }
        let i = c.index;
        Some(match c.kind {
            CurveKind::A => vec![CurveId::b(i)],
            CurveKind::C => vec![CurveId::b(i), CurveId::b(i + 1)],
            CurveKind::B => {
                let mut v = Vec::new();
                if i > 1 {
                    v.push(CurveId::c(i - 1));
                }
                v.push(CurveId::a(i));
                if i < self.genus {
                    v.push(CurveId::c(i));
                }
                v
            }
            _ => unreachable!(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;

    #[test]
    fn pairing_matrix_is_standard() {
        for g in 1..=5 {
            let t = CurveTable::new(g);
            let j = t.pairing_matrix();
            for i in 0..g as usize {
                assert_eq!(j[(2 * i, 2 * i + 1)], 1);
                assert_eq!(j[(2 * i + 1, 2 * i)], -1);
            }
            assert_eq!(j.transpose().mul(&j).trace(), 2 * g as i64);
        }
    }

    #[test]
    fn stored_vectors_are_primitive_or_zero() {
        for g in 1..=5 {
            let t = CurveTable::new(g);
            let mut curves = t.lickorish();
            for i in 1..=g {
                curves.push(CurveId::a_prime(i));
                curves.push(CurveId::s(i));
                curves.push(CurveId::gamma(i));
                if i < g {
                    curves.push(CurveId::x(i));
                }
            }
            for c in curves {
                let v = t.homology(&c).unwrap();
                let content = v.iter().fold(0u64, |acc, x| gcd(acc, x.unsigned_abs()));
                assert!(content <= 1, "{c} is not primitive");
                assert_eq!(content == 0, c.is_separating());
            }
        }
    }

    #[test]
    fn intersections_match_pairings() {
        let t = CurveTable::new(4);
        let l = t.lickorish();
        assert_eq!(l.len(), 11);
        for u in &l {
            for v in &l {
                let alg = CurveTable::pairing(&t.homology(u).unwrap(), &t.homology(v).unwrap());
                assert_eq!(t.intersection(u, v), Some(alg.unsigned_abs() as u32), "{u} {v}");
            }
        }
        assert_eq!(t.intersection(&CurveId::x(1), &CurveId::a(1)), None);
    }

    #[test]
    fn handle_swap_curve_class() {
        let t = CurveTable::new(2);
        let x = t.homology(&CurveId::x(1)).unwrap();
        let sum: Vec<i64> = t
            .homology(&CurveId::a(2))
            .unwrap()
            .iter()
            .zip(t.homology(&CurveId::b(1)).unwrap())
            .map(|(p, q)| p + q)
            .collect();
        assert_eq!(x, sum);
    }
}
